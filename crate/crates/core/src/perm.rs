//! Permutation groups, enumerated into Cayley tables.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Group, DEFAULT_ORDER_CAP};

/// Permutation of `{0, .., n-1}` as an image list.
type Perm = Vec<u16>;

/// `x * y` acts as "first `x`, then `y`".
fn compose(x: &Perm, y: &Perm) -> Perm {
    x.iter().map(|&i| y[i as usize]).collect()
}

/// Enumerates `<generators>` with Dimino's algorithm and returns the group
/// together with its elements as 0-based image lists. Generators are given as
/// 1-based image lists.
pub fn enumerate_permutations(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<(Group, Vec<Vec<u16>>)> {
    let mut gens: Vec<Perm> = Vec::with_capacity(generators.len());
    for (index, images) in generators.iter().enumerate() {
        if images.len() != degree {
            return Err(Error::NotAPermutation { index, degree });
        }
        let mut seen = vec![false; degree];
        let mut perm = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree || seen[img - 1] {
                return Err(Error::NotAPermutation { index, degree });
            }
            seen[img - 1] = true;
            perm.push((img - 1) as u16);
        }
        gens.push(perm);
    }

    let identity: Perm = (0..degree as u16).collect();
    let mut elements: Vec<Perm> = vec![identity.clone()];
    let mut index: HashMap<Perm, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut used: Vec<Perm> = Vec::new();

    for s in gens {
        if index.contains_key(&s) {
            continue;
        }
        let previous = elements.clone();
        used.push(s.clone());
        // Right cosets previous * r; representatives closed under right
        // multiplication by every generator seen so far.
        let mut reps: Vec<Perm> = vec![identity.clone()];
        let mut pos = 0;
        let push_coset = |r: &Perm, elements: &mut Vec<Perm>, index: &mut HashMap<Perm, usize>| -> Result<()> {
            if elements.len() + previous.len() > cap {
                return Err(Error::OrderCapExceeded { cap });
            }
            for h in &previous {
                let e = compose(h, r);
                index.insert(e.clone(), elements.len());
                elements.push(e);
            }
            Ok(())
        };
        push_coset(&s, &mut elements, &mut index)?;
        reps.push(s.clone());
        while pos < reps.len() {
            let r = reps[pos].clone();
            for t in &used {
                let e = compose(&r, t);
                if !index.contains_key(&e) {
                    push_coset(&e, &mut elements, &mut index)?;
                    reps.push(e);
                }
            }
            pos += 1;
        }
    }

    let n = elements.len();
    let mut table = vec![0u16; n * n];
    for (a, x) in elements.iter().enumerate() {
        for (b, y) in elements.iter().enumerate() {
            table[a * n + b] = index[&compose(x, y)] as u16;
        }
    }
    Ok((Group::from_table_trusted(n, table), elements))
}

/// Group generated by permutations given as 1-based image lists.
pub fn group_from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Group> {
    enumerate_permutations(degree, generators, DEFAULT_ORDER_CAP).map(|(g, _)| g)
}
