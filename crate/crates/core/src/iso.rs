//! Brute-force isomorphism oracle.
//!
//! Backtracks over images of a small generating set of `A`. Candidate images
//! must share an element signature (order, class size, number of `p`-th
//! roots, signature data of the `p`-th power); every partial assignment is
//! extended to the subgroup it generates and rejected on the first
//! inconsistency or collision.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::pgroup::{conjugacy_classes, minimal_generators};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

type Signature = (u32, usize, usize, u32, usize);

fn signatures(g: &Group) -> Vec<Signature> {
    let cc = conjugacy_classes(g);
    let p = g.prime() as u64;
    let n = g.order();
    let mut roots = vec![0usize; n];
    for x in 0..n {
        roots[g.pow(x, p)] += 1;
    }
    (0..n)
        .map(|x| {
            let y = g.pow(x, p);
            (g.elem_order(x), cc.size_of(x), roots[x], g.elem_order(y), cc.size_of(y))
        })
        .collect()
}

fn generating_set(g: &Group) -> Vec<usize> {
    if g.is_p_group() {
        minimal_generators(g)
    } else {
        g.generators().to_vec()
    }
}

/// An isomorphism `A -> B` as an image table, or `None` if the groups are
/// not isomorphic. Uses [`DEFAULT_BUDGET`] node visits.
pub fn isomorphic(a: &Group, b: &Group) -> Result<Option<Vec<usize>>> {
    isomorphic_with_budget(a, b, DEFAULT_BUDGET)
}

pub fn isomorphic_with_budget(a: &Group, b: &Group, budget: u64) -> Result<Option<Vec<usize>>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut ha = sa.clone();
    let mut hb = sb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return Ok(None);
    }
    let gens = generating_set(a);
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&s| (0..b.order()).filter(|&y| sb[y] == sa[s]).collect()).collect();
    let mut search = Search { a, b, sa: &sa, sb: &sb, gens: &gens, candidates, visits: 0, budget };
    let mut map = vec![usize::MAX; a.order()];
    let mut rev = vec![usize::MAX; b.order()];
    map[0] = 0;
    rev[0] = 0;
    let found = search.extend(0, map, rev, Vec::new())?;
    if let Some(f) = &found {
        if !is_isomorphism(a, b, f) {
            return Err(Error::AssertionFailed("isomorphism witness failed verification".into()));
        }
    }
    Ok(found)
}

struct Search<'a> {
    a: &'a Group,
    b: &'a Group,
    sa: &'a [Signature],
    sb: &'a [Signature],
    gens: &'a [usize],
    candidates: Vec<Vec<usize>>,
    visits: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize, map: Vec<usize>, rev: Vec<usize>, images: Vec<usize>) -> Result<Option<Vec<usize>>> {
        if depth == self.gens.len() {
            return Ok(map.iter().all(|&y| y != usize::MAX).then_some(map));
        }
        for ci in 0..self.candidates[depth].len() {
            let y = self.candidates[depth][ci];
            self.visits += 1;
            if self.visits > self.budget {
                return Err(Error::SearchBudgetExceeded { budget: self.budget });
            }
            let mut imgs = images.clone();
            imgs.push(y);
            if let Some((m, r)) = self.propagate(&map, &rev, &imgs) {
                if let Some(f) = self.extend(depth + 1, m, r, imgs)? {
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    }

    /// Extends the map over the subgroup generated by the assigned
    /// generators via `f(x s) = f(x) f(s)`.
    fn propagate(&self, map: &[usize], rev: &[usize], images: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
        let (a, b) = (self.a, self.b);
        let mut map = map.to_vec();
        let mut rev = rev.to_vec();
        map[0] = 0;
        rev[0] = 0;
        let mut queue: Vec<usize> = (0..a.order()).filter(|&x| map[x] != usize::MAX).collect();
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (k, &img) in images.iter().enumerate() {
                let s = self.gens[k];
                let xs = a.mul(x, s);
                let target = b.mul(map[x], img);
                if map[xs] == usize::MAX {
                    if rev[target] != usize::MAX || self.sa[xs] != self.sb[target] {
                        return None;
                    }
                    map[xs] = target;
                    rev[target] = xs;
                    queue.push(xs);
                } else if map[xs] != target {
                    return None;
                }
            }
        }
        Some((map, rev))
    }
}

/// Checks that `f` is a bijective homomorphism `A -> B`.
pub fn is_isomorphism(a: &Group, b: &Group, f: &[usize]) -> bool {
    if a.order() != b.order() || f.len() != a.order() {
        return false;
    }
    let mut hit = vec![false; b.order()];
    for &y in f {
        if y >= b.order() || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    is_homomorphism(a, b, f)
}

pub fn is_homomorphism(a: &Group, b: &Group, f: &[usize]) -> bool {
    (0..a.order()).all(|x| (0..a.order()).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_groups() {
        let t = Group::trivial();
        assert_eq!(isomorphic(&t, &t).unwrap(), Some(vec![0]));
    }
    use crate::group::direct_product;
    use crate::pgroup::tests::{d8, q8};

    #[test]
    fn identical_tables() {
        let g = d8();
        let f = isomorphic(&g, &g).unwrap().unwrap();
        assert!(is_isomorphism(&g, &g, &f));
    }

    #[test]
    fn small_negatives() {
        assert!(isomorphic(&Group::cyclic(4), &Group::abelian(&[2, 2]).unwrap()).unwrap().is_none());
        assert!(isomorphic(&d8(), &q8()).unwrap().is_none());
        assert!(isomorphic(&Group::cyclic(4), &Group::cyclic(8)).unwrap().is_none());
    }

    #[test]
    fn relabeled_copy() {
        let g = direct_product(&d8(), &Group::cyclic(4)).unwrap();
        let n = g.order();
        let perm: Vec<usize> = std::iter::once(0).chain((1..n).rev()).collect();
        let h = g.relabel(&perm);
        let f = isomorphic(&g, &h).unwrap().unwrap();
        assert!(is_isomorphism(&g, &h, &f));
    }

    #[test]
    fn c6_is_c2_times_c3() {
        let c6 = Group::cyclic(6);
        let c2c3 = direct_product(&Group::cyclic(2), &Group::cyclic(3)).unwrap();
        assert!(isomorphic(&c6, &c2c3).unwrap().is_some());
    }

    #[test]
    fn budget_is_reported() {
        let g = Group::abelian(&[2, 2, 2, 2]).unwrap();
        let h = g.relabel(&std::iter::once(0).chain((1..16).rev()).collect::<Vec<_>>());
        assert_eq!(isomorphic_with_budget(&g, &h, 1), Err(Error::SearchBudgetExceeded { budget: 1 }));
    }
}
