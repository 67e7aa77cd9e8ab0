//! Subgroup machinery for finite p-groups: filtration subgroups, conjugacy
//! classes and the counting invariants `k_n`, `a_n`.

use std::collections::{HashMap, HashSet};

use crate::bits::ElementSet;
use crate::group::{Group, Subgroup};

fn p_power(g: &Group, n: u32) -> u64 {
    (g.prime() as u64).pow(n)
}

pub fn center(g: &Group) -> Subgroup {
    let gens = g.generators();
    let members = (0..g.order()).filter(|&z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z)));
    Subgroup::from_members(ElementSet::from_indices(g.order(), members))
}

pub fn centralizer(g: &Group, set: &ElementSet) -> Subgroup {
    let members = (0..g.order()).filter(|&z| set.iter().all(|s| g.mul(z, s) == g.mul(s, z)));
    Subgroup::from_members(ElementSet::from_indices(g.order(), members))
}

/// `[A, B]`, the subgroup generated by all `[a, b]`.
pub fn commutator_of(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let bs = b.elements();
    let comms: Vec<usize> = a.members().iter().flat_map(|x| bs.iter().map(move |&y| (x, y))).map(|(x, y)| g.commutator(x, y)).collect();
    g.closure(comms)
}

/// `γ(G) = [G, G]`.
pub fn commutator_subgroup(g: &Group) -> Subgroup {
    let w = Subgroup::whole(g);
    commutator_of(g, &w, &w)
}

/// `γ_1 = G, γ_(i+1) = [γ_i, G]`, down to the trivial group (or a fixed point
/// for non-nilpotent groups).
pub fn lower_central_series(g: &Group) -> Vec<Subgroup> {
    let w = Subgroup::whole(g);
    let mut series = vec![w.clone()];
    loop {
        let next = commutator_of(g, series.last().unwrap(), &w);
        if &next == series.last().unwrap() {
            return series;
        }
        let done = next.is_trivial();
        series.push(next);
        if done {
            return series;
        }
    }
}

/// Nilpotency class (`None` if not nilpotent).
pub fn nilpotency_class(g: &Group) -> Option<usize> {
    let s = lower_central_series(g);
    s.last().unwrap().is_trivial().then(|| s.len() - 1)
}

/// `Ω_n(G) = <g : g^(p^n) = 1>`.
pub fn omega_n(g: &Group, n: u32) -> Subgroup {
    let e = p_power(g, n);
    g.closure((0..g.order()).filter(|&x| g.pow(x, e) == 0))
}

/// `℧_n(G) = <g^(p^n)>`.
pub fn mho_n(g: &Group, n: u32) -> Subgroup {
    g.closure(g.power_set(p_power(g, n)).iter())
}

/// `℧*_n(G) = ℧_n(G) γ(G)`.
pub fn mho_star_n(g: &Group, n: u32) -> Subgroup {
    g.join(&mho_n(g, n), &commutator_subgroup(g))
}

/// `Ω*_n(G) = Ω_n(Z(G))`.
pub fn omega_star_n(g: &Group, n: u32) -> Subgroup {
    let e = p_power(g, n);
    g.closure(center(g).members().iter().filter(|&z| g.pow(z, e) == 0))
}

pub fn frattini(g: &Group) -> Subgroup {
    mho_star_n(g, 1)
}

pub fn socle(g: &Group) -> Subgroup {
    omega_star_n(g, 1)
}

/// `log_p |G : Frat(G)|`, the minimal number of generators.
pub fn dg(g: &Group) -> u32 {
    log_p(g.prime(), g.order() / frattini(g).order())
}

pub(crate) fn log_p(p: u32, mut n: usize) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p as usize;
        k += 1;
    }
    k
}

/// A generating set of size `dg(G)`: elements outside `Frat(G)` picked in
/// index order, each outside the subgroup generated by `Frat(G)` and the
/// previous picks.
pub fn minimal_generators(g: &Group) -> Vec<usize> {
    let mut h = frattini(g);
    let mut gens = Vec::new();
    for x in 0..g.order() {
        if h.order() == g.order() {
            break;
        }
        if !h.contains(x) {
            gens.push(x);
            h = g.closure(h.members().iter().chain([x]));
        }
    }
    gens
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl ConjugacyClasses {
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn size_of(&self, x: usize) -> usize {
        self.classes[self.class_of[x]].len()
    }
}

/// Classes in order of their smallest element; each class is sorted.
pub fn conjugacy_classes(g: &Group) -> ConjugacyClasses {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = vec![x];
        class_of[x] = c;
        let mut i = 0;
        while i < members.len() {
            let y = members[i];
            for &s in g.generators() {
                let z = g.conjugate(y, s);
                if class_of[z] == usize::MAX {
                    class_of[z] = c;
                    members.push(z);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }
    ConjugacyClasses { class_of, classes }
}

/// Number of conjugacy classes containing a `p^n`-th power.
pub fn k_n(g: &Group, n: u32) -> usize {
    k_n_with(g, &conjugacy_classes(g), n)
}

pub fn k_n_with(g: &Group, cc: &ConjugacyClasses, n: u32) -> usize {
    let hit: HashSet<usize> = g.power_set(p_power(g, n)).iter().map(|x| cc.class_of(x)).collect();
    hit.len()
}

#[derive(Clone, Debug)]
pub struct MaximalElementary {
    pub subgroup: Subgroup,
    pub rank: u32,
    /// Index of the conjugacy orbit, numbered in order of first appearance.
    pub orbit: usize,
}

/// Every elementary abelian subgroup, found by extending by commuting
/// elements of order `p`, starting from the trivial subgroup.
pub fn elementary_abelian_subgroups(g: &Group) -> Vec<Subgroup> {
    let p = g.prime();
    let order_p: Vec<usize> = (1..g.order()).filter(|&x| g.elem_order(x) == p).collect();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let start = Subgroup::trivial(g);
    seen.insert(start.clone());
    let mut frontier = vec![start];
    let mut all = Vec::new();
    while let Some(e) = frontier.pop() {
        let cent = centralizer(g, e.members());
        for &x in &order_p {
            if e.contains(x) || !cent.contains(x) {
                continue;
            }
            let bigger = g.closure(e.members().iter().chain([x]));
            if seen.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
        all.push(e);
    }
    all.sort();
    all
}

pub fn maximal_elementary_abelian(g: &Group) -> Vec<MaximalElementary> {
    let p = g.prime();
    let all = elementary_abelian_subgroups(g);
    let maximal: Vec<Subgroup> = all
        .iter()
        .filter(|e| {
            let cent = centralizer(g, e.members());
            !(1..g.order()).any(|x| g.elem_order(x) == p && !e.contains(x) && cent.contains(x))
        })
        .cloned()
        .collect();
    let index: HashMap<&Subgroup, usize> = maximal.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut orbit = vec![usize::MAX; maximal.len()];
    let mut next = 0;
    for i in 0..maximal.len() {
        if orbit[i] != usize::MAX {
            continue;
        }
        orbit[i] = next;
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            for &s in g.generators() {
                let conj = ElementSet::from_indices(g.order(), maximal[j].members().iter().map(|x| g.conjugate(x, s)));
                let k = index[&Subgroup::from_members(conj)];
                if orbit[k] == usize::MAX {
                    orbit[k] = next;
                    stack.push(k);
                }
            }
        }
        next += 1;
    }
    maximal
        .into_iter()
        .zip(orbit)
        .map(|(subgroup, orbit)| {
            let rank = log_p(p, subgroup.order());
            MaximalElementary { subgroup, rank, orbit }
        })
        .collect()
}

/// Number of conjugacy classes of maximal elementary abelian subgroups of
/// rank `n`.
pub fn a_n(g: &Group, n: u32) -> usize {
    a_n_from(&maximal_elementary_abelian(g), n)
}

pub fn a_n_from(maximal: &[MaximalElementary], n: u32) -> usize {
    let orbits: HashSet<usize> = maximal.iter().filter(|m| m.rank == n).map(|m| m.orbit).collect();
    orbits.len()
}

/// A 2-group generated by two elements of order 2 (the Klein four group
/// included, the trivial group and `C_2` excluded).
pub fn is_dihedral(g: &Group) -> bool {
    if g.prime() != 2 || !g.is_p_group() || g.order() < 4 {
        return false;
    }
    let inv: Vec<usize> = (1..g.order()).filter(|&x| g.elem_order(x) == 2).collect();
    inv.iter().enumerate().any(|(i, &x)| inv[i + 1..].iter().any(|&y| g.closure([x, y]).order() == g.order()))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::perm::group_from_permutations;

    pub(crate) fn d8() -> Group {
        group_from_permutations(4, &[vec![2, 3, 4, 1], vec![3, 2, 1, 4]]).unwrap()
    }

    pub(crate) fn q8() -> Group {
        group_from_permutations(
            8,
            &[vec![2, 4, 6, 7, 3, 8, 1, 5], vec![3, 5, 4, 8, 7, 2, 6, 1]],
        )
        .unwrap()
    }

    #[test]
    fn q8_is_quaternion() {
        let q = q8();
        assert_eq!(q.order(), 8);
        assert_eq!((1..8).filter(|&x| q.elem_order(x) == 2).count(), 1);
    }

    #[test]
    fn centers_and_commutators() {
        let d = d8();
        assert_eq!(center(&d).order(), 2);
        assert_eq!(commutator_subgroup(&d), center(&d));
        let q = q8();
        assert_eq!(commutator_subgroup(&q).order(), 2);
        let a = Group::abelian(&[4, 2]).unwrap();
        assert_eq!(center(&a).order(), 8);
        assert!(commutator_subgroup(&a).is_trivial());
    }

    #[test]
    fn omega_and_mho() {
        let a = Group::abelian(&[4, 2]).unwrap();
        assert!(omega_n(&a, 0).is_trivial());
        assert_eq!(mho_n(&a, 0).order(), 8);
        assert_eq!(omega_n(&a, 1).order(), 4);
        assert_eq!(mho_n(&a, 1).order(), 2);
        assert_eq!(mho_star_n(&a, 1), mho_n(&a, 1));
        let d = d8();
        assert_eq!(omega_n(&d, 1).order(), 8);
        assert_eq!(socle(&d).order(), 2);
        assert_eq!(socle(&d), frattini(&d));
    }

    #[test]
    fn classes() {
        let d = d8();
        let cc = conjugacy_classes(&d);
        let mut s = cc.sizes();
        s.sort();
        assert_eq!(s, vec![1, 1, 2, 2, 2]);
        assert_eq!(conjugacy_classes(&q8()).len(), 5);
        assert_eq!(conjugacy_classes(&Group::cyclic(8)).len(), 8);
        assert_eq!(cc.classes()[cc.class_of(0)], vec![0]);
    }

    #[test]
    fn counting_invariants() {
        let d = d8();
        assert_eq!(k_n(&d, 0), 5);
        assert_eq!(k_n(&d, 1), 2);
        assert_eq!(a_n(&d, 2), 2);
        assert_eq!(a_n(&d, 1), 0);
        assert_eq!(a_n(&q8(), 2), 0);
        assert_eq!(a_n(&q8(), 1), 1);
        let c3 = Group::cyclic(3);
        assert_eq!(a_n(&c3, 1), 1);
        assert_eq!(a_n(&c3, 2), 0);
        assert_eq!(dg(&c3), 1);
        assert_eq!(dg(&d), 2);
    }

    #[test]
    fn minimal_generators_have_size_dg() {
        let g = crate::group::direct_product(&d8(), &Group::abelian(&[4, 2]).unwrap()).unwrap();
        let gens = minimal_generators(&g);
        assert_eq!(gens.len() as u32, dg(&g));
        assert_eq!(g.closure(gens).order(), g.order());
    }

    #[test]
    fn dihedral_recognition() {
        assert!(is_dihedral(&d8()));
        assert!(is_dihedral(&Group::abelian(&[2, 2]).unwrap()));
        assert!(!is_dihedral(&q8()));
        assert!(!is_dihedral(&Group::cyclic(4)));
        assert!(!is_dihedral(&Group::abelian(&[2, 2, 2]).unwrap()));
    }

    #[test]
    fn class_of_d8() {
        assert_eq!(nilpotency_class(&d8()), Some(2));
        assert_eq!(nilpotency_class(&Group::cyclic(4)), Some(1));
        assert_eq!(nilpotency_class(&Group::trivial()), Some(0));
    }
}
