//! Elementary decompositions `G = T × U` and the reduction to `U`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{AlgebraSubspace, GroupAlgebra, SeedPath};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::invariants::{compare, fingerprint, Verdict};
use crate::linalg::Basis;
use crate::pgroup::{center, frattini, log_p, socle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDecomposition {
    /// Elementary abelian, central, meeting `Frat(G)` trivially.
    pub t: Subgroup,
    /// Contains `Frat(G)`.
    pub u: Subgroup,
    pub soc: Subgroup,
    pub frat: Subgroup,
    /// `log_p |T|`.
    pub rank: u32,
}

/// A subgroup `H ⊆ G` as a group, together with a map back into `G`.
fn inside(g: &Group, h: &Subgroup, f: impl Fn(&Group) -> Subgroup) -> Subgroup {
    let (hg, embed) = g.subgroup_as_group(h);
    g.closure(f(&hg).members().iter().map(|x| embed[x]))
}

/// Picks elements of `candidates` outside the growing closure of `base`.
fn extend_basis(g: &Group, base: &Subgroup, candidates: &[usize]) -> Vec<usize> {
    let mut cur = base.clone();
    let mut picks = Vec::new();
    for &x in candidates {
        if !cur.contains(x) {
            picks.push(x);
            cur = g.closure(cur.members().iter().chain([x]));
        }
    }
    picks
}

pub fn elementary_decomposition(g: &Group) -> Result<ElementaryDecomposition> {
    decompose(g, None::<&mut rand_chacha::ChaCha8Rng>)
}

/// As [`elementary_decomposition`] with the candidate order shuffled by `rng`.
pub fn elementary_decomposition_random<R: Rng + ?Sized>(g: &Group, rng: &mut R) -> Result<ElementaryDecomposition> {
    decompose(g, Some(rng))
}

fn decompose<R: Rng + ?Sized>(g: &Group, rng: Option<&mut R>) -> Result<ElementaryDecomposition> {
    g.require_p_group()?;
    let soc = socle(g);
    let frat = frattini(g);
    let soc_frat = soc.intersection(&frat);

    let mut soc_elems = soc.elements();
    let mut all: Vec<usize> = (0..g.order()).collect();
    if let Some(r) = rng {
        soc_elems.shuffle(r);
        all.shuffle(r);
    }
    let t_gens = extend_basis(g, &soc_frat, &soc_elems);
    let t = g.closure(t_gens.iter().copied());
    let u_gens = extend_basis(g, &g.join(&soc, &frat), &all);
    let u = g.closure(frat.elements().into_iter().chain(u_gens));

    let dec = ElementaryDecomposition { rank: t_gens.len() as u32, t, u, soc, frat };
    dec.verify(g)?;
    Ok(dec)
}

impl ElementaryDecomposition {
    /// `|G| / |Soc(G) : Soc(G) ∩ Frat(G)|`.
    pub fn reduced_order(&self, g: &Group) -> usize {
        g.order() * self.soc.intersection(&self.frat).order() / self.soc.order()
    }

    /// Internal direct product, both conditions of the definition and the
    /// equalities `Soc(G) = T × Soc(U)`, `Frat(G) = Frat(U)`.
    pub fn verify(&self, g: &Group) -> Result<()> {
        let fail = |what: &str| Err(Error::AssertionFailed(format!("elementary decomposition: {what}")));
        let (t, u) = (&self.t, &self.u);
        let index = self.soc.order() / self.soc.intersection(&self.frat).order();
        if !t.members().iter().all(|x| x == 0 || g.elem_order(x) == g.prime()) {
            return fail("T is not elementary abelian");
        }
        if !t.is_subgroup_of(&center(g)) {
            return fail("T is not central");
        }
        if !t.intersection(u).is_trivial() || t.order() * u.order() != g.order() {
            return fail("G is not T × U");
        }
        if !g.is_normal(u) {
            return fail("U is not normal");
        }
        if !t.intersection(&self.frat).is_trivial() || t.order() != index {
            return fail("condition (i)");
        }
        if g.join(&self.soc, u).order() != g.order() || u.order() != g.order() / index {
            return fail("condition (ii)");
        }
        let soc_u = inside(g, u, socle);
        if !t.intersection(&soc_u).is_trivial() || g.join(t, &soc_u) != self.soc {
            return fail("Soc(G) = T × Soc(U)");
        }
        if inside(g, u, frattini) != self.frat {
            return fail("Frat(G) = Frat(U)");
        }
        Ok(())
    }

    /// `π(g)` with `g = t π(g)`, `t ∈ T`, `π(g) ∈ U`.
    pub fn projection(&self, g: &Group) -> Vec<usize> {
        let mut proj = vec![0; g.order()];
        for t in self.t.members().iter() {
            for u in self.u.members().iter() {
                proj[g.mul(t, u)] = u;
            }
        }
        proj
    }

    pub fn t_group(&self, g: &Group) -> Group {
        g.subgroup_as_group(&self.t).0
    }

    pub fn u_group(&self, g: &Group) -> Group {
        g.subgroup_as_group(&self.u).0
    }
}

/// The natural maps `G/Soc(G) → U/Soc(U)` and `Frat(G) → Frat(U)` intertwine
/// the `p`-th power maps.
pub fn power_structure_commutes(g: &Group, dec: &ElementaryDecomposition) -> bool {
    let p = g.prime() as u64;
    let proj = dec.projection(g);
    let soc_u = inside(g, &dec.u, socle);
    let soc_maps = g.closure(dec.soc.members().iter().map(|x| proj[x])) == soc_u;
    let frat_fixed = dec.frat.members().iter().all(|x| proj[x] == x);
    soc_maps && frat_fixed && (0..g.order()).all(|x| g.pow(x, p) == g.pow(proj[x], p))
}

/// The ideal `I = Δ(FT)FG` with its checks.
#[derive(Clone, Debug)]
pub struct ElementaryIdeal {
    pub ideal: AlgebraSubspace,
    pub codim: usize,
    pub expected_codim: usize,
    /// `I Δ^(n-1) + Δ^(n+1) = Δ(F Soc(G)) Δ^(n-1) + Δ^(n+1)` for `n = 1..`.
    pub filtration: Vec<bool>,
    /// `FG = I ⊕ FU`.
    pub split: bool,
    /// The projection `FG → FU` along `I` sends each `g` to a group element
    /// and is multiplicative on group elements.
    pub structure_constants: bool,
}

impl ElementaryIdeal {
    pub fn passed(&self) -> bool {
        self.codim == self.expected_codim && self.filtration.iter().all(|&b| b) && self.split && self.structure_constants
    }
}

pub fn elementary_ideal(g: &Group, dec: &ElementaryDecomposition) -> Result<ElementaryIdeal> {
    let fg = GroupAlgebra::new(g)?;
    elementary_ideal_with(&fg, dec)
}

pub fn elementary_ideal_with(fg: &GroupAlgebra, dec: &ElementaryDecomposition) -> Result<ElementaryIdeal> {
    let g = fg.group();
    let i = fg.relative_augmentation(&dec.t);
    let powers = fg.delta_powers();
    let soc_aug = fg.subgroup_augmentation(&dec.soc);
    let zero = crate::linalg::Subspace::zero(fg.p(), fg.dim());
    let filtration = (1..powers.len())
        .map(|n| {
            let next = powers.get(n + 1).unwrap_or(&zero);
            let lhs = fg.product(&i, &powers[n - 1]).sum(next);
            let rhs = fg.product(&soc_aug, &powers[n - 1]).sum(next);
            lhs == rhs
        })
        .collect();

    let fu = fg.subgroup_algebra(&dec.u);
    let split = i.is_direct_with(&fu) && i.dim() + fu.dim() == fg.dim();

    let u_elems = dec.u.elements();
    let mut family: Vec<_> = i.basis().to_vec();
    let offset = family.len();
    family.extend(u_elems.iter().map(|&u| fg.element(u)));
    let structure_constants = split
        && match Basis::new(fg.p(), fg.dim(), family) {
            None => false,
            Some(basis) => {
                let image = |x: usize| -> Option<usize> {
                    let coords = basis.coordinates(&fg.element(x))?;
                    let tail = &coords[offset..];
                    let mut hit = tail.iter().enumerate().filter(|(_, &c)| c != 0);
                    match (hit.next(), hit.next()) {
                        (Some((k, &1)), None) => Some(u_elems[k]),
                        _ => None,
                    }
                };
                let images: Option<Vec<usize>> = (0..g.order()).map(image).collect();
                match images {
                    None => false,
                    Some(f) => {
                        let proj = dec.projection(g);
                        f == proj && (0..g.order()).all(|x| (0..g.order()).all(|y| f[g.mul(x, y)] == g.mul(f[x], f[y])))
                    }
                }
            }
        };

    let codim = i.codim();
    Ok(ElementaryIdeal {
        ideal: fg.classify(i, vec![SeedPath::SpanningFamily]),
        codim,
        expected_codim: dec.reduced_order(g),
        filtration,
        split,
        structure_constants,
    })
}

/// Comparison after stripping elementary abelian direct factors.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub rank_left: u32,
    pub rank_right: u32,
    pub u_order_left: usize,
    pub u_order_right: usize,
    pub verdict: Verdict,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "reduced G = C_p^{} × U (|U| = {}), H = C_p^{} × V (|V| = {}): {}",
            self.rank_left, self.u_order_left, self.rank_right, self.u_order_right, self.verdict
        )
    }
}

pub fn reduce_and_compare(g: &Group, h: &Group) -> Result<Reduction> {
    let dg = elementary_decomposition(g)?;
    let dh = elementary_decomposition(h)?;
    let (u, v) = (dg.u_group(g), dh.u_group(h));
    let verdict = if g.prime() != h.prime() || dg.rank != dh.rank {
        Verdict::Distinguished {
            field: "rank(T)".into(),
            left: dg.rank.to_string(),
            right: dh.rank.to_string(),
            also: Vec::new(),
        }
    } else {
        compare(&fingerprint(&u, None)?, &fingerprint(&v, None)?)
    };
    Ok(Reduction {
        rank_left: dg.rank,
        rank_right: dh.rank,
        u_order_left: u.order(),
        u_order_right: v.order(),
        verdict,
    })
}

/// `log_p |T|` predicted from `Soc` and `Frat` alone.
pub fn predicted_rank(g: &Group) -> u32 {
    let soc = socle(g);
    log_p(g.prime(), soc.order() / soc.intersection(&frattini(g)).order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;
    use crate::iso::isomorphic;
    use crate::pgroup::tests::{d8, q8};
    use rand::SeedableRng;

    #[test]
    fn elementary_abelian() {
        let g = Group::abelian(&[2, 2, 2]).unwrap();
        let d = elementary_decomposition(&g).unwrap();
        assert_eq!(d.t.order(), 8);
        assert!(d.u.is_trivial());
    }

    #[test]
    fn dihedral_has_no_factor() {
        let d = elementary_decomposition(&d8()).unwrap();
        assert!(d.t.is_trivial());
        assert_eq!(d.u.order(), 8);
    }

    #[test]
    fn c2_times_d8() {
        let g = direct_product(&Group::cyclic(2), &d8()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for k in 0..10 {
            let d = if k == 0 {
                elementary_decomposition(&g).unwrap()
            } else {
                elementary_decomposition_random(&g, &mut rng).unwrap()
            };
            assert_eq!(d.rank, 1);
            assert!(isomorphic(&d.u_group(&g), &d8()).unwrap().is_some());
            assert!(power_structure_commutes(&g, &d));
            let e = elementary_ideal(&g, &d).unwrap();
            assert_eq!(e.codim, 8);
            assert!(e.passed(), "{e:?}");
        }
    }

    #[test]
    fn c2_c2_q8() {
        let g = direct_product(&Group::abelian(&[2, 2]).unwrap(), &q8()).unwrap();
        let d = elementary_decomposition(&g).unwrap();
        assert_eq!(d.rank, predicted_rank(&g));
        let e = elementary_ideal(&g, &d).unwrap();
        assert_eq!(e.codim, 8);
        assert!(e.passed());
    }

    #[test]
    fn reduction_verdicts() {
        let c2 = Group::cyclic(2);
        let a = direct_product(&c2, &d8()).unwrap();
        let b = direct_product(&c2, &q8()).unwrap();
        let r = reduce_and_compare(&a, &b).unwrap();
        assert!(r.verdict.is_distinguished());
        assert_eq!((r.u_order_left, r.u_order_right), (8, 8));
        assert!(!reduce_and_compare(&a, &a).unwrap().verdict.is_distinguished());
        let x = Group::abelian(&[4, 2]).unwrap();
        let y = Group::abelian(&[2, 2, 2]).unwrap();
        assert!(reduce_and_compare(&x, &y).unwrap().verdict.is_distinguished());
    }
}
