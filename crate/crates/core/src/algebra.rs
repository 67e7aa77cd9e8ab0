//! The modular group algebra `F_p G` as exact linear algebra.
//!
//! Elements are [`FpVec`]s indexed by group elements; subspaces and ideals are
//! [`Subspace`]s in reduced row echelon form. Only the prime field is used.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::linalg::{kernel, FpVec, Subspace};
use crate::pgroup::{commutator_subgroup, conjugacy_classes, minimal_generators, ConjugacyClasses};

/// Largest `log_p |X|` for which a subspace `X` is enumerated element by
/// element.
pub const EXHAUSTIVE_DIM_GUARD: usize = 20;

/// How the `p^m`-th power images of a subspace were turned into ideal seeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeedPath {
    /// Every vector of the subspace was raised to the power.
    Exhaustive,
    /// Only the basis vectors were; exact because the power map is additive
    /// on the subspace modulo the rest of the ideal.
    SpanningFamily,
}

impl fmt::Display for SeedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedPath::Exhaustive => "exhaustive",
            SeedPath::SpanningFamily => "spanning-family",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SeedPolicy {
    /// Spanning family when valid, otherwise exhaustive under the guard.
    #[default]
    Auto,
    Exhaustive,
    SpanningFamily,
}

/// Generators of an ideal closure.
#[derive(Clone, Copy, Debug)]
pub enum Seed<'a> {
    Span(&'a Subspace),
    /// The set `{x^(p^m) : x in X}`.
    Powers { of: &'a Subspace, m: u32 },
}

/// A subspace together with its verified ideal flags and the seed paths used
/// to build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSubspace {
    pub space: Subspace,
    pub is_left_ideal: bool,
    pub is_right_ideal: bool,
    pub paths: Vec<SeedPath>,
}

impl AlgebraSubspace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.space.codim()
    }

    pub fn is_ideal(&self) -> bool {
        self.is_left_ideal && self.is_right_ideal
    }
}

#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    group: Group,
    p: u32,
    gens: Vec<usize>,
    classes: ConjugacyClasses,
}

impl GroupAlgebra {
    pub fn new(group: &Group) -> Result<Self> {
        let p = group.require_p_group()?;
        Ok(GroupAlgebra {
            group: group.clone(),
            p,
            gens: minimal_generators(group),
            classes: conjugacy_classes(group),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn zero(&self) -> FpVec {
        FpVec::zeros(self.p, self.dim())
    }

    pub fn one(&self) -> FpVec {
        self.element(0)
    }

    pub fn element(&self, g: usize) -> FpVec {
        FpVec::unit(self.p, self.dim(), g)
    }

    /// `g - 1`.
    pub fn minus_one(&self, g: usize) -> FpVec {
        let mut v = self.element(g);
        v.add_at(0, self.p - 1);
        v
    }

    pub fn mul(&self, x: &FpVec, y: &FpVec) -> FpVec {
        let mut out = self.zero();
        let ys = y.support();
        for (g, a) in x.support() {
            for &(h, b) in &ys {
                out.add_at(self.group.mul(g, h), a * b % self.p);
            }
        }
        out
    }

    /// `x g`.
    pub fn mul_right(&self, x: &FpVec, g: usize) -> FpVec {
        let mut out = self.zero();
        for (h, a) in x.support() {
            out.set(self.group.mul(h, g), a);
        }
        out
    }

    /// `g x`.
    pub fn mul_left(&self, g: usize, x: &FpVec) -> FpVec {
        let mut out = self.zero();
        for (h, a) in x.support() {
            out.set(self.group.mul(g, h), a);
        }
        out
    }

    pub fn pow(&self, x: &FpVec, k: u64) -> FpVec {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `x^(p^m)`.
    pub fn p_power(&self, x: &FpVec, m: u32) -> FpVec {
        (0..m).fold(x.clone(), |acc, _| self.pow(&acc, self.p as u64))
    }

    /// The augmentation `ε(x)`, the coefficient sum.
    pub fn augmentation(&self, x: &FpVec) -> u32 {
        x.coefficient_sum()
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.p, self.dim())
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = FpVec>) -> Subspace {
        Subspace::span(self.p, self.dim(), vectors)
    }

    /// `Δ(FG) = span{g - 1 : g != 1}`.
    pub fn augmentation_ideal(&self) -> Subspace {
        self.span((1..self.dim()).map(|g| self.minus_one(g)))
    }

    /// `[Δ^0, Δ^1, ..., Δ^c]` with `Δ^c = 0` the first zero power.
    pub fn delta_powers(&self) -> Vec<Subspace> {
        let mut out = vec![self.whole(), self.augmentation_ideal()];
        while !out.last().unwrap().is_zero() {
            assert!(out.len() <= self.dim() + 1, "Δ is not nilpotent");
            let prev = out.last().unwrap();
            // Δ is the left ideal generated by the s - 1, so
            // Δ^(n-1) Δ = Σ_s Δ^(n-1) (s - 1).
            let next = self.span(prev.basis().iter().flat_map(|b| {
                self.gens.iter().map(move |&s| {
                    let mut v = self.mul_right(b, s);
                    v.sub(b);
                    v
                })
            }));
            out.push(next);
        }
        out
    }

    /// `Δ^n`, with `Δ^0 = FG`.
    pub fn delta_power(&self, n: usize) -> Subspace {
        let powers = self.delta_powers();
        powers.get(n).cloned().unwrap_or_else(|| Subspace::zero(self.p, self.dim()))
    }

    /// Least `c` with `Δ^c = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.delta_powers().len() - 1
    }

    /// `FH = span{h : h in H}`.
    pub fn subgroup_algebra(&self, h: &Subgroup) -> Subspace {
        self.span(h.members().iter().map(|x| self.element(x)))
    }

    /// `Δ(FH) = span{h - 1 : h in H}`.
    pub fn subgroup_augmentation(&self, h: &Subgroup) -> Subspace {
        self.span(h.members().iter().filter(|&x| x != 0).map(|x| self.minus_one(x)))
    }

    /// `Δ(FN) FG = span{(n - 1) g}`.
    pub fn relative_augmentation(&self, n: &Subgroup) -> Subspace {
        let ngens = generating_set(&self.group, n);
        self.span(
            ngens
                .iter()
                .flat_map(|&t| (0..self.dim()).map(move |g| (t, g)))
                .map(|(t, g)| self.mul_right(&self.minus_one(t), g)),
        )
    }

    /// `γ(FG) = span{gh - hg}`.
    pub fn commutator_subspace(&self) -> Subspace {
        let n = self.dim();
        let mut s = Subspace::zero(self.p, n);
        for g in 0..n {
            for h in g + 1..n {
                let (a, b) = (self.group.mul(g, h), self.group.mul(h, g));
                if a != b {
                    let mut v = self.element(a);
                    v.add_at(b, self.p - 1);
                    s.insert(v);
                }
            }
        }
        s
    }

    pub fn class_sums(&self) -> Vec<FpVec> {
        self.classes
            .classes()
            .iter()
            .map(|c| {
                let mut v = self.zero();
                for &x in c {
                    v.set(x, 1);
                }
                v
            })
            .collect()
    }

    /// `Z(FG)`, spanned by the class sums.
    pub fn center(&self) -> Subspace {
        self.span(self.class_sums())
    }

    /// `span{x y : x in A, y in B}`.
    pub fn product(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut s = Subspace::zero(self.p, self.dim());
        for x in a.basis() {
            for y in b.basis() {
                s.insert(self.mul(x, y));
                if s.dim() == self.dim() {
                    return s;
                }
            }
        }
        s
    }

    pub fn is_left_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| self.gens.iter().all(|&g| s.contains(&self.mul_left(g, v))))
    }

    pub fn is_right_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| self.gens.iter().all(|&g| s.contains(&self.mul_right(v, g))))
    }

    pub fn classify(&self, space: Subspace, paths: Vec<SeedPath>) -> AlgebraSubspace {
        AlgebraSubspace {
            is_left_ideal: self.is_left_ideal(&space),
            is_right_ideal: self.is_right_ideal(&space),
            space,
            paths,
        }
    }

    /// Two-sided ideal generated by a subspace.
    pub fn ideal_closure(&self, seeds: &Subspace) -> Subspace {
        let mut s = seeds.clone();
        let mut queue: Vec<FpVec> = s.basis().to_vec();
        while let Some(v) = queue.pop() {
            for &g in &self.gens {
                for w in [self.mul_left(g, &v), self.mul_right(&v, g)] {
                    if s.insert(w.clone()) {
                        queue.push(w);
                    }
                }
            }
        }
        s
    }

    /// `span{x^(p^m) : x in X}` by enumerating all of `X`.
    pub fn power_image_exhaustive(&self, x: &Subspace, m: u32) -> Result<Subspace> {
        let d = x.dim();
        if d > EXHAUSTIVE_DIM_GUARD {
            let p = self.p as u128;
            return Err(Error::SeedEnumerationTooLarge {
                size: p.saturating_pow(d as u32),
                guard: p.pow(EXHAUSTIVE_DIM_GUARD as u32),
            });
        }
        let mut out = Subspace::zero(self.p, self.dim());
        let mut coeffs = vec![0u32; d];
        loop {
            let mut v = self.zero();
            for (b, &c) in x.basis().iter().zip(&coeffs) {
                if c != 0 {
                    v.add_scaled(b, c);
                }
            }
            out.insert(self.p_power(&v, m));
            // Odometer over GF(p)^d.
            let mut i = 0;
            loop {
                if i == d {
                    return Ok(out);
                }
                coeffs[i] += 1;
                if coeffs[i] < self.p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    /// `span{b^(p^m) : b a basis vector of X}`.
    pub fn power_image_basis(&self, x: &Subspace, m: u32) -> Subspace {
        self.span(x.basis().iter().map(|b| self.p_power(b, m)))
    }

    /// `℧_m(X)` for a central subspace `X`, where the power map is linear.
    pub fn central_power_image(&self, x: &Subspace, m: u32) -> Result<Subspace> {
        if !x.is_subspace_of(&self.center()) {
            return Err(Error::ValidationFailed("subspace is not central".into()));
        }
        Ok(self.power_image_basis(x, m))
    }

    /// Smallest two-sided ideal containing all seeds.
    ///
    /// A `Powers` seed may use the spanning family only when the power map is
    /// additive modulo the ideal: when `X` is central, or when `γ(FG)` lies in
    /// the span of the `Span` seeds.
    pub fn smallest_ideal_containing(&self, seeds: &[Seed<'_>], policy: SeedPolicy) -> Result<AlgebraSubspace> {
        let mut span = Subspace::zero(self.p, self.dim());
        for s in seeds {
            if let Seed::Span(x) = s {
                span = span.sum(x);
            }
        }
        let mut commutators_included = None;
        let mut center = None;
        let mut paths = Vec::new();
        for s in seeds {
            let Seed::Powers { of, m } = *s else { continue };
            let mut additive = || {
                of.is_subspace_of(center.get_or_insert_with(|| self.center()))
                    || *commutators_included.get_or_insert_with(|| self.commutator_subspace().is_subspace_of(&span))
            };
            let path = match policy {
                SeedPolicy::Exhaustive => SeedPath::Exhaustive,
                SeedPolicy::SpanningFamily => {
                    if !additive() {
                        return Err(Error::ValidationFailed(
                            "spanning family requested for a non-additive power seed".into(),
                        ));
                    }
                    SeedPath::SpanningFamily
                }
                SeedPolicy::Auto if additive() => SeedPath::SpanningFamily,
                SeedPolicy::Auto => SeedPath::Exhaustive,
            };
            let image = match path {
                SeedPath::Exhaustive => self.power_image_exhaustive(of, m)?,
                SeedPath::SpanningFamily => self.power_image_basis(of, m),
            };
            span = span.sum(&image);
            paths.push(path);
        }
        Ok(self.classify(self.ideal_closure(&span), paths))
    }

    /// `Ω_n(Z(FG)) = {x in Z(FG) : x^(p^n) = 0}`, the kernel of the linear
    /// map `κ ↦ κ^(p^n)` on class sums.
    pub fn omega_n_center(&self, n: u32) -> Subspace {
        let sums = self.class_sums();
        let images: Vec<FpVec> = sums.iter().map(|k| self.p_power(k, n)).collect();
        kernel(self.p, &sums, &images)
    }

    /// Smallest ideal of `Z(FG)` containing the central subspace `X`.
    pub fn central_ideal_closure(&self, x: &Subspace) -> Subspace {
        let sums = self.class_sums();
        self.span(x.basis().iter().flat_map(|v| sums.iter().map(move |k| self.mul(v, k))))
    }

    /// Image of `x` under the linear extension of a map on group elements.
    pub fn push_forward(&self, x: &FpVec, f: &[usize], target: &GroupAlgebra) -> FpVec {
        let mut out = target.zero();
        for (g, a) in x.support() {
            out.add_at(f[g], a);
        }
        out
    }
}

/// A small generating set of a subgroup, picked greedily in index order.
pub fn generating_set(g: &Group, h: &Subgroup) -> Vec<usize> {
    let mut cur = Subgroup::trivial(g);
    let mut gens = Vec::new();
    for x in h.members().iter() {
        if !cur.contains(x) {
            gens.push(x);
            cur = g.closure(gens.iter().copied());
        }
    }
    gens
}

/// `Δ(F γ(G)) FG`, the ideal generated by `γ(FG)`.
pub fn commutator_ideal(fg: &GroupAlgebra) -> Subspace {
    fg.relative_augmentation(&commutator_subgroup(fg.group()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;
    use crate::pgroup::tests::{d8, q8};
    use crate::pgroup::{mho_star_n, omega_star_n};

    #[test]
    fn augmentation_ideal_dimension() {
        let fg = GroupAlgebra::new(&d8()).unwrap();
        assert_eq!(fg.augmentation_ideal().dim(), 7);
        assert_eq!(fg.augmentation_ideal().codim(), 1);
    }

    #[test]
    fn c2_square_is_zero() {
        let fg = GroupAlgebra::new(&Group::cyclic(2)).unwrap();
        assert!(fg.delta_power(2).is_zero());
        assert_eq!(fg.nilpotency_index(), 2);
    }

    #[test]
    fn d8_nilpotency_index() {
        let fg = GroupAlgebra::new(&d8()).unwrap();
        assert_eq!(fg.nilpotency_index(), 5);
        let dims: Vec<usize> = fg.delta_powers().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![8, 7, 5, 3, 1, 0]);
    }

    #[test]
    fn delta_powers_match_naive_products() {
        let fg = GroupAlgebra::new(&q8()).unwrap();
        let delta = fg.augmentation_ideal();
        let mut naive = delta.clone();
        for n in 1..=5 {
            assert_eq!(fg.delta_power(n), naive, "n = {n}");
            naive = fg.product(&naive, &delta);
        }
    }

    #[test]
    fn relative_augmentation_codims() {
        let g = Group::abelian(&[2, 2]).unwrap();
        let fg = GroupAlgebra::new(&g).unwrap();
        assert!(fg.relative_augmentation(&Subgroup::trivial(&g)).is_zero());
        assert_eq!(fg.relative_augmentation(&Subgroup::whole(&g)), fg.augmentation_ideal());
        let factor = g.closure([1]);
        assert_eq!(fg.relative_augmentation(&factor).codim(), 2);
    }

    #[test]
    fn commutators_and_center_of_d8() {
        let fg = GroupAlgebra::new(&d8()).unwrap();
        let gamma = fg.commutator_subspace();
        assert_eq!(gamma.dim(), 3);
        assert!(gamma.is_subspace_of(&fg.delta_power(2)));
        let z = fg.center();
        assert_eq!(z.dim(), 5);
        assert_eq!(z.intersection(&gamma).dim(), 5 - 2);
        let abel = GroupAlgebra::new(&Group::cyclic(4)).unwrap();
        assert!(abel.commutator_subspace().is_zero());
        assert_eq!(abel.center().dim(), 4);
    }

    #[test]
    fn center_is_the_centralizer_of_fg() {
        let fg = GroupAlgebra::new(&q8()).unwrap();
        // Independent route: kernel of x -> (g x - x g)_g.
        let n = fg.dim();
        let domain: Vec<FpVec> = (0..n).map(|i| fg.element(i)).collect();
        let images: Vec<FpVec> = domain
            .iter()
            .map(|x| {
                let parts: Vec<FpVec> = fg
                    .gens
                    .iter()
                    .map(|&g| {
                        let mut v = fg.mul_left(g, x);
                        v.sub(&fg.mul_right(x, g));
                        v
                    })
                    .collect();
                parts.iter().skip(1).fold(parts[0].clone(), |acc, v| acc.concat(v))
            })
            .collect();
        assert_eq!(kernel(2, &domain, &images), fg.center());
    }

    #[test]
    fn omega_center_examples() {
        let c4 = GroupAlgebra::new(&Group::cyclic(4)).unwrap();
        assert_eq!(c4.omega_n_center(1).dim(), 2);
        let c2 = GroupAlgebra::new(&Group::cyclic(2)).unwrap();
        assert_eq!(c2.omega_n_center(1), c2.augmentation_ideal());
        // For n large every central element of augmentation zero is nilpotent.
        let fg = GroupAlgebra::new(&d8()).unwrap();
        assert_eq!(fg.omega_n_center(3), fg.center().intersection(&fg.augmentation_ideal()));
    }

    #[test]
    fn zero_seed_gives_zero_ideal() {
        let fg = GroupAlgebra::new(&d8()).unwrap();
        let zero = Subspace::zero(2, 8);
        let i = fg.smallest_ideal_containing(&[Seed::Span(&zero)], SeedPolicy::Auto).unwrap();
        assert!(i.space.is_zero());
        assert!(i.is_ideal());
    }

    fn aug_cao_star(g: &Group, m: u32, n: u32, policy: SeedPolicy) {
        let fg = GroupAlgebra::new(g).unwrap();
        let gamma = fg.commutator_subspace();
        let om = fg.omega_n_center(n);
        let ideal = fg.smallest_ideal_containing(&[Seed::Span(&gamma), Seed::Powers { of: &om, m }], policy).unwrap();
        let k = g.join(&commutator_subgroup(g), &mho_n_of(g, &omega_star_n(g, n), m));
        assert_eq!(ideal.space, fg.relative_augmentation(&k), "m = {m}, n = {n}");
        assert!(ideal.is_ideal());
    }

    fn mho_n_of(g: &Group, h: &Subgroup, m: u32) -> Subgroup {
        let e = (g.prime() as u64).pow(m);
        g.closure(h.members().iter().map(|x| g.pow(x, e)))
    }

    #[test]
    fn aug_cao_star_identity_on_d8_and_q8() {
        for g in [d8(), q8()] {
            for m in 0..=2 {
                for n in 0..=2 {
                    aug_cao_star(&g, m, n, SeedPolicy::Auto);
                    aug_cao_star(&g, m, n, SeedPolicy::Exhaustive);
                }
            }
        }
    }

    #[test]
    fn aug_a_star_identity_on_c4_c2() {
        let g = Group::abelian(&[4, 2]).unwrap();
        let fg = GroupAlgebra::new(&g).unwrap();
        let gamma = fg.commutator_subspace();
        let delta = fg.augmentation_ideal();
        for policy in [SeedPolicy::Exhaustive, SeedPolicy::SpanningFamily] {
            let ideal = fg
                .smallest_ideal_containing(&[Seed::Span(&gamma), Seed::Powers { of: &delta, m: 1 }], policy)
                .unwrap();
            assert_eq!(ideal.space, fg.relative_augmentation(&mho_star_n(&g, 1)));
        }
    }

    #[test]
    fn aug_a_star_paths_agree_on_d8() {
        let g = d8();
        let fg = GroupAlgebra::new(&g).unwrap();
        let gamma = fg.commutator_subspace();
        let delta = fg.augmentation_ideal();
        for m in 0..=2 {
            let seeds = [Seed::Span(&gamma), Seed::Powers { of: &delta, m }];
            let a = fg.smallest_ideal_containing(&seeds, SeedPolicy::Exhaustive).unwrap();
            let b = fg.smallest_ideal_containing(&seeds, SeedPolicy::SpanningFamily).unwrap();
            assert_eq!(a.paths, vec![SeedPath::Exhaustive]);
            assert_eq!(b.paths, vec![SeedPath::SpanningFamily]);
            assert_eq!(a.space, b.space);
            assert_eq!(a.space, fg.relative_augmentation(&mho_star_n(&g, m)));
        }
    }

    #[test]
    fn spanning_family_refused_without_additivity() {
        let fg = GroupAlgebra::new(&d8()).unwrap();
        let delta = fg.augmentation_ideal();
        let r = fg.smallest_ideal_containing(&[Seed::Powers { of: &delta, m: 1 }], SeedPolicy::SpanningFamily);
        assert!(matches!(r, Err(Error::ValidationFailed(_))));
        let auto = fg.smallest_ideal_containing(&[Seed::Powers { of: &delta, m: 1 }], SeedPolicy::Auto).unwrap();
        assert_eq!(auto.paths, vec![SeedPath::Exhaustive]);
    }

    #[test]
    fn exhaustive_guard() {
        let g = Group::abelian(&[2, 2, 2, 2, 2]).unwrap();
        let g = direct_product(&g, &Group::cyclic(2)).unwrap();
        let fg = GroupAlgebra::new(&g).unwrap();
        let delta = fg.augmentation_ideal();
        assert!(matches!(fg.power_image_exhaustive(&delta, 1), Err(Error::SeedEnumerationTooLarge { .. })));
    }

    #[test]
    fn powers_lemma_on_small_abelian_group() {
        let g = Group::abelian(&[4, 2]).unwrap();
        let fg = GroupAlgebra::new(&g).unwrap();
        // Ω_n(FG) for commutative FG is a subspace.
        for n in 0..=2 {
            let om = fg.omega_n_center(n);
            for m in 0..=2 {
                let lhs = fg.relative_augmentation(&mho_n_of(&g, &crate::pgroup::omega_n(&g, n), m));
                let rhs = fg.ideal_closure(&fg.power_image_exhaustive(&om, m).unwrap());
                assert_eq!(lhs, rhs, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn augmentation_is_multiplicative() {
        let fg = GroupAlgebra::new(&q8()).unwrap();
        let x = FpVec::from_coeffs(2, &[1, 1, 0, 1, 0, 0, 1, 1]);
        let y = FpVec::from_coeffs(2, &[0, 1, 1, 1, 0, 1, 0, 0]);
        assert_eq!(fg.augmentation(&fg.mul(&x, &y)), fg.augmentation(&x) * fg.augmentation(&y) % 2);
    }
}
