//! Invariant batteries: the four abelian series, the twelve corollary types,
//! and the assembled [`Fingerprint`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{abelian_type, section_type, subgroup_type, AbelianType};
use crate::algebra::{GroupAlgebra, Seed, SeedPolicy};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::jennings;
use crate::linalg::Subspace;
use crate::pgroup::{
    a_n_from, center, commutator_subgroup, conjugacy_classes, dg, frattini, k_n_with, maximal_elementary_abelian,
    mho_star_n, omega_star_n, socle,
};
use crate::residue::{self, Omega1Verdict};

/// The four abelian types of the main invariant theorem for one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremA {
    /// `G / γ(G) Ω*_n(G)`.
    pub item1: AbelianType,
    /// `γ(G) Ω*_n(G) / γ(G)`.
    pub item2: AbelianType,
    /// `Z(G) ∩ ℧*_n(G)`.
    pub item3: AbelianType,
    /// `Z(G) / (Z(G) ∩ ℧*_n(G))`.
    pub item4: AbelianType,
}

impl TheoremA {
    pub fn items(&self) -> [&AbelianType; 4] {
        [&self.item1, &self.item2, &self.item3, &self.item4]
    }
}

fn quotient_type(g: &Group, n: &Subgroup) -> Result<AbelianType> {
    abelian_type(&g.quotient(n)?.0)
}

pub fn theorem_a_invariants(g: &Group, n: u32) -> Result<TheoremA> {
    g.require_p_group()?;
    let gamma = commutator_subgroup(g);
    let z = center(g);
    let top = g.join(&gamma, &omega_star_n(g, n));
    let zm = z.intersection(&mho_star_n(g, n));
    Ok(TheoremA {
        item1: quotient_type(g, &top)?,
        item2: section_type(g, &top, &gamma)?,
        item3: subgroup_type(g, &zm)?,
        item4: section_type(g, &z, &zm)?,
    })
}

/// The twelve abelian types of the corollary, plus `|G| / |Soc : Soc ∩ Frat|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corollary12 {
    pub g_mod_gamma: AbelianType,
    pub g_mod_gamma_soc: AbelianType,
    pub g_mod_gamma_z: AbelianType,
    pub gamma_soc_mod_gamma: AbelianType,
    pub gamma_z_mod_gamma: AbelianType,
    pub g_mod_frat_soc: AbelianType,
    pub z: AbelianType,
    pub z_cap_frat: AbelianType,
    pub z_cap_gamma: AbelianType,
    pub z_mod_z_cap_frat: AbelianType,
    pub z_mod_z_cap_gamma: AbelianType,
    pub soc_cap_frat: AbelianType,
    pub reduced_order: u64,
}

impl Corollary12 {
    pub fn fields(&self) -> [(&'static str, &AbelianType); 12] {
        [
            ("G/γ(G)", &self.g_mod_gamma),
            ("G/γ(G)Soc(G)", &self.g_mod_gamma_soc),
            ("G/γ(G)Z(G)", &self.g_mod_gamma_z),
            ("γ(G)Soc(G)/γ(G)", &self.gamma_soc_mod_gamma),
            ("γ(G)Z(G)/γ(G)", &self.gamma_z_mod_gamma),
            ("G/Frat(G)Soc(G)", &self.g_mod_frat_soc),
            ("Z(G)", &self.z),
            ("Z(G)∩Frat(G)", &self.z_cap_frat),
            ("Z(G)∩γ(G)", &self.z_cap_gamma),
            ("Z(G)/Z(G)∩Frat(G)", &self.z_mod_z_cap_frat),
            ("Z(G)/Z(G)∩γ(G)", &self.z_mod_z_cap_gamma),
            ("Soc(G)∩Frat(G)", &self.soc_cap_frat),
        ]
    }
}

pub fn corollary12(g: &Group) -> Result<Corollary12> {
    g.require_p_group()?;
    let gamma = commutator_subgroup(g);
    let z = center(g);
    let soc = socle(g);
    let frat = frattini(g);
    let whole = Subgroup::whole(g);
    let gamma_soc = g.join(&gamma, &soc);
    let gamma_z = g.join(&gamma, &z);
    let soc_cap_frat = soc.intersection(&frat);
    Ok(Corollary12 {
        g_mod_gamma: section_type(g, &whole, &gamma)?,
        g_mod_gamma_soc: section_type(g, &whole, &gamma_soc)?,
        g_mod_gamma_z: section_type(g, &whole, &gamma_z)?,
        gamma_soc_mod_gamma: section_type(g, &gamma_soc, &gamma)?,
        gamma_z_mod_gamma: section_type(g, &gamma_z, &gamma)?,
        g_mod_frat_soc: section_type(g, &whole, &g.join(&frat, &soc))?,
        z: subgroup_type(g, &z)?,
        z_cap_frat: subgroup_type(g, &z.intersection(&frat))?,
        z_cap_gamma: subgroup_type(g, &z.intersection(&gamma))?,
        z_mod_z_cap_frat: section_type(g, &z, &z.intersection(&frat))?,
        z_mod_z_cap_gamma: section_type(g, &z, &z.intersection(&gamma))?,
        soc_cap_frat: subgroup_type(g, &soc_cap_frat)?,
        reduced_order: (g.order() * soc_cap_frat.order() / soc.order()) as u64,
    })
}

/// Outcome of recomputing the main theorem's invariants through the
/// canonical ideals of `FG`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crosscheck {
    pub n: u32,
    pub m: u32,
    pub group_side: TheoremA,
    pub algebra_side: TheoremA,
    /// `I_(m,n) = Δ(F[γ(G) ℧_m(Ω*_n(G))]) FG` as a subspace identity.
    pub ideal_identity: bool,
    /// `Θ(FG) = Δ(F[℧_m(Z ∩ ℧*_n)]) F Z(G) ⊕ (Z(FG) ∩ γ(FG))`.
    pub theta_identity: bool,
}

impl Crosscheck {
    pub fn passed(&self) -> bool {
        self.group_side == self.algebra_side && self.ideal_identity && self.theta_identity
    }
}

/// `Δ(FH)FG` has codimension `|G : H|`, so indices are read off as dimensions.
fn size(d: usize) -> u64 {
    d as u64
}

/// Collects `f(0), f(1), ...` up to and including the first 1.
fn until_one(limit: u32, mut f: impl FnMut(u32) -> Result<u64>) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for k in 0..=limit {
        let s = f(k)?;
        out.push(s);
        if s == 1 {
            return Ok(out);
        }
    }
    Err(Error::AssertionFailed("℧-size sequence did not reach 1".into()))
}

/// Context shared by the algebra-side computations for one group.
struct AlgebraSide<'a> {
    fg: &'a GroupAlgebra,
    gamma: Subspace,
    delta: Subspace,
    zc: Subspace,
    z_gamma: Subspace,
    limit: u32,
}

impl<'a> AlgebraSide<'a> {
    fn new(fg: &'a GroupAlgebra) -> Self {
        let gamma = fg.commutator_subspace();
        let zc = fg.center();
        AlgebraSide {
            delta: fg.augmentation_ideal(),
            z_gamma: zc.intersection(&gamma),
            gamma,
            zc,
            fg,
            limit: fg.group().log_order() + 1,
        }
    }

    fn p(&self) -> u32 {
        self.fg.p()
    }

    /// Smallest ideal containing `γ(FG)` and `℧_m(Ω_n(Z(FG)))`.
    fn i_mn(&self, m: u32, n: u32) -> Result<Subspace> {
        let om = self.fg.omega_n_center(n);
        let seeds = [Seed::Span(&self.gamma), Seed::Powers { of: &om, m }];
        Ok(self.fg.smallest_ideal_containing(&seeds, SeedPolicy::Auto)?.space)
    }

    /// Smallest ideal containing `base ⊇ γ(FG)` and `℧_k(Δ)`.
    fn with_delta_powers(&self, base: &Subspace, k: u32) -> Result<Subspace> {
        let seeds = [Seed::Span(base), Seed::Powers { of: &self.delta, m: k }];
        Ok(self.fg.smallest_ideal_containing(&seeds, SeedPolicy::Auto)?.space)
    }

    /// `Θ_(m,n) = ℧_m(Z(FG) ∩ J_n) Z(FG) + (Z(FG) ∩ γ(FG))` where `J_n` is
    /// the smallest ideal containing `γ(FG)` and `℧_n(Δ)`.
    fn theta(&self, w_n: &Subspace, m: u32) -> Subspace {
        let powers = self.fg.power_image_basis(w_n, m);
        self.fg.central_ideal_closure(&powers).sum(&self.z_gamma)
    }

    fn zc_codim(&self, s: &Subspace) -> usize {
        self.zc.dim() - s.dim()
    }

    fn types(&self, n: u32) -> Result<(TheoremA, Subspace, Subspace)> {
        let p = self.p();
        let gamma_ideal = self.fg.ideal_closure(&self.gamma);
        let i0 = self.i_mn(0, n)?;

        // Item 1: Q = G/γΩ*_n with |Q/℧_k Q| = codim(I_(0,n) + ℧_k(Δ)).
        let q_order = size(i0.codim());
        let item1 = until_one(self.limit, |k| Ok(q_order / size(self.with_delta_powers(&i0, k)?.codim())))?;

        // Item 2: |℧_k(γΩ*_n/γ)| = codim(γ ideal) / codim(I_(k,n)).
        let item2 = until_one(self.limit, |k| {
            Ok(size(gamma_ideal.codim()) / size(self.i_mn(k, n)?.codim()))
        })?;

        // Items 3 and 4 live in Z(FG).
        let j_n = self.with_delta_powers(&self.gamma, n)?;
        let w_n = self.zc.intersection(&j_n);
        let z_order = size(self.zc.dim() - self.z_gamma.dim());
        let item3 = until_one(self.limit, |m| Ok(z_order / size(self.zc_codim(&self.theta(&w_n, m)))))?;

        let theta0 = self.theta(&w_n, 0);
        let w_order = size(self.zc_codim(&theta0));
        let z_delta = self.zc.intersection(&self.delta);
        let item4 = until_one(self.limit, |k| {
            let powers = self.fg.power_image_basis(&z_delta, k);
            let s = self.fg.central_ideal_closure(&powers).sum(&theta0);
            Ok(w_order / size(self.zc_codim(&s)))
        })?;

        let t = TheoremA {
            item1: AbelianType::from_mho_sizes(p, &item1)?,
            item2: AbelianType::from_mho_sizes(p, &item2)?,
            item3: AbelianType::from_mho_sizes(p, &item3)?,
            item4: AbelianType::from_mho_sizes(p, &item4)?,
        };
        Ok((t, j_n, w_n))
    }
}

/// `span{(k - 1) h : k in K, h in H}`.
fn relative_in(fg: &GroupAlgebra, k: &Subgroup, h: &Subgroup) -> Subspace {
    fg.span(
        k.members()
            .iter()
            .filter(|&x| x != 0)
            .flat_map(|x| h.members().iter().map(move |y| (x, y)))
            .map(|(x, y)| fg.mul_right(&fg.minus_one(x), y)),
    )
}

fn mho_of(g: &Group, h: &Subgroup, m: u32) -> Subgroup {
    let e = (g.prime() as u64).pow(m);
    g.closure(h.members().iter().map(|x| g.pow(x, e)))
}

/// Recomputes the main theorem's four types for `n` through the canonical
/// ideals of `FG` and checks the `(m, n)` ideal identities.
pub fn algebra_side_crosscheck(g: &Group, n: u32, m: u32) -> Result<Crosscheck> {
    let fg = GroupAlgebra::new(g)?;
    algebra_side_crosscheck_with(&fg, n, m)
}

pub fn algebra_side_crosscheck_with(fg: &GroupAlgebra, n: u32, m: u32) -> Result<Crosscheck> {
    let g = fg.group();
    let side = AlgebraSide::new(fg);
    let (algebra_side, _, w_n) = side.types(n)?;
    let group_side = theorem_a_invariants(g, n)?;

    let gamma = commutator_subgroup(g);
    let k = g.join(&gamma, &mho_of(g, &omega_star_n(g, n), m));
    let ideal_identity = side.i_mn(m, n)? == fg.relative_augmentation(&k);

    let z = center(g);
    let zm = mho_of(g, &z.intersection(&mho_star_n(g, n)), m);
    let claim = relative_in(fg, &zm, &z);
    let theta_identity = claim.is_direct_with(&side.z_gamma) && side.theta(&w_n, m) == claim.sum(&side.z_gamma);

    Ok(Crosscheck { n, m, group_side, algebra_side, ideal_identity, theta_identity })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    True,
    False,
    Inconclusive,
}

impl From<&Omega1Verdict> for TriState {
    fn from(v: &Omega1Verdict) -> Self {
        match v.as_bool() {
            Some(true) => TriState::True,
            Some(false) => TriState::False,
            None => TriState::Inconclusive,
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::True => "true",
            TriState::False => "false",
            TriState::Inconclusive => "inconclusive",
        })
    }
}

/// An imported value of `e(G)` together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EAnnotation {
    pub value: u32,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    pub prime: u32,
    pub corollary12: Corollary12,
    pub soc_order: u64,
    pub soc_cap_frat_order: u64,
    pub dg: u32,
    /// `k_n` for `n = 0..=n_max`.
    pub k_seq: Vec<u64>,
    /// `a_n` for `n = 1..=rank_max`.
    pub a_seq: Vec<u64>,
    /// Main theorem types for `n = 0..=n_max`.
    pub abelian_series: Vec<TheoremA>,
    pub jennings_ranks: Vec<u32>,
    pub omega1_in_delta2: TriState,
    /// Number of nonzero isotropic cosets of the residue power map.
    pub residue_isotropic: u64,
    pub e_annotation: Option<EAnnotation>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FingerprintOptions {
    /// Defaults to `log_p |G|`.
    pub n_max: Option<u32>,
}

pub fn fingerprint(g: &Group, e: Option<EAnnotation>) -> Result<Fingerprint> {
    fingerprint_with(g, e, FingerprintOptions::default())
}

pub fn fingerprint_with(g: &Group, e: Option<EAnnotation>, opts: FingerprintOptions) -> Result<Fingerprint> {
    let p = g.require_p_group()?;
    let log = g.log_order();
    let n_max = opts.n_max.unwrap_or(log);
    let cc = conjugacy_classes(g);
    let maximal = maximal_elementary_abelian(g);
    let fg = GroupAlgebra::new(g)?;
    let powers = fg.delta_powers();
    let series = jennings::series_from_powers(&fg, &powers);
    let omega1 = residue::omega1_in_delta2_with(&fg, &powers, &[])?;
    let map = residue::residue_power_map_with(&fg, &powers)?;
    let soc = socle(g);
    Ok(Fingerprint {
        order: g.order() as u64,
        prime: p,
        corollary12: corollary12(g)?,
        soc_order: soc.order() as u64,
        soc_cap_frat_order: soc.intersection(&frattini(g)).order() as u64,
        dg: dg(g),
        k_seq: (0..=n_max).map(|n| k_n_with(g, &cc, n) as u64).collect(),
        a_seq: (1..=log).map(|n| a_n_from(&maximal, n) as u64).collect(),
        abelian_series: (0..=n_max).map(|n| theorem_a_invariants(g, n)).collect::<Result<_>>()?,
        jennings_ranks: jennings::ranks(g, &series),
        omega1_in_delta2: TriState::from(&omega1),
        residue_isotropic: map.isotropic.len() as u64,
        e_annotation: e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// `field` is the first differing invariant in the fixed comparison
    /// order; `also` lists every other differing invariant.
    Distinguished { field: String, left: String, right: String, also: Vec<String> },
    /// No invariant of the battery differs; this never claims `FG ≅ FH`.
    Indistinguishable,
}

impl Verdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self, Verdict::Distinguished { .. })
    }

    pub fn field(&self) -> Option<&str> {
        match self {
            Verdict::Distinguished { field, .. } => Some(field),
            Verdict::Indistinguishable => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguished { field, left, right, also } => {
                write!(f, "DISTINGUISHED({field}): {left} vs {right}")?;
                if !also.is_empty() {
                    write!(f, "; also differ: {}", also.join(", "))?;
                }
                Ok(())
            }
            Verdict::Indistinguishable => f.write_str("INDISTINGUISHABLE (by this battery)"),
        }
    }
}

fn seq_entry<T: fmt::Display>(v: &[T], i: usize) -> String {
    v.get(i).map_or_else(|| "-".to_string(), ToString::to_string)
}

/// Every differing invariant as `(field, left, right)`, in comparison order.
pub fn differences(a: &Fingerprint, b: &Fingerprint) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    let mut push = |field: String, l: String, r: String| {
        if l != r {
            out.push((field, l, r));
        }
    };
    push("order".into(), a.order.to_string(), b.order.to_string());
    for ((name, l), (_, r)) in a.corollary12.fields().into_iter().zip(b.corollary12.fields()) {
        push(format!("corollary12.{name}"), l.to_string(), r.to_string());
    }
    push(
        "corollary12.|G|/|Soc:Soc∩Frat|".into(),
        a.corollary12.reduced_order.to_string(),
        b.corollary12.reduced_order.to_string(),
    );
    push("|Soc(G)|".into(), a.soc_order.to_string(), b.soc_order.to_string());
    push("|Soc(G)∩Frat(G)|".into(), a.soc_cap_frat_order.to_string(), b.soc_cap_frat_order.to_string());
    push("dg".into(), a.dg.to_string(), b.dg.to_string());
    for i in 0..a.k_seq.len().max(b.k_seq.len()) {
        push(format!("k_{i}"), seq_entry(&a.k_seq, i), seq_entry(&b.k_seq, i));
    }
    for i in 0..a.a_seq.len().max(b.a_seq.len()) {
        push(format!("a_{}", i + 1), seq_entry(&a.a_seq, i), seq_entry(&b.a_seq, i));
    }
    for n in 0..a.abelian_series.len().max(b.abelian_series.len()) {
        for item in 0..4 {
            let get = |f: &Fingerprint| {
                f.abelian_series.get(n).map_or_else(|| "-".to_string(), |t| t.items()[item].to_string())
            };
            push(format!("abelian_series[n={n}].item{}", item + 1), get(a), get(b));
        }
    }
    for i in 0..a.jennings_ranks.len().max(b.jennings_ranks.len()) {
        push(format!("jennings_rank_{}", i + 1), seq_entry(&a.jennings_ranks, i), seq_entry(&b.jennings_ranks, i));
    }
    // An inconclusive answer is not a value and never separates.
    if a.omega1_in_delta2 != TriState::Inconclusive && b.omega1_in_delta2 != TriState::Inconclusive {
        push("omega1_in_delta2".into(), a.omega1_in_delta2.to_string(), b.omega1_in_delta2.to_string());
    }
    push("residue_isotropic".into(), a.residue_isotropic.to_string(), b.residue_isotropic.to_string());
    if let (Some(ea), Some(eb)) = (&a.e_annotation, &b.e_annotation) {
        push(
            format!("e (imported from {})", ea.source),
            ea.value.to_string(),
            eb.value.to_string(),
        );
    }
    out
}

pub fn compare(a: &Fingerprint, b: &Fingerprint) -> Verdict {
    let mut diffs = differences(a, b).into_iter();
    match diffs.next() {
        None => Verdict::Indistinguishable,
        Some((field, left, right)) => Verdict::Distinguished { field, left, right, also: diffs.map(|d| d.0).collect() },
    }
}
