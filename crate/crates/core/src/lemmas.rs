//! Exact instance checks of the structural lemmas on `FG`.
//!
//! Each check computes both sides of an identity as subspaces and compares
//! them; nothing here trusts one side to derive the other.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GroupAlgebra, Seed, SeedPolicy, EXHAUSTIVE_DIM_GUARD};
use crate::bits::ElementSet;
use crate::decomp::{elementary_decomposition, elementary_ideal_with};
use crate::error::Result;
use crate::group::{direct_product, product_embeddings, Group, Subgroup};
use crate::linalg::{kernel, FpVec, Subspace};
use crate::pgroup::{center, commutator_subgroup, frattini, omega_n, omega_star_n, socle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lemma: &'static str,
    pub instance: String,
    pub passed: bool,
}

impl fmt::Display for LemmaCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}]", if self.passed { "ok  " } else { "FAIL" }, self.lemma, self.instance)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: usize,
    /// `ZnN` runs over every `N ⊇ γ(G)` only up to this order.
    pub znn_max_order: usize,
    /// `m, n ≤` this bound for `augCAO*` and `powers`.
    pub mn_max: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, trials: 200, znn_max_order: 32, mn_max: 2 }
    }
}

struct Recorder(Vec<LemmaCheck>);

impl Recorder {
    fn push(&mut self, lemma: &'static str, instance: impl Into<String>, passed: bool) {
        self.0.push(LemmaCheck { lemma, instance: instance.into(), passed });
    }
}

fn random_element(fg: &GroupAlgebra, rng: &mut ChaCha8Rng) -> FpVec {
    let coeffs: Vec<u32> = (0..fg.dim()).map(|_| rng.gen_range(0..fg.p())).collect();
    FpVec::from_coeffs(fg.p(), &coeffs)
}

/// Runs every applicable lemma on `g`.
pub fn verify_lemmas(g: &Group, opts: &SuiteOptions) -> Result<Vec<LemmaCheck>> {
    let fg = GroupAlgebra::new(g)?;
    let mut rec = Recorder(Vec::new());
    dream(&fg, opts, &mut rec);
    center_facts(&fg, &mut rec);
    filt(g, &mut rec)?;
    aug_s(&fg, &mut rec);
    aug_cao(&fg, opts, &mut rec)?;
    if g.order() <= opts.znn_max_order {
        znn(&fg, &mut rec);
    }
    aug_t_char(&fg, &mut rec)?;
    if g.is_abelian() {
        powers(&fg, opts, &mut rec)?;
    }
    Ok(rec.0)
}

/// `(x + y)^(p^n) ≡ x^(p^n) + y^(p^n) mod γ(FG)` on random pairs.
fn dream(fg: &GroupAlgebra, opts: &SuiteOptions, rec: &mut Recorder) {
    let gamma = fg.commutator_subspace();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 1..=2 {
        let mut ok = 0;
        for _ in 0..opts.trials {
            let x = random_element(fg, &mut rng);
            let y = random_element(fg, &mut rng);
            let mut s = x.clone();
            s.add(&y);
            let mut d = fg.p_power(&s, n);
            d.sub(&fg.p_power(&x, n));
            d.sub(&fg.p_power(&y, n));
            ok += usize::from(gamma.contains(&d));
        }
        rec.push("dream", format!("n = {n}, {ok}/{} pairs", opts.trials), ok == opts.trials);
    }
}

fn center_facts(fg: &GroupAlgebra, rec: &mut Recorder) {
    let g = fg.group();
    let p = fg.p();
    let gamma = fg.commutator_subspace();
    let powers = fg.delta_powers();
    rec.push("center (i)", "γ(FG) ⊆ Δ²", gamma.is_subspace_of(&powers[2]));

    // Commutant of the generators, computed as a kernel.
    let units: Vec<FpVec> = (0..g.order()).map(|x| fg.element(x)).collect();
    let images: Vec<FpVec> = (0..g.order())
        .map(|x| {
            let mut out = FpVec::zeros(p, 0);
            for &s in g.generators() {
                let mut v = fg.element(g.mul(x, s));
                v.sub(&fg.element(g.mul(s, x)));
                out = out.concat(&v);
            }
            out
        })
        .collect();
    let commutant = if g.generators().is_empty() { fg.whole() } else { kernel(p, &units, &images) };
    let zc = fg.center();
    let z = center(g);
    let fz = fg.subgroup_algebra(&z);
    let noncentral = fg.span(fg.class_sums().into_iter().filter(|v| v.support().len() > 1));
    rec.push(
        "center (ii)",
        "Z(FG) = ⊕ F κ̂ = FZ(G) ⊕ span{κ̂ : |κ| > 1}",
        zc == commutant && zc.dim() == fg.classes().len() && fz.is_direct_with(&noncentral) && fz.sum(&noncentral) == zc,
    );
    let zg = zc.intersection(&gamma);
    rec.push("center (iii)", "Z(FG) ∩ γ(FG) = span{κ̂ : |κ| > 1}", zg == noncentral);
    rec.push("center (iv)", "Z(FG) ∩ γ(FG) is an ideal of Z(FG)", fg.product(&zc, &zg).is_subspace_of(&zg));
    rec.push("center (v)", "Z(FG) = FZ(G) ⊕ (Z(FG) ∩ γ(FG))", fz.is_direct_with(&zg) && fz.sum(&zg) == zc);
}

fn power_list(fg: &GroupAlgebra, base: &Subspace, upto: usize) -> Vec<Subspace> {
    let mut out = vec![fg.whole(), base.clone()];
    while out.len() <= upto {
        let next = fg.product(out.last().unwrap(), base);
        out.push(next);
    }
    out
}

/// `Δ^n = Δ(FK)Δ^(n-1) ⊕ Δ(FL)^n` for `G × C_p` in both orders, and for an
/// elementary decomposition of `G` when it is proper.
fn filt(g: &Group, rec: &mut Recorder) -> Result<()> {
    let cp = Group::cyclic(g.prime() as usize);
    let mut cases: Vec<(String, Group, Subgroup, Subgroup)> = Vec::new();
    for (label, left, right) in [("G × C_p", g, &cp), ("C_p × G", &cp, g)] {
        let prod = direct_product(left, right)?;
        let (ea, eb) = product_embeddings(left, right);
        let k = prod.closure(ea.iter().copied());
        let l = prod.closure(eb.iter().copied());
        cases.push((format!("{label}, K = left"), prod.clone(), k.clone(), l.clone()));
        cases.push((format!("{label}, K = right"), prod, l, k));
    }
    let dec = elementary_decomposition(g)?;
    if !dec.t.is_trivial() && !dec.u.is_trivial() {
        cases.push(("G = T × U".into(), g.clone(), dec.t.clone(), dec.u.clone()));
        cases.push(("G = U × T".into(), g.clone(), dec.u, dec.t));
    }
    for (label, prod, k, l) in cases {
        let fg = GroupAlgebra::new(&prod)?;
        let powers = fg.delta_powers();
        let dk = fg.subgroup_augmentation(&k);
        let dl = power_list(&fg, &fg.subgroup_augmentation(&l), powers.len());
        let ok = (1..powers.len()).all(|n| {
            let a = fg.product(&dk, &powers[n - 1]);
            a.is_direct_with(&dl[n]) && a.sum(&dl[n]) == powers[n]
        });
        rec.push("filt", format!("{label}, n = 1..{}", powers.len() - 1), ok);
    }
    Ok(())
}

fn aug_s(fg: &GroupAlgebra, rec: &mut Recorder) {
    let g = fg.group();
    let d2 = fg.delta_power(2);
    let frat = fg.relative_augmentation(&frattini(g));
    rec.push("augS (i)", "Δ(F Frat(G))FG ⊆ Δ²", frat.is_subspace_of(&d2));
    let lhs = fg.relative_augmentation(&socle(g)).sum(&d2);
    let rhs = fg.omega_n_center(1).sum(&d2);
    rec.push("augS (ii)", "Δ(F Soc(G))FG + Δ² = Ω_1(Z(FG)) + Δ²", lhs == rhs);
}

fn aug_cao(fg: &GroupAlgebra, opts: &SuiteOptions, rec: &mut Recorder) -> Result<()> {
    let g = fg.group();
    let gamma = fg.commutator_subspace();
    let gamma_g = commutator_subgroup(g);
    for n in 0..=opts.mn_max {
        let om = fg.omega_n_center(n);
        let star = omega_star_n(g, n);
        for m in 0..=opts.mn_max {
            let seeds = [Seed::Span(&gamma), Seed::Powers { of: &om, m }];
            let ideal = fg.smallest_ideal_containing(&seeds, SeedPolicy::Auto)?;
            let k = g.join(&gamma_g, &mho_n_of(g, &star, m));
            let ok = ideal.is_ideal() && ideal.space == fg.relative_augmentation(&k);
            rec.push("augCAO*", format!("m = {m}, n = {n}"), ok);
        }
    }
    Ok(())
}

fn mho_n_of(g: &Group, h: &Subgroup, m: u32) -> Subgroup {
    let e = (g.prime() as u64).pow(m);
    g.closure(h.members().iter().map(|x| g.pow(x, e)))
}

/// Every subgroup of `g` containing `base`.
pub fn overgroups(g: &Group, base: &Subgroup) -> Vec<Subgroup> {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut out = vec![base.clone()];
    seen.insert(base.members().clone());
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        for x in 0..g.order() {
            if cur.contains(x) {
                continue;
            }
            let next = g.closure(cur.members().iter().chain([x]));
            if seen.insert(next.members().clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

fn znn(fg: &GroupAlgebra, rec: &mut Recorder) {
    let g = fg.group();
    let zc = fg.center();
    let zg = zc.intersection(&fg.commutator_subspace());
    let z = center(g);
    let zs = z.elements();
    let all = overgroups(g, &commutator_subgroup(g));
    let mut ok = 0;
    for n in &all {
        let lhs = zc.intersection(&fg.relative_augmentation(n));
        let zn = z.intersection(n);
        let rel = fg.span(
            zn.members()
                .iter()
                .filter(|&k| k != 0)
                .flat_map(|k| zs.iter().map(move |&y| (k, y)))
                .map(|(k, y)| fg.mul_right(&fg.minus_one(k), y)),
        );
        if rel.is_direct_with(&zg) && rel.sum(&zg) == lhs {
            ok += 1;
        }
    }
    rec.push("ZnN", format!("{ok}/{} subgroups N ⊇ γ(G)", all.len()), ok == all.len());
}

fn aug_t_char(fg: &GroupAlgebra, rec: &mut Recorder) -> Result<()> {
    let g = fg.group();
    let dec = elementary_decomposition(g)?;
    let e = elementary_ideal_with(fg, &dec)?;
    let label = format!("|T| = {}, |U| = {}", dec.t.order(), dec.u.order());
    rec.push("augT (i)", format!("{label}, codim I = {} (want {})", e.codim, e.expected_codim), e.codim == e.expected_codim);
    rec.push("augT (ii)", format!("{label}, n = 1..{}", e.filtration.len()), e.filtration.iter().all(|&b| b));
    rec.push("char", format!("{label}, FG = I ⊕ FU, structure constants"), e.split && e.structure_constants);
    Ok(())
}

/// Abelian `G`: `Δ(F ℧_m(Ω_n(G)))FG = ℧_m(Ω_n(FG))FG`.
fn powers(fg: &GroupAlgebra, opts: &SuiteOptions, rec: &mut Recorder) -> Result<()> {
    let g = fg.group();
    for n in 0..=opts.mn_max {
        let om = fg.omega_n_center(n);
        for m in 0..=opts.mn_max {
            let image = if om.dim() <= EXHAUSTIVE_DIM_GUARD {
                fg.power_image_exhaustive(&om, m)?
            } else {
                fg.power_image_basis(&om, m)
            };
            let lhs = fg.relative_augmentation(&mho_n_of(g, &omega_n(g, n), m));
            let rhs = fg.ideal_closure(&image);
            rec.push("powers", format!("m = {m}, n = {n}"), lhs == rhs);
        }
    }
    Ok(())
}
