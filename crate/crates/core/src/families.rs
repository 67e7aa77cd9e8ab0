//! The 2-groups `D_{2^{m|n}}`, `Q_{2^{m|n}}` and `S_{2^{m|n}}`: central
//! extensions of the dihedral group of order `2^n` by `C_{2^m}`.
//!
//! Elements are stored in the normal form `r^i a^j c^k` with `r = ab`,
//! `0 ≤ i < 2^(n-1)`, `j ∈ {0, 1}`, `0 ≤ k < 2^m`. With `a^2 = c^α`,
//! `b^2 = c^β` and `r^(2^(n-1)) = c^γ` one gets `a r a^-1 = c^(α+β) r^-1`,
//! which is all the collection needs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::iso::{is_isomorphism, isomorphic};
use crate::jennings;
use crate::pgroup::{center, frattini, is_dihedral, log_p};
use crate::residue::{omega1_in_delta2_with, Omega1Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    D,
    Q,
    S,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::D, FamilyKind::Q, FamilyKind::S];
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::D => "D",
            FamilyKind::Q => "Q",
            FamilyKind::S => "S",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" | "d" => Ok(FamilyKind::D),
            "Q" | "q" => Ok(FamilyKind::Q),
            "S" | "s" => Ok(FamilyKind::S),
            _ => Err(Error::ValidationFailed(format!("unknown family {s:?}, expected D, Q or S"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub m: u32,
    pub n: u32,
    /// `a^2 = c^alpha`.
    pub alpha: u32,
    /// `b^2 = c^beta`.
    pub beta: u32,
    /// `(ab)^(2^(n-1)) = c^gamma`, reduced mod `2^m`.
    pub gamma: u32,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, m: u32, n: u32) -> Result<FamilySpec> {
        if m < 1 || n < 2 {
            return Err(Error::ValidationFailed(format!("need m ≥ 1 and n ≥ 2, got m = {m}, n = {n}")));
        }
        if m + n > 12 {
            return Err(Error::OrderCapExceeded { cap: crate::group::DEFAULT_ORDER_CAP });
        }
        let modulus = 1u64 << m;
        let (alpha, beta, gamma) = match kind {
            FamilyKind::D => (0, 0, 1u64 << (m - 1)),
            FamilyKind::Q => (1, 1, (1u64 << (m - 1)) + (1u64 << (n - 1))),
            FamilyKind::S => (0, 1, (1u64 << (m - 1)) + (1u64 << (n - 2))),
        };
        Ok(FamilySpec { kind, m, n, alpha, beta, gamma: (gamma % modulus) as u32 })
    }

    pub fn order(&self) -> usize {
        1 << (self.m + self.n)
    }

    pub fn label(&self) -> String {
        format!("{}_{{2^{{{}|{}}}}}", self.kind, self.m, self.n)
    }
}

/// A family member with its distinguished generators.
#[derive(Clone, Debug)]
pub struct FamilyGroup {
    pub spec: FamilySpec,
    pub group: Group,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

struct NormalForm {
    half: u64,
    modulus: u64,
    spec: FamilySpec,
}

impl NormalForm {
    fn index(&self, i: u64, j: u64, k: u64) -> usize {
        ((i * 2 + j) * self.modulus + k) as usize
    }

    fn decode(&self, x: usize) -> (u64, u64, u64) {
        let x = x as u64;
        let k = x % self.modulus;
        let ij = x / self.modulus;
        (ij / 2, ij % 2, k)
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        let (i, j, k) = self.decode(x);
        let (i2, j2, k2) = self.decode(y);
        let m = self.modulus as i64;
        let s = &self.spec;
        let mut c = (k + k2) as i64;
        // Move a^j past r^i2.
        let mut e = if j == 1 {
            c += i2 as i64 * (s.alpha + s.beta) as i64;
            i as i64 - i2 as i64
        } else {
            i as i64 + i2 as i64
        };
        let half = self.half as i64;
        while e < 0 {
            e += half;
            c -= s.gamma as i64;
        }
        while e >= half {
            e -= half;
            c += s.gamma as i64;
        }
        let mut jj = j + j2;
        if jj == 2 {
            jj = 0;
            c += s.alpha as i64;
        }
        self.index(e as u64, jj, c.rem_euclid(m) as u64)
    }
}

pub fn build_family(spec: FamilySpec) -> Result<FamilyGroup> {
    let nf = NormalForm { half: 1 << (spec.n - 1), modulus: 1 << spec.m, spec };
    let order = spec.order();
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            table.push(nf.mul(x, y) as u16);
        }
    }
    let group = Group::from_table(order, table)?;
    let a = nf.index(0, 1, 0);
    let c = nf.index(0, 0, 1);
    let r = nf.index(1 % nf.half, 0, if nf.half == 1 { spec.gamma as u64 } else { 0 });
    let b = group.mul(group.inv(a), r);
    let fam = FamilyGroup { spec, group, a, b, c };
    fam.validate()?;
    Ok(fam)
}

pub fn family(kind: FamilyKind, m: u32, n: u32) -> Result<FamilyGroup> {
    build_family(FamilySpec::new(kind, m, n)?)
}

impl FamilyGroup {
    fn c_pow(&self, e: u64) -> usize {
        self.group.pow(self.c, e)
    }

    /// Checks the defining relations, `Z(G) = ⟨c⟩ ≅ C_{2^m}` and that
    /// `G / Z(G)` is dihedral of order `2^n`.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let s = &self.spec;
        let fail = |what: &str| Err(Error::ValidationFailed(format!("{}: {what}", s.label())));
        if g.order() != s.order() {
            return fail("wrong order");
        }
        if g.closure([self.a, self.b, self.c]).order() != g.order() {
            return fail("a, b, c do not generate");
        }
        if g.pow(self.a, 2) != self.c_pow(s.alpha as u64) || g.pow(self.b, 2) != self.c_pow(s.beta as u64) {
            return fail("square relations");
        }
        let r = g.mul(self.a, self.b);
        if g.pow(r, 1 << (s.n - 1)) != self.c_pow(s.gamma as u64) {
            return fail("(ab)^(2^(n-1)) relation");
        }
        if g.pow(self.c, 1 << s.m) != 0 || g.commutator(self.a, self.c) != 0 || g.commutator(self.b, self.c) != 0 {
            return fail("c relations");
        }
        let z = center(g);
        if z != g.closure([self.c]) || g.elem_order(self.c) != 1 << s.m {
            return fail("center is not ⟨c⟩ of order 2^m");
        }
        let (quot, _) = g.quotient(&z)?;
        if quot.order() != 1 << s.n || !is_dihedral(&quot) {
            return fail("central quotient is not dihedral of order 2^n");
        }
        Ok(())
    }

    /// `[b, a]`.
    pub fn commutator_ba(&self) -> usize {
        self.group.commutator(self.b, self.a)
    }
}

/// Extends `gens[i] ↦ images[i]` to a map on all of `src` and checks it is
/// an isomorphism onto `dst`.
pub fn extend_to_isomorphism(src: &Group, gens: &[usize], images: &[usize], dst: &Group) -> Result<Vec<usize>> {
    let mut f = vec![usize::MAX; src.order()];
    f[0] = 0;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = src.mul(x, s);
            let fy = dst.mul(f[x], t);
            if f[y] == usize::MAX {
                f[y] = fy;
                queue.push(y);
            } else if f[y] != fy {
                return Err(Error::AssertionFailed("generator images do not define a homomorphism".into()));
            }
        }
    }
    if f.contains(&usize::MAX) {
        return Err(Error::AssertionFailed("generators do not generate the source group".into()));
    }
    if !is_isomorphism(src, dst, &f) {
        return Err(Error::AssertionFailed("the induced map is not an isomorphism".into()));
    }
    Ok(f)
}

/// The explicit isomorphism `S_{2^{m|2}} → D_{2^{1|2}}` (`m = 1`) or
/// `S_{2^{m|2}} → Q_{2^{m|2}}` (`m > 1`).
pub fn exceptional_isomorphism(m: u32) -> Result<(FamilyGroup, FamilyGroup, Vec<usize>)> {
    let s = family(FamilyKind::S, m, 2)?;
    if m == 1 {
        let d = family(FamilyKind::D, 1, 2)?;
        let images = [d.a, d.group.mul(d.a, d.b)];
        let f = extend_to_isomorphism(&s.group, &[s.a, s.b], &images, &d.group)?;
        Ok((s, d, f))
    } else {
        let q = family(FamilyKind::Q, m, 2)?;
        let e = (1u64 << (m - 2)) + (1u64 << m) - 1;
        let ab = q.group.mul(q.a, q.b);
        let images = [q.group.mul(ab, q.c_pow(e)), q.b];
        let f = extend_to_isomorphism(&s.group, &[s.a, s.b], &images, &q.group)?;
        Ok((s, q, f))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trichotomy {
    /// `Z(G)` is not cyclic or `G / Z(G)` is not dihedral.
    NotApplicable,
    Matches { m: u32, n: u32, kinds: Vec<FamilyKind> },
}

pub fn trichotomy_check(g: &Group) -> Result<Trichotomy> {
    if g.prime() != 2 || !g.is_p_group() || g.order() < 8 {
        return Ok(Trichotomy::NotApplicable);
    }
    let z = center(g);
    let cyclic = z.members().iter().any(|x| g.elem_order(x) as usize == z.order());
    let (quot, _) = g.quotient(&z)?;
    if !cyclic || z.is_trivial() || !is_dihedral(&quot) {
        return Ok(Trichotomy::NotApplicable);
    }
    let m = log_p(2, z.order());
    let n = log_p(2, quot.order());
    let mut kinds = Vec::new();
    for kind in FamilyKind::ALL {
        if isomorphic(g, &family(kind, m, n)?.group)?.is_some() {
            kinds.push(kind);
        }
    }
    Ok(Trichotomy::Matches { m, n, kinds })
}

/// The `Q` versus `S` separation through `Ω_1(FG) ⊆ Δ²`.
#[derive(Clone, Debug)]
pub struct QsReport {
    pub m: u32,
    pub n: u32,
    pub q_verdict: Omega1Verdict,
    pub s_verdict: Omega1Verdict,
    /// Whether the `S` witness is `a - 1` for the generator `a`.
    pub s_witness_is_a: bool,
    pub p_order: usize,
    pub p_jennings_ranks: Vec<u32>,
    /// `c - 1` and `[b, a] - 1` independent modulo `Δ^3` in `FQ`.
    pub q_layer_independent: bool,
    pub q_frattini_is_c_comm: bool,
}

impl QsReport {
    pub fn passed(&self) -> bool {
        self.q_verdict.as_bool() == Some(true)
            && self.s_verdict.as_bool() == Some(false)
            && self.s_witness_is_a
            && self.p_order == 16
            && self.p_jennings_ranks == [2, 2]
            && self.q_layer_independent
            && self.q_frattini_is_c_comm
    }
}

impl fmt::Display for QsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q_{{2^{{{}|{}}}}}: Ω_1(FG) ⊆ Δ²: {}", self.m, self.n, self.q_verdict)?;
        writeln!(f, "S_{{2^{{{}|{}}}}}: Ω_1(FH) ⊆ Δ²: {}", self.m, self.n, self.s_verdict)?;
        writeln!(f, "witness for S is a - 1: {}", self.s_witness_is_a)?;
        writeln!(f, "P = Q/D_3(Q): order {}, Jennings ranks {:?}", self.p_order, self.p_jennings_ranks)?;
        writeln!(f, "c - 1, [b,a] - 1 independent mod Δ^3: {}", self.q_layer_independent)?;
        writeln!(f, "Frat(Q) = ⟨c, [b,a]⟩: {}", self.q_frattini_is_c_comm)?;
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

pub fn qs_distinguisher(m: u32, n: u32) -> Result<QsReport> {
    if m < 2 || n < 3 {
        return Err(Error::ValidationFailed(format!("need m > 1 and n > 2, got m = {m}, n = {n}")));
    }
    let q = family(FamilyKind::Q, m, n)?;
    let s = family(FamilyKind::S, m, n)?;

    let fq = GroupAlgebra::new(&q.group)?;
    let q_powers = fq.delta_powers();
    let q_verdict = omega1_in_delta2_with(&fq, &q_powers, &[q.a])?;
    let fs = GroupAlgebra::new(&s.group)?;
    let s_verdict = omega1_in_delta2_with(&fs, &fs.delta_powers(), &[s.a])?;
    let s_witness_is_a = matches!(s_verdict, Omega1Verdict::NotContained { witness_element, .. } if witness_element == s.a);

    let series = jennings::series_from_powers(&fq, &q_powers);
    let (p_group, _) = q.group.quotient(&series[2])?;
    let p_series = jennings::series_by_recursion(&p_group);
    let p_jennings_ranks = jennings::ranks(&p_group, &p_series);

    let mut below = q_powers[3].clone();
    let q_layer_independent = below.insert(fq.minus_one(q.c)) && below.insert(fq.minus_one(q.commutator_ba()));
    let q_frattini_is_c_comm = frattini(&q.group) == q.group.closure([q.c, q.commutator_ba()]);

    Ok(QsReport {
        m,
        n,
        q_verdict,
        s_verdict,
        s_witness_is_a,
        p_order: p_group.order(),
        p_jennings_ranks,
        q_layer_independent,
        q_frattini_is_c_comm,
    })
}

/// `Frat` of a family member, checked against the generators named for it:
/// `⟨c^2, [b,a]⟩` for `D` and `⟨c, [b,a]⟩` for `Q`, `S` (`m > 1`).
pub fn frattini_matches_generators(fam: &FamilyGroup) -> bool {
    let g = &fam.group;
    let c = if fam.spec.kind == FamilyKind::D { g.pow(fam.c, 2) } else { fam.c };
    frattini(g) == g.closure([c, fam.commutator_ba()])
}
