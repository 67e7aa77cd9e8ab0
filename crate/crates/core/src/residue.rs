//! The residue power map `Δ/Δ² → Δ^p/Δ^(p+1)` and the test whether
//! `Ω_1(FG) ⊆ Δ²`.
//!
//! For `x ∈ Δ` and `d ∈ Δ²` one has `(x + d)^p ≡ x^p mod Δ^(p+1)`, so the map
//! is well defined on cosets. A coset is isotropic when its `p`-th power
//! vanishes modulo `Δ^(p+1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{FpVec, Subspace};
use crate::pgroup::minimal_generators;

/// Largest rank of `Δ/Δ²` whose cosets are enumerated.
pub const RANK_GUARD: usize = 20;

#[derive(Clone, Debug)]
pub struct ResidueMap {
    /// Group elements `g_i` whose `g_i - 1` form a basis of `Δ/Δ²`.
    pub basis_elements: Vec<usize>,
    /// Coefficient vectors of the nonzero isotropic cosets.
    pub isotropic: Vec<Vec<u32>>,
    /// Number of cosets enumerated, the zero coset included.
    pub cosets: u64,
}

impl ResidueMap {
    pub fn is_anisotropic(&self) -> bool {
        self.isotropic.is_empty()
    }
}

/// `Σ c_i (g_i - 1)`.
pub fn combination(fg: &GroupAlgebra, elems: &[usize], coeffs: &[u32]) -> FpVec {
    let mut v = fg.zero();
    for (&g, &c) in elems.iter().zip(coeffs) {
        if c != 0 {
            v.add_scaled(&fg.minus_one(g), c);
        }
    }
    v
}

pub fn residue_power_map(fg: &GroupAlgebra) -> Result<ResidueMap> {
    residue_power_map_with(fg, &fg.delta_powers())
}

/// As [`residue_power_map`], reusing precomputed powers of `Δ`.
pub fn residue_power_map_with(fg: &GroupAlgebra, powers: &[Subspace]) -> Result<ResidueMap> {
    let p = fg.p();
    let elems = minimal_generators(fg.group());
    let d = elems.len();
    if d > RANK_GUARD {
        return Err(Error::RankTooLarge { rank: d, guard: RANK_GUARD });
    }
    let zero = Subspace::zero(p, fg.dim());
    let target = powers.get(p as usize + 1).unwrap_or(&zero);
    let mut isotropic = Vec::new();
    let mut coeffs = vec![0u32; d];
    let mut cosets = 0u64;
    loop {
        cosets += 1;
        if coeffs.iter().any(|&c| c != 0) {
            let r = combination(fg, &elems, &coeffs);
            if target.contains(&fg.pow(&r, p as u64)) {
                isotropic.push(coeffs.clone());
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(ResidueMap { basis_elements: elems, isotropic, cosets });
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Outcome of the `Ω_1(FG) ⊆ Δ²` test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "value", rename_all = "snake_case")]
pub enum Omega1Verdict {
    Contained { method: String },
    /// `x = g - 1` has `x^p = 0` and `x ∉ Δ²`.
    NotContained { witness_element: usize, method: String },
    Inconclusive { reason: String },
}

impl Omega1Verdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Omega1Verdict::Contained { .. } => Some(true),
            Omega1Verdict::NotContained { .. } => Some(false),
            Omega1Verdict::Inconclusive { .. } => None,
        }
    }

    /// Comparison key that ignores element labels.
    pub fn key(&self) -> &'static str {
        match self {
            Omega1Verdict::Contained { .. } => "true",
            Omega1Verdict::NotContained { .. } => "false",
            Omega1Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

impl fmt::Display for Omega1Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Omega1Verdict::Contained { method } => write!(f, "true ({method})"),
            Omega1Verdict::NotContained { witness_element, method } => {
                write!(f, "false (witness g - 1 for element #{witness_element}; {method})")
            }
            Omega1Verdict::Inconclusive { reason } => write!(f, "inconclusive ({reason})"),
        }
    }
}

/// Decides `Ω_1(FG) ⊆ Δ²`.
///
/// An anisotropic residue map proves containment: `x^p = 0` forces `x ∈ Δ`,
/// and then the coset of `x` is isotropic. Otherwise a witness `g - 1`, `g`
/// of order `p` outside `D_2(G)`, disproves it; `hints` are tried first.
pub fn omega1_in_delta2(fg: &GroupAlgebra, hints: &[usize]) -> Result<Omega1Verdict> {
    omega1_in_delta2_with(fg, &fg.delta_powers(), hints)
}

pub fn omega1_in_delta2_with(fg: &GroupAlgebra, powers: &[Subspace], hints: &[usize]) -> Result<Omega1Verdict> {
    let map = residue_power_map_with(fg, powers)?;
    if map.is_anisotropic() {
        return Ok(Omega1Verdict::Contained {
            method: format!("residue map anisotropic on all {} cosets of Δ² in Δ", map.cosets),
        });
    }
    let g = fg.group();
    let delta2 = &powers[2];
    let p = fg.p() as u64;
    for x in hints.iter().copied().filter(|&x| x < g.order()).chain(0..g.order()) {
        let v = fg.minus_one(x);
        if v.is_zero() || delta2.contains(&v) {
            continue;
        }
        if fg.pow(&v, p).is_zero() {
            return Ok(Omega1Verdict::NotContained {
                witness_element: x,
                method: "element of order p outside D_2".into(),
            });
        }
    }
    Ok(Omega1Verdict::Inconclusive {
        reason: format!(
            "{} isotropic cosets of Δ² in Δ but no element g of order p outside D_2",
            map.isotropic.len()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::pgroup::tests::{d8, q8};

    #[test]
    fn elementary_abelian_is_totally_isotropic() {
        let g = Group::abelian(&[2, 2, 2]).unwrap();
        let fg = GroupAlgebra::new(&g).unwrap();
        let map = residue_power_map(&fg).unwrap();
        assert_eq!(map.cosets, 8);
        assert_eq!(map.isotropic.len(), 7);
        let v = omega1_in_delta2(&fg, &[]).unwrap();
        assert_eq!(v.as_bool(), Some(false));
        let Omega1Verdict::NotContained { witness_element, .. } = v else { unreachable!() };
        assert_eq!(g.elem_order(witness_element), 2);
    }

    #[test]
    fn dihedral_has_a_witness() {
        let d = GroupAlgebra::new(&d8()).unwrap();
        assert_eq!(omega1_in_delta2(&d, &[]).unwrap().as_bool(), Some(false));
    }

    #[test]
    fn cyclic_groups_are_anisotropic() {
        for n in [4, 8, 16] {
            let fg = GroupAlgebra::new(&Group::cyclic(n)).unwrap();
            assert!(residue_power_map(&fg).unwrap().is_anisotropic());
            assert_eq!(omega1_in_delta2(&fg, &[]).unwrap().as_bool(), Some(true));
        }
    }

    #[test]
    fn quaternion_is_anisotropic() {
        // (i - 1)^2 = i^2 - 1 lies in Δ^2 but not Δ^3, and the cross terms of
        // ((i - 1) + (j - 1))^2 add one more copy of i^2 - 1 modulo Δ^3.
        let fg = GroupAlgebra::new(&q8()).unwrap();
        let map = residue_power_map(&fg).unwrap();
        assert!(map.is_anisotropic());
        assert_eq!(map.cosets, 4);
        assert_eq!(omega1_in_delta2(&fg, &[]).unwrap().as_bool(), Some(true));
    }

    #[test]
    fn rank_guard_is_not_hit_for_small_rank() {
        let g = Group::abelian(&[2; 5]).unwrap();
        let fg = GroupAlgebra::new(&g).unwrap();
        assert_eq!(residue_power_map(&fg).unwrap().cosets, 32);
    }
}
