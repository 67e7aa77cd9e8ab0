//! Jennings (dimension subgroup) series `D_n(G) = G ∩ (1 + Δ^n)`.

use crate::algebra::GroupAlgebra;
use crate::bits::ElementSet;
use crate::group::{Group, Subgroup};
use crate::linalg::Subspace;
use crate::pgroup::{commutator_of, frattini, log_p};

/// `D_1, D_2, ...` from the definition, ending with the first trivial term.
pub fn series_by_membership(fg: &GroupAlgebra) -> Vec<Subgroup> {
    series_from_powers(fg, &fg.delta_powers())
}

pub fn series_from_powers(fg: &GroupAlgebra, powers: &[Subspace]) -> Vec<Subgroup> {
    let g = fg.group();
    let mut out = Vec::new();
    for delta_n in &powers[1..] {
        let members = (0..g.order()).filter(|&x| x == 0 || delta_n.contains(&fg.minus_one(x)));
        let d = Subgroup::from_members(ElementSet::from_indices(g.order(), members));
        let done = d.is_trivial();
        out.push(d);
        if done {
            break;
        }
    }
    out
}

/// `D_1 = G`, `D_n = [D_(n-1), G] ℧_1(D_⌈n/p⌉)`, ending with the first
/// trivial term.
pub fn series_by_recursion(g: &Group) -> Vec<Subgroup> {
    let p = g.prime() as usize;
    let whole = Subgroup::whole(g);
    let mut out = vec![whole.clone()];
    if g.order() == 1 {
        return out;
    }
    let mut n = 2;
    loop {
        let comm = commutator_of(g, &out[n - 2], &whole);
        let src = &out[n.div_ceil(p) - 1];
        let powers = src.members().iter().map(|x| g.pow(x, p as u64));
        let d = g.closure(comm.members().iter().chain(powers));
        let done = d.is_trivial();
        out.push(d);
        if done {
            return out;
        }
        n += 1;
    }
}

/// `[Frat(G), G] ℧_1(Frat(G))`, the third dimension subgroup when `p = 2`.
pub fn third_term_formula(g: &Group) -> Subgroup {
    let frat = frattini(g);
    let comm = commutator_of(g, &frat, &Subgroup::whole(g));
    let squares = frat.members().iter().map(|x| g.pow(x, 2)).collect::<Vec<_>>();
    g.closure(comm.members().iter().chain(squares))
}

/// `log_p |D_n : D_(n+1)|` for `n = 1, 2, ...`.
pub fn ranks(g: &Group, series: &[Subgroup]) -> Vec<u32> {
    series.windows(2).map(|w| log_p(g.prime(), w[0].order() / w[1].order())).collect()
}

/// `1 + (p - 1) Σ n d_n`, the nilpotency index of `Δ` predicted by the ranks.
pub fn nilpotency_bound(p: u32, ranks: &[u32]) -> usize {
    1 + (p as usize - 1) * ranks.iter().enumerate().map(|(i, &d)| (i + 1) * d as usize).sum::<usize>()
}

/// Elements of `D_n` forming a basis of `D_n / D_(n+1)`, picked in index order.
pub fn layer_basis(g: &Group, upper: &Subgroup, lower: &Subgroup) -> Vec<usize> {
    let mut cur = lower.clone();
    let mut picks = Vec::new();
    for x in upper.members().iter() {
        if !cur.contains(x) {
            picks.push(x);
            cur = g.closure(cur.members().iter().chain([x]));
        }
    }
    picks
}

/// For each layer, whether `g_i - 1` over a basis of `D_n / D_(n+1)` are
/// linearly independent modulo `Δ^(n+1)`.
pub fn layers_independent(fg: &GroupAlgebra, series: &[Subgroup], powers: &[Subspace]) -> Vec<bool> {
    let g = fg.group();
    let zero = Subspace::zero(fg.p(), fg.dim());
    series
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let below = powers.get(i + 2).unwrap_or(&zero);
            let picks = layer_basis(g, &w[0], &w[1]);
            let mut s = below.clone();
            let grown = picks.iter().filter(|&&x| s.insert(fg.minus_one(x))).count();
            grown == picks.len()
        })
        .collect()
}
