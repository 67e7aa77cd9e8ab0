//! Isomorphism types of finite abelian p-groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// A finite abelian p-group up to isomorphism, as the non-increasing list of
/// its cyclic factor orders. Serializes as that list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianType {
    cyclic_orders: Vec<u64>,
}

fn prime_power_of(q: u64) -> Option<u32> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1).then_some(p as u32)
}

impl AbelianType {
    pub fn trivial() -> Self {
        AbelianType::default()
    }

    /// Factors equal to 1 are dropped; all others must be powers of one prime.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let mut v: Vec<u64> = orders.iter().copied().filter(|&q| q != 1).collect();
        let mut prime = None;
        for &q in &v {
            let p = prime_power_of(q).ok_or_else(|| Error::ValidationFailed(format!("{q} is not a prime power")))?;
            if *prime.get_or_insert(p) != p {
                return Err(Error::ValidationFailed("cyclic orders involve two primes".into()));
            }
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        Ok(AbelianType { cyclic_orders: v })
    }

    /// Inverts [`AbelianType::mho_sizes`]: the number of cyclic factors of
    /// order at least `p^(n+1)` is `log_p(|℧_n| / |℧_(n+1)|)`.
    pub fn from_mho_sizes(p: u32, sizes: &[u64]) -> Result<Self> {
        let p = p as u64;
        let bad = |m: &str| Error::ValidationFailed(format!("invalid ℧-size sequence {sizes:?}: {m}"));
        if sizes.last() != Some(&1) {
            return Err(bad("must end in 1"));
        }
        let mut at_least = Vec::new();
        for w in sizes.windows(2) {
            if w[1] == 0 || w[0] % w[1] != 0 || w[0] == w[1] {
                return Err(bad("must be strictly decreasing by divisibility"));
            }
            let (mut r, mut k) = (w[0] / w[1], 0usize);
            while r % p == 0 {
                r /= p;
                k += 1;
            }
            if r != 1 {
                return Err(bad("ratios must be powers of p"));
            }
            at_least.push(k);
        }
        let mut orders = Vec::new();
        for (n, &k) in at_least.iter().enumerate() {
            let next = at_least.get(n + 1).copied().unwrap_or(0);
            if next > k {
                return Err(bad("factor counts must be non-increasing"));
            }
            orders.extend(std::iter::repeat_n(p.pow(n as u32 + 1), k - next));
        }
        Self::from_cyclic_orders(&orders)
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn prime(&self) -> Option<u32> {
        self.cyclic_orders.first().and_then(|&q| prime_power_of(q))
    }

    pub fn order(&self) -> u64 {
        self.cyclic_orders.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn exponent(&self) -> u64 {
        self.cyclic_orders.first().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.cyclic_orders.is_empty()
    }

    pub fn is_elementary(&self) -> bool {
        self.cyclic_orders.iter().all(|&q| prime_power_of(q) == Some(q as u32))
    }

    /// `(|℧_n|)_{n >= 0}`, ending with the first 1.
    pub fn mho_sizes(&self) -> Vec<u64> {
        let Some(p) = self.prime() else { return vec![1] };
        let mut out = Vec::new();
        let mut div = 1u64;
        loop {
            let s: u64 = self.cyclic_orders.iter().map(|&q| (q / div).max(1)).product();
            out.push(s);
            if s == 1 {
                return out;
            }
            div *= p as u64;
        }
    }

    /// The group `C_{q_1} x ... x C_{q_r}`.
    pub fn realize(&self) -> Result<Group> {
        let orders: Vec<usize> = self.cyclic_orders.iter().map(|&q| q as usize).collect();
        Group::abelian(&orders)
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_orders.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.cyclic_orders.iter().map(|q| format!("C{q}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// `(|℧_n(A)|)_n` for an abelian p-group, computed from the table.
pub fn mho_sizes(a: &Group) -> Result<Vec<u64>> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let p = a.require_p_group()? as u64;
    let mut out = Vec::new();
    let mut k = 1u64;
    loop {
        let s = a.closure(a.power_set(k).iter()).order() as u64;
        out.push(s);
        if s == 1 {
            return Ok(out);
        }
        k *= p;
    }
}

pub fn abelian_type(a: &Group) -> Result<AbelianType> {
    AbelianType::from_mho_sizes(a.prime(), &mho_sizes(a)?)
}

/// Type of the subgroup `h` of `g`.
pub fn subgroup_type(g: &Group, h: &Subgroup) -> Result<AbelianType> {
    abelian_type(&g.subgroup_as_group(h).0)
}

/// Type of `num / den` for normal subgroups `den <= num` of `g`.
pub fn section_type(g: &Group, num: &Subgroup, den: &Subgroup) -> Result<AbelianType> {
    let (sub, embed) = g.subgroup_as_group(num);
    let back: Vec<usize> = embed.iter().enumerate().filter(|(_, &x)| den.contains(x)).map(|(i, _)| i).collect();
    let den_in_sub = sub.closure(back);
    let (q, _) = sub.quotient(&den_in_sub)?;
    abelian_type(&q)
}
