//! Finite groups as dense multiplication tables.
//!
//! Element `0` is always the identity. Indices are assigned by whichever
//! constructor built the group; two groups built differently are compared with
//! [`crate::iso::isomorphic`], never by table equality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::ElementSet;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Orders up to this size get an exhaustive associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 128;
const SAMPLED_TRIPLES: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct Group {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    elem_order: Vec<u32>,
    prime: u32,
    generators: Vec<usize>,
}

/// A subgroup, stored as a membership bitset over the parent's element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    members: ElementSet,
}

impl Subgroup {
    pub fn trivial(g: &Group) -> Self {
        Subgroup { members: ElementSet::from_indices(g.order(), [0]) }
    }

    pub fn whole(g: &Group) -> Self {
        Subgroup { members: ElementSet::full(g.order()) }
    }

    /// Wraps a bitset that is already known to be a subgroup.
    pub(crate) fn from_members(members: ElementSet) -> Self {
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Intersections of subgroups are subgroups.
    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { members: self.members.intersection(&other.members) }
    }
}

fn smallest_prime_factor(n: usize) -> Option<u32> {
    (2..=n).find(|d| n.is_multiple_of(*d)).map(|d| d as u32)
}

impl Group {
    /// Builds a group from a flat row-major multiplication table, verifying
    /// the group axioms.
    pub fn from_table(order: usize, table: Vec<u16>) -> Result<Group> {
        Self::from_table_with_cap(order, table, DEFAULT_ORDER_CAP)
    }

    pub fn from_table_with_cap(order: usize, table: Vec<u16>, cap: usize) -> Result<Group> {
        if order > cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        if order == 0 || table.len() != order * order {
            return Err(Error::ValidationFailed(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        let g = Self::build(order, table);
        g.validate()?;
        Ok(g)
    }

    /// Builds a group from a table known to satisfy the axioms (products,
    /// quotients, closures of permutations).
    pub(crate) fn from_table_trusted(order: usize, table: Vec<u16>) -> Group {
        let g = Self::build(order, table);
        debug_assert!(g.validate_latin().is_ok());
        g
    }

    fn build(order: usize, mul: Vec<u16>) -> Group {
        let mut g = Group {
            order,
            mul,
            inv: vec![0; order],
            elem_order: vec![1; order],
            prime: smallest_prime_factor(order).unwrap_or(2),
            generators: Vec::new(),
        };
        for x in 0..order {
            if let Some(y) = (0..order).find(|&y| g.mul(x, y) == 0) {
                g.inv[x] = y as u16;
            }
            let mut k = 1;
            let mut acc = x;
            while acc != 0 && k <= order as u32 {
                acc = g.mul(acc, x);
                k += 1;
            }
            g.elem_order[x] = k;
        }
        g.generators = g.greedy_generators();
        g
    }

    fn validate_latin(&self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::ValidationFailed("element 0 is not the identity".into()));
            }
        }
        let mut seen = vec![0u32; n];
        for (stamp, x) in (1u32..).zip(0..n) {
            for y in 0..n {
                let z = self.mul(x, y);
                if z >= n || seen[z] == stamp {
                    return Err(Error::ValidationFailed(format!("row {x} is not a permutation")));
                }
                seen[z] = stamp;
            }
        }
        for y in 0..n {
            let mut col = ElementSet::empty(n);
            for x in 0..n {
                if !col.insert(self.mul(x, y)) {
                    return Err(Error::ValidationFailed(format!("column {y} is not a permutation")));
                }
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        self.validate_latin()?;
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::ValidationFailed(format!("associativity fails at ({a}, {b}, {c})")));
            }
            Ok(())
        };
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&x| std::cmp::Reverse(self.elem_order[x]));
        let mut gens = Vec::new();
        let mut h = Subgroup::trivial(self);
        for x in by_order {
            if !h.contains(x) {
                gens.push(x);
                h = self.closure(gens.iter().copied());
                if h.order() == self.order {
                    break;
                }
            }
        }
        gens
    }

    pub fn trivial() -> Group {
        Self::build(1, vec![0])
    }

    pub fn cyclic(n: usize) -> Group {
        assert!(n >= 1);
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u16).collect();
        Self::build(n, table)
    }

    /// Direct product of cyclic groups of the given orders.
    pub fn abelian(cyclic_orders: &[usize]) -> Result<Group> {
        cyclic_orders
            .iter()
            .try_fold(Group::trivial(), |acc, &n| direct_product(&acc, &Group::cyclic(n)))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Smallest prime dividing the order; 2 for the trivial group.
    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn is_p_group(&self) -> bool {
        let mut n = self.order;
        while n.is_multiple_of(self.prime as usize) {
            n /= self.prime as usize;
        }
        n == 1
    }

    pub fn require_p_group(&self) -> Result<u32> {
        if self.is_p_group() {
            Ok(self.prime)
        } else {
            Err(Error::NotPGroup { order: self.order })
        }
    }

    /// `log_p |G|` for a p-group.
    pub fn log_order(&self) -> u32 {
        let mut n = self.order;
        let mut k = 0;
        while n > 1 {
            n /= self.prime as usize;
            k += 1;
        }
        k
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> u32 {
        self.elem_order[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.elem_order[a] as u64;
        let mut acc = 0;
        let mut base = a;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table(&self) -> &[u16] {
        &self.mul
    }

    /// Smallest subgroup containing `seeds`.
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut set = ElementSet::empty(self.order);
        set.insert(0);
        let mut list = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        for s in seeds {
            if set.contains(s) {
                continue;
            }
            gens.push(s);
            let mut i = 0;
            while i < list.len() {
                let x = list[i];
                for &g in &gens {
                    let y = self.mul(x, g);
                    if set.insert(y) {
                        list.push(y);
                    }
                }
                i += 1;
            }
        }
        Subgroup::from_members(set)
    }

    /// Subgroup generated by two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.closure(a.members().iter().chain(b.members().iter()))
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        n.members()
            .iter()
            .all(|x| self.generators.iter().all(|&g| n.contains(self.conjugate(x, g))))
    }

    /// `G/N` on coset indices together with the projection `G -> G/N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<(Group, Vec<usize>)> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let nelems = n.elements();
        let mut label = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if label[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &x in &nelems {
                label[self.mul(g, x)] = c;
            }
        }
        let q = reps.len();
        let mut table = vec![0u16; q * q];
        for (c, &rc) in reps.iter().enumerate() {
            for (d, &rd) in reps.iter().enumerate() {
                table[c * q + d] = label[self.mul(rc, rd)] as u16;
            }
        }
        Ok((Group::from_table_trusted(q, table), label))
    }

    /// The subgroup `h` as a group in its own right, with the embedding map.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (Group, Vec<usize>) {
        let elems = h.elements();
        let mut index = vec![usize::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            index[x] = i;
        }
        let k = elems.len();
        let mut table = vec![0u16; k * k];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                table[i * k + j] = index[self.mul(x, y)] as u16;
            }
        }
        (Group::from_table_trusted(k, table), elems)
    }

    /// Relabels the elements by `perm` (old index -> new index). `perm` must
    /// fix 0.
    pub fn relabel(&self, perm: &[usize]) -> Group {
        assert_eq!(perm[0], 0, "relabeling must keep the identity at 0");
        let n = self.order;
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u16;
            }
        }
        Group::from_table_trusted(n, table)
    }

    /// `{ g^k : g in G }` as an element set.
    pub fn power_set(&self, k: u64) -> ElementSet {
        ElementSet::from_indices(self.order, (0..self.order).map(|g| self.pow(g, k)))
    }
}

/// Componentwise product; element `(a, b)` gets index `a * |B| + b`.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    direct_product_with_cap(a, b, DEFAULT_ORDER_CAP)
}

pub fn direct_product_with_cap(a: &Group, b: &Group, cap: usize) -> Result<Group> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let mut table = vec![0u16; n * n];
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u16;
        }
    }
    Ok(Group::from_table_trusted(n, table))
}

/// Images of the canonical embeddings `A -> A x B` and `B -> A x B`.
pub fn product_embeddings(a: &Group, b: &Group) -> (Vec<usize>, Vec<usize>) {
    let nb = b.order();
    ((0..a.order()).map(|x| x * nb).collect(), (0..nb).collect())
}
