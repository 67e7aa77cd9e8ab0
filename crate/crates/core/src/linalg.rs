//! Exact linear algebra over the prime field GF(p).
//!
//! Vectors over GF(2) are bit-packed into `u64` words; for odd primes each
//! coordinate takes one byte. Subspaces are kept in reduced row echelon form,
//! which is canonical, so subspace equality is row equality.

use std::fmt;

#[inline]
fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Data {
    Bits(Vec<u64>),
    Digits(Vec<u8>),
}

/// A vector in GF(p)^len.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpVec {
    p: u32,
    len: usize,
    data: Data,
}

impl FpVec {
    pub fn zeros(p: u32, len: usize) -> Self {
        assert!((2..256).contains(&p), "prime {p} out of supported range");
        let data = if p == 2 {
            Data::Bits(vec![0; len.div_ceil(64)])
        } else {
            Data::Digits(vec![0; len])
        };
        FpVec { p, len, data }
    }

    pub fn unit(p: u32, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(p, len);
        v.set(i, 1);
        v
    }

    pub fn from_coeffs(p: u32, coeffs: &[u32]) -> Self {
        let mut v = Self::zeros(p, coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            v.set(i, c % p);
        }
        v
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        match &self.data {
            Data::Bits(w) => (w[i >> 6] >> (i & 63) & 1) as u32,
            Data::Digits(d) => d[i] as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, c: u32) {
        let c = c % self.p;
        match &mut self.data {
            Data::Bits(w) => {
                let bit = 1u64 << (i & 63);
                if c == 1 {
                    w[i >> 6] |= bit;
                } else {
                    w[i >> 6] &= !bit;
                }
            }
            Data::Digits(d) => d[i] = c as u8,
        }
    }

    /// Adds `c` to coordinate `i`.
    #[inline]
    pub fn add_at(&mut self, i: usize, c: u32) {
        let p = self.p;
        match &mut self.data {
            Data::Bits(w) => {
                if c & 1 == 1 {
                    w[i >> 6] ^= 1u64 << (i & 63);
                }
            }
            Data::Digits(d) => d[i] = ((d[i] as u32 + c) % p) as u8,
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &FpVec, c: u32) {
        debug_assert_eq!(self.len, other.len);
        let p = self.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        match (&mut self.data, &other.data) {
            (Data::Bits(a), Data::Bits(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
            (Data::Digits(a), Data::Digits(b)) => {
                for (x, &y) in a.iter_mut().zip(b) {
                    *x = ((*x as u32 + c * y as u32) % p) as u8;
                }
            }
            _ => unreachable!("mixed field representations"),
        }
    }

    pub fn add(&mut self, other: &FpVec) {
        self.add_scaled(other, 1);
    }

    pub fn sub(&mut self, other: &FpVec) {
        self.add_scaled(other, self.p - 1);
    }

    pub fn scale(&mut self, c: u32) {
        let p = self.p;
        let c = c % p;
        match &mut self.data {
            Data::Bits(w) => {
                if c == 0 {
                    w.iter_mut().for_each(|x| *x = 0);
                }
            }
            Data::Digits(d) => d.iter_mut().for_each(|x| *x = ((*x as u32 * c) % p) as u8),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Bits(w) => w.iter().all(|&x| x == 0),
            Data::Digits(d) => d.iter().all(|&x| x == 0),
        }
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        match &self.data {
            Data::Bits(w) => w
                .iter()
                .position(|&x| x != 0)
                .map(|wi| wi * 64 + w[wi].trailing_zeros() as usize),
            Data::Digits(d) => d.iter().position(|&x| x != 0),
        }
    }

    /// Nonzero coordinates as `(index, coefficient)` pairs.
    pub fn support(&self) -> Vec<(usize, u32)> {
        match &self.data {
            Data::Bits(w) => {
                let mut out = Vec::new();
                for (wi, &word) in w.iter().enumerate() {
                    let mut x = word;
                    while x != 0 {
                        out.push((wi * 64 + x.trailing_zeros() as usize, 1));
                        x &= x - 1;
                    }
                }
                out
            }
            Data::Digits(d) => d
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c as u32))
                .collect(),
        }
    }

    /// Sum of all coordinates.
    pub fn coefficient_sum(&self) -> u32 {
        match &self.data {
            Data::Bits(w) => w.iter().map(|x| x.count_ones()).sum::<u32>() % 2,
            Data::Digits(d) => (d.iter().map(|&x| x as u64).sum::<u64>() % self.p as u64) as u32,
        }
    }

    pub fn concat(&self, other: &FpVec) -> FpVec {
        let mut out = FpVec::zeros(self.p, self.len + other.len);
        for (i, c) in self.support() {
            out.set(i, c);
        }
        for (i, c) in other.support() {
            out.set(self.len + i, c);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> FpVec {
        let mut out = FpVec::zeros(self.p, end - start);
        for (i, c) in self.support() {
            if i >= start && i < end {
                out.set(i - start, c);
            }
        }
        out
    }

    pub fn to_coeffs(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for FpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i))?;
        }
        write!(f, "]")
    }
}

/// A subspace of GF(p)^len stored as a basis in reduced row echelon form.
#[derive(Clone)]
pub struct Subspace {
    p: u32,
    len: usize,
    rows: Vec<FpVec>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.len == other.len && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("p", &self.p)
            .field("len", &self.len)
            .field("dim", &self.rows.len())
            .finish()
    }
}

impl Subspace {
    pub fn zero(p: u32, len: usize) -> Self {
        Subspace { p, len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u32, len: usize) -> Self {
        Subspace {
            p,
            len,
            rows: (0..len).map(|i| FpVec::unit(p, len, i)).collect(),
            pivots: (0..len).collect(),
        }
    }

    pub fn span<I>(p: u32, len: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = FpVec>,
    {
        let mut s = Self::zero(p, len);
        for v in vectors {
            s.insert(v);
            if s.dim() == len {
                break;
            }
        }
        s
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Length of the ambient vectors.
    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.len - self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[FpVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` to its canonical representative modulo this subspace.
    pub fn reduce_in_place(&self, v: &mut FpVec) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(piv);
            if c != 0 {
                v.add_scaled(row, self.p - c);
            }
        }
    }

    pub fn reduce(&self, v: &FpVec) -> FpVec {
        let mut v = v.clone();
        self.reduce_in_place(&mut v);
        v
    }

    pub fn contains(&self, v: &FpVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: FpVec) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut v = v;
        self.reduce_in_place(&mut v);
        let Some(piv) = v.leading() else {
            return false;
        };
        let c = v.get(piv);
        if c != 1 {
            v.scale(inv_mod(c, self.p));
        }
        for row in &mut self.rows {
            let a = row.get(piv);
            if a != 0 {
                row.add_scaled(&v, self.p - a);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < piv);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, piv);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        let mut s = big.clone();
        for v in &small.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    /// Zassenhaus intersection.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.len;
        let zero = FpVec::zeros(self.p, n);
        let mut big = Subspace::zero(self.p, 2 * n);
        for u in &self.rows {
            big.insert(u.concat(u));
        }
        for w in &other.rows {
            big.insert(w.concat(&zero));
        }
        Subspace::span(
            self.p,
            n,
            big.rows
                .iter()
                .zip(&big.pivots)
                .filter(|(_, &piv)| piv >= n)
                .map(|(r, _)| r.slice(n, 2 * n)),
        )
    }

    /// Whether `self + other` is direct.
    pub fn is_direct_with(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim() + other.dim()
    }
}

/// Kernel of the linear map sending `domain[i]` to `images[i]`, returned as a
/// subspace of the domain's ambient space.
pub fn kernel(p: u32, domain: &[FpVec], images: &[FpVec]) -> Subspace {
    assert_eq!(domain.len(), images.len());
    let ambient = domain.first().map_or(0, |v| v.len());
    let Some(m) = images.first().map(|v| v.len()) else {
        return Subspace::zero(p, ambient);
    };
    let k = domain.len();
    let mut aug = Subspace::zero(p, m + k);
    for (i, img) in images.iter().enumerate() {
        aug.insert(img.concat(&FpVec::unit(p, k, i)));
    }
    let mut out = Subspace::zero(p, ambient);
    for (row, &piv) in aug.rows.iter().zip(&aug.pivots) {
        if piv < m {
            continue;
        }
        let mut v = FpVec::zeros(p, ambient);
        for i in 0..k {
            let c = row.get(m + i);
            if c != 0 {
                v.add_scaled(&domain[i], c);
            }
        }
        out.insert(v);
    }
    out
}

/// An ordered linearly independent family with a coordinate solver.
#[derive(Clone, Debug)]
pub struct Basis {
    vectors: Vec<FpVec>,
    solver: Subspace,
}

impl Basis {
    /// Returns `None` if the vectors are linearly dependent.
    pub fn new(p: u32, len: usize, vectors: Vec<FpVec>) -> Option<Basis> {
        let k = vectors.len();
        let mut solver = Subspace::zero(p, len + k);
        for (i, v) in vectors.iter().enumerate() {
            solver.insert(v.concat(&FpVec::unit(p, k, i)));
        }
        let independent = solver.pivots.iter().all(|&piv| piv < len);
        independent.then_some(Basis { vectors, solver })
    }

    pub fn vectors(&self) -> &[FpVec] {
        &self.vectors
    }

    /// Coordinates of `v` with respect to the family, or `None` if `v` is not
    /// in its span.
    pub fn coordinates(&self, v: &FpVec) -> Option<Vec<u32>> {
        let len = v.len();
        let k = self.vectors.len();
        let p = v.p();
        let mut rest = v.clone();
        let mut coords = FpVec::zeros(p, k);
        for (row, &piv) in self.solver.rows.iter().zip(&self.solver.pivots) {
            let c = rest.get(piv);
            if c != 0 {
                rest.add_scaled(&row.slice(0, len), p - c);
                coords.add_scaled(&row.slice(len, len + k), c);
            }
        }
        rest.is_zero().then(|| coords.to_coeffs())
    }
}
