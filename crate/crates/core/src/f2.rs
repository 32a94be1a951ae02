//! Bit vectors, bit matrices, permutations and invertible linear tables over F2.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 2]>;

/// A fixed-length packed bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Words,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            words: SmallVec::from_elem(0, len.div_ceil(64)),
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut row = Self::zeros(len);
        row.set(i, true);
        row
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut row = Self::zeros(len);
        for i in ones {
            row.set(i, true);
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= *b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the bitwise AND with `other`.
    pub fn dot(&self, other: &BitRow) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut row = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => row.set(i, true),
                _ => return Err(Error::InvalidBitstring(s.to_string())),
            }
        }
        Ok(row)
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bitstring())
    }
}

/// Dense row-major matrix over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitRow>,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        BitMatrix {
            ncols,
            rows: vec![BitRow::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            ncols: n,
            rows: (0..n).map(|i| BitRow::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitRow>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols));
        BitMatrix { ncols, rows }
    }

    pub fn from_bitstrings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|s| BitRow::from_bitstring(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidBitstring("ragged rows".into()));
        }
        Ok(BitMatrix { ncols, rows })
    }

    pub fn to_bitstrings(&self) -> Vec<String> {
        self.rows.iter().map(BitRow::to_bitstring).collect()
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    pub fn row(&self, i: usize) -> &BitRow {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> BitRow {
        BitRow::from_indices(self.nrows(), (0..self.nrows()).filter(|&i| self.get(i, j)))
    }

    /// `row[dst] ^= row[src]`
    pub fn row_xor(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (s, d) = if src < dst {
            let (lo, hi) = self.rows.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = self.rows.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        d.xor_assign(s);
    }

    /// `col[dst] ^= col[src]`
    pub fn col_xor(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        for row in &mut self.rows {
            if row.get(src) {
                row.flip(dst);
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.rows {
            let (x, y) = (row.get(a), row.get(b));
            row.set(a, y);
            row.set(b, x);
        }
    }

    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.ncols, rhs.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = BitRow::zeros(rhs.ncols);
                for k in r.ones() {
                    out.xor_assign(&rhs.rows[k]);
                }
                out
            })
            .collect();
        BitMatrix {
            ncols: rhs.ncols,
            rows,
        }
    }

    pub fn mul_vec(&self, v: &BitRow) -> BitRow {
        assert_eq!(self.ncols, v.len());
        BitRow::from_indices(
            self.nrows(),
            (0..self.nrows()).filter(|&i| self.rows[i].dot(v)),
        )
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.ncols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.ncols && *self == BitMatrix::identity(self.ncols)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(p) = (rank..m.nrows()).find(|&i| m.get(i, col)) else {
                continue;
            };
            m.swap_rows(rank, p);
            for i in 0..m.nrows() {
                if i != rank && m.get(i, col) {
                    m.row_xor(rank, i);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse; `None` when singular or non-square.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.nrows();
        if n != self.ncols {
            return None;
        }
        let mut m = self.clone();
        let mut inv = BitMatrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&i| m.get(i, col))?;
            m.swap_rows(col, p);
            inv.swap_rows(col, p);
            for i in 0..n {
                if i != col && m.get(i, col) {
                    m.row_xor(col, i);
                    inv.row_xor(col, i);
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

/// A permutation of `0..n` stored with its inverse; `apply(i) = sigma[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    sigma: Vec<usize>,
    inv: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            sigma: (0..n).collect(),
            inv: (0..n).collect(),
        }
    }

    pub fn from_vec(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        let mut inv = vec![usize::MAX; n];
        for (i, &s) in sigma.iter().enumerate() {
            if s >= n || inv[s] != usize::MAX {
                return Err(Error::InvalidPermutation(sigma.clone()));
            }
            inv[s] = i;
        }
        Ok(Permutation { sigma, inv })
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.sigma[i]
    }

    pub fn apply_inverse(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.sigma
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            sigma: self.inv.clone(),
            inv: self.sigma.clone(),
        }
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        let sigma = other.sigma.iter().map(|&j| self.sigma[j]).collect();
        Permutation::from_vec(sigma).expect("composition of permutations")
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// `(i j) ∘ self`: absorbs a SWAP arriving after the tracked permutation.
    pub fn swap_left(&mut self, i: usize, j: usize) {
        let (a, b) = (self.inv[i], self.inv[j]);
        self.sigma.swap(a, b);
        self.inv.swap(i, j);
    }

    /// `self ∘ (i j)`: accounts for a SWAP emitted on physical qubits `i`, `j`.
    pub fn swap_right(&mut self, i: usize, j: usize) {
        let (a, b) = (self.sigma[i], self.sigma[j]);
        self.sigma.swap(i, j);
        self.inv.swap(a, b);
    }

    /// Permutation matrix `M` with `M[sigma(p)][p] = 1`.
    pub fn to_matrix(&self) -> BitMatrix {
        let n = self.len();
        let mut m = BitMatrix::zeros(n, n);
        for (p, &s) in self.sigma.iter().enumerate() {
            m.set(s, p, true);
        }
        m
    }
}

/// Transposition composed after `sigma`: `(i j) ∘ sigma`.
pub fn perm_update_swap(sigma: &Permutation, i: usize, j: usize) -> Permutation {
    let mut out = sigma.clone();
    out.swap_left(i, j);
    out
}

/// Which matrix of a [`LinearTable`] a row/column operation is expressed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Table,
    Inverse,
}

/// An invertible matrix `A` over F2 kept together with `A⁻¹`.
///
/// Row `i` of `A` is the parity of input wires found on output wire `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearTable {
    a: BitMatrix,
    a_inv: BitMatrix,
}

impl LinearTable {
    pub fn identity(n: usize) -> Self {
        LinearTable {
            a: BitMatrix::identity(n),
            a_inv: BitMatrix::identity(n),
        }
    }

    pub fn from_matrix(a: BitMatrix) -> Result<Self> {
        let a_inv = a.inverse().ok_or(Error::SingularMatrix)?;
        Ok(LinearTable { a, a_inv })
    }

    pub fn from_permutation(p: &Permutation) -> Self {
        let a = p.to_matrix();
        LinearTable {
            a_inv: a.transpose(),
            a,
        }
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn table(&self) -> &BitMatrix {
        &self.a
    }

    pub fn inverse_table(&self) -> &BitMatrix {
        &self.a_inv
    }

    pub fn inverse(&self) -> LinearTable {
        LinearTable {
            a: self.a_inv.clone(),
            a_inv: self.a.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_identity()
    }

    /// Left composition by `CNOT(control, target)`: `A ← E·A`.
    pub fn cnot(&mut self, control: usize, target: usize) {
        self.apply_row_op(Side::Table, control, target);
    }

    /// Right composition by `CNOT(control, target)`: `A ← A·E`.
    pub fn cnot_right(&mut self, control: usize, target: usize) {
        self.apply_row_op(Side::Inverse, control, target);
    }

    /// Left composition by a SWAP.
    pub fn swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.a_inv.swap_cols(i, j);
    }

    /// `row[dst] ^= row[src]` on the chosen matrix; the other receives the
    /// mirrored column operation so both stay inverse to each other.
    pub fn apply_row_op(&mut self, side: Side, src: usize, dst: usize) {
        let (m, other) = match side {
            Side::Table => (&mut self.a, &mut self.a_inv),
            Side::Inverse => (&mut self.a_inv, &mut self.a),
        };
        m.row_xor(src, dst);
        other.col_xor(dst, src);
    }

    /// `col[dst] ^= col[src]` on the chosen matrix, mirrored as a row operation.
    pub fn apply_col_op(&mut self, side: Side, src: usize, dst: usize) {
        let (m, other) = match side {
            Side::Table => (&mut self.a, &mut self.a_inv),
            Side::Inverse => (&mut self.a_inv, &mut self.a),
        };
        m.col_xor(src, dst);
        other.row_xor(dst, src);
    }

    pub fn is_consistent(&self) -> bool {
        self.a.mul(&self.a_inv).is_identity() && self.a_inv.mul(&self.a).is_identity()
    }
}

/// Left composition by a CNOT, returning a new table.
pub fn linear_update_cnot(t: &LinearTable, control: usize, target: usize) -> LinearTable {
    let mut out = t.clone();
    out.cnot(control, target);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
        (0..b.len()).map(|i| a[b[i]]).collect()
    }

    #[test]
    fn swap_update_examples() {
        let id = Permutation::identity(3);
        let s = perm_update_swap(&id, 0, 1);
        assert_eq!(s.as_slice(), &[1, 0, 2]);
        assert_eq!(perm_update_swap(&s, 0, 1), id);
        let t = perm_update_swap(&s, 1, 2);
        assert_eq!(t.as_slice(), &[2, 0, 1]);
        // (1 2) as a permutation array, composed after s by the naive rule
        assert_eq!(naive_compose(&[0, 2, 1], s.as_slice()), vec![2, 0, 1]);
    }

    #[test]
    fn swap_right_matches_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(2..9);
            let mut p = Permutation::identity(n);
            for _ in 0..10 {
                let i = rng.random_range(0..n);
                let j = (i + rng.random_range(1..n)) % n;
                let mut t = vec![0; n];
                t.iter_mut().enumerate().for_each(|(k, v)| *v = k);
                t.swap(i, j);
                let expected = naive_compose(p.as_slice(), &t);
                p.swap_right(i, j);
                assert_eq!(p.as_slice(), &expected[..]);
                assert!(p.inverse().compose(&p).is_identity());
            }
        }
    }

    #[test]
    fn cnot_update_examples() {
        let t = linear_update_cnot(&LinearTable::identity(2), 0, 1);
        assert_eq!(t.table().to_bitstrings(), vec!["10", "11"]);
        let back = linear_update_cnot(&t, 0, 1);
        assert!(back.is_identity());
    }

    #[test]
    fn inverse_stays_consistent_under_cnots() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut t = LinearTable::identity(8);
        for _ in 0..10_000 {
            let c = rng.random_range(0..8);
            let tg = (c + rng.random_range(1..8)) % 8;
            match rng.random_range(0..4) {
                0 => t.cnot(c, tg),
                1 => t.cnot_right(c, tg),
                2 => t.apply_col_op(Side::Table, c, tg),
                _ => t.apply_col_op(Side::Inverse, c, tg),
            }
            assert!(t.is_consistent());
        }
    }

    #[test]
    fn row_ops_are_involutions() {
        let mut t = LinearTable::identity(3);
        t.cnot(2, 0);
        let before = t.clone();
        t.apply_row_op(Side::Table, 0, 1);
        t.apply_row_op(Side::Table, 0, 1);
        assert_eq!(t, before);
        t.apply_row_op(Side::Inverse, 1, 2);
        assert!(t.is_consistent());
        t.apply_row_op(Side::Inverse, 1, 2);
        assert_eq!(t, before);
    }

    #[test]
    fn permutation_embedding_commutes_with_three_cnots() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 6;
        let mut p = Permutation::identity(n);
        let mut t = LinearTable::identity(n);
        for _ in 0..100 {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            p.swap_left(i, j);
            t.cnot(i, j);
            t.cnot(j, i);
            t.cnot(i, j);
            assert_eq!(LinearTable::from_permutation(&p), t);
        }
    }

    #[test]
    fn bit_matrix_inverse_and_rank() {
        let m = BitMatrix::from_bitstrings(&["110", "011", "001"]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.rank(), 3);
        let s = BitMatrix::from_bitstrings(&["110", "011", "101"]).unwrap();
        assert_eq!(s.rank(), 2);
        assert!(s.inverse().is_none());
        assert!(LinearTable::from_matrix(s).is_err());
    }

    #[test]
    fn ones_iterates_across_words() {
        let r = BitRow::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(r.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(r.count_ones(), 4);
    }

    proptest::proptest! {
        #[test]
        fn permutation_group_laws(seed in 0u64..1000, n in 1usize..10) {
            use rand::seq::SliceRandom;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut mk = || {
                let mut v: Vec<usize> = (0..n).collect();
                v.shuffle(&mut rng);
                Permutation::from_vec(v).unwrap()
            };
            let (a, b, c) = (mk(), mk(), mk());
            proptest::prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            proptest::prop_assert!(a.inverse().compose(&a).is_identity());
            proptest::prop_assert!(a.compose(&a.inverse()).is_identity());
        }
    }
}
