//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are stored as runs of `u64` words; padding bits past the last
//! column are kept zero so whole-word comparisons and popcounts are exact.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            })
        })
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> BitVec {
        BitVec::from_indices(range.len(), self.ones().filter(|i| range.contains(i)).map(|i| i - range.start))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A dense `rows x cols` matrix over GF(2), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, bits: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), cols, "ragged rows");
            for (j, &b) in row.as_ref().iter().enumerate() {
                if b & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.bits[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let mask = 1u64 << (j % WORD);
        let w = &mut self.bits[i * self.stride + j / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.bits[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec { len: self.cols, words: self.row_words(i).to_vec() }
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&i| self.get(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self.row_words(i).iter().zip(v.words()).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
            if parity % 2 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let dst = i * out.stride;
            for k in self.row(i).ones() {
                let src = other.row_words(k);
                for (a, b) in out.bits[dst..dst + out.stride].iter_mut().zip(src) {
                    *a ^= b;
                }
            }
        }
        Ok(out)
    }

    fn xor_rows(&mut self, dst: usize, src: usize, from_word: usize) {
        let s = self.stride;
        let (d, sr) = (dst * s, src * s);
        for w in from_word..s {
            let v = self.bits[sr + w];
            self.bits[d + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.bits.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Reduces `self` in place to reduced row echelon form; returns the
    /// pivot columns. Pivots are the first nonzero entries in column order.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            let w = c / WORD;
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_rows(i, r, w);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            let w = c / WORD;
            for i in r + 1..m.rows {
                if m.get(i, c) {
                    m.xor_rows(i, r, w);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right null space `{v : M v = 0}`; one vector per free
    /// column.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (row, &p) in pivots.iter().enumerate() {
                    if m.get(row, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Coefficients `x` with `M x = target`, if the target lies in the
    /// column span.
    pub fn solve_in_span(&self, target: &BitVec) -> Result<Option<BitVec>> {
        if target.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: target.len() });
        }
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in self.row(i).ones() {
                aug.set(i, j, true);
            }
            if target.get(i) {
                aug.set(i, self.cols, true);
            }
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            if aug.get(row, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Incremental span of vectors with combination tracking.
///
/// Each stored vector has a distinct pivot bit that is clear in every
/// vector inserted after it, so reducing against the stored vectors in
/// insertion order clears every pivot.
#[derive(Clone, Debug)]
pub struct SpanReducer {
    dim: usize,
    inserted: usize,
    basis: Vec<(usize, BitVec, BitVec)>,
    capacity: usize,
}

impl SpanReducer {
    /// `dim` is the ambient dimension, `capacity` bounds how many vectors
    /// will ever be offered (the length of the combination vectors).
    pub fn new(dim: usize, capacity: usize) -> Self {
        Self { dim, inserted: 0, basis: Vec::new(), capacity }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn offered(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the span; returns the residue and the
    /// combination of offered vectors that was subtracted.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        assert_eq!(v.len(), self.dim);
        let mut r = v.clone();
        let mut combo = BitVec::zeros(self.capacity);
        for (pivot, vec, c) in &self.basis {
            if r.get(*pivot) {
                r.xor_assign(vec);
                combo.xor_assign(c);
            }
        }
        (r, combo)
    }

    /// Offers a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert!(self.inserted < self.capacity, "span reducer capacity exceeded");
        let id = self.inserted;
        self.inserted += 1;
        let (r, mut combo) = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(pivot) => {
                combo.flip(id);
                self.basis.push((pivot, r, combo));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coefficients over the offered vectors that sum to `v`, if any.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (r, combo) = self.reduce(v);
        r.is_zero().then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain `Vec<Vec<bool>>` elimination, independent of the packed code.
    fn naive_rank(rows: &[Vec<bool>]) -> usize {
        let mut m: Vec<Vec<bool>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..m.len()).find(|&i| m[i][c]) {
                m.swap(rank, p);
                let pivot = m[rank].clone();
                for (i, row) in m.iter_mut().enumerate() {
                    if i != rank && row[c] {
                        for (x, y) in row.iter_mut().zip(&pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn from_bools(rows: &[Vec<bool>]) -> BitMatrix {
        let bytes: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&b| u8::from(b)).collect()).collect();
        BitMatrix::from_rows(&bytes)
    }

    fn matrix_strategy(max: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(any::<bool>(), c), r))
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(4, 7).rank(), 0);
        assert_eq!(BitMatrix::from_rows(&[[1u8, 1], [1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(BitMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(BitMatrix::zeros(2, 3).kernel_basis().len(), 3);
        let k = BitMatrix::from_rows(&[[1u8, 1]]).kernel_basis();
        assert_eq!(k, vec![BitVec::from_bools(&[true, true])]);
    }

    #[test]
    fn solve_examples() {
        let x = BitMatrix::identity(3).solve_in_span(&BitVec::unit(3, 2)).unwrap();
        assert_eq!(x, Some(BitVec::unit(3, 2)));
        assert_eq!(BitMatrix::zeros(3, 2).solve_in_span(&BitVec::unit(3, 0)).unwrap(), None);
        // columns v, w, v + w
        let m = BitMatrix::from_rows(&[[1u8, 0, 1], [0, 1, 1], [1, 1, 0]]);
        let target = BitVec::from_bools(&[true, true, false]);
        let x = m.solve_in_span(&target).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), target);
        assert!(m.solve_in_span(&BitVec::zeros(2)).is_err());
    }

    #[test]
    fn padding_stays_zero_across_word_boundary() {
        let mut m = BitMatrix::zeros(3, 70);
        m.set(1, 69, true);
        m.set(2, 64, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_basis().len(), 68);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn span_reducer_tracks_combinations() {
        let vs = [
            BitVec::from_bools(&[true, false, true]),
            BitVec::from_bools(&[false, true, true]),
            BitVec::from_bools(&[true, true, false]),
        ];
        let mut s = SpanReducer::new(3, 3);
        assert!(s.insert(&vs[0]));
        assert!(s.insert(&vs[1]));
        assert!(!s.insert(&vs[2]));
        let combo = s.express(&vs[2]).unwrap();
        assert_eq!(combo, BitVec::from_bools(&[true, true, false]));
        assert!(!s.contains(&BitVec::unit(3, 0)));
    }

    #[test]
    fn large_random_rank_is_transpose_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &(r, c, density) in &[(512usize, 512usize, 0.5f64), (300, 512, 0.02), (512, 200, 0.1)] {
            let mut m = BitMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    if rng.random_bool(density) {
                        m.set(i, j, true);
                    }
                }
            }
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    proptest! {
        #[test]
        fn rank_matches_naive(rows in matrix_strategy(64)) {
            let m = from_bools(&rows);
            prop_assert_eq!(m.rank(), naive_rank(&rows));
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_vectors_are_independent_and_annihilated(rows in matrix_strategy(40)) {
            let m = from_bools(&rows);
            let kernel = m.kernel_basis();
            prop_assert_eq!(kernel.len(), m.cols() - m.rank());
            for v in &kernel {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
            let k = BitMatrix::from_columns(m.cols(), &kernel);
            prop_assert_eq!(k.rank(), kernel.len());
        }

        #[test]
        fn solve_certificate_remultiplies(rows in matrix_strategy(40), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let m = from_bools(&rows);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x = BitVec::from_bools(&(0..m.cols()).map(|_| rng.random_bool(0.5)).collect::<Vec<_>>());
            let target = m.mul_vec(&x).unwrap();
            let sol = m.solve_in_span(&target).unwrap().expect("target is in the span");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), target);
        }
    }
}
