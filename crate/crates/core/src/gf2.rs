//! Dense vectors and matrices over the two-element field.
//!
//! Everything downstream (face ring quotients, the Sq² operator, the A(1)
//! sweep) reduces to rank, kernel and solve computations here. Vectors are
//! packed into `u64` limbs with the unused tail bits kept at zero so that the
//! derived `PartialEq`/`Hash` are meaningful.

use std::fmt;

use serde::{Serialize, Serializer};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
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

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
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

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * WORD + bit)
                }
            })
        })
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// `0`/`1` string, index 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_bit_string())
    }
}

impl Serialize for BitVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bit_string())
    }
}

/// Row-major matrix; every row is a [`BitVec`] of length `cols`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.iter_ones() {
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

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.data[row].set(col, value);
    }

    pub fn row(&self, row: usize) -> &BitVec {
        &self.data[row]
    }

    pub fn row_vectors(&self) -> &[BitVec] {
        &self.data
    }

    pub fn column(&self, col: usize) -> BitVec {
        BitVec::from_ones(self.rows, (0..self.rows).filter(|&i| self.get(i, col)))
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_rows(self.rows, self.columns())
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        BitVec::from_ones(self.rows, (0..self.rows).filter(|&i| self.data[i].dot(v)))
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let rows = self
            .data
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        BitMatrix::from_rows(other.cols, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        Echelon::from_vectors(self.cols, self.data.iter().cloned()).rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of `{ v : self * v = 0 }`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let ech = Echelon::from_vectors(self.cols, self.data.iter().cloned());
        let pivots: Vec<usize> = ech.pivots().to_vec();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&free| !is_pivot[free])
            .map(|free| {
                let mut v = BitVec::unit(self.cols, free);
                for (row, &p) in ech.rows().iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = rhs`, if one exists.
    pub fn solve(&self, rhs: &BitVec) -> Option<BitVec> {
        assert_eq!(rhs.len(), self.rows, "dimension mismatch in solve");
        // Eliminate on the augmented matrix [A | b].
        let width = self.cols + 1;
        let aug = self.data.iter().enumerate().map(|(i, r)| {
            let mut v = BitVec::zeros(width);
            for j in r.iter_ones() {
                v.set(j, true);
            }
            if rhs.get(i) {
                v.set(self.cols, true);
            }
            v
        });
        let ech = Echelon::from_vectors(width, aug);
        if ech.pivots().contains(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        self.data.iter().map(BitVec::to_bit_string).collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {}", r.to_bit_string())?;
        }
        Ok(())
    }
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_row_strings().serialize(serializer)
    }
}

/// Reduced row echelon form, grown one vector at a time.
///
/// The pivot of a row is its lowest set index, and every pivot column is
/// cleared in all other rows. Reducing a vector therefore takes one pass over
/// the rows in any order.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(len: usize, vectors: impl IntoIterator<Item = BitVec>) -> Self {
        let mut e = Self::new(len);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns `false` if it was already there.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch in echelon insert");
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }
}

/// Echelon form that remembers which inserted vectors each row came from.
///
/// Used where the caller needs the actual linear combination, not only a
/// membership answer.
#[derive(Clone, Debug)]
pub struct TrackedEchelon {
    len: usize,
    rows: Vec<(BitVec, BitVec)>,
    pivots: Vec<usize>,
    inserted: usize,
    capacity: usize,
}

impl TrackedEchelon {
    /// `capacity` bounds the number of vectors that will ever be inserted.
    pub fn new(len: usize, capacity: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
            inserted: 0,
            capacity,
        }
    }

    /// Expresses `v` in terms of previously inserted vectors: returns the
    /// residue and the combination (over insertion indices) that was removed.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut out = v.clone();
        let mut combo = BitVec::zeros(self.capacity);
        for ((row, tag), &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
                combo.xor_assign(tag);
            }
        }
        (out, combo)
    }

    /// Inserts `v` under the next insertion index. Returns that index together
    /// with whether `v` was independent of everything before it.
    pub fn insert(&mut self, v: &BitVec) -> (usize, bool) {
        assert_eq!(v.len(), self.len, "length mismatch in tracked insert");
        assert!(self.inserted < self.capacity, "tracked echelon capacity exceeded");
        let index = self.inserted;
        self.inserted += 1;
        let (r, mut tag) = self.reduce(v);
        let Some(p) = r.first_one() else {
            return (index, false);
        };
        tag.flip(index);
        for (row, rtag) in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&r);
                rtag.xor_assign(&tag);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, (r, tag));
        (index, true)
    }
}
