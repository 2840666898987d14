//! The characteristic matrix: validation over the integers and reduction mod 2.
//!
//! Orientation is `n` rows by `m` columns; column `i` is the lattice vector
//! assigned to facet `F_{i+1}`. Only maximal faces of `K` are checked. A
//! unimodular set of columns spans a direct summand, and so does every subset
//! of it, which covers the remaining faces.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::SimplicialComplex;
use crate::gf2::{BitMatrix, BitVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("characteristic matrix is {rows}x{cols}, expected {n}x{m}")]
    DimensionMismatch { rows: usize, cols: usize, n: usize, m: usize },
    #[error("row {row} has {len} entries, expected {m}")]
    RaggedRow { row: usize, len: usize, m: usize },
    #[error("minor on facet {facet:?} has determinant {det}, expected +1 or -1")]
    SingularAtFacet { facet: Vec<usize>, det: String },
    #[error("minor on facet {facet:?} is singular mod 2")]
    SingularAtFacetMod2 { facet: Vec<usize> },
}

fn one_based(facet: &[usize]) -> Vec<usize> {
    facet.iter().map(|v| v + 1).collect()
}

/// Integral characteristic matrix, `n x m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharMatrixZ {
    rows: Vec<Vec<i64>>,
    m: usize,
}

impl CharMatrixZ {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, CharError> {
        let m = rows.first().map_or(0, Vec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != m {
                return Err(CharError::RaggedRow { row: i + 1, len: r.len(), m });
            }
        }
        Ok(Self { rows, m })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn minor(&self, columns: &[usize]) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| columns.iter().map(|&c| r[c]).collect())
            .collect()
    }

    /// Adds `2 * delta` entrywise; used to produce other lifts of the same
    /// mod-2 matrix.
    pub fn add_even(&self, delta: &[Vec<i64>]) -> CharMatrixZ {
        let rows = self
            .rows
            .iter()
            .zip(delta)
            .map(|(r, d)| r.iter().zip(d).map(|(a, b)| a + 2 * b).collect())
            .collect();
        CharMatrixZ { rows, m: self.m }
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    let size = matrix.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[size - 1][size - 1]
}

/// Checks every facet minor is `±1`. Facets are visited in the complex's
/// canonical order, so the reported facet is the lexicographically first
/// failure.
pub fn validate_integral(k: &SimplicialComplex, lambda: &CharMatrixZ) -> Result<(), CharError> {
    if lambda.n() != k.dimension() || lambda.m() != k.vertex_count() {
        return Err(CharError::DimensionMismatch {
            rows: lambda.n(),
            cols: lambda.m(),
            n: k.dimension(),
            m: k.vertex_count(),
        });
    }
    for facet in k.facets() {
        let det = determinant(&lambda.minor(facet));
        if det.abs() != BigInt::one() {
            return Err(CharError::SingularAtFacet {
                facet: one_based(facet),
                det: det.to_string(),
            });
        }
    }
    Ok(())
}

/// Characteristic matrix over the two-element field, with every facet minor
/// known to be invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharMatrixF2 {
    matrix: BitMatrix,
}

impl CharMatrixF2 {
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn m(&self) -> usize {
        self.matrix.cols()
    }

    /// Row `r` as a linear form on `v_1..v_m`.
    pub fn relation(&self, r: usize) -> &BitVec {
        self.matrix.row(r)
    }

    pub fn rows_as_ints(&self) -> Vec<Vec<i64>> {
        (0..self.n())
            .map(|r| (0..self.m()).map(|c| self.matrix.get(r, c) as i64).collect())
            .collect()
    }
}

/// Reduces integer (or already 0/1) rows mod 2 and checks facet minors.
pub fn reduce_mod2(rows: &[Vec<i64>], k: &SimplicialComplex) -> Result<CharMatrixF2, CharError> {
    let n = k.dimension();
    let m = k.vertex_count();
    if rows.len() != n || rows.iter().any(|r| r.len() != m) {
        return Err(CharError::DimensionMismatch {
            rows: rows.len(),
            cols: rows.first().map_or(0, Vec::len),
            n,
            m,
        });
    }
    let matrix = BitMatrix::from_rows(
        m,
        rows.iter()
            .map(|r| BitVec::from_ones(m, (0..m).filter(|&c| r[c].rem_euclid(2) == 1)))
            .collect(),
    );
    for facet in k.facets() {
        let cols: Vec<BitVec> = facet.iter().map(|&c| matrix.column(c)).collect();
        if !BitMatrix::from_columns(n, &cols).is_invertible() {
            return Err(CharError::SingularAtFacetMod2 {
                facet: one_based(facet),
            });
        }
    }
    Ok(CharMatrixF2 { matrix })
}
