//! The simplicial complex dual to a simple polytope, and its face counts.
//!
//! Duality dictionary used throughout the crate:
//!
//! | polytope `P`            | dual complex `K`            |
//! |-------------------------|-----------------------------|
//! | facet `F_i`             | vertex `i`                  |
//! | codimension-`l` face    | `(l-1)`-simplex             |
//! | vertex                  | facet (maximal simplex)     |
//!
//! Vertices are 1-based in all text I/O and 0-based in memory. Faces are
//! stored as `u64` bitmasks, which limits inputs to 64 vertices.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("facet list is empty")]
    Empty,
    #[error("vertex count m = {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("dimension n must be at least 1")]
    ZeroDimension,
    #[error("vertex {vertex} in facet {facet:?} is outside 1..={m}")]
    IndexOutOfRange { facet: Vec<usize>, vertex: usize, m: usize },
    #[error("facet {facet:?} has {size} vertices, expected n = {n}")]
    NonPure { facet: Vec<usize>, size: usize, n: usize },
    #[error("facet {0:?} is listed more than once")]
    DuplicateFacet(Vec<usize>),
    #[error("vertex {0} does not appear in any facet")]
    UnusedVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HVectorError {
    #[error("f-vector has length {len}, expected n = {n}")]
    LengthMismatch { len: usize, n: usize },
    #[error("h_{index} = {value} is negative; the input complex cannot be a polytope boundary")]
    NegativeEntry { index: usize, value: String },
    #[error("h_{index} = {value} does not fit in 64 bits")]
    Overflow { index: usize, value: String },
}

/// Pure `(n-1)`-dimensional complex on vertices `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    m: usize,
    n: usize,
    /// Sorted 0-based vertex lists, in lexicographic order.
    facets: Vec<Vec<usize>>,
    faces: HashSet<u64>,
}

fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0u64, |acc, &v| acc | (1u64 << v))
}

fn vertices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

impl SimplicialComplex {
    /// Validates a facet list given with 1-based vertex labels.
    pub fn new(facets: &[Vec<usize>], m: usize, n: usize) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::Empty);
        }
        if n == 0 {
            return Err(ComplexError::ZeroDimension);
        }
        if m > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(m));
        }
        let mut canonical: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        let mut seen = BTreeSet::new();
        for facet in facets {
            if let Some(&bad) = facet.iter().find(|&&v| v == 0 || v > m) {
                return Err(ComplexError::IndexOutOfRange {
                    facet: facet.clone(),
                    vertex: bad,
                    m,
                });
            }
            let mut sorted: Vec<usize> = facet.iter().map(|v| v - 1).collect();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != n {
                return Err(ComplexError::NonPure {
                    facet: facet.clone(),
                    size: sorted.len(),
                    n,
                });
            }
            if !seen.insert(sorted.clone()) {
                let mut label: Vec<usize> = facet.clone();
                label.sort_unstable();
                return Err(ComplexError::DuplicateFacet(label));
            }
            canonical.push(sorted);
        }
        let used = canonical.iter().fold(0u64, |acc, f| acc | mask_of(f));
        if let Some(v) = (0..m).find(|&v| used >> v & 1 == 0) {
            return Err(ComplexError::UnusedVertex(v + 1));
        }
        canonical.sort();

        let mut faces = HashSet::new();
        for facet in &canonical {
            let full = mask_of(facet);
            // Walk every submask of the facet.
            let mut sub = full;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & full;
            }
        }
        // A facet contained in another facet of the same size is impossible,
        // so purity of the listed facets is purity of the complex.
        Ok(Self {
            m,
            n,
            facets: canonical,
            faces,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    /// Number of vertices per facet (the polytope dimension).
    pub fn dimension(&self) -> usize {
        self.n
    }

    /// 0-based, sorted facets in lexicographic order.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// 1-based facets, as written in input files.
    pub fn facets_one_based(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|v| v + 1).collect())
            .collect()
    }

    pub fn is_face_mask(&self, mask: u64) -> bool {
        self.faces.contains(&mask)
    }

    pub fn is_face(&self, vertices: &[usize]) -> bool {
        self.is_face_mask(mask_of(vertices))
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// All faces including the empty one, sorted by size then lexicographically.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = self.faces.iter().map(|&m| vertices_of(m)).collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// Minimal non-faces: the generators of the Stanley–Reisner ideal.
    pub fn minimal_non_faces(&self) -> Vec<Vec<usize>> {
        let mut found = BTreeSet::new();
        for &face in &self.faces {
            for v in 0..self.m {
                let bit = 1u64 << v;
                if face & bit != 0 {
                    continue;
                }
                let cand = face | bit;
                if self.faces.contains(&cand) {
                    continue;
                }
                let minimal = vertices_of(cand)
                    .into_iter()
                    .all(|u| self.faces.contains(&(cand & !(1u64 << u))));
                if minimal {
                    found.insert(vertices_of(cand));
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Join `self * other`: dual to the product of the two polytopes.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        let shift = self.m;
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .flat_map(|a| {
                other.facets.iter().map(move |b| {
                    a.iter()
                        .map(|v| v + 1)
                        .chain(b.iter().map(|v| v + 1 + shift))
                        .collect()
                })
            })
            .collect();
        SimplicialComplex::new(&facets, self.m + other.m, self.n + other.n)
    }
}

/// `f[i]` = number of `i`-simplices of `K` = faces of `P` of codimension `i+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

/// `h[0..=n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HVector(pub Vec<u64>);

impl HVector {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        let h = &self.0;
        (0..h.len()).all(|i| h[i] == h[h.len() - 1 - i])
    }
}

pub fn f_vector(k: &SimplicialComplex) -> FVector {
    let mut f = vec![0u64; k.n];
    for &face in &k.faces {
        let size = face.count_ones() as usize;
        if size > 0 {
            f[size - 1] += 1;
        }
    }
    FVector(f)
}

/// Coefficients (index = power of `t`) of `(t - 1)^e`.
fn shifted_power(e: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for _ in 0..e {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c;
        }
        poly = next;
    }
    poly
}

/// Expands `(t-1)^n + sum_i f_i (t-1)^(n-1-i)` and reads `h_i` off the
/// coefficient of `t^(n-i)`.
pub fn h_vector(f: &FVector, n: usize) -> Result<HVector, HVectorError> {
    if f.0.len() != n {
        return Err(HVectorError::LengthMismatch { len: f.0.len(), n });
    }
    let mut total = shifted_power(n);
    for (i, &fi) in f.0.iter().enumerate() {
        let term = shifted_power(n - 1 - i);
        for (p, c) in term.into_iter().enumerate() {
            total[p] += c * BigInt::from(fi);
        }
    }
    (0..=n)
        .map(|i| {
            let c = &total[n - i];
            if c.is_negative() {
                return Err(HVectorError::NegativeEntry {
                    index: i,
                    value: c.to_string(),
                });
            }
            c.to_u64().ok_or_else(|| HVectorError::Overflow {
                index: i,
                value: c.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(HVector)
}

/// Re-expands `sum_i h_i t^(n-i)` and compares with the defining polynomial.
pub fn h_vector_identity_holds(f: &FVector, h: &HVector) -> bool {
    let n = f.0.len();
    if h.0.len() != n + 1 {
        return false;
    }
    let mut lhs = shifted_power(n);
    for (i, &fi) in f.0.iter().enumerate() {
        for (p, c) in shifted_power(n - 1 - i).into_iter().enumerate() {
            lhs[p] += c * BigInt::from(fi);
        }
    }
    let mut rhs = vec![BigInt::zero(); n + 1];
    for (i, &hi) in h.0.iter().enumerate() {
        rhs[n - i] += BigInt::from(hi);
    }
    lhs == rhs
}
