//! Mod-2 cohomology ring `Z2[v_1..v_m] / (I + J)` as a finite graded algebra.
//!
//! `I` is the Stanley–Reisner ideal of `K` (square-free monomials on
//! non-faces) and `J` is spanned by the rows of the characteristic matrix read
//! as linear forms. The quotient is built one weight at a time:
//!
//! 1. weight `k` of `Z2[v]/I` has the monomials of degree `k` whose support is
//!    a face of `K`;
//! 2. the weight-`k` part of `J` is spanned by `l * mu` for every relation row
//!    `l` and every face-supported monomial `mu` of weight `k - 1`;
//! 3. reduced row echelon form over a fixed monomial order picks the
//!    standard (non-pivot) monomials as the quotient basis;
//! 4. products of standard monomials are reduced to give structure constants.
//!
//! The monomial order is lexicographic on exponent vectors under a variable
//! priority list (identity by default); larger monomials become pivots. A
//! class of topological degree `2k` lives at weight `k`. Public functions take
//! topological degrees; "weight" is internal.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::charfun::CharMatrixF2;
use crate::combinatorics::{f_vector, h_vector, SimplicialComplex};
use crate::gf2::{BitMatrix, BitVec, Echelon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceRingError {
    #[error("characteristic matrix is {rows}x{cols} but the complex has n = {n}, m = {m}")]
    DimensionMismatch { rows: usize, cols: usize, n: usize, m: usize },
    #[error("variable order is not a permutation of 1..={0}")]
    BadVariableOrder(usize),
    #[error("dim H^{degree} = {dim} but h_{} = {expected}", degree / 2)]
    RankMismatch { degree: usize, dim: usize, expected: u64 },
    #[error("h-vector could not be computed: {0}")]
    HVector(String),
    #[error("product lands in degree {degree}, above the top degree {top}")]
    DegreeOverflow { degree: usize, top: usize },
    #[error("dim H^{top} = {dim}; a single top class is required")]
    NoTopClass { top: usize, dim: usize },
    #[error("generator images do not kill the relation {0}")]
    NotARingMap(String),
    #[error("degree {0} is odd; this ring is concentrated in even degrees")]
    OddDegree(usize),
}

/// Exponent vector over `v_1..v_m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one(m: usize) -> Self {
        Monomial(vec![0; m])
    }

    pub fn from_exponents(exps: Vec<u8>) -> Self {
        Monomial(exps)
    }

    /// Product of the given 0-based variables (with repetition).
    pub fn from_variables(m: usize, vars: &[usize]) -> Self {
        let mut e = vec![0u8; m];
        for &v in vars {
            e[v] += 1;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1u64 << i))
    }

    pub fn times_var(&self, var: usize) -> Monomial {
        let mut e = self.0.clone();
        e[var] += 1;
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn cmp_under(&self, other: &Monomial, priority: &[usize]) -> Ordering {
        priority
            .iter()
            .map(|&v| self.0[v].cmp(&other.0[v]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "v{}", i + 1)?,
                _ => write!(f, "v{}^{}", i + 1, e)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A homogeneous class: topological degree plus coordinates in the standard
/// basis of that degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CohomologyClass {
    pub degree: usize,
    pub coords: BitVec,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &CohomologyClass) -> CohomologyClass {
        assert_eq!(self.degree, other.degree, "adding classes of different degree");
        CohomologyClass {
            degree: self.degree,
            coords: self.coords.xor(&other.coords),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct FaceRingOptions {
    /// Variable priority for the monomial order, 1-based. `None` = `1..=m`.
    pub variable_order: Option<Vec<usize>>,
    /// Require `dim H^{2k} = h_k` for every `k`.
    pub trust_sphere: bool,
}

#[derive(Debug, Clone)]
struct WeightPiece {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Quotient coordinates of every face-supported monomial.
    normal_forms: Vec<BitVec>,
    /// Positions of standard monomials in `monomials`.
    basis: Vec<usize>,
    /// Pivot monomial index and its rewrite as a sum of standard monomials.
    rewrites: Vec<(usize, BitVec)>,
}

impl WeightPiece {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A rewrite rule `lhs = rhs` valid in the quotient, reported in the
/// human-readable relation list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rewrite {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone)]
pub struct GradedAlgebraF2 {
    n: usize,
    m: usize,
    pieces: Vec<WeightPiece>,
    /// `mult[j][k][a * dim_k + b]` = product of basis `a` at weight `j` with
    /// basis `b` at weight `k`, for `j + k <= n`.
    mult: Vec<Vec<Vec<BitVec>>>,
    gens: Vec<CohomologyClass>,
    non_faces: Vec<Vec<usize>>,
    linear_relations: Vec<BitVec>,
}

pub fn build_face_ring(
    k: &SimplicialComplex,
    lambda: &CharMatrixF2,
) -> Result<GradedAlgebraF2, FaceRingError> {
    build_face_ring_with(k, lambda, &FaceRingOptions::default())
}

pub fn build_face_ring_with(
    k: &SimplicialComplex,
    lambda: &CharMatrixF2,
    options: &FaceRingOptions,
) -> Result<GradedAlgebraF2, FaceRingError> {
    let n = k.dimension();
    let m = k.vertex_count();
    if lambda.n() != n || lambda.m() != m {
        return Err(FaceRingError::DimensionMismatch {
            rows: lambda.n(),
            cols: lambda.m(),
            n,
            m,
        });
    }
    let priority: Vec<usize> = match &options.variable_order {
        None => (0..m).collect(),
        Some(order) => {
            let mut seen = vec![false; m];
            for &v in order {
                if v == 0 || v > m || seen[v - 1] {
                    return Err(FaceRingError::BadVariableOrder(m));
                }
                seen[v - 1] = true;
            }
            if order.len() != m {
                return Err(FaceRingError::BadVariableOrder(m));
            }
            order.iter().map(|v| v - 1).collect()
        }
    };

    let relations: Vec<BitVec> = (0..n).map(|r| lambda.relation(r).clone()).collect();
    let mut pieces: Vec<WeightPiece> = Vec::with_capacity(n + 1);
    let mut previous: Vec<Monomial> = Vec::new();
    for weight in 0..=n {
        let mut monomials: Vec<Monomial> = if weight == 0 {
            vec![Monomial::one(m)]
        } else {
            let mut set = HashSet::new();
            for mu in &previous {
                for v in 0..m {
                    let nu = mu.times_var(v);
                    if k.is_face_mask(nu.support_mask()) {
                        set.insert(nu);
                    }
                }
            }
            set.into_iter().collect()
        };
        monomials.sort_by(|a, b| b.cmp_under(a, &priority));
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, mon)| (mon.clone(), i))
            .collect();
        let size = monomials.len();
        let mut echelon = Echelon::new(size);
        if weight > 0 {
            for row in &relations {
                for mu in &previous {
                    let mut v = BitVec::zeros(size);
                    for var in row.iter_ones() {
                        let nu = mu.times_var(var);
                        if let Some(&at) = index.get(&nu) {
                            v.flip(at);
                        }
                    }
                    echelon.insert(v);
                }
            }
        }
        let mut is_pivot = vec![false; size];
        for &p in echelon.pivots() {
            is_pivot[p] = true;
        }
        let basis: Vec<usize> = (0..size).filter(|&i| !is_pivot[i]).collect();
        let mut position = vec![usize::MAX; size];
        for (pos, &i) in basis.iter().enumerate() {
            position[i] = pos;
        }
        let dim = basis.len();
        let mut normal_forms = vec![BitVec::zeros(dim); size];
        for &i in &basis {
            normal_forms[i] = BitVec::unit(dim, position[i]);
        }
        let mut rewrites = Vec::with_capacity(echelon.rank());
        for (row, &p) in echelon.rows().iter().zip(echelon.pivots()) {
            let nf = BitVec::from_ones(dim, row.iter_ones().filter(|&i| i != p).map(|i| position[i]));
            normal_forms[p] = nf.clone();
            rewrites.push((p, nf));
        }
        previous = monomials.clone();
        pieces.push(WeightPiece {
            monomials,
            index,
            normal_forms,
            basis,
            rewrites,
        });
    }

    let mut mult = vec![Vec::new(); n + 1];
    for j in 0..=n {
        mult[j] = vec![Vec::new(); n + 1 - j];
        for kk in 0..=(n - j) {
            let pj = &pieces[j];
            let pk = &pieces[kk];
            let target = &pieces[j + kk];
            let mut table = Vec::with_capacity(pj.dim() * pk.dim());
            for &a in &pj.basis {
                for &b in &pk.basis {
                    let prod = pj.monomials[a].mul(&pk.monomials[b]);
                    let coords = match target.index.get(&prod) {
                        Some(&at) => target.normal_forms[at].clone(),
                        None => BitVec::zeros(target.dim()),
                    };
                    table.push(coords);
                }
            }
            mult[j][kk] = table;
        }
    }

    let gens = (0..m)
        .map(|v| {
            let mon = Monomial::from_variables(m, &[v]);
            let piece = &pieces[1.min(n)];
            let coords = piece
                .index
                .get(&mon)
                .map(|&at| piece.normal_forms[at].clone())
                .unwrap_or_else(|| BitVec::zeros(piece.dim()));
            CohomologyClass { degree: 2, coords }
        })
        .collect();

    let algebra = GradedAlgebraF2 {
        n,
        m,
        pieces,
        mult,
        gens,
        non_faces: k.minimal_non_faces(),
        linear_relations: relations,
    };

    if options.trust_sphere {
        let h = h_vector(&f_vector(k), n).map_err(|e| FaceRingError::HVector(e.to_string()))?;
        for (w, &expected) in h.0.iter().enumerate() {
            let dim = algebra.pieces[w].dim();
            if dim as u64 != expected {
                return Err(FaceRingError::RankMismatch {
                    degree: 2 * w,
                    dim,
                    expected,
                });
            }
        }
    }
    Ok(algebra)
}

impl GradedAlgebraF2 {
    /// `n`; the top degree is `2n`.
    pub fn half_top(&self) -> usize {
        self.n
    }

    pub fn top_degree(&self) -> usize {
        2 * self.n
    }

    pub fn variable_count(&self) -> usize {
        self.m
    }

    pub fn dim(&self, degree: usize) -> usize {
        if degree % 2 == 1 || degree / 2 > self.n {
            0
        } else {
            self.pieces[degree / 2].dim()
        }
    }

    /// `dim H^0, dim H^2, ..., dim H^{2n}`.
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(WeightPiece::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    pub fn basis_monomials(&self, degree: usize) -> Vec<Monomial> {
        if degree % 2 == 1 || degree / 2 > self.n {
            return Vec::new();
        }
        let p = &self.pieces[degree / 2];
        p.basis.iter().map(|&i| p.monomials[i].clone()).collect()
    }

    pub fn zero(&self, degree: usize) -> CohomologyClass {
        CohomologyClass {
            degree,
            coords: BitVec::zeros(self.dim(degree)),
        }
    }

    pub fn unit(&self) -> CohomologyClass {
        CohomologyClass {
            degree: 0,
            coords: BitVec::unit(1, 0),
        }
    }

    pub fn basis_class(&self, degree: usize, index: usize) -> CohomologyClass {
        CohomologyClass {
            degree,
            coords: BitVec::unit(self.dim(degree), index),
        }
    }

    pub fn basis(&self, degree: usize) -> Vec<CohomologyClass> {
        (0..self.dim(degree)).map(|i| self.basis_class(degree, i)).collect()
    }

    /// Image of `v_{i+1}` in `H^2`.
    pub fn generator(&self, i: usize) -> &CohomologyClass {
        &self.gens[i]
    }

    pub fn generators(&self) -> &[CohomologyClass] {
        &self.gens
    }

    /// Reduces an arbitrary monomial to its class.
    pub fn normal_form(&self, mon: &Monomial) -> CohomologyClass {
        let w = mon.weight();
        let degree = 2 * w;
        if w > self.n {
            return CohomologyClass {
                degree,
                coords: BitVec::zeros(0),
            };
        }
        let p = &self.pieces[w];
        let coords = match p.index.get(mon) {
            Some(&at) => p.normal_forms[at].clone(),
            None => BitVec::zeros(p.dim()),
        };
        CohomologyClass { degree, coords }
    }

    /// Product of the images of the given 0-based generators.
    pub fn monomial_class(&self, vars: &[usize]) -> CohomologyClass {
        self.normal_form(&Monomial::from_variables(self.m, vars))
    }

    /// Bilinear product; anything above the top degree is the zero class.
    pub fn multiply(&self, x: &CohomologyClass, y: &CohomologyClass) -> CohomologyClass {
        let degree = x.degree + y.degree;
        let (j, k) = (x.degree / 2, y.degree / 2);
        if j + k > self.n {
            return CohomologyClass {
                degree,
                coords: BitVec::zeros(0),
            };
        }
        let dk = self.pieces[k].dim();
        let table = &self.mult[j][k];
        let mut out = BitVec::zeros(self.pieces[j + k].dim());
        for a in x.coords.iter_ones() {
            for b in y.coords.iter_ones() {
                out.xor_assign(&table[a * dk + b]);
            }
        }
        CohomologyClass { degree, coords: out }
    }

    pub fn try_multiply(
        &self,
        x: &CohomologyClass,
        y: &CohomologyClass,
    ) -> Result<CohomologyClass, FaceRingError> {
        let degree = x.degree + y.degree;
        if degree > self.top_degree() {
            return Err(FaceRingError::DegreeOverflow {
                degree,
                top: self.top_degree(),
            });
        }
        Ok(self.multiply(x, y))
    }

    /// Writes a class as a sum of standard monomials.
    pub fn class_name(&self, x: &CohomologyClass) -> String {
        let basis = self.basis_monomials(x.degree);
        let terms: Vec<String> = x.coords.iter_ones().map(|i| basis[i].to_string()).collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// Minimal non-faces of `K`, 0-based: generators of the ideal `I`.
    pub fn monomial_relations(&self) -> &[Vec<usize>] {
        &self.non_faces
    }

    /// Rows of the mod-2 characteristic matrix: generators of `J`.
    pub fn linear_relations(&self) -> &[BitVec] {
        &self.linear_relations
    }

    /// Every pivot monomial of the given degree with its normal form.
    pub fn rewrites(&self, degree: usize) -> Vec<Rewrite> {
        if degree % 2 == 1 || degree / 2 > self.n {
            return Vec::new();
        }
        let p = &self.pieces[degree / 2];
        let basis = self.basis_monomials(degree);
        p.rewrites
            .iter()
            .map(|(lhs, nf)| Rewrite {
                lhs: p.monomials[*lhs].to_string(),
                rhs: {
                    let terms: Vec<String> = nf.iter_ones().map(|i| basis[i].to_string()).collect();
                    if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join(" + ")
                    }
                },
            })
            .collect()
    }

    /// Number of face-supported monomials at this degree (before `J`).
    pub fn stanley_reisner_dim(&self, degree: usize) -> usize {
        if degree % 2 == 1 || degree / 2 > self.n {
            0
        } else {
            self.pieces[degree / 2].monomials.len()
        }
    }

    pub fn check_commutative(&self) -> Result<(), String> {
        for j in 0..=self.n {
            for k in 0..=(self.n - j) {
                for x in self.basis(2 * j) {
                    for y in self.basis(2 * k) {
                        if self.multiply(&x, &y) != self.multiply(&y, &x) {
                            return Err(format!(
                                "{} * {} is not commutative",
                                self.class_name(&x),
                                self.class_name(&y)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_associative(&self) -> Result<(), String> {
        for i in 0..=self.n {
            for j in 0..=(self.n - i) {
                for k in 0..=(self.n - i - j) {
                    for x in self.basis(2 * i) {
                        for y in self.basis(2 * j) {
                            let xy = self.multiply(&x, &y);
                            for z in self.basis(2 * k) {
                                let left = self.multiply(&xy, &z);
                                let right = self.multiply(&x, &self.multiply(&y, &z));
                                if left != right {
                                    return Err(format!(
                                        "({} * {}) * {} differs from the other bracketing",
                                        self.class_name(&x),
                                        self.class_name(&y),
                                        self.class_name(&z)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every basis class is a product of degree-2 classes. Holds by
    /// construction since standard monomials are products of generators.
    pub fn check_generated_in_degree_two(&self) -> Result<(), String> {
        for degree in (0..=self.top_degree()).step_by(2) {
            for (i, mon) in self.basis_monomials(degree).iter().enumerate() {
                let mut acc = self.unit();
                for (v, &e) in mon.exponents().iter().enumerate() {
                    for _ in 0..e {
                        acc = self.multiply(&acc, &self.gens[v]);
                    }
                }
                if acc != self.basis_class(degree, i) {
                    return Err(format!("basis monomial {mon} is not the product of its factors"));
                }
            }
        }
        Ok(())
    }

    fn top_coordinate(&self, x: &CohomologyClass) -> Result<bool, FaceRingError> {
        let top = self.top_degree();
        let dim = self.dim(top);
        if dim != 1 {
            return Err(FaceRingError::NoTopClass { top, dim });
        }
        Ok(x.degree == top && x.coords.get(0))
    }

    /// `<x y, [M]>`.
    pub fn evaluate_product(
        &self,
        x: &CohomologyClass,
        y: &CohomologyClass,
    ) -> Result<bool, FaceRingError> {
        self.top_coordinate(&self.multiply(x, y))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoincarePairing {
    pub degree: usize,
    pub matrix: BitMatrix,
    pub nondegenerate: bool,
}

/// Pairing `H^degree x H^(2n - degree) -> H^{2n} = Z2`.
pub fn poincare_pairing(
    algebra: &GradedAlgebraF2,
    degree: usize,
) -> Result<PoincarePairing, FaceRingError> {
    let top = algebra.top_degree();
    if degree % 2 == 1 {
        return Err(FaceRingError::OddDegree(degree));
    }
    if algebra.dim(top) != 1 {
        return Err(FaceRingError::NoTopClass {
            top,
            dim: algebra.dim(top),
        });
    }
    let rows = algebra.dim(degree);
    let cols = if degree <= top { algebra.dim(top - degree) } else { 0 };
    let mut matrix = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let x = algebra.basis_class(degree, i);
            let y = algebra.basis_class(top - degree, j);
            matrix.set(i, j, algebra.evaluate_product(&x, &y)?);
        }
    }
    let nondegenerate = rows == cols && matrix.is_invertible();
    Ok(PoincarePairing {
        degree,
        matrix,
        nondegenerate,
    })
}

/// Degree-preserving algebra map determined by images of the generators.
#[derive(Debug, Clone)]
pub struct RingMap {
    /// `matrices[k]`: columns are images of the weight-`k` basis.
    matrices: Vec<BitMatrix>,
}

impl RingMap {
    /// Checks that the images kill `I` and `J`, then extends multiplicatively.
    pub fn from_generator_images(
        source: &GradedAlgebraF2,
        target: &GradedAlgebraF2,
        images: &[CohomologyClass],
    ) -> Result<RingMap, FaceRingError> {
        assert_eq!(images.len(), source.m, "one image per generator");
        let product_of = |vars: &[usize]| {
            vars.iter()
                .fold(target.unit(), |acc, &v| target.multiply(&acc, &images[v]))
        };
        for nf in &source.non_faces {
            if !product_of(nf).is_zero() {
                let mon = Monomial::from_variables(source.m, nf);
                return Err(FaceRingError::NotARingMap(mon.to_string()));
            }
        }
        for row in &source.linear_relations {
            let sum = row
                .iter_ones()
                .fold(target.zero(2), |acc, v| acc.add(&images[v]));
            if !sum.is_zero() {
                let names: Vec<String> = row.iter_ones().map(|v| format!("v{}", v + 1)).collect();
                return Err(FaceRingError::NotARingMap(names.join(" + ")));
            }
        }
        let weights = source.n.min(target.n);
        let matrices = (0..=source.n)
            .map(|w| {
                let cols: Vec<BitVec> = source
                    .basis_monomials(2 * w)
                    .iter()
                    .map(|mon| {
                        if w > weights {
                            return BitVec::zeros(target.dim(2 * w));
                        }
                        let vars: Vec<usize> = mon
                            .exponents()
                            .iter()
                            .enumerate()
                            .flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize))
                            .collect();
                        product_of(&vars).coords
                    })
                    .collect();
                BitMatrix::from_columns(target.dim(2 * w), &cols)
            })
            .collect();
        Ok(RingMap { matrices })
    }

    pub fn matrix(&self, degree: usize) -> &BitMatrix {
        &self.matrices[degree / 2]
    }

    pub fn apply(&self, x: &CohomologyClass) -> CohomologyClass {
        let m = &self.matrices[x.degree / 2];
        CohomologyClass {
            degree: x.degree,
            coords: m.mul_vec(&x.coords),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::reduce_mod2;

    fn square() -> SimplicialComplex {
        SimplicialComplex::new(&[vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]], 4, 2).unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for a in [1, 6] {
            for b in [2, 4] {
                for c in [3, 5] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(&facets, 6, 3).unwrap()
    }

    fn cube_ring() -> GradedAlgebraF2 {
        let k = octahedron();
        let lam = reduce_mod2(
            &[
                vec![1, 0, 0, 0, 0, 1],
                vec![1, 0, 1, 0, 1, 0],
                vec![1, 1, 0, 1, 0, 0],
            ],
            &k,
        )
        .unwrap();
        build_face_ring_with(&k, &lam, &FaceRingOptions { trust_sphere: true, ..Default::default() })
            .unwrap()
    }

    fn square_ring() -> GradedAlgebraF2 {
        let k = square();
        let lam = reduce_mod2(&[vec![0, 1, -1, 1], vec![1, 0, 1, -2]], &k).unwrap();
        build_face_ring(&k, &lam).unwrap()
    }

    fn cp2_ring() -> GradedAlgebraF2 {
        let k = SimplicialComplex::new(&[vec![1, 2], vec![2, 3], vec![1, 3]], 3, 2).unwrap();
        let lam = reduce_mod2(&[vec![1, 0, 1], vec![0, 1, 1]], &k).unwrap();
        build_face_ring(&k, &lam).unwrap()
    }

    #[test]
    fn square_example_ring() {
        let a = square_ring();
        assert_eq!(a.dims(), vec![1, 2, 1]);
        let (v2, v4) = (a.generator(1), a.generator(3));
        let v2sq = a.multiply(v2, v2);
        assert_eq!(v2sq, a.multiply(v4, v4));
        assert!(!v2sq.is_zero());
        assert!(a.multiply(v2, v4).is_zero());
        // v2, v4 span H^2.
        assert_eq!(
            BitMatrix::from_columns(2, &[v2.coords.clone(), v4.coords.clone()]).rank(),
            2
        );
        // Triple products vanish.
        for x in [v2, v4] {
            for y in [v2, v4] {
                for z in [v2, v4] {
                    assert!(a.multiply(&a.multiply(x, y), z).is_zero());
                }
            }
        }
        assert_eq!(a.multiply(&a.unit(), v2), *v2);
    }

    #[test]
    fn cube_example_relations() {
        let a = cube_ring();
        assert_eq!(a.dims(), vec![1, 3, 3, 1]);
        let v = |i: usize| a.generator(i - 1).clone();
        let mul = |x: &CohomologyClass, y: &CohomologyClass| a.multiply(x, y);
        // Linear relations.
        assert_eq!(v(1), v(6));
        assert_eq!(v(1), v(3).add(&v(5)));
        assert_eq!(v(1), v(2).add(&v(4)));
        // Stanley-Reisner relations.
        assert!(mul(&v(1), &v(6)).is_zero());
        assert!(mul(&v(2), &v(4)).is_zero());
        assert!(mul(&v(3), &v(5)).is_zero());
        // Degree four relations in the generators v1, v2, v3.
        assert!(mul(&v(1), &v(1)).is_zero());
        assert_eq!(mul(&v(2), &v(2)), mul(&v(1), &v(2)));
        assert_eq!(mul(&v(3), &v(3)), mul(&v(1), &v(3)));
        // Degree six.
        let v123 = mul(&mul(&v(1), &v(2)), &v(3));
        assert!(!v123.is_zero());
        for zero in [
            a.monomial_class(&[0, 1, 1]),
            a.monomial_class(&[0, 2, 2]),
            a.monomial_class(&[2, 0, 0]),
            a.monomial_class(&[2, 2, 2]),
            a.monomial_class(&[1, 1, 1]),
        ] {
            assert!(zero.is_zero());
        }
        assert_eq!(a.monomial_class(&[2, 1, 1]), v123);
        assert_eq!(a.monomial_class(&[1, 2, 2]), v123);
        assert_eq!(mul(&v(2), &mul(&v(2), &v(3))), v123);
    }

    #[test]
    fn cp2_is_truncated_polynomial() {
        let a = cp2_ring();
        assert_eq!(a.dims(), vec![1, 1, 1]);
        let v = a.generator(0);
        assert_eq!(a.generator(1), v);
        assert_eq!(a.generator(2), v);
        assert!(!a.multiply(v, v).is_zero());
    }

    #[test]
    fn multiplication_laws() {
        for a in [cube_ring(), square_ring(), cp2_ring()] {
            a.check_commutative().unwrap();
            a.check_associative().unwrap();
            a.check_generated_in_degree_two().unwrap();
        }
    }

    #[test]
    fn reversed_order_gives_same_dims() {
        let k = octahedron();
        let lam = reduce_mod2(
            &[
                vec![1, 0, 0, 0, 0, 1],
                vec![1, 0, 1, 0, 1, 0],
                vec![1, 1, 0, 1, 0, 0],
            ],
            &k,
        )
        .unwrap();
        let rev = build_face_ring_with(
            &k,
            &lam,
            &FaceRingOptions {
                variable_order: Some(vec![6, 5, 4, 3, 2, 1]),
                trust_sphere: true,
            },
        )
        .unwrap();
        assert_eq!(rev.dims(), cube_ring().dims());
        assert_ne!(rev.basis_monomials(2), cube_ring().basis_monomials(2));
    }

    #[test]
    fn overflow_and_pairing() {
        let a = cp2_ring();
        let v = a.generator(0).clone();
        let v2 = a.multiply(&v, &v);
        assert!(a.multiply(&v2, &v).coords.is_empty());
        assert!(matches!(
            a.try_multiply(&v2, &v),
            Err(FaceRingError::DegreeOverflow { degree: 6, top: 4 })
        ));
        let p = poincare_pairing(&a, 2).unwrap();
        assert_eq!(p.matrix.to_row_strings(), vec!["1"]);
        assert!(p.nondegenerate);
    }

    #[test]
    fn square_pairing_on_v2_v4() {
        let a = square_ring();
        let (v2, v4) = (a.generator(1), a.generator(3));
        let entries: Vec<bool> = [(v2, v2), (v2, v4), (v4, v2), (v4, v4)]
            .iter()
            .map(|(x, y)| a.evaluate_product(x, y).unwrap())
            .collect();
        assert_eq!(entries, vec![true, false, false, true]);
        assert!(poincare_pairing(&a, 2).unwrap().nondegenerate);
    }

    #[test]
    fn cube_pairing_nondegenerate() {
        let a = cube_ring();
        for d in [0, 2, 4, 6] {
            assert!(poincare_pairing(&a, d).unwrap().nondegenerate, "degree {d}");
        }
    }

    #[test]
    fn rank_mismatch_is_reported_for_non_sphere() {
        // Two disjoint triangle boundaries: pure, h = (1, 4, 1), but not
        // Cohen-Macaulay, so the quotient is larger than h predicts.
        let k = SimplicialComplex::new(
            &[vec![1, 2], vec![2, 3], vec![1, 3], vec![4, 5], vec![5, 6], vec![4, 6]],
            6,
            2,
        )
        .unwrap();
        let lam = reduce_mod2(&[vec![1, 0, 1, 1, 0, 1], vec![0, 1, 1, 0, 1, 1]], &k).unwrap();
        let err = build_face_ring_with(&k, &lam, &FaceRingOptions { trust_sphere: true, ..Default::default() })
            .unwrap_err();
        assert!(matches!(err, FaceRingError::RankMismatch { .. }), "{err}");
        let plain = build_face_ring(&k, &lam).unwrap();
        assert_ne!(plain.dims(), vec![1, 4, 1]);
    }

    #[test]
    fn cp2_to_cp1_restriction_is_a_ring_map() {
        let cp2 = cp2_ring();
        let k1 = SimplicialComplex::new(&[vec![1], vec![2]], 2, 1).unwrap();
        let cp1 = build_face_ring(&k1, &reduce_mod2(&[vec![1, 1]], &k1).unwrap()).unwrap();
        let w = cp1.generator(0).clone();
        let map = RingMap::from_generator_images(&cp2, &cp1, &[w.clone(), w.clone(), w.clone()]).unwrap();
        assert_eq!(map.apply(cp2.generator(0)), w);
        // J of CP^2 is not killed by sending v1 to w and the rest to zero.
        let zero = cp1.zero(2);
        assert!(RingMap::from_generator_images(&cp2, &cp1, &[w.clone(), zero.clone(), zero]).is_err());
    }
}
