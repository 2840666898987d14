//! Sq² on the face ring, its homology, and the Wu-class spin test.
//!
//! All classes sit in even degrees, so `Sq^1 = 0` and the Cartan formula
//! makes Sq² a derivation. On a degree-2 class it is the cup square. For a
//! monomial this gives
//!
//! ```text
//! Sq²(v_{i1} ... v_{ik}) = sum_j v_{ij} * (v_{i1} ... v_{ik})
//! ```
//!
//! i.e. multiply the monomial by each of its variables (with multiplicity)
//! and sum mod 2. Only variables with odd exponent survive.

use serde::Serialize;
use thiserror::Error;

use crate::face_ring::{poincare_pairing, CohomologyClass, FaceRingError, GradedAlgebraF2, Monomial};
use crate::gf2::{BitMatrix, BitVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("Sq²Sq² is nonzero on H^{0}; this is an internal bug")]
    ChainComplexViolation(usize),
    #[error("Poincaré pairing is degenerate in degree {0}")]
    PairingDegenerate(usize),
    #[error("spin verdict and Wu class disagree; this is an internal bug")]
    InconsistentWitness,
    #[error(transparent)]
    Ring(#[from] FaceRingError),
}

pub fn sq2_class(algebra: &GradedAlgebraF2, x: &CohomologyClass) -> CohomologyClass {
    let target = x.degree + 2;
    let mut out = algebra.zero(target);
    for (i, mon) in algebra.basis_monomials(x.degree).iter().enumerate() {
        if x.coords.get(i) {
            out = out.add(&sq2_monomial(algebra, mon));
        }
    }
    out
}

fn sq2_monomial(algebra: &GradedAlgebraF2, mon: &Monomial) -> CohomologyClass {
    let mut out = algebra.zero(2 * mon.weight() + 2);
    for (v, &e) in mon.exponents().iter().enumerate() {
        if e % 2 == 1 {
            out = out.add(&algebra.normal_form(&mon.times_var(v)));
        }
    }
    out
}

/// Matrices of `Sq²: H^{2k} -> H^{2k+2}` for `0 <= k <= n`; the last one has
/// no rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sq2Operator {
    mats: Vec<BitMatrix>,
}

impl Sq2Operator {
    /// Matrix out of `H^degree`.
    pub fn matrix(&self, degree: usize) -> &BitMatrix {
        &self.mats[degree / 2]
    }

    pub fn matrices(&self) -> &[BitMatrix] {
        &self.mats
    }

    pub fn half_top(&self) -> usize {
        self.mats.len() - 1
    }

    pub fn rank(&self, degree: usize) -> usize {
        if degree % 2 == 1 || degree / 2 >= self.mats.len() {
            0
        } else {
            self.mats[degree / 2].rank()
        }
    }

    pub fn apply(&self, x: &CohomologyClass) -> CohomologyClass {
        CohomologyClass {
            degree: x.degree + 2,
            coords: self.mats[x.degree / 2].mul_vec(&x.coords),
        }
    }
}

pub fn sq2_operator(algebra: &GradedAlgebraF2) -> Result<Sq2Operator, SteenrodError> {
    let n = algebra.half_top();
    let mats: Vec<BitMatrix> = (0..=n)
        .map(|k| {
            let cols: Vec<BitVec> = algebra
                .basis(2 * k)
                .iter()
                .map(|b| sq2_class(algebra, b).coords)
                .collect();
            BitMatrix::from_columns(algebra.dim(2 * k + 2), &cols)
        })
        .collect();
    for k in 0..n {
        if !mats[k + 1].mul(&mats[k]).is_zero() {
            return Err(SteenrodError::ChainComplexViolation(2 * k));
        }
    }
    Ok(Sq2Operator { mats })
}

/// `dims[k]` = dimension of the Sq²-homology at degree `2k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sq2Homology {
    pub dims: Vec<usize>,
}

pub fn sq2_homology(op: &Sq2Operator) -> Sq2Homology {
    let dims = op
        .mats
        .iter()
        .enumerate()
        .map(|(k, mat)| {
            let kernel = mat.cols() - mat.rank();
            let image = if k == 0 { 0 } else { op.mats[k - 1].rank() };
            kernel - image
        })
        .collect();
    Sq2Homology { dims }
}

/// Cartan formula check on every pair of basis classes.
pub fn check_cartan(algebra: &GradedAlgebraF2) -> Result<(), String> {
    let n = algebra.half_top();
    for j in 0..=n {
        for k in 0..(n - j) {
            for x in algebra.basis(2 * j) {
                for y in algebra.basis(2 * k) {
                    let lhs = sq2_class(algebra, &algebra.multiply(&x, &y));
                    let rhs = algebra
                        .multiply(&sq2_class(algebra, &x), &y)
                        .coords
                        .xor(&algebra.multiply(&x, &sq2_class(algebra, &y)).coords);
                    if lhs.coords != rhs {
                        return Err(format!(
                            "Sq²({} * {}) violates the Cartan formula",
                            algebra.class_name(&x),
                            algebra.class_name(&y)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinVerdict {
    /// Top class is not in the image of Sq².
    pub spin: bool,
    /// The Wu class in `H^2`.
    pub wu_class: CohomologyClass,
    /// A class of degree `2n - 2` whose Sq² is the top class, when one exists.
    pub top_preimage: Option<CohomologyClass>,
}

/// Spin test. Also solves `<x v2, [M]> = <Sq² x, [M]>` for the Wu class
/// `v2` and checks that it vanishes exactly when the top class is unhit.
pub fn is_spin(algebra: &GradedAlgebraF2, op: &Sq2Operator) -> Result<SpinVerdict, SteenrodError> {
    let top = algebra.top_degree();
    let below = top - 2;
    for degree in (0..=top).step_by(2) {
        if !poincare_pairing(algebra, degree)?.nondegenerate {
            return Err(SteenrodError::PairingDegenerate(degree));
        }
    }
    let into_top = op.matrix(below);
    let top_vec = BitVec::unit(1, 0);
    let top_preimage = into_top.solve(&top_vec).map(|coords| CohomologyClass {
        degree: below,
        coords,
    });
    let spin = top_preimage.is_none();

    // rows: basis x of H^{2n-2}; cols: basis y of H^2.
    let pairing = poincare_pairing(algebra, below)?.matrix;
    let rhs = BitVec::from_ones(
        algebra.dim(below),
        (0..algebra.dim(below)).filter(|&i| into_top.get(0, i)),
    );
    let wu = pairing
        .solve(&rhs)
        .ok_or(SteenrodError::InconsistentWitness)?;
    let wu_class = CohomologyClass { degree: 2, coords: wu };
    if spin != wu_class.is_zero() {
        return Err(SteenrodError::InconsistentWitness);
    }
    Ok(SpinVerdict {
        spin,
        wu_class,
        top_preimage,
    })
}

/// Re-checks the Wu formula on every basis class of `H^{2n-2}`.
pub fn check_wu_formula(
    algebra: &GradedAlgebraF2,
    verdict: &SpinVerdict,
) -> Result<(), SteenrodError> {
    let below = algebra.top_degree() - 2;
    for x in algebra.basis(below) {
        let left = algebra.evaluate_product(&x, &verdict.wu_class)?;
        let right = algebra.evaluate_product(&algebra.unit(), &sq2_class(algebra, &x))?;
        if left != right {
            return Err(SteenrodError::InconsistentWitness);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::reduce_mod2;
    use crate::combinatorics::SimplicialComplex;
    use crate::face_ring::build_face_ring;

    fn ring(facets: &[Vec<usize>], m: usize, n: usize, lam: &[Vec<i64>]) -> GradedAlgebraF2 {
        let k = SimplicialComplex::new(facets, m, n).unwrap();
        build_face_ring(&k, &reduce_mod2(lam, &k).unwrap()).unwrap()
    }

    fn square_edges() -> Vec<Vec<usize>> {
        vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]]
    }

    fn cp2() -> GradedAlgebraF2 {
        ring(&[vec![1, 2], vec![2, 3], vec![1, 3]], 3, 2, &[vec![1, 0, 1], vec![0, 1, 1]])
    }

    fn cp2_sharp_cp2() -> GradedAlgebraF2 {
        ring(&square_edges(), 4, 2, &[vec![0, 1, -1, 1], vec![1, 0, 1, -2]])
    }

    fn cp1_cp1() -> GradedAlgebraF2 {
        ring(&square_edges(), 4, 2, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]])
    }

    fn cube() -> GradedAlgebraF2 {
        let mut facets = Vec::new();
        for a in [1, 6] {
            for b in [2, 4] {
                for c in [3, 5] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        ring(
            &facets,
            6,
            3,
            &[
                vec![1, 0, 0, 0, 0, 1],
                vec![1, 0, 1, 0, 1, 0],
                vec![1, 1, 0, 1, 0, 0],
            ],
        )
    }

    #[test]
    fn sq2_of_degree_two_is_square() {
        let a = cp2();
        let v = a.generator(0);
        assert_eq!(sq2_class(&a, v), a.multiply(v, v));
        assert!(sq2_class(&a, &a.unit()).is_zero());
    }

    #[test]
    fn square_example_sum_is_killed() {
        let a = cp2_sharp_cp2();
        let s = a.generator(1).add(a.generator(3));
        assert!(sq2_class(&a, &s).is_zero());
        let op = sq2_operator(&a).unwrap();
        assert_eq!(op.rank(2), 1);
        assert_eq!(sq2_homology(&op).dims, vec![1, 1, 0]);
    }

    #[test]
    fn cube_operator() {
        let a = cube();
        let v = |i: usize| a.generator(i - 1).clone();
        assert!(sq2_class(&a, &v(1)).is_zero());
        assert_eq!(sq2_class(&a, &v(2)), a.multiply(&v(1), &v(2)));
        assert_eq!(sq2_class(&a, &v(3)), a.multiply(&v(1), &v(3)));
        let op = sq2_operator(&a).unwrap();
        assert_eq!(op.rank(0), 0);
        assert_eq!(op.rank(2), 2);
        assert!(op.matrix(4).is_zero());
        assert_eq!(sq2_homology(&op).dims, vec![1, 1, 1, 1]);
        let verdict = is_spin(&a, &op).unwrap();
        assert!(verdict.spin);
        assert!(verdict.wu_class.is_zero());
    }

    #[test]
    fn cp2_homology_and_spin() {
        let a = cp2();
        let op = sq2_operator(&a).unwrap();
        assert_eq!(op.matrix(2).to_row_strings(), vec!["1"]);
        assert_eq!(sq2_homology(&op).dims, vec![1, 0, 0]);
        let verdict = is_spin(&a, &op).unwrap();
        assert!(!verdict.spin);
        assert_eq!(verdict.wu_class, *a.generator(0));
        check_wu_formula(&a, &verdict).unwrap();
    }

    #[test]
    fn cp1_cp1_is_spin() {
        let a = cp1_cp1();
        let op = sq2_operator(&a).unwrap();
        assert!(sq2_class(&a, a.generator(0)).is_zero());
        assert!(sq2_class(&a, a.generator(1)).is_zero());
        let verdict = is_spin(&a, &op).unwrap();
        assert!(verdict.spin);
        assert!(verdict.wu_class.is_zero());
        assert!(verdict.top_preimage.is_none());
    }

    #[test]
    fn cp2_sharp_cp2_wu_class() {
        let a = cp2_sharp_cp2();
        let op = sq2_operator(&a).unwrap();
        let verdict = is_spin(&a, &op).unwrap();
        assert!(!verdict.spin);
        // Pairing is the identity on {v2, v4} and both square to the top
        // class, so v2 = v2 + v4.
        assert_eq!(verdict.wu_class, a.generator(1).add(a.generator(3)));
        check_wu_formula(&a, &verdict).unwrap();
    }

    #[test]
    fn cartan_and_chain_complex() {
        for a in [cp2(), cp2_sharp_cp2(), cp1_cp1(), cube()] {
            check_cartan(&a).unwrap();
            let op = sq2_operator(&a).unwrap();
            for k in 0..op.half_top() {
                assert!(op.matrices()[k + 1].mul(&op.matrices()[k]).is_zero());
            }
        }
    }

    #[test]
    fn zero_operator_homology_is_whole_ring() {
        let a = cp1_cp1();
        let op = sq2_operator(&a).unwrap();
        assert!(op.matrices().iter().all(BitMatrix::is_zero));
        assert_eq!(sq2_homology(&op).dims, a.dims());
    }
}
