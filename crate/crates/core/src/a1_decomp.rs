//! Splitting `H*` as an A(1)-module into suspensions of `S0` (one class,
//! trivial action) and `M` (two classes `x`, `y` with `Sq²x = y`).
//!
//! The sweep runs upward in degree. At degree `2k`:
//!
//! 1. `C_{2k} = Sq²(B_{2k-2})`, independent because Sq² is injective on
//!    `span(B_{2k-2})`.
//! 2. Extend `C_{2k}` to a basis greedily from the input basis order.
//! 3. Walk the complement `u_1, u_2, ...`; subtract from each `u_t` the
//!    earlier `w`'s whose images cancel as much of `Sq²u_t` as possible.
//!    The result `w_t` goes to `D_{2k}` if `Sq²w_t = 0` and to `B_{2k}`
//!    otherwise (stable partition).

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::face_ring::{CohomologyClass, GradedAlgebraF2};
use crate::gf2::{BitMatrix, BitVec, Echelon, TrackedEchelon};
use crate::steenrod::{sq2_homology, Sq2Operator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum A1Error {
    #[error("supplied vectors in degree {0} do not form a basis")]
    NotABasis(usize),
    #[error("expected one basis per degree 0..={expected}, got {got}")]
    WrongDegreeCount { expected: usize, got: usize },
}

/// Names the invariant a decomposition failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("degree {degree}: |C| + |D| + |B| = {count}, but dim H = {dim}")]
    DimensionCount { degree: usize, count: usize, dim: usize },
    #[error("degree {0}: C is not Sq² of the previous B")]
    CNotImageOfB(usize),
    #[error("degree {0}: C, D, B together are not a basis")]
    NotABasis(usize),
    #[error("degree {0}: Sq² does not vanish on D")]
    Sq2NonzeroOnD(usize),
    #[error("degree {0}: Sq² does not vanish on C")]
    Sq2NonzeroOnC(usize),
    #[error("degree {0}: Sq² is not injective on B")]
    Sq2NotInjectiveOnB(usize),
    #[error("degree {degree}: m = {found}, Sq²-homology has dimension {expected}")]
    SphereCountMismatch { degree: usize, found: usize, expected: usize },
    #[error("degree {degree}: n = {found}, Sq² has rank {expected}")]
    MooreCountMismatch { degree: usize, found: usize, expected: usize },
    #[error("sum of m + 2n is {found}, total dimension is {expected}")]
    TotalMismatch { found: usize, expected: usize },
    #[error("decomposition covers {found} degrees, algebra has {expected}")]
    DegreeRange { found: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeWitness {
    pub degree: usize,
    pub c: Vec<BitVec>,
    pub d: Vec<BitVec>,
    pub b: Vec<BitVec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SummandKind {
    S0,
    M,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub kind: SummandKind,
    /// Suspension `2j`.
    pub shift: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A1Decomposition {
    /// `m_mult[j]` copies of `Σ^{2j} S0`.
    pub m_mult: Vec<usize>,
    /// `n_mult[j]` copies of `Σ^{2j} M`.
    pub n_mult: Vec<usize>,
    pub witnesses: Vec<DegreeWitness>,
}

impl A1Decomposition {
    /// A decomposition given only by multiplicities, with no witnesses.
    pub fn from_multiplicities(m_mult: Vec<usize>, n_mult: Vec<usize>) -> Self {
        Self { m_mult, n_mult, witnesses: Vec::new() }
    }

    pub fn summands(&self) -> Vec<Summand> {
        let mut out = Vec::new();
        for (j, &c) in self.m_mult.iter().enumerate() {
            if c > 0 {
                out.push(Summand { kind: SummandKind::S0, shift: 2 * j, multiplicity: c });
            }
        }
        for (j, &c) in self.n_mult.iter().enumerate() {
            if c > 0 {
                out.push(Summand { kind: SummandKind::M, shift: 2 * j, multiplicity: c });
            }
        }
        out
    }

    /// One entry per summand type, e.g. `"Σ^2 M ×2"`.
    pub fn summary_lines(&self) -> Vec<String> {
        self.summands()
            .iter()
            .map(|s| format!("{} ×{}", summand_name(s.kind, s.shift), s.multiplicity))
            .collect()
    }

    /// Direct-sum expression, e.g. `"S0 ⊕ Σ^2 S0 ⊕ 2Σ^2 M"`.
    pub fn formula(&self) -> String {
        let parts: Vec<String> = self
            .summands()
            .iter()
            .map(|s| {
                let name = summand_name(s.kind, s.shift);
                if s.multiplicity == 1 {
                    name
                } else {
                    format!("{}{}", s.multiplicity, name)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }

    pub fn total_dim(&self) -> usize {
        self.m_mult.iter().sum::<usize>() + 2 * self.n_mult.iter().sum::<usize>()
    }
}

pub fn summand_name(kind: SummandKind, shift: usize) -> String {
    let base = match kind {
        SummandKind::S0 => "S0",
        SummandKind::M => "M",
    };
    if shift == 0 {
        base.to_string()
    } else {
        format!("Σ^{shift} {base}")
    }
}

/// Decomposition in the algebra's standard bases.
pub fn decompose(algebra: &GradedAlgebraF2, op: &Sq2Operator) -> A1Decomposition {
    let bases: Vec<Vec<BitVec>> = (0..=algebra.half_top())
        .map(|k| algebra.basis(2 * k).into_iter().map(|c| c.coords).collect())
        .collect();
    decompose_in_basis(op, &bases).expect("standard bases are bases")
}

/// Runs the sweep with `bases[k]` (coordinates in the standard basis of
/// `H^{2k}`) as the order used to extend `C_{2k}`.
pub fn decompose_in_basis(
    op: &Sq2Operator,
    bases: &[Vec<BitVec>],
) -> Result<A1Decomposition, A1Error> {
    let mats = op.matrices();
    if bases.len() != mats.len() {
        return Err(A1Error::WrongDegreeCount {
            expected: mats.len() - 1,
            got: bases.len(),
        });
    }
    let mut witnesses: Vec<DegreeWitness> = Vec::new();
    for (k, basis) in bases.iter().enumerate() {
        let dim = mats[k].cols();
        if basis.len() != dim
            || basis.iter().any(|v| v.len() != dim)
            || Echelon::from_vectors(dim, basis.iter().cloned()).rank() != dim
        {
            return Err(A1Error::NotABasis(2 * k));
        }
        let c: Vec<BitVec> = match witnesses.last() {
            Some(prev) => prev.b.iter().map(|v| mats[k - 1].mul_vec(v)).collect(),
            None => Vec::new(),
        };
        let mut span = Echelon::from_vectors(dim, c.iter().cloned());
        let complement: Vec<BitVec> = basis
            .iter()
            .filter(|v| span.insert((*v).clone()))
            .cloned()
            .collect();

        let mat = &mats[k];
        let mut images = TrackedEchelon::new(mat.rows(), complement.len());
        let mut ws: Vec<BitVec> = Vec::with_capacity(complement.len());
        let mut in_kernel = Vec::with_capacity(complement.len());
        for u in &complement {
            let (residue, combo) = images.reduce(&mat.mul_vec(u));
            let mut w = u.clone();
            for i in combo.iter_ones() {
                w.xor_assign(&ws[i]);
            }
            in_kernel.push(residue.is_zero());
            images.insert(&residue);
            ws.push(w);
        }
        let (d, b): (Vec<_>, Vec<_>) = ws.into_iter().zip(in_kernel).partition(|(_, z)| *z);
        witnesses.push(DegreeWitness {
            degree: 2 * k,
            c,
            d: d.into_iter().map(|(w, _)| w).collect(),
            b: b.into_iter().map(|(w, _)| w).collect(),
        });
    }
    Ok(A1Decomposition {
        m_mult: witnesses.iter().map(|w| w.d.len()).collect(),
        n_mult: witnesses.iter().map(|w| w.b.len()).collect(),
        witnesses,
    })
}

/// Independent checker: recomputes every invariant from the operator.
pub fn verify(
    dec: &A1Decomposition,
    algebra: &GradedAlgebraF2,
    op: &Sq2Operator,
) -> Result<(), VerifyError> {
    let mats = op.matrices();
    let top = algebra.half_top();
    if dec.witnesses.len() != top + 1 || dec.m_mult.len() != top + 1 || dec.n_mult.len() != top + 1 {
        return Err(VerifyError::DegreeRange {
            found: dec.witnesses.len(),
            expected: top + 1,
        });
    }
    let homology = sq2_homology(op);
    for (k, wit) in dec.witnesses.iter().enumerate() {
        let degree = 2 * k;
        let dim = algebra.dim(degree);
        let count = wit.c.len() + wit.d.len() + wit.b.len();
        if count != dim {
            return Err(VerifyError::DimensionCount { degree, count, dim });
        }
        let expected_c: Vec<BitVec> = if k == 0 {
            Vec::new()
        } else {
            dec.witnesses[k - 1].b.iter().map(|v| mats[k - 1].mul_vec(v)).collect()
        };
        if expected_c != wit.c {
            return Err(VerifyError::CNotImageOfB(degree));
        }
        let all = wit.c.iter().chain(&wit.d).chain(&wit.b).cloned();
        if Echelon::from_vectors(dim, all).rank() != dim {
            return Err(VerifyError::NotABasis(degree));
        }
        if wit.d.iter().any(|v| !mats[k].mul_vec(v).is_zero()) {
            return Err(VerifyError::Sq2NonzeroOnD(degree));
        }
        if wit.c.iter().any(|v| !mats[k].mul_vec(v).is_zero()) {
            return Err(VerifyError::Sq2NonzeroOnC(degree));
        }
        let images = wit.b.iter().map(|v| mats[k].mul_vec(v));
        if Echelon::from_vectors(mats[k].rows(), images).rank() != wit.b.len() {
            return Err(VerifyError::Sq2NotInjectiveOnB(degree));
        }
        if dec.m_mult[k] != homology.dims[k] || dec.m_mult[k] != wit.d.len() {
            return Err(VerifyError::SphereCountMismatch {
                degree,
                found: dec.m_mult[k],
                expected: homology.dims[k],
            });
        }
        if dec.n_mult[k] != mats[k].rank() || dec.n_mult[k] != wit.b.len() {
            return Err(VerifyError::MooreCountMismatch {
                degree,
                found: dec.n_mult[k],
                expected: mats[k].rank(),
            });
        }
    }
    if dec.total_dim() != algebra.total_dim() {
        return Err(VerifyError::TotalMismatch {
            found: dec.total_dim(),
            expected: algebra.total_dim(),
        });
    }
    Ok(())
}

/// Witness vectors as readable classes.
pub fn witness_names(algebra: &GradedAlgebraF2, degree: usize, vectors: &[BitVec]) -> Vec<String> {
    vectors
        .iter()
        .map(|v| {
            algebra.class_name(&CohomologyClass {
                degree,
                coords: v.clone(),
            })
        })
        .collect()
}

/// A uniformly random invertible matrix, as its list of columns.
pub fn random_basis<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<BitVec> {
    loop {
        let cols: Vec<BitVec> = (0..dim)
            .map(|_| BitVec::from_bools(&(0..dim).map(|_| rng.random::<bool>()).collect::<Vec<_>>()))
            .collect();
        if dim == 0 || BitMatrix::from_columns(dim, &cols).is_invertible() {
            return cols;
        }
    }
}

/// One random basis per degree of `algebra`.
pub fn random_bases<R: Rng + ?Sized>(algebra: &GradedAlgebraF2, rng: &mut R) -> Vec<Vec<BitVec>> {
    algebra.dims().iter().map(|&d| random_basis(d, rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::reduce_mod2;
    use crate::combinatorics::SimplicialComplex;
    use crate::face_ring::{build_face_ring, RingMap};
    use crate::steenrod::sq2_operator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(facets: &[Vec<usize>], m: usize, n: usize, lam: &[Vec<i64>]) -> GradedAlgebraF2 {
        let k = SimplicialComplex::new(facets, m, n).unwrap();
        build_face_ring(&k, &reduce_mod2(lam, &k).unwrap()).unwrap()
    }

    fn cp2() -> GradedAlgebraF2 {
        ring(&[vec![1, 2], vec![2, 3], vec![1, 3]], 3, 2, &[vec![1, 0, 1], vec![0, 1, 1]])
    }

    fn square_example() -> GradedAlgebraF2 {
        ring(
            &[vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]],
            4,
            2,
            &[vec![0, 1, -1, 1], vec![1, 0, 1, -2]],
        )
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

    fn run(a: &GradedAlgebraF2) -> (Sq2Operator, A1Decomposition) {
        let op = sq2_operator(a).unwrap();
        let dec = decompose(a, &op);
        verify(&dec, a, &op).unwrap();
        (op, dec)
    }

    #[test]
    fn cube_decomposition() {
        let (_, dec) = run(&cube());
        assert_eq!(dec.m_mult, vec![1, 1, 1, 1]);
        assert_eq!(dec.n_mult, vec![0, 2, 0, 0]);
        assert_eq!(dec.formula(), "S0 ⊕ Σ^2 S0 ⊕ Σ^4 S0 ⊕ Σ^6 S0 ⊕ 2Σ^2 M");
        assert_eq!(
            dec.summary_lines(),
            vec!["S0 ×1", "Σ^2 S0 ×1", "Σ^4 S0 ×1", "Σ^6 S0 ×1", "Σ^2 M ×2"]
        );
    }

    #[test]
    fn cp2_decomposition() {
        let (_, dec) = run(&cp2());
        assert_eq!(dec.m_mult, vec![1, 0, 0]);
        assert_eq!(dec.n_mult, vec![0, 1, 0]);
    }

    #[test]
    fn square_example_witnesses() {
        let a = square_example();
        let (op, dec) = run(&a);
        assert_eq!(dec.m_mult, vec![1, 1, 0]);
        assert_eq!(dec.n_mult, vec![0, 1, 0]);
        // Oracle from the 1x2 matrix: rank 1, kernel of dimension 1.
        assert_eq!(op.matrix(2).rank(), 1);
        assert_eq!(op.matrix(2).kernel().len(), 1);
        let w = &dec.witnesses[1];
        let kernel_class = a.generator(1).add(a.generator(3));
        assert_eq!(w.d, vec![kernel_class.coords]);
        assert_eq!(w.b.len(), 1);
        assert_eq!(witness_names(&a, 2, &w.b).len(), 1);
        assert_eq!(witness_names(&a, 4, &dec.witnesses[2].c).len(), 1);
    }

    #[test]
    fn corrupted_witness_is_caught() {
        let a = cube();
        let (op, dec) = run(&a);
        let mut bad = dec.clone();
        let moved = bad.witnesses[1].d.pop().unwrap();
        bad.witnesses[1].b.insert(0, moved);
        assert_eq!(verify(&bad, &a, &op), Err(VerifyError::Sq2NotInjectiveOnB(2)));

        let mut bad = dec.clone();
        bad.m_mult[0] = 2;
        assert!(matches!(
            verify(&bad, &a, &op),
            Err(VerifyError::SphereCountMismatch { degree: 0, .. })
        ));

        let mut bad = dec;
        bad.witnesses[2].c.reverse();
        assert_eq!(verify(&bad, &a, &op), Err(VerifyError::CNotImageOfB(4)));
    }

    #[test]
    fn shuffled_bases_give_same_multiplicities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for a in [cube(), square_example(), cp2()] {
            let (op, dec) = run(&a);
            for _ in 0..10 {
                let shuffled = decompose_in_basis(&op, &random_bases(&a, &mut rng)).unwrap();
                verify(&shuffled, &a, &op).unwrap();
                assert_eq!(shuffled.m_mult, dec.m_mult);
                assert_eq!(shuffled.n_mult, dec.n_mult);
            }
        }
    }

    #[test]
    fn rejects_non_basis() {
        let a = cp2();
        let op = sq2_operator(&a).unwrap();
        let mut bases = random_bases(&a, &mut ChaCha8Rng::seed_from_u64(1));
        bases[1] = vec![BitVec::zeros(1)];
        assert_eq!(decompose_in_basis(&op, &bases), Err(A1Error::NotABasis(2)));
    }

    #[test]
    fn restriction_map_commutes_with_sq2() {
        let cp2 = cp2();
        let k1 = SimplicialComplex::new(&[vec![1], vec![2]], 2, 1).unwrap();
        let cp1 = build_face_ring(&k1, &reduce_mod2(&[vec![1, 1]], &k1).unwrap()).unwrap();
        let w = cp1.generator(0).clone();
        let map = RingMap::from_generator_images(&cp2, &cp1, &[w.clone(), w.clone(), w]).unwrap();
        let (src, _) = run(&cp2);
        let (tgt, _) = run(&cp1);
        for degree in [0, 2] {
            let left = map.matrix(degree + 2).mul(src.matrix(degree));
            let right = tgt.matrix(degree).mul(map.matrix(degree));
            assert_eq!(left, right, "degree {degree}");
        }
    }

    #[test]
    fn empty_and_point() {
        let dec = A1Decomposition::from_multiplicities(vec![], vec![]);
        assert_eq!(dec.formula(), "0");
        assert_eq!(dec.total_dim(), 0);
    }
}
