use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_ko::a1_decomp::{decompose, decompose_in_basis, random_bases, verify};
use toric_ko::combinatorics::{f_vector, h_vector};
use toric_ko::ext_charts::{ExtKind, Gen, RewriteSystem, Term};
use toric_ko::library::{product, seeded_polygon, simplex};
use toric_ko::problem::{parse_spec, render_spec};
use toric_ko::report::{compute, run_pipeline};
use toric_ko::steenrod::{check_cartan, is_spin, sq2_operator};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polygon_pipeline_invariants(m in 3usize..=10, seed in any::<u64>(), mod2 in any::<bool>()) {
        let spec = seeded_polygon(m, seed, mod2);
        prop_assert_eq!(parse_spec(&render_spec(&spec)).unwrap(), spec.clone());
        let comp = compute(&spec).unwrap();
        let a = &comp.algebra;
        let k = spec.complex().unwrap();
        let h = h_vector(&f_vector(&k), 2).unwrap();
        prop_assert!(h.is_symmetric());
        prop_assert_eq!(a.dims().iter().map(|&d| d as u64).collect::<Vec<_>>(), h.0);
        let op = sq2_operator(a).unwrap();
        prop_assert!(check_cartan(a).is_ok());
        let verdict = is_spin(a, &op).unwrap();
        prop_assert_eq!(verdict.spin, verdict.wu_class.is_zero());
        verify(&comp.decomposition, a, &op).unwrap();
    }

    #[test]
    fn shuffled_sweeps_agree(m in 3usize..=9, seed in any::<u64>()) {
        let spec = seeded_polygon(m, seed, true);
        let a = compute(&spec).unwrap().algebra;
        let op = sq2_operator(&a).unwrap();
        let base = decompose(&a, &op);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let other = decompose_in_basis(&op, &random_bases(&a, &mut rng)).unwrap();
        verify(&other, &a, &op).unwrap();
        prop_assert_eq!(base.m_mult, other.m_mult);
        prop_assert_eq!(base.n_mult, other.n_mult);
    }

    #[test]
    fn ext_rewriting_is_confluent(exps in proptest::array::uniform4(0u32..5), g in 0usize..5, seed in any::<u64>()) {
        let gen = Gen::ALL.get(g).copied();
        let kind = if gen.is_some() { ExtKind::M } else { ExtKind::S0 };
        let sys = RewriteSystem::new(kind);
        let t = Term::new(exps, gen);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(sys.reduce(&t), sys.reduce_randomly(&t, &mut rng));
    }

    #[test]
    fn integral_and_mod2_inputs_agree(m in 4usize..=8, seed in any::<u64>()) {
        let spec = seeded_polygon(m, seed, false);
        let a = run_pipeline(&spec).unwrap();
        let b = run_pipeline(&spec.reduced_mod2()).unwrap();
        prop_assert_eq!(a.results, b.results);
    }
}

#[test]
fn projective_space_products() {
    for (p, q) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
        let spec = product(&simplex(p), &simplex(q));
        let comp = compute(&spec).unwrap();
        assert_eq!(comp.algebra.total_dim(), (p + 1) * (q + 1), "{}", spec.name);
        assert_eq!(comp.decomposition.total_dim(), comp.algebra.total_dim());
    }
}
