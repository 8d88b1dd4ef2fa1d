use lattice_tensor::classify::planar_system;
use lattice_tensor::ehrhart::{linear_coefficient, moment_tensor};
use lattice_tensor::polytope::{standard_simplex, unit_cube};
use lattice_tensor::sample::{random_polygon, random_polytope, random_sl, random_vector};
use lattice_tensor::tensor::tensor_power;
use lattice_tensor::tri2d::{
    flip_walk, l31_standard_triangle, seeded_valuation_on, valuation_n_on,
};
use lattice_tensor::{
    apply_linear, discrete_moment, ehrhart_tensors, unimodular_triangulation, valuation_n,
    LatticePolytope, Parity,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn polytope(max_n: usize) -> impl Strategy<Value = LatticePolytope> {
    (any::<u64>(), 1usize..=max_n).prop_flat_map(|(seed, n)| {
        (0..=n).prop_map(move |d| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_polytope(&mut rng, n, d, 3, 6)
        })
    })
}

fn polygon() -> impl Strategy<Value = LatticePolytope> {
    any::<u64>().prop_map(|seed| random_polygon(&mut ChaCha8Rng::seed_from_u64(seed), 4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn expansion_extrapolates(p in polytope(3), r in 0u32..=2, extra in 1u64..=3) {
        let exp = ehrhart_tensors(&p, r);
        let k = (p.ambient_dim() + r as usize) as u64 + extra;
        prop_assert_eq!(exp.evaluate_at(k), discrete_moment(&p.dilate(k).unwrap(), r));
    }

    #[test]
    fn linear_coefficient_is_translation_invariant(p in polytope(2), r in 2u32..=3, seed in any::<u64>()) {
        let y = random_vector(&mut ChaCha8Rng::seed_from_u64(seed), p.ambient_dim(), 4);
        prop_assert_eq!(linear_coefficient(&p.translate(&y).unwrap(), r), linear_coefficient(&p, r));
    }

    #[test]
    fn linear_coefficient_is_minkowski_additive(p in polytope(2), seed in any::<u64>(), r in prop::sample::select(vec![0u32, 2, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = p.ambient_dim();
        let d = (seed % (n as u64 + 1)) as usize;
        let q = random_polytope(&mut rng, n, d, 2, 4);
        let sum = p.minkowski_sum(&q).unwrap();
        prop_assert_eq!(linear_coefficient(&sum, r), &linear_coefficient(&p, r) + &linear_coefficient(&q, r));
    }

    #[test]
    fn moments_are_valuations_across_splits(p in polytope(3), axis in 0usize..3, c in 0i64..=3, r in 0u32..=2) {
        if let Some((lo, hi, mid)) = p.split(axis % p.ambient_dim(), c) {
            let left = &discrete_moment(&lo, r) + &discrete_moment(&hi, r);
            prop_assert_eq!(left, &discrete_moment(&p, r) + &discrete_moment(&mid, r));
            let (a, b, whole, cut) = (ehrhart_tensors(&lo, r), ehrhart_tensors(&hi, r), ehrhart_tensors(&p, r), ehrhart_tensors(&mid, r));
            for i in 0..=p.ambient_dim() + r as usize {
                prop_assert_eq!(&a.coefficient(i) + &b.coefficient(i), &whole.coefficient(i) + &cut.coefficient(i));
            }
        }
    }

    #[test]
    fn leading_coefficient_is_the_moment(seed in any::<u64>(), n in 1usize..=3, r in 0u32..=2) {
        let p = random_polytope(&mut ChaCha8Rng::seed_from_u64(seed), n, n, 3, 6);
        prop_assert_eq!(ehrhart_tensors(&p, r).coefficient(n + r as usize), moment_tensor(&p, r).unwrap());
    }

    #[test]
    fn n_is_equivariant_and_translation_invariant(p in polygon(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_sl(&mut rng, 2, 3);
        let value = valuation_n(&p).unwrap();
        prop_assert_eq!(valuation_n(&p.linear_image(phi.matrix()).unwrap()).unwrap(), apply_linear(&value, phi.matrix()).unwrap());
        let y = random_vector(&mut rng, 2, 5);
        prop_assert_eq!(valuation_n(&p.translate(&y).unwrap()).unwrap(), value);
    }

    #[test]
    fn n_is_one_homogeneous(p in polygon(), k in 0u64..=3) {
        let value = valuation_n(&p).unwrap();
        let expected = value.scaled(&lattice_tensor::arith::int(k as i64));
        prop_assert_eq!(valuation_n(&p.dilate(k).unwrap()).unwrap(), expected);
    }

    #[test]
    fn n_is_a_simple_valuation(p in polygon(), axis in 0usize..2, c in 1i64..=3) {
        if let Some((lo, hi, mid)) = p.split(axis, c) {
            prop_assert!(valuation_n(&mid).unwrap().is_zero());
            let parts = &valuation_n(&lo).unwrap() + &valuation_n(&hi).unwrap();
            prop_assert_eq!(parts, valuation_n(&p).unwrap());
        }
    }

    #[test]
    fn n_matches_its_seeded_form(p in polygon(), walk in any::<u64>()) {
        let t = flip_walk(&unimodular_triangulation(&p).unwrap(), walk, 15);
        let seed = tensor_power(&l31_standard_triangle(), 3).unwrap();
        prop_assert_eq!(seeded_valuation_on(&t, &seed).unwrap(), valuation_n_on(&t));
    }

    #[test]
    fn alternating_seed_is_triangulation_independent(p in polygon(), r in prop::sample::select(vec![3u32, 5, 7]), walk in any::<u64>()) {
        let kernel = planar_system(r, Parity::Minus).kernel_tensors();
        prop_assert_eq!(kernel.len(), 1);
        let seed = &kernel[0];
        prop_assert_eq!(&apply_linear(seed, &[vec![0, 1], vec![-1, -1]]).unwrap(), seed);
        let base = unimodular_triangulation(&p).unwrap();
        let value = seeded_valuation_on(&base, seed).unwrap();
        prop_assert_eq!(seeded_valuation_on(&flip_walk(&base, walk, 20), seed).unwrap(), value);
    }
}

#[test]
fn alternating_seed_is_odd_under_the_swap() {
    let swap = vec![vec![0, 1], vec![1, 0]];
    let t2 = unimodular_triangulation(&standard_simplex(2, 2).unwrap()).unwrap();
    let square = unimodular_triangulation(&unit_cube(2).unwrap()).unwrap();
    for r in [3u32, 5, 7] {
        let seed = &planar_system(r, Parity::Minus).kernel_tensors()[0];
        assert_eq!(apply_linear(seed, &swap).unwrap(), -seed);
        assert_eq!(&seeded_valuation_on(&t2, seed).unwrap(), seed);
        assert!(seeded_valuation_on(&square, seed).unwrap().is_zero());
    }
}
