use hadamard::products::{
    forms_vanish, gen_vandermonde, interpolate_forms, interpolate_hypersurface,
    span_dimension_formula, terracini_dimension, LinearSampler, ProductSampler,
};
use hadamard::projective::LinSpace;
use hadamard::tropical::{degree_linear_products, DimMult};
use proptest::prelude::*;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_space(rng: &mut dyn RngCore, m: usize, n: usize) -> LinSpace {
    loop {
        let rows: Vec<Vec<i64>> = (0..=m)
            .map(|_| (0..=n).map(|_| rng.gen_range(-30..=30)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        if let Ok(l) = LinSpace::from_i64_rows(&refs) {
            return l;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn vandermonde_rank_matches_formula(m in 1usize..3, r in 1usize..4, n in 2usize..10, seed in 0u64..10_000) {
        prop_assume!(m <= n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_space(&mut rng, m, n);
        let rank = gen_vandermonde(&[(l, r)]).unwrap().rank();
        prop_assert_eq!(rank, span_dimension_formula(&[(m, r)], n) + 1);
    }

    #[test]
    fn tangent_space_of_two_linear_spaces(m1 in 1usize..4, m2 in 1usize..4, seed in 0u64..10_000) {
        let n = 12;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = LinearSampler::new(random_space(&mut rng, m1, n));
        let y = LinearSampler::new(random_space(&mut rng, m2, n));
        prop_assert_eq!(terracini_dimension(&x, &y, &mut rng).unwrap(), m1 + m2);
    }
}

#[test]
fn interpolated_degree_matches_formula_for_hypersurfaces() {
    let cases: [(&[DimMult], usize); 4] = [
        (&[(1, 1), (1, 1)], 3),
        (&[(2, 1)], 3),
        (&[(1, 2), (1, 1)], 4),
        (&[(1, 1), (2, 1)], 4),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (factors, n) in cases {
        let spaces: Vec<(LinSpace, usize)> = factors
            .iter()
            .map(|&(m, r)| (random_space(&mut rng, m, n), r))
            .collect();
        let sampler = ProductSampler::of_linear(&spaces).unwrap();
        let (d, form) = interpolate_hypersurface(&sampler, 4, &mut rng).unwrap();
        let formula = degree_linear_products(factors, n).unwrap();
        assert_eq!(hadamard::arith::int(d as i64), formula.degree, "{factors:?}");
        assert!(forms_vanish(&[form], &sampler, 100, &mut rng).unwrap());
    }
}

#[test]
fn forms_of_a_non_hypersurface_vanish_on_fresh_samples() {
    // A line squared in P^4 is a plane: two linear forms.
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let l = random_space(&mut rng, 1, 4);
    let sampler = ProductSampler::of_linear(&[(l, 2)]).unwrap();
    let forms = interpolate_forms(&sampler, 1, &mut rng).unwrap();
    assert_eq!(forms.len(), 2);
    assert!(forms_vanish(&forms, &sampler, 100, &mut rng).unwrap());
}
