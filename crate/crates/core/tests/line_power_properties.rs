use hadamard::arith::{int, Rational};
use hadamard::line_powers::{
    default_budget, line_power, line_power_matrix, line_power_pluecker, sampled_power_span,
};
use hadamard::projective::{hadamard_all, pluecker, sample_point, LinSpace, DEFAULT_RETRIES};
use itertools::Itertools;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn line_strategy(n: usize) -> impl Strategy<Value = LinSpace> {
    (
        proptest::collection::vec(-20i64..21, n + 1),
        proptest::collection::vec(-20i64..21, n + 1),
    )
        .prop_filter_map("independent rows", |(a, b)| LinSpace::from_i64_rows(&[&a, &b]).ok())
}

fn any_line() -> impl Strategy<Value = LinSpace> {
    (2usize..7).prop_flat_map(line_strategy)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minors_are_bracket_products(line in any_line(), r in 0usize..7) {
        let n = line.ambient();
        prop_assume!(r <= n);
        let pm = line_power_matrix(&line, r).unwrap();
        let pl = pluecker(&line);
        for cols in (0..=n).combinations(r + 1) {
            let det = pm.select_columns(&cols).det().unwrap();
            prop_assert_eq!(det, line_power_pluecker(&pl, &cols).unwrap());
        }
    }

    #[test]
    fn sampled_products_lie_in_the_power(line in any_line(), r in 1usize..5, seed in 0u64..1000) {
        let power = line_power(&line, r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let pts: Vec<_> = (0..r)
                .map(|_| sample_point(&line, &mut rng, None, DEFAULT_RETRIES).unwrap())
                .collect();
            if let Some(p) = hadamard_all(&pts).unwrap() {
                prop_assert!(power.contains_point(&p));
            }
        }
    }

    #[test]
    fn generic_powers_have_full_dimension(line in any_line(), r in 1usize..9, seed in 0u64..1000) {
        let n = line.ambient();
        prop_assume!(pluecker(&line).all_nonzero());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampled = sampled_power_span(&line, r, default_budget(n), &mut rng).unwrap();
        prop_assert_eq!(sampled.dim(), r.min(n));
        if r <= n {
            prop_assert_eq!(sampled, line_power(&line, r).unwrap());
        } else {
            prop_assert_eq!(sampled, LinSpace::whole_space(n));
        }
    }
}

#[test]
fn coordinate_line_loses_dimension() {
    // A line through a coordinate point: the bracket [01] vanishes.
    let line = LinSpace::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 1, 1]]).unwrap();
    let pl = pluecker(&line);
    assert_eq!(pl.get(&[2, 3]).unwrap(), int(0));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let span = sampled_power_span(&line, 3, default_budget(3), &mut rng).unwrap();
    assert!(span.dim() < 3);
    let one: Rational = int(1);
    assert_eq!(line_power_pluecker(&pl, &[0, 1]).unwrap(), one);
}
