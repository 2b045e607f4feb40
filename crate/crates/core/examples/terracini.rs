//! Tangent spaces of Hadamard products and generalized Vandermonde spans.

use hadamard::products::{
    expected_dimension, gen_vandermonde, identifiability_check, span_dimension_formula,
    terracini_dimension, zero_margin_space, LinearSampler, SegreSampler,
};
use hadamard::projective::LinSpace;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hadamard::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    let segre = SegreSampler { a: 2, b: 3 };
    let margins = LinearSampler::new(zero_margin_space(3, 4)?);
    println!(
        "Segre(P^2 x P^3) * zero-margin 3x4: tangent dim {}, expected {}",
        terracini_dimension(&segre, &margins, &mut rng)?,
        expected_dimension(5, 5, 0, 11)
    );

    let plane = LinSpace::from_i64_rows(&[
        &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        &[2, -1, 3, 1, -4, 2, 9, 1, 1, 3],
        &[5, 1, -2, 7, 3, 3, 1, -6, 2, 8],
    ])?;
    for r in 1..=3 {
        let vm = gen_vandermonde(&[(plane.clone(), r)])?;
        println!(
            "plane^(*{r}) in P^9: span dim {} (formula {})",
            vm.rank() - 1,
            span_dimension_formula(&[(2, r)], 9)
        );
    }

    let line = LinSpace::from_i64_rows(&[&[1, 2, 3, 4, 5], &[2, -1, 4, 7, -3]])?;
    let report = identifiability_check(&line, 3, 2000, &mut rng)?;
    println!(
        "line^(*3) in P^4: {} trials, in regime {}, collision {}",
        report.trials,
        report.in_regime,
        report.collision.is_some()
    );
    Ok(())
}
