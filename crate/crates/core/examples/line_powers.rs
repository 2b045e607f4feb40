//! Powers of a line: the generator matrix, the Plücker formula and the
//! sampled span, on a generic line and on one that meets `Delta_{n-2}`.

use hadamard::line_powers::{
    default_budget, line_power, line_power_matrix, power_hyperplane, sampled_power_span,
};
use hadamard::projective::{pluecker, LinSpace};
use hadamard::suite::degenerate_line;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hadamard::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let line = LinSpace::from_i64_rows(&[&[1, 2, 3, 4], &[1, -1, 2, 5]])?;
    println!("L^(*2) in P^3 has generators");
    for row in line_power_matrix(&line, 2)?.row_iter() {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("  [{}]", row.join(", "));
    }
    println!("and equation {}", power_hyperplane(&pluecker(&line))?);

    let bad = degenerate_line();
    for r in 1..=5 {
        let span = sampled_power_span(&bad, r, default_budget(5), &mut rng)?;
        let formula = line_power(&bad, r)?;
        println!(
            "degenerate line, r = {r}: sampled dim {}, matrix rank {}",
            span.dim(),
            formula.dim()
        );
    }
    Ok(())
}
