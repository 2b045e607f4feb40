//! Degrees of products of generic linear and reciprocal linear spaces,
//! from the closed forms and from tropical fans.

use hadamard::tropical::{degree_linear_products, degree_via_fans, degree_with_reciprocals};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hadamard::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    for (factors, n) in [
        (vec![(1, 1), (1, 1)], 3),
        (vec![(2, 2)], 5),
        (vec![(1, 1), (1, 1), (1, 1)], 7),
        (vec![(1, 2), (2, 1)], 8),
    ] {
        let closed = degree_linear_products(&factors, n)?;
        let fans = degree_via_fans(&factors, &[], n, &mut rng)?;
        println!(
            "{factors:?} in P^{n}: dim {}, degree {} (fans: {}, {} contributing pairs)",
            closed.dim,
            closed.degree,
            fans.degree(),
            fans.intersection.pairs.len()
        );
    }

    for n in 2..=6 {
        let d = degree_with_reciprocals(&[], &[(1, 1)], n)?;
        println!("reciprocal line in P^{n}: degree {}", d.degree);
    }
    let mixed = degree_via_fans(&[(1, 1)], &[(1, 1)], 3, &mut rng)?;
    println!("line * reciprocal line in P^3: degree {}", mixed.degree());
    Ok(())
}
