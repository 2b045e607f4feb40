//! Square-free powers of points on a line are star configurations.

use hadamard::arith::int;
use hadamard::projective::{LinSpace, PPoint};
use hadamard::star::{build_star, verify_general_position, verify_star, PointSet};

fn main() -> hadamard::Result<()> {
    let line = LinSpace::from_i64_rows(&[&[1, 2, 3, 4, 5], &[2, -1, 4, 7, -3]])?;
    let g = line.generators();
    let points = [1, 3, -2, 5, 7]
        .iter()
        .map(|&t| PPoint::new((0..5).map(|j| g.get(0, j) + int(t) * g.get(1, j)).collect()))
        .collect::<hadamard::Result<Vec<_>>>()?;
    let z = PointSet::new(points)?;

    for r in 1..=3 {
        let w = build_star(&z, &line, r)?;
        let gp = verify_general_position(&w.hyperplanes, &w.ambient)?;
        println!(
            "r = {r}: {} points, general position {}, star {}",
            w.points.len(),
            gp.holds,
            verify_star(&w)
        );
    }

    // A coordinate point on the line breaks the hypothesis.
    let through_zero = LinSpace::from_i64_rows(&[&[0, 1, 1, 1, 1], &[1, 1, 2, 3, 5]])?;
    let z = PointSet::new(through_zero.generator_points())?;
    if let Err(e) = build_star(&z, &through_zero, 2) {
        println!("rejected: {e}");
    }
    Ok(())
}
