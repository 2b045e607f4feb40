//! The bracket quadric of two lines and the bracket cubic of a squared plane.

use hadamard::brackets::{
    cubic_expr, cubic_plane_square, quadric_expr, quadric_symbolic_expansion, quadric_two_lines,
};
use hadamard::projective::{pluecker, LinSpace};

fn main() -> hadamard::Result<()> {
    for (mono, coeff) in quadric_expr().notation() {
        println!("{mono}: {coeff}");
    }
    println!(
        "symbolic expansion in 20 variables is zero: {}",
        quadric_symbolic_expansion()?.is_zero()
    );

    let l = LinSpace::from_i64_rows(&[&[2, 3, 5, 7], &[11, 13, 17, 19]])?;
    let m = LinSpace::from_i64_rows(&[&[23, 29, 31, 37], &[41, 43, 47, 53]])?;
    println!("L*M: {}", quadric_two_lines(&pluecker(&l), &pluecker(&m))?.primitive());

    for (mono, coeff) in cubic_expr().notation().iter().take(3) {
        println!("{mono}: {coeff}");
    }
    let plane = LinSpace::from_i64_rows(&[
        &[3, 1, 4, 1, 5, 9],
        &[2, 6, 5, 3, 5, 8],
        &[9, 7, 9, 3, 2, 3],
    ])?;
    let cubic = cubic_plane_square(&pluecker(&plane))?;
    println!("P*P: {} terms", cubic.len());
    Ok(())
}
