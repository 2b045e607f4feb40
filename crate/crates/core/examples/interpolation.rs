//! Recovers the defining equations of Hadamard products by interpolation.

use hadamard::products::{interpolate_hypersurface, ProductSampler};
use hadamard::projective::LinSpace;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hadamard::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let l = LinSpace::from_i64_rows(&[&[2, 3, 5, 7], &[11, 13, 17, 19]])?;
    let m = LinSpace::from_i64_rows(&[&[23, 29, 31, 37], &[41, 43, 47, 53]])?;
    let two_lines = ProductSampler::of_linear(&[(l, 1), (m, 1)])?;
    let (d, f) = interpolate_hypersurface(&two_lines, 3, &mut rng)?;
    println!("L*M: degree {d}\n  {f}");

    let plane = LinSpace::from_i64_rows(&[
        &[3, 1, 4, 1, 5, 9],
        &[2, 6, 5, 3, 5, 8],
        &[9, 7, 9, 3, 2, 3],
    ])?;
    let square = ProductSampler::of_linear(&[(plane, 2)])?;
    let t = std::time::Instant::now();
    let (d, f) = interpolate_hypersurface(&square, 3, &mut rng)?;
    println!("P*P: degree {d}, {} terms ({:.2?})", f.len(), t.elapsed());
    Ok(())
}
