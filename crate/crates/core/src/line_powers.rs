//! Hadamard powers of a line.
//!
//! For a line with no vanishing bracket, `L^{*r}` is spanned by the rows
//! `a_0^{r-i} * a_1^i` of [`line_power_matrix`], its Plücker coordinates are
//! products of the line's brackets, and its equations come from expanding
//! maximal minors along an appended coordinate row. Lines that meet
//! `Delta_{n-2}` are handled only by [`sampled_power_span`].

use itertools::Itertools;
use num_traits::{One, Pow, Zero};
use rand::RngCore;

use crate::arith::{binomial, primitive_vector, QMatrix, Rational, SparsePoly};
use crate::error::{Error, Result};
use crate::projective::{
    hadamard_all, sample_point, LinSpace, PPoint, PlueckerVector, DEFAULT_RETRIES,
};

/// Consecutive non-growing samples after which a sampled span counts as stable.
pub const STABLE_STREAK: usize = 3;

fn require_line(space: &LinSpace) -> Result<()> {
    if space.dim() != 1 {
        return Err(Error::NotALine {
            rows: space.generators().rows(),
        });
    }
    Ok(())
}

fn require_line_pluecker(pl: &PlueckerVector) -> Result<()> {
    if pl.dim() != 1 {
        return Err(Error::NotALine { rows: pl.dim() + 1 });
    }
    Ok(())
}

/// The `(r+1) x (n+1)` matrix with entries `a_{0j}^{r-i} a_{1j}^i`.
pub fn line_power_matrix(line: &LinSpace, r: usize) -> Result<QMatrix> {
    require_line(line)?;
    let g = line.generators();
    let n1 = g.cols();
    let mut rows = Vec::with_capacity(r + 1);
    for i in 0..=r {
        rows.push(
            (0..n1)
                .map(|j| {
                    Pow::pow(g.get(0, j), (r - i) as u32) * Pow::pow(g.get(1, j), i as u32)
                })
                .collect(),
        );
    }
    QMatrix::from_rows_with_cols(rows, n1)
}

/// Row space of [`line_power_matrix`]; `r = 0` gives the all-ones point.
/// This is `L^{*r}` only when the line has no vanishing bracket.
pub fn line_power(line: &LinSpace, r: usize) -> Result<LinSpace> {
    let m = line_power_matrix(line, r)?;
    LinSpace::span(&m).ok_or(Error::ZeroPoint)
}

/// `[i_0 ... i_r]` of `L^{*r}` as the product of `[i_j i_k]` over all pairs.
pub fn line_power_pluecker(pl: &PlueckerVector, indices: &[usize]) -> Result<Rational> {
    require_line_pluecker(pl)?;
    if let Some(&bad) = indices.iter().find(|&&i| i > pl.ambient()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            max: pl.ambient(),
        });
    }
    let mut acc = Rational::one();
    for (a, b) in indices.iter().tuple_combinations() {
        acc *= pl.bracket(*a, *b)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// The linear form of the hyperplane `L^{*(n-1)}`:
/// `sum_i (-1)^{n+i} prod_{j<k; j,k != i} [jk] x_i`.
pub fn power_hyperplane(pl: &PlueckerVector) -> Result<SparsePoly> {
    require_line_pluecker(pl)?;
    let n = pl.ambient();
    if n < 2 {
        return Err(Error::Invalid("power_hyperplane needs n >= 2".into()));
    }
    let coeffs = (0..=n)
        .map(|i| {
            let others: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
            let v = line_power_pluecker(pl, &others)?;
            Ok(if (n + i) % 2 == 1 { -v } else { v })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparsePoly::linear(&coeffs))
}

/// The `binom(n+1, r+2)` maximal minors of the power matrix with the row
/// `(x_0, ..., x_n)` appended, expanded along that row. Coefficients are
/// cleared to coprime integers; a minor that vanishes identically is kept as
/// the zero form so the count is always `binom(n+1, r+2)`.
pub fn power_linear_equations(line: &LinSpace, r: usize) -> Result<Vec<SparsePoly>> {
    require_line(line)?;
    let n = line.ambient();
    if r >= n {
        return Err(Error::Invalid(format!(
            "power equations need r < n, got r = {r}, n = {n}"
        )));
    }
    let pl = line.pluecker();
    let mut out = Vec::with_capacity(binomial(n + 1, r + 2) as usize);
    for cols in (0..=n).combinations(r + 2) {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = line_power_pluecker(&pl, &rest)?;
            coeffs[c] = if (r + 1 + k) % 2 == 1 { -minor } else { minor };
        }
        out.push(SparsePoly::linear(&primitive_vector(&coeffs)));
    }
    Ok(out)
}

/// Span of sampled `r`-fold products of random points of `space`. Stops
/// once [`STABLE_STREAK`] consecutive samples fail to raise the rank; errors
/// if that has not happened after `budget` samples.
pub fn sampled_power_span(
    space: &LinSpace,
    r: usize,
    budget: usize,
    rng: &mut dyn RngCore,
) -> Result<LinSpace> {
    if r == 0 {
        return Ok(LinSpace::span_of_points(&[PPoint::ones(space.ambient())]).expect("nonzero"));
    }
    let mut basis: Vec<PPoint> = Vec::new();
    let mut streak = 0;
    for _ in 0..budget {
        let factors = (0..r)
            .map(|_| sample_point(space, rng, None, DEFAULT_RETRIES))
            .collect::<Result<Vec<_>>>()?;
        let Some(product) = hadamard_all(&factors)? else {
            continue;
        };
        let grows = match LinSpace::span_of_points(&basis) {
            None => true,
            Some(span) => !span.contains_point(&product),
        };
        if grows {
            basis.push(product);
            streak = 0;
        } else {
            streak += 1;
            if streak >= STABLE_STREAK {
                return Ok(LinSpace::span_of_points(&basis).expect("nonempty"));
            }
        }
    }
    Err(Error::NotStabilized(budget))
}

/// Default sample budget for [`sampled_power_span`].
pub fn default_budget(n: usize) -> usize {
    4 * (n + 1) + 16
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::projective::pluecker;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_line() -> LinSpace {
        LinSpace::from_i64_rows(&[&[1, 1, 1], &[1, 2, 3]]).unwrap()
    }

    #[test]
    fn first_power_is_the_line() {
        let l = small_line();
        assert_eq!(&line_power_matrix(&l, 1).unwrap(), l.generators());
    }

    #[test]
    fn squared_small_line_matrix() {
        let m = line_power_matrix(&small_line(), 2).unwrap();
        assert_eq!(m, QMatrix::from_i64_rows(&[&[1, 1, 1], &[1, 2, 3], &[1, 4, 9]]).unwrap());
        assert_eq!(m.det().unwrap(), int(2));
    }

    #[test]
    fn non_lines_are_rejected() {
        let plane = LinSpace::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(matches!(line_power_matrix(&plane, 2), Err(Error::NotALine { .. })));
    }

    #[test]
    fn pluecker_products() {
        let pl = pluecker(&small_line());
        assert_eq!(line_power_pluecker(&pl, &[0, 1, 2]).unwrap(), int(2));
        assert_eq!(line_power_pluecker(&pl, &[0, 2]).unwrap(), int(2));
        assert_eq!(line_power_pluecker(&pl, &[0, 0, 1]).unwrap(), int(0));
        assert!(line_power_pluecker(&pl, &[0, 3]).is_err());
    }

    #[test]
    fn hyperplane_of_plane_line_is_its_equation() {
        let f = power_hyperplane(&pluecker(&small_line())).unwrap();
        assert_eq!(f, SparsePoly::linear(&[int(1), int(-2), int(1)]));
    }

    #[test]
    fn equation_count_and_vanishing() {
        let l = LinSpace::from_i64_rows(&[&[1, 2, 3, 4, 5, 6], &[3, -1, 4, 1, -5, 9]]).unwrap();
        for r in 1..5 {
            let eqs = power_linear_equations(&l, r).unwrap();
            assert_eq!(eqs.len() as u64, binomial(6, r + 2));
            let m = line_power_matrix(&l, r).unwrap();
            for f in &eqs {
                assert!(!f.is_zero());
                for row in m.row_iter() {
                    assert!(f.eval(row).unwrap().is_zero());
                }
            }
        }
        let last = power_linear_equations(&l, 4).unwrap();
        let hyper = power_hyperplane(&l.pluecker()).unwrap();
        assert!(last[0].is_proportional_to(&hyper));
        assert!(power_linear_equations(&l, 5).is_err());
    }

    #[test]
    fn sampled_span_of_generic_line_matches_matrix() {
        let l = LinSpace::from_i64_rows(&[&[1, 2, 3, 4], &[5, -1, 2, 7]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for r in 0..=4 {
            let sampled = sampled_power_span(&l, r, default_budget(3), &mut rng).unwrap();
            let expected = line_power(&l, r).unwrap();
            assert_eq!(sampled, expected, "r = {r}");
        }
    }
}
