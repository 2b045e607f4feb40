//! Reproductions of the worked examples: each check recomputes a printed
//! value by two independent routes and reports whether they agree.

use rand::RngCore;
use serde::Serialize;

use crate::arith::{int, QMatrix, SparsePoly};
use crate::brackets::{cubic_plane_square, quadric_symbolic_expansion, quadric_two_lines};
use crate::error::Result;
use crate::line_powers::{default_budget, sampled_power_span};
use crate::products::{
    expected_dimension, interpolate_hypersurface, terracini_dimension, zero_margin_space,
    LinearSampler, ProductSampler, ReciprocalSampler, SegreSampler,
};
use crate::projective::{pluecker, LinSpace, PPoint};
use crate::star::{build_star, verify_star, PointSet};
use crate::tropical::{degree_linear_products, degree_via_fans, degree_with_reciprocals, DimMult};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// The two lines of `P^3` whose product is the printed quadric.
pub fn prime_lines() -> (LinSpace, LinSpace) {
    (
        LinSpace::from_i64_rows(&[&[2, 3, 5, 7], &[11, 13, 17, 19]]).expect("independent"),
        LinSpace::from_i64_rows(&[&[23, 29, 31, 37], &[41, 43, 47, 53]]).expect("independent"),
    )
}

/// The printed quadric through `L * M` for [`prime_lines`].
pub fn prime_lines_quadric() -> SparsePoly {
    let terms: [([u32; 4], i64); 10] = [
        ([2, 0, 0, 0], 88128),
        ([1, 1, 0, 0], -89280),
        ([0, 2, 0, 0], -5299632),
        ([1, 0, 1, 0], -817938),
        ([0, 1, 1, 0], 8896641),
        ([0, 0, 2, 0], -1481805),
        ([1, 0, 0, 1], -321510),
        ([0, 1, 0, 1], -1777545),
        ([0, 0, 1, 1], -54250),
        ([0, 0, 0, 2], 116375),
    ];
    SparsePoly::from_terms(4, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))))
        .expect("four variables")
}

/// A line of `P^5` meeting `Delta_3`, cut out by four equations.
pub fn degenerate_line() -> LinSpace {
    let eqs = QMatrix::from_i64_rows(&[
        &[2, -1, 0, 0, 0, 0],
        &[0, 1, 3, 0, -1, 0],
        &[0, 0, 3, -1, 0, 0],
        &[0, 0, 0, 16, -12, -3],
    ])
    .expect("uniform rows");
    LinSpace::from_equations(&eqs).expect("a line")
}

/// Printed equations of the powers of [`degenerate_line`] for `r = 2, 3, 4`.
pub fn degenerate_line_power_equations(r: usize) -> Option<QMatrix> {
    let rows: &[&[i64]] = match r {
        2 => &[
            &[0, 0, 9, -1, 0, 0],
            &[0, 192, 0, 64, -48, -9],
            &[768, 0, 0, 64, -48, -9],
        ],
        3 => &[&[0, 0, 27, -1, 0, 0], &[8, -1, 0, 0, 0, 0]],
        4 => &[&[0, 0, 81, -1, 0, 0], &[16, -1, 0, 0, 0, 0]],
        _ => return None,
    };
    Some(QMatrix::from_i64_rows(rows).expect("uniform rows"))
}

fn run_check(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn check_prime_lines(rng: &mut dyn RngCore) -> Result<(bool, String)> {
    let (l, m) = prime_lines();
    let sampler = ProductSampler::of_linear(&[(l.clone(), 1), (m.clone(), 1)])?;
    let (d, form) = interpolate_hypersurface(&sampler, 3, rng)?;
    let printed = prime_lines_quadric();
    let bracket = quadric_two_lines(&pluecker(&l), &pluecker(&m))?;
    let ok = d == 2 && form.is_proportional_to(&printed) && bracket.is_proportional_to(&printed);
    Ok((ok, format!("interpolated degree {d}: {form}")))
}

fn check_degenerate_line(rng: &mut dyn RngCore) -> Result<(bool, String)> {
    let line = degenerate_line();
    let mut dims = Vec::new();
    let mut ok = true;
    for r in 2..=5 {
        let span = sampled_power_span(&line, r, default_budget(5), rng)?;
        dims.push(span.dim());
        if let Some(eqs) = degenerate_line_power_equations(r) {
            ok &= LinSpace::from_equations(&eqs).is_some_and(|s| s == span);
        } else {
            ok &= span.dim() == 3;
        }
    }
    ok &= dims[1..] == [3, 3, 3];
    Ok((ok, format!("dim L^(*r) for r = 2..5: {dims:?}")))
}

fn check_squared_plane(rng: &mut dyn RngCore) -> Result<(bool, String)> {
    let plane = LinSpace::from_i64_rows(&[
        &[3, 1, 4, 1, 5, 9],
        &[2, 6, 5, 3, 5, 8],
        &[9, 7, 9, 3, 2, 3],
    ])?;
    let sampler = ProductSampler::of_linear(&[(plane.clone(), 2)])?;
    let (d, form) = interpolate_hypersurface(&sampler, 3, rng)?;
    let cubic = cubic_plane_square(&pluecker(&plane))?;
    let ok = d == 3 && form.is_proportional_to(&cubic);
    Ok((ok, format!("interpolated degree {d}, {} terms", form.len())))
}

fn check_reciprocal_plane(rng: &mut dyn RngCore) -> Result<(bool, String)> {
    let plane = LinSpace::from_i64_rows(&[&[1, 2, 3, 5], &[-2, 1, 7, 4], &[3, -4, 1, 6]])?;
    let (d, _) = interpolate_hypersurface(&ReciprocalSampler::new(plane), 4, rng)?;
    let formula = degree_with_reciprocals(&[], &[(2, 1)], 3)?;
    Ok((
        formula.degree == int(d as i64),
        format!("interpolated degree {d}, formula {}", formula.degree),
    ))
}

fn check_segre_deficiency(rng: &mut dyn RngCore) -> Result<(bool, String)> {
    let segre = SegreSampler { a: 2, b: 3 };
    let margins = LinearSampler::new(zero_margin_space(3, 4)?);
    let dim = terracini_dimension(&segre, &margins, rng)?;
    let expected = expected_dimension(5, 5, 0, 11);
    Ok((
        dim == 9 && expected == 10,
        format!("tangent dimension {dim}, expected dimension {expected}"),
    ))
}

fn check_degree_spots(rng: &mut dyn RngCore) -> Result<(bool, String)> {
    let cases: [(&[DimMult], usize, i64); 4] = [
        (&[(1, 1), (1, 1)], 3, 2),
        (&[(2, 2)], 5, 3),
        (&[(1, 1), (1, 1), (1, 1)], 7, 6),
        (&[(1, 4)], 4, 1),
    ];
    let mut ok = true;
    let mut found = Vec::new();
    for (factors, n, want) in cases {
        let closed = degree_linear_products(factors, n)?.degree;
        let fans = degree_via_fans(factors, &[], n, rng)?;
        ok &= closed == int(want) && fans.degree() == &closed;
        found.push(closed.to_string());
    }
    Ok((ok, format!("degrees {}", found.join(", "))))
}

fn check_star() -> Result<(bool, String)> {
    let line = LinSpace::from_i64_rows(&[&[1, 2, 3, 4, 5], &[2, -1, 4, 7, -3]])?;
    let mut points = Vec::new();
    for t in [1, 3, -2, 5, 7] {
        let g = line.generators();
        let coords = (0..5).map(|j| g.get(0, j) + int(t) * g.get(1, j)).collect();
        points.push(PPoint::new(coords)?);
    }
    let w = build_star(&PointSet::new(points)?, &line, 3)?;
    let ok = w.points.len() == 10 && verify_star(&w);
    Ok((ok, format!("{} points in a plane of P^4", w.points.len())))
}

fn check_quadric_symbolic() -> Result<(bool, String)> {
    let e = quadric_symbolic_expansion()?;
    Ok((e.is_zero(), format!("{} terms after expansion", e.len())))
}

/// Runs every reproduction with randomness drawn from `rng`.
pub fn run_suite(rng: &mut dyn RngCore) -> SuiteReport {
    let checks = vec![
        run_check("quadric of two lines in P^3", || check_prime_lines(rng)),
        run_check("powers of a line meeting Delta_3", || check_degenerate_line(rng)),
        run_check("square of a plane in P^5", || check_squared_plane(rng)),
        run_check("reciprocal plane in P^3", || check_reciprocal_plane(rng)),
        run_check("Segre P^2 x P^3 times zero-margin matrices", || check_segre_deficiency(rng)),
        run_check("degree spot values by fans", || check_degree_spots(rng)),
        run_check("star configuration from five points", check_star),
        run_check("bracket quadric expands to zero", check_quadric_symbolic),
    ];
    SuiteReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
