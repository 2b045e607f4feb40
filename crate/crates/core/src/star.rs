//! Square-free Hadamard powers of finite point sets and star configurations
//! on powers of a line.

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::line_powers::line_power;
use crate::projective::{hadamard_all, point_times_space, LinSpace, PPoint};

/// Finite set of pairwise distinct projective points in a common `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<PPoint>,
}

impl PointSet {
    /// Rejects duplicates and mixed ambient dimensions.
    pub fn new(points: Vec<PPoint>) -> Result<Self> {
        if let Some(first) = points.first() {
            if let Some(p) = points.iter().find(|p| p.ambient() != first.ambient()) {
                return Err(Error::DimensionMismatch {
                    expected: first.ambient(),
                    found: p.ambient(),
                });
            }
        }
        let mut seen = HashSet::new();
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(p.clone()) {
                return Err(Error::Invalid(format!("point {i} repeats an earlier point")));
            }
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[PPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Set equality up to projective equivalence.
    pub fn same_points(&self, other: &PointSet) -> bool {
        let a: HashSet<&PPoint> = self.points.iter().collect();
        let b: HashSet<&PPoint> = other.points.iter().collect();
        a == b
    }
}

/// A point of a square-free power together with the first index subset
/// that produced it.
#[derive(Clone, Debug)]
pub struct LabeledPoint {
    pub subset: Vec<usize>,
    pub point: PPoint,
}

/// Products over all `r`-subsets of `z`, deduplicated, each labeled by the
/// first subset (in lexicographic order) giving it. Undefined products are
/// dropped.
pub fn squarefree_power_labeled(z: &PointSet, r: usize) -> Result<Vec<LabeledPoint>> {
    if r > z.len() {
        return Err(Error::Invalid(format!(
            "square-free power r = {r} exceeds |Z| = {}",
            z.len()
        )));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if r == 0 {
        return Ok(out);
    }
    for subset in (0..z.len()).combinations(r) {
        let Some(p) = hadamard_all(subset.iter().map(|&i| &z.points[i]))? else {
            continue;
        };
        if seen.insert(p.clone()) {
            out.push(LabeledPoint { subset, point: p });
        }
    }
    Ok(out)
}

pub fn squarefree_power(z: &PointSet, r: usize) -> Result<PointSet> {
    let points = squarefree_power_labeled(z, r)?
        .into_iter()
        .map(|lp| lp.point)
        .collect();
    Ok(PointSet { points })
}

/// A candidate star configuration: hyperplanes `H_i` of the ambient `M`
/// and the points claimed to be their `r`-fold intersections.
#[derive(Clone, Debug)]
pub struct StarWitness {
    pub ambient: LinSpace,
    pub hyperplanes: Vec<LinSpace>,
    pub points: PointSet,
    /// Index subset of `Z` that produced each point.
    pub subsets: Vec<Vec<usize>>,
}

impl StarWitness {
    pub fn r(&self) -> usize {
        self.ambient.dim()
    }
}

/// Builds `M = L^{*r}`, `H_i = p_i * L^{*(r-1)}` and the square-free power,
/// after checking that `Z` lies on the line, no bracket of `L` vanishes and
/// no point of `Z` has a zero coordinate.
pub fn build_star(z: &PointSet, line: &LinSpace, r: usize) -> Result<StarWitness> {
    if line.dim() != 1 {
        return Err(Error::NotALine {
            rows: line.generators().rows(),
        });
    }
    let n = line.ambient();
    if r == 0 || r > z.len().min(n) {
        return Err(Error::Invalid(format!(
            "need 1 <= r <= min(|Z|, n) = {}, got r = {r}",
            z.len().min(n)
        )));
    }
    for (i, p) in z.points.iter().enumerate() {
        if p.ambient() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.ambient(),
            });
        }
        if !line.contains_point(p) {
            return Err(Error::Hypothesis(format!("point {i} does not lie on L")));
        }
    }
    let pl = line.pluecker();
    if let Some((idx, _)) = pl.entries().iter().find(|(_, v)| num_traits::Zero::is_zero(*v)) {
        return Err(Error::Hypothesis(format!(
            "L ∩ Δ_{{n-2}} ≠ ∅: bracket [{}{}] vanishes",
            idx[0], idx[1]
        )));
    }
    for (i, p) in z.points.iter().enumerate() {
        if p.nonzero_count() <= n {
            return Err(Error::Hypothesis(format!(
                "Z ∩ Δ_{{n-1}} ≠ ∅: point {i} has a zero coordinate"
            )));
        }
    }

    let ambient = line_power(line, r)?;
    let base = line_power(line, r - 1)?;
    let hyperplanes = z
        .points
        .iter()
        .map(|p| point_times_space(p, &base).map(|h| h.expect("all-nonzero point")))
        .collect::<Result<Vec<_>>>()?;
    let labeled = squarefree_power_labeled(z, r)?;
    Ok(StarWitness {
        ambient,
        hyperplanes,
        subsets: labeled.iter().map(|lp| lp.subset.clone()).collect(),
        points: PointSet {
            points: labeled.into_iter().map(|lp| lp.point).collect(),
        },
    })
}

/// Outcome of a general-position check. When `holds` is false, `violation`
/// names the first offending index tuple and the dimension found there
/// (`None` meaning the intersection is empty).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPosition {
    pub holds: bool,
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub expected_dim: Option<usize>,
    pub found_dim: Option<usize>,
}

/// Checks that every `j`-fold intersection of the hyperplanes has
/// dimension `r - j` for `j <= r` and that every `(r+1)`-fold intersection
/// is empty, where `r = dim M`.
pub fn verify_general_position(hyperplanes: &[LinSpace], ambient: &LinSpace) -> Result<GeneralPosition> {
    let r = ambient.dim();
    for (i, h) in hyperplanes.iter().enumerate() {
        if h.ambient() != ambient.ambient() {
            return Err(Error::DimensionMismatch {
                expected: ambient.ambient(),
                found: h.ambient(),
            });
        }
        if r == 0 || h.dim() != r - 1 || !ambient.contains(h) {
            return Err(Error::Invalid(format!(
                "hyperplane {i} is not a codimension-one subspace of M"
            )));
        }
    }
    let m = hyperplanes.len();
    for j in 1..=(r + 1).min(m) {
        let expected_dim = r.checked_sub(j);
        for tuple in (0..m).combinations(j) {
            let spaces: Vec<&LinSpace> = tuple.iter().map(|&i| &hyperplanes[i]).collect();
            let found_dim = LinSpace::intersect_all(&spaces)?.map(|s| s.dim());
            if found_dim != expected_dim {
                return Ok(GeneralPosition {
                    holds: false,
                    violation: Some(Violation {
                        indices: tuple,
                        expected_dim,
                        found_dim,
                    }),
                });
            }
        }
    }
    Ok(GeneralPosition {
        holds: true,
        violation: None,
    })
}

/// True iff the hyperplanes are in linear general position in `M` and the
/// witness points are exactly the `r`-fold intersections.
pub fn verify_star(w: &StarWitness) -> bool {
    match verify_general_position(&w.hyperplanes, &w.ambient) {
        Ok(gp) if gp.holds => {}
        _ => return false,
    }
    let r = w.r();
    let mut corners = Vec::new();
    for tuple in (0..w.hyperplanes.len()).combinations(r) {
        let spaces: Vec<&LinSpace> = tuple.iter().map(|&i| &w.hyperplanes[i]).collect();
        match LinSpace::intersect_all(&spaces) {
            Ok(Some(s)) if s.dim() == 0 => corners.push(s.generator_points().remove(0)),
            _ => return false,
        }
    }
    let corners = match PointSet::new(corners) {
        Ok(c) => c,
        Err(_) => return false,
    };
    corners.same_points(&w.points) && corners.len() == w.points.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::projective::{line_through, sample_point, DEFAULT_RETRIES};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(c: &[i64]) -> PPoint {
        PPoint::from_i64(c).unwrap()
    }

    fn collinear(line: &LinSpace, m: usize, seed: u64) -> PointSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = line.ambient();
        let pts = (0..m)
            .map(|_| sample_point(line, &mut rng, Some(n - 1), DEFAULT_RETRIES).unwrap())
            .collect();
        PointSet::new(pts).unwrap()
    }

    #[test]
    fn duplicates_are_rejected() {
        assert!(PointSet::new(vec![pt(&[1, 2]), pt(&[2, 4])]).is_err());
    }

    #[test]
    fn small_squarefree_powers() {
        let z = PointSet::new(vec![pt(&[1, 2, 3]), pt(&[4, 5, 6])]).unwrap();
        let sq = squarefree_power(&z, 2).unwrap();
        assert_eq!(sq.points(), &[pt(&[4, 10, 18])]);
        assert!(squarefree_power(&z, 3).is_err());
        let undefined = PointSet::new(vec![pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert!(squarefree_power(&undefined, 2).unwrap().is_empty());
    }

    #[test]
    fn plane_star_with_four_lines() {
        let line = LinSpace::from_i64_rows(&[&[1, 2, 3], &[2, -1, 5]]).unwrap();
        let z = collinear(&line, 4, 5);
        let w = build_star(&z, &line, 2).unwrap();
        assert_eq!(w.ambient, LinSpace::whole_space(2));
        assert_eq!(w.hyperplanes.len(), 4);
        assert_eq!(w.points.len(), 6);
        assert!(verify_star(&w));
    }

    #[test]
    fn five_points_cubed_in_p4() {
        let line = LinSpace::from_i64_rows(&[&[1, 2, 3, 4, 5], &[7, -3, 2, 9, -4]]).unwrap();
        let z = collinear(&line, 5, 9);
        let w = build_star(&z, &line, 3).unwrap();
        assert_eq!(w.points.len() as u64, binomial(5, 3));
        assert!(verify_star(&w));
    }

    #[test]
    fn m_equal_r_gives_single_point() {
        let line = LinSpace::from_i64_rows(&[&[1, 2, 3], &[2, -1, 5]]).unwrap();
        let z = collinear(&line, 2, 1);
        let w = build_star(&z, &line, 2).unwrap();
        assert_eq!(w.points.len(), 1);
        assert!(verify_star(&w));
    }

    #[test]
    fn replaced_point_fails_verification() {
        let line = LinSpace::from_i64_rows(&[&[1, 2, 3], &[2, -1, 5]]).unwrap();
        let z = collinear(&line, 4, 5);
        let mut w = build_star(&z, &line, 2).unwrap();
        let mut pts = w.points.points().to_vec();
        pts[0] = pt(&[17, -23, 101]);
        w.points = PointSet::new(pts).unwrap();
        assert!(!verify_star(&w));
    }

    #[test]
    fn hypothesis_failures_are_named() {
        let line = LinSpace::from_i64_rows(&[&[1, 2, 3], &[2, -1, 5]]).unwrap();
        // [1:-8:-1] is on the line and has no zero; [0:5:1] = 2*row0 - row1 has one.
        let z = PointSet::new(vec![pt(&[0, 5, 1]), pt(&[3, 1, 8])]).unwrap();
        let err = build_star(&z, &line, 2).unwrap_err();
        assert!(matches!(&err, Error::Hypothesis(msg) if msg.contains("point 0")), "{err}");

        let bad_line = line_through(&pt(&[1, 0, 0]), &pt(&[0, 1, 1])).unwrap();
        let z = PointSet::new(vec![pt(&[1, 1, 1]), pt(&[1, 2, 2])]).unwrap();
        let err = build_star(&z, &bad_line, 2).unwrap_err();
        assert!(matches!(&err, Error::Hypothesis(msg) if msg.contains("[12]")), "{err}");
    }

    #[test]
    fn line_arrangements_in_the_plane() {
        let m = LinSpace::whole_space(2);
        let l = |a: &[i64], b: &[i64]| LinSpace::from_i64_rows(&[a, b]).unwrap();
        let two = [l(&[1, 0, 0], &[0, 1, 0]), l(&[1, 0, 0], &[0, 0, 1])];
        assert!(verify_general_position(&two, &m).unwrap().holds);
        let concurrent = [
            l(&[1, 0, 0], &[0, 1, 0]),
            l(&[1, 0, 0], &[0, 0, 1]),
            l(&[1, 0, 0], &[0, 1, 1]),
        ];
        let gp = verify_general_position(&concurrent, &m).unwrap();
        assert!(!gp.holds);
        assert_eq!(gp.violation.unwrap().indices, vec![0, 1, 2]);
        let point = LinSpace::from_i64_rows(&[&[1, 0, 0]]).unwrap();
        assert!(verify_general_position(&[point], &m).is_err());
    }
}
