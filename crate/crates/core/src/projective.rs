//! Projective points and linear spaces, Plücker coordinates, and the
//! elementary Hadamard (coordinatewise) products.
//!
//! A point of `P^n` is a nonzero rational vector of length `n + 1` up to
//! scaling; a linear space is the row space of a full-row-rank generator
//! matrix. Equality in both cases is tested by rank, never by picking a
//! normal form.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use crate::arith::{IntMatrix, QMatrix, Rational};
use crate::error::{Error, Result};

/// Sampling coefficients are drawn uniformly from `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub const SAMPLE_RANGE: i64 = 1_000_000;

/// Default number of redraws before [`sample_point`] gives up.
pub const DEFAULT_RETRIES: usize = 64;

/// A point of projective space.
#[derive(Clone, Debug)]
pub struct PPoint {
    coords: Vec<Rational>,
}

impl PPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPoint);
        }
        Ok(PPoint { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| crate::arith::int(c)).collect())
    }

    /// The all-ones point, identity for the Hadamard product.
    pub fn ones(n: usize) -> Self {
        PPoint {
            coords: vec![Rational::one(); n + 1],
        }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `n` for a point of `P^n`.
    pub fn ambient(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn nonzero_count(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }

    /// Smallest `i` with the point in `Delta_i`: one less than the number of
    /// nonzero coordinates.
    pub fn delta_index(&self) -> usize {
        self.nonzero_count() - 1
    }

    /// Representative scaled so that its first nonzero coordinate is 1.
    pub fn normalized(&self) -> Vec<Rational> {
        let lead = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("points are nonzero")
            .clone();
        self.coords.iter().map(|c| c / &lead).collect()
    }

    /// Coordinatewise inverse, if no coordinate vanishes.
    pub fn reciprocal(&self) -> Option<PPoint> {
        if self.coords.iter().any(Zero::is_zero) {
            return None;
        }
        Some(PPoint {
            coords: self.coords.iter().map(Rational::recip).collect(),
        })
    }

    /// `p * q`, or `None` when every coordinate product vanishes.
    pub fn hadamard(&self, other: &PPoint) -> Result<Option<PPoint>> {
        hadamard_point(self, other)
    }
}

impl PartialEq for PPoint {
    fn eq(&self, other: &Self) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let n = self.coords.len();
        (0..n).all(|i| {
            ((i + 1)..n).all(|j| {
                &self.coords[i] * &other.coords[j] == &self.coords[j] * &other.coords[i]
            })
        })
    }
}

impl Eq for PPoint {}

impl Hash for PPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized().hash(state);
    }
}

/// Hadamard product of two points; `Ok(None)` means "not defined".
pub fn hadamard_point(p: &PPoint, q: &PPoint) -> Result<Option<PPoint>> {
    if p.coords.len() != q.coords.len() {
        return Err(Error::DimensionMismatch {
            expected: p.coords.len(),
            found: q.coords.len(),
        });
    }
    let coords: Vec<Rational> = p.coords.iter().zip(&q.coords).map(|(a, b)| a * b).collect();
    Ok(PPoint::new(coords).ok())
}

/// Hadamard product of a nonempty list of points.
pub fn hadamard_all<'a>(points: impl IntoIterator<Item = &'a PPoint>) -> Result<Option<PPoint>> {
    let mut it = points.into_iter();
    let Some(first) = it.next() else {
        return Err(Error::Invalid("empty Hadamard product".into()));
    };
    let mut acc = first.clone();
    for p in it {
        match hadamard_point(&acc, p)? {
            Some(next) => acc = next,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

/// Projective linear space, stored as a full-row-rank generator matrix.
#[derive(Clone, Debug)]
pub struct LinSpace {
    gens: QMatrix,
}

impl LinSpace {
    /// Wraps a generator matrix, rejecting rank-deficient input.
    pub fn new(gens: QMatrix) -> Result<Self> {
        let rank = gens.rank();
        if gens.rows() == 0 || rank < gens.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: gens.rows(),
            });
        }
        Ok(LinSpace { gens })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(QMatrix::from_i64_rows(rows)?)
    }

    /// Row space of an arbitrary matrix, keeping the first maximal independent
    /// subset of its rows. `None` if every row is zero.
    pub fn span(rows: &QMatrix) -> Option<Self> {
        if rows.rows() == 0 {
            return None;
        }
        let independent = rows.transpose().rref().pivots;
        if independent.is_empty() {
            return None;
        }
        Some(LinSpace {
            gens: rows.select_rows(&independent),
        })
    }

    pub fn span_of_points(points: &[PPoint]) -> Option<Self> {
        let rows: Vec<Vec<Rational>> = points.iter().map(|p| p.coords.clone()).collect();
        Self::span(&QMatrix::from_rows(rows).ok()?)
    }

    /// Linear space cut out by `eqs * x = 0`; `None` if only the zero vector
    /// solves it.
    pub fn from_equations(eqs: &QMatrix) -> Option<Self> {
        let basis = eqs.nullspace();
        if basis.is_empty() {
            return None;
        }
        Some(LinSpace {
            gens: QMatrix::from_rows(basis).ok()?,
        })
    }

    pub fn whole_space(n: usize) -> Self {
        LinSpace {
            gens: QMatrix::identity(n + 1),
        }
    }

    pub fn generators(&self) -> &QMatrix {
        &self.gens
    }

    pub fn generator_points(&self) -> Vec<PPoint> {
        self.gens
            .row_iter()
            .map(|r| PPoint { coords: r.to_vec() })
            .collect()
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.gens.rows() - 1
    }

    pub fn ambient(&self) -> usize {
        self.gens.cols() - 1
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if self.ambient() != n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient(),
                found: n,
            });
        }
        Ok(())
    }

    pub fn contains_point(&self, p: &PPoint) -> bool {
        if p.ambient() != self.ambient() {
            return false;
        }
        let single = QMatrix::from_rows(vec![p.coords.clone()]).expect("one row");
        let stacked = self.gens.vstack(&single).expect("same width");
        stacked.rank() == self.gens.rows()
    }

    pub fn contains(&self, other: &LinSpace) -> bool {
        if other.ambient() != self.ambient() {
            return false;
        }
        let stacked = self.gens.vstack(&other.gens).expect("same width");
        stacked.rank() == self.gens.rows()
    }

    /// Rows of a matrix whose kernel is this space (one row per equation).
    pub fn equations(&self) -> QMatrix {
        let basis = self.gens.nullspace();
        QMatrix::from_rows_with_cols(basis, self.gens.cols()).expect("uniform rows")
    }

    /// Intersection via the stacked equations of both spaces.
    pub fn intersect(&self, other: &LinSpace) -> Result<Option<LinSpace>> {
        self.check_ambient(other.ambient())?;
        let eqs = self.equations().vstack(&other.equations())?;
        if eqs.rows() == 0 {
            return Ok(Some(self.clone()));
        }
        Ok(Self::from_equations(&eqs))
    }

    /// Intersection of several spaces; `None` when empty.
    pub fn intersect_all(spaces: &[&LinSpace]) -> Result<Option<LinSpace>> {
        let Some((first, rest)) = spaces.split_first() else {
            return Err(Error::Invalid("empty intersection".into()));
        };
        let mut eqs = first.equations();
        for s in rest {
            first.check_ambient(s.ambient())?;
            eqs = eqs.vstack(&s.equations())?;
        }
        if eqs.rows() == 0 {
            return Ok(Some((*first).clone()));
        }
        Ok(Self::from_equations(&eqs))
    }

    pub fn join(&self, other: &LinSpace) -> Result<LinSpace> {
        self.check_ambient(other.ambient())?;
        let stacked = self.gens.vstack(&other.gens)?;
        Ok(Self::span(&stacked).expect("nonempty"))
    }

    pub fn pluecker(&self) -> PlueckerVector {
        pluecker(self)
    }
}

impl PartialEq for LinSpace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient() == other.ambient()
            && self.dim() == other.dim()
            && self.contains(other)
    }
}

impl Eq for LinSpace {}

/// `p * L`: scale column `j` of the generators by `p_j`. `None` when the
/// result is empty (every scaled generator vanishes).
pub fn point_times_space(p: &PPoint, space: &LinSpace) -> Result<Option<LinSpace>> {
    space.check_ambient(p.ambient())?;
    let scaled = space.gens.scale_columns(&p.coords)?;
    Ok(LinSpace::span(&scaled))
}

/// The line through two distinct points.
pub fn line_through(p: &PPoint, q: &PPoint) -> Result<LinSpace> {
    if p.ambient() != q.ambient() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient(),
            found: q.ambient(),
        });
    }
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    LinSpace::new(QMatrix::from_rows(vec![p.coords.clone(), q.coords.clone()])?)
}

/// Uniform integer in `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub fn random_coefficient(rng: &mut dyn RngCore) -> Rational {
    crate::arith::int(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE))
}

/// Random point of `space`: a combination of the generators with integer
/// coefficients in `[-SAMPLE_RANGE, SAMPLE_RANGE]`. With `avoid = Some(i)`,
/// redraws until the point lies outside `Delta_i`, giving up after
/// `retries` attempts.
pub fn sample_point(
    space: &LinSpace,
    rng: &mut dyn RngCore,
    avoid: Option<usize>,
    retries: usize,
) -> Result<PPoint> {
    for _ in 0..retries.max(1) {
        let coeffs: Vec<Rational> = (0..space.gens.rows())
            .map(|_| random_coefficient(rng))
            .collect();
        let coords: Vec<Rational> = (0..space.gens.cols())
            .map(|j| {
                coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| c * space.gens.get(i, j))
                    .sum()
            })
            .collect();
        let Ok(p) = PPoint::new(coords) else {
            continue;
        };
        match avoid {
            Some(i) if p.delta_index() <= i => continue,
            _ => return Ok(p),
        }
    }
    Err(Error::RetryBudget(retries))
}

/// Maximal minors of a generator matrix, keyed by sorted column tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerVector {
    n: usize,
    m: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

impl PlueckerVector {
    /// Builds a Plücker vector from explicit entries. Every sorted
    /// `(m+1)`-subset of `0..=n` must be present and at least one entry
    /// must be nonzero.
    pub fn from_entries(n: usize, m: usize, entries: BTreeMap<Vec<usize>, Rational>) -> Result<Self> {
        let expected = crate::arith::binomial(n + 1, m + 1) as usize;
        if entries.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: entries.len(),
            });
        }
        for key in entries.keys() {
            if key.len() != m + 1 || !key.windows(2).all(|w| w[0] < w[1]) || key[m] > n {
                return Err(Error::Invalid(format!("bad Plücker index {key:?}")));
            }
        }
        if entries.values().all(Zero::is_zero) {
            return Err(Error::ZeroPoint);
        }
        Ok(PlueckerVector { n, m, entries })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.entries
    }

    /// Bracket `[i_0 ... i_m]` for indices in any order: sorting contributes
    /// the sign of the permutation and a repeated index gives zero.
    pub fn get(&self, indices: &[usize]) -> Result<Rational> {
        if indices.len() != self.m + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.m + 1,
                found: indices.len(),
            });
        }
        if let Some(&bad) = indices.iter().find(|&&i| i > self.n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                max: self.n,
            });
        }
        match sort_with_sign(indices) {
            None => Ok(Rational::zero()),
            Some((sorted, negative)) => {
                let v = self.entries[&sorted].clone();
                Ok(if negative { -v } else { v })
            }
        }
    }

    /// Bracket of a line, `[i j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Result<Rational> {
        self.get(&[i, j])
    }

    /// True if no coordinate vanishes. For a line this is exactly
    /// `L ∩ Delta_{n-2} = ∅`.
    pub fn all_nonzero(&self) -> bool {
        self.entries.values().all(|v| !v.is_zero())
    }

    pub fn is_proportional_to(&self, other: &PlueckerVector) -> bool {
        if self.n != other.n || self.m != other.m {
            return false;
        }
        let a: Vec<&Rational> = self.entries.values().collect();
        let b: Vec<&Rational> = other.entries.values().collect();
        (0..a.len()).all(|i| ((i + 1)..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
    }
}

/// Sorts `indices`, returning whether an odd permutation was needed, or
/// `None` if an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut negative = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                negative = !negative;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

/// All maximal minors of the generator matrix.
pub fn pluecker(space: &LinSpace) -> PlueckerVector {
    let n = space.ambient();
    let m = space.dim();
    let entries = (0..=n)
        .combinations(m + 1)
        .map(|cols| {
            let det = space.gens.select_columns(&cols).det().expect("square");
            (cols, det)
        })
        .collect();
    PlueckerVector { n, m, entries }
}

/// Vertical concatenation of two toric exponent matrices. Each input must
/// have constant column sums.
pub fn toric_concat(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            found: b.cols(),
        });
    }
    for (name, m) in [("first", a), ("second", b)] {
        let sums = m.column_sums();
        if !sums.iter().all_equal() {
            return Err(Error::Invalid(format!(
                "{name} matrix has non-constant column sums {:?}",
                sums.iter().map(BigInt::to_string).collect::<Vec<_>>()
            )));
        }
    }
    a.vstack(b)
}
