//! Hadamard products of general varieties: point/tangent samplers,
//! generalized Vandermonde spans, identifiability, Terracini tangent spaces,
//! expected dimension, and interpolation of vanishing forms.

use std::collections::HashMap;

use rand::{Rng, RngCore};

use crate::arith::{binomial, primitive_vector, QMatrix, Rational, SparsePoly};
use crate::error::{Error, Result};
use crate::projective::{
    hadamard_point, point_times_space, random_coefficient, sample_point, LinSpace, PPoint,
    DEFAULT_RETRIES,
};

/// Seeded source of points (and tangent spaces at them) on a variety.
pub trait VarietySampler {
    fn ambient(&self) -> usize;

    /// A point together with the tangent space there.
    fn sample(&self, rng: &mut dyn RngCore) -> Result<(PPoint, LinSpace)>;

    /// A point only; samplers override this when the tangent is expensive.
    fn sample_point(&self, rng: &mut dyn RngCore) -> Result<PPoint> {
        Ok(self.sample(rng)?.0)
    }
}

/// A linear space is its own tangent space.
#[derive(Clone, Debug)]
pub struct LinearSampler {
    pub space: LinSpace,
}

impl LinearSampler {
    pub fn new(space: LinSpace) -> Self {
        LinearSampler { space }
    }
}

impl VarietySampler for LinearSampler {
    fn ambient(&self) -> usize {
        self.space.ambient()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<(PPoint, LinSpace)> {
        Ok((self.sample_point(rng)?, self.space.clone()))
    }

    fn sample_point(&self, rng: &mut dyn RngCore) -> Result<PPoint> {
        sample_point(&self.space, rng, None, DEFAULT_RETRIES)
    }
}

/// Segre embedding of `P^a x P^b` as rank-one `(a+1) x (b+1)` matrices,
/// flattened row by row.
#[derive(Clone, Debug)]
pub struct SegreSampler {
    pub a: usize,
    pub b: usize,
}

impl SegreSampler {
    fn draw(&self, rng: &mut dyn RngCore) -> (Vec<Rational>, Vec<Rational>) {
        loop {
            let u: Vec<Rational> = (0..=self.a).map(|_| random_coefficient(rng)).collect();
            let v: Vec<Rational> = (0..=self.b).map(|_| random_coefficient(rng)).collect();
            if u.iter().any(|x| !num_traits::Zero::is_zero(x))
                && v.iter().any(|x| !num_traits::Zero::is_zero(x))
            {
                return (u, v);
            }
        }
    }

    fn outer(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        u.iter()
            .flat_map(|x| v.iter().map(move |y| x * y))
            .collect()
    }
}

impl VarietySampler for SegreSampler {
    fn ambient(&self) -> usize {
        (self.a + 1) * (self.b + 1) - 1
    }

    /// Tangent at `u v^T` is spanned by `e_i v^T` and `u e_j^T`.
    fn sample(&self, rng: &mut dyn RngCore) -> Result<(PPoint, LinSpace)> {
        let (u, v) = self.draw(rng);
        let unit = |len: usize, i: usize| -> Vec<Rational> {
            (0..len)
                .map(|k| if k == i { crate::arith::int(1) } else { crate::arith::int(0) })
                .collect()
        };
        let mut rows = Vec::new();
        for i in 0..=self.a {
            rows.push(Self::outer(&unit(self.a + 1, i), &v));
        }
        for j in 0..=self.b {
            rows.push(Self::outer(&u, &unit(self.b + 1, j)));
        }
        let tangent = LinSpace::span(&QMatrix::from_rows(rows)?).expect("nonzero rows");
        Ok((PPoint::new(Self::outer(&u, &v))?, tangent))
    }

    fn sample_point(&self, rng: &mut dyn RngCore) -> Result<PPoint> {
        let (u, v) = self.draw(rng);
        PPoint::new(Self::outer(&u, &v))
    }
}

/// Closure of the coordinatewise inverses of the points of a linear space.
#[derive(Clone, Debug)]
pub struct ReciprocalSampler {
    pub space: LinSpace,
}

impl ReciprocalSampler {
    pub fn new(space: LinSpace) -> Self {
        ReciprocalSampler { space }
    }

    fn draw(&self, rng: &mut dyn RngCore) -> Result<PPoint> {
        let n = self.space.ambient();
        sample_point(&self.space, rng, Some(n - 1), DEFAULT_RETRIES)
    }
}

impl VarietySampler for ReciprocalSampler {
    fn ambient(&self) -> usize {
        self.space.ambient()
    }

    /// At `p^{-1}` the tangent is spanned by `g_k * p^{-2}` for the
    /// generators `g_k`, since `d/dt (p + t g)^{-1} = -g * p^{-2}`.
    fn sample(&self, rng: &mut dyn RngCore) -> Result<(PPoint, LinSpace)> {
        let p = self.draw(rng)?;
        let inv = p.reciprocal().expect("all coordinates nonzero");
        let inv_sq: Vec<Rational> = inv.coords().iter().map(|x| x * x).collect();
        let tangent = self.space.generators().scale_columns(&inv_sq)?;
        Ok((inv, LinSpace::span(&tangent).expect("nonzero")))
    }

    fn sample_point(&self, rng: &mut dyn RngCore) -> Result<PPoint> {
        Ok(self.draw(rng)?.reciprocal().expect("all coordinates nonzero"))
    }
}

/// Hadamard product of several varieties. Undefined products are redrawn.
pub struct ProductSampler {
    factors: Vec<Box<dyn VarietySampler>>,
}

impl ProductSampler {
    pub fn new(factors: Vec<Box<dyn VarietySampler>>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::Invalid("a product needs at least one factor".into()));
        };
        let n = first.ambient();
        if let Some(f) = factors.iter().find(|f| f.ambient() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.ambient(),
            });
        }
        Ok(ProductSampler { factors })
    }

    /// `L_1^{*r_1} * ... * L_k^{*r_k}` for linear spaces.
    pub fn of_linear(spaces: &[(LinSpace, usize)]) -> Result<Self> {
        let mut factors: Vec<Box<dyn VarietySampler>> = Vec::new();
        for (space, r) in spaces {
            for _ in 0..*r {
                factors.push(Box::new(LinearSampler::new(space.clone())));
            }
        }
        Self::new(factors)
    }
}

impl VarietySampler for ProductSampler {
    fn ambient(&self) -> usize {
        self.factors[0].ambient()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<(PPoint, LinSpace)> {
        for _ in 0..DEFAULT_RETRIES {
            let (mut p, mut tp) = self.factors[0].sample(rng)?;
            let mut defined = true;
            for f in &self.factors[1..] {
                let (q, tq) = f.sample(rng)?;
                match hadamard_point(&p, &q)? {
                    Some(pq) => {
                        tp = terracini_span(&p, &tp, &q, &tq)?;
                        p = pq;
                    }
                    None => {
                        defined = false;
                        break;
                    }
                }
            }
            if defined {
                return Ok((p, tp));
            }
        }
        Err(Error::RetryBudget(DEFAULT_RETRIES))
    }

    fn sample_point(&self, rng: &mut dyn RngCore) -> Result<PPoint> {
        'draw: for _ in 0..DEFAULT_RETRIES {
            let mut p = self.factors[0].sample_point(rng)?;
            for f in &self.factors[1..] {
                match hadamard_point(&p, &f.sample_point(rng)?)? {
                    Some(pq) => p = pq,
                    None => continue 'draw,
                }
            }
            return Ok(p);
        }
        Err(Error::RetryBudget(DEFAULT_RETRIES))
    }
}

/// `<p * T_q, q * T_p>`, the tangent space of `X * Y` at `p * q`.
pub fn terracini_span(p: &PPoint, tp: &LinSpace, q: &PPoint, tq: &LinSpace) -> Result<LinSpace> {
    if !tp.contains_point(p) {
        return Err(Error::Invalid("p does not lie in T_p".into()));
    }
    if !tq.contains_point(q) {
        return Err(Error::Invalid("q does not lie in T_q".into()));
    }
    let parts: Vec<LinSpace> = [point_times_space(p, tq)?, point_times_space(q, tp)?]
        .into_iter()
        .flatten()
        .collect();
    match parts.as_slice() {
        [] => Err(Error::Invalid("p * q is not defined".into())),
        [one] => Ok(one.clone()),
        [a, b] => a.join(b),
        _ => unreachable!(),
    }
}

/// Dimension of the Terracini span at one random pair of points.
pub fn terracini_dimension(
    x: &dyn VarietySampler,
    y: &dyn VarietySampler,
    rng: &mut dyn RngCore,
) -> Result<usize> {
    for _ in 0..DEFAULT_RETRIES {
        let (p, tp) = x.sample(rng)?;
        let (q, tq) = y.sample(rng)?;
        if hadamard_point(&p, &q)?.is_none() {
            continue;
        }
        return Ok(terracini_span(&p, &tp, &q, &tq)?.dim());
    }
    Err(Error::RetryBudget(DEFAULT_RETRIES))
}

/// `min(dim X + dim Y - dim H, dim G)`.
pub fn expected_dimension(dim_x: usize, dim_y: usize, dim_h: usize, dim_g: usize) -> usize {
    (dim_x + dim_y).saturating_sub(dim_h).min(dim_g)
}

/// Exponent vectors of all monomials of degree `d` in `nvars` variables, in
/// lexicographically decreasing order (`x_0^d` first).
pub fn monomial_exponents(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, d, &mut Vec::new(), &mut out);
    }
    out
}

fn hadamard_monomial(gens: &QMatrix, exps: &[u32]) -> Vec<Rational> {
    (0..gens.cols())
        .map(|j| {
            exps.iter()
                .enumerate()
                .map(|(i, &e)| num_traits::Pow::pow(gens.get(i, j), e))
                .product()
        })
        .collect()
}

/// Rows are Hadamard products with one factor `prod_i g_i^{*e_i}` (with
/// `|e| = r_k`) per entry `(L_k, r_k)`, over all such choices. There are
/// `prod_k binom(m_k + r_k, r_k)` rows.
pub fn gen_vandermonde(spaces: &[(LinSpace, usize)]) -> Result<QMatrix> {
    let Some((first, _)) = spaces.first() else {
        return Err(Error::Invalid("empty multiset of spaces".into()));
    };
    let cols = first.ambient() + 1;
    let mut rows: Vec<Vec<Rational>> = vec![vec![crate::arith::int(1); cols]];
    for (space, r) in spaces {
        if space.ambient() + 1 != cols {
            return Err(Error::DimensionMismatch {
                expected: cols - 1,
                found: space.ambient(),
            });
        }
        if *r == 0 {
            return Err(Error::Invalid("multiplicities must be at least 1".into()));
        }
        let gens = space.generators();
        let block: Vec<Vec<Rational>> = monomial_exponents(gens.rows(), *r as u32)
            .iter()
            .map(|e| hadamard_monomial(gens, e))
            .collect();
        rows = rows
            .iter()
            .flat_map(|acc| {
                block
                    .iter()
                    .map(move |b| acc.iter().zip(b).map(|(x, y)| x * y).collect())
            })
            .collect();
    }
    QMatrix::from_rows_with_cols(rows, cols)
}

/// `prod_k binom(m_k + r_k, r_k)`, saturating.
pub fn span_count(dims_mults: &[(usize, usize)]) -> u64 {
    dims_mults
        .iter()
        .fold(1u64, |acc, &(m, r)| acc.saturating_mul(binomial(m + r, r)))
}

/// `min(prod_k binom(m_k + r_k, r_k) - 1, n)`.
pub fn span_dimension_formula(dims_mults: &[(usize, usize)], n: usize) -> usize {
    let count = span_count(dims_mults) - 1;
    count.min(n as u64) as usize
}

/// Two factor multisets with the same Hadamard product.
#[derive(Clone, Debug)]
pub struct Collision {
    pub first: Vec<PPoint>,
    pub second: Vec<PPoint>,
    pub product: PPoint,
}

#[derive(Clone, Debug)]
pub struct IdentifiabilityReport {
    pub trials: usize,
    /// Whether `n >= binom(m + r, r) - 1`, where distinctness is guaranteed.
    pub in_regime: bool,
    pub collision: Option<Collision>,
}

/// Size of the pool of reusable factors in [`identifiability_check`].
pub const FACTOR_POOL: usize = 16;

/// Samples `trials` unordered `r`-tuples of points of `space` and checks
/// that different tuples never give the same product. Factors are drawn half
/// the time from a small fixed pool, so identical and overlapping tuples
/// recur; only products from genuinely different multisets count.
pub fn identifiability_check(
    space: &LinSpace,
    r: usize,
    trials: usize,
    rng: &mut dyn RngCore,
) -> Result<IdentifiabilityReport> {
    if r == 0 {
        return Err(Error::Invalid("r must be at least 1".into()));
    }
    let n = space.ambient();
    let in_regime = (n as u64) + 1 >= binomial(space.dim() + r, r);
    let pool = (0..FACTOR_POOL)
        .map(|_| sample_point(space, rng, None, DEFAULT_RETRIES))
        .collect::<Result<Vec<_>>>()?;
    let mut seen: HashMap<Vec<Rational>, Vec<Vec<Rational>>> = HashMap::new();
    for _ in 0..trials {
        let mut factors = Vec::with_capacity(r);
        for _ in 0..r {
            if rng.gen_bool(0.5) {
                factors.push(pool[rng.gen_range(0..FACTOR_POOL)].clone());
            } else {
                factors.push(sample_point(space, rng, None, DEFAULT_RETRIES)?);
            }
        }
        let Some(product) = crate::projective::hadamard_all(&factors)? else {
            continue;
        };
        let mut key: Vec<Vec<Rational>> = factors.iter().map(PPoint::normalized).collect();
        key.sort();
        match seen.get(&product.normalized()) {
            Some(prev) if *prev != key => {
                let to_points = |v: &Vec<Vec<Rational>>| {
                    v.iter().map(|c| PPoint::new(c.clone()).expect("nonzero")).collect()
                };
                return Ok(IdentifiabilityReport {
                    trials,
                    in_regime,
                    collision: Some(Collision {
                        first: to_points(prev),
                        second: to_points(&key),
                        product,
                    }),
                });
            }
            Some(_) => {}
            None => {
                seen.insert(product.normalized(), key);
            }
        }
    }
    Ok(IdentifiabilityReport {
        trials,
        in_regime,
        collision: None,
    })
}

/// Oversampling margin for interpolation: rows = monomials + ceil(monomials / 4).
pub fn interpolation_rows(monomials: usize) -> usize {
    monomials + monomials.div_ceil(4)
}

/// Basis of the degree-`d` forms vanishing on every sample, as primitive
/// integer polynomials. Samples are scaled to coprime integer vectors first,
/// which keeps the evaluation matrix integral.
pub fn interpolate_forms(
    sampler: &dyn VarietySampler,
    d: u32,
    rng: &mut dyn RngCore,
) -> Result<Vec<SparsePoly>> {
    if d == 0 {
        return Err(Error::Invalid("interpolation degree must be at least 1".into()));
    }
    let nvars = sampler.ambient() + 1;
    let monomials = monomial_exponents(nvars, d);
    let rows = (0..interpolation_rows(monomials.len()))
        .map(|_| {
            let p = sampler.sample_point(rng)?;
            let x = primitive_vector(p.coords());
            Ok(monomials
                .iter()
                .map(|e| {
                    x.iter()
                        .zip(e)
                        .map(|(xi, &k)| num_traits::Pow::pow(xi, k))
                        .product()
                })
                .collect())
        })
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    let eval = QMatrix::from_rows_with_cols(rows, monomials.len())?;
    Ok(eval
        .nullspace()
        .into_iter()
        .map(|v| {
            SparsePoly::from_terms(nvars, monomials.iter().cloned().zip(v))
                .expect("exponent length matches")
                .primitive()
        })
        .collect())
}

/// Smallest `d <= dmax` with exactly one vanishing form of degree `d`.
pub fn interpolate_hypersurface(
    sampler: &dyn VarietySampler,
    dmax: u32,
    rng: &mut dyn RngCore,
) -> Result<(u32, SparsePoly)> {
    for d in 1..=dmax {
        let mut forms = interpolate_forms(sampler, d, rng)?;
        match forms.len() {
            0 => continue,
            1 => return Ok((d, forms.remove(0))),
            k => {
                return Err(Error::NotHypersurface {
                    degree: d as usize,
                    forms: k,
                })
            }
        }
    }
    Err(Error::NoFormFound(dmax as usize))
}

/// True iff every form evaluates to exactly zero at `trials` fresh samples.
pub fn forms_vanish(
    forms: &[SparsePoly],
    sampler: &dyn VarietySampler,
    trials: usize,
    rng: &mut dyn RngCore,
) -> Result<bool> {
    for _ in 0..trials {
        let p = sampler.sample_point(rng)?;
        for f in forms {
            if !num_traits::Zero::is_zero(&f.eval(p.coords())?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The space of `rows x cols` matrices whose row and column sums all vanish.
pub fn zero_margin_space(rows: usize, cols: usize) -> Result<LinSpace> {
    let mut eqs = Vec::new();
    for i in 0..rows {
        eqs.push(
            (0..rows * cols)
                .map(|k| crate::arith::int((k / cols == i) as i64))
                .collect(),
        );
    }
    for j in 0..cols {
        eqs.push(
            (0..rows * cols)
                .map(|k| crate::arith::int((k % cols == j) as i64))
                .collect(),
        );
    }
    LinSpace::from_equations(&QMatrix::from_rows(eqs)?)
        .ok_or_else(|| Error::Invalid("no nonzero matrix has zero margins".into()))
}
