//! Dimension and degree of Hadamard products of generic linear spaces and
//! reciprocal linear spaces: closed forms and the tropical computation
//! they come from.

use rand::RngCore;
use serde::Serialize;

use super::fan::{minkowski_sum, negate_fan, standard_tls, SignedConeFan};
use super::intersect::{stable_mult_origin_generic, StableIntersection, DISPLACEMENT_ATTEMPTS};
use crate::arith::{binomial, factorial, int, multinomial, Rational};
use crate::error::{Error, Result};
use crate::products::span_count;

/// A factor `L^{*r}` given by `(dim L, r)`.
pub type DimMult = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeResult {
    pub dim: usize,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub degree: Rational,
    /// Set when `n` is below the bound where the formula is proven.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

fn check_factors(factors: &[DimMult]) -> Result<()> {
    if let Some(&(m, r)) = factors.iter().find(|&&(m, r)| m == 0 || r == 0) {
        return Err(Error::Invalid(format!(
            "factors need dim >= 1 and multiplicity >= 1, got ({m}, {r})"
        )));
    }
    Ok(())
}

/// `(sum_i m_i, multinomial(m_1, ..., m_r) / prod_k r_k!)`, where each
/// `m_i` is listed with its multiplicity.
fn dimension_and_weight(factors: &[DimMult]) -> (usize, Rational) {
    let parts: Vec<usize> = factors
        .iter()
        .flat_map(|&(m, r)| std::iter::repeat_n(m, r))
        .collect();
    let d = multinomial(&parts);
    let delta: u64 = factors.iter().map(|&(_, r)| factorial(r)).product();
    (
        parts.iter().sum(),
        int(d as i64) / int(delta as i64),
    )
}

/// Automorphism count `prod_k r_k!` of a multiset of factors.
pub fn identifiability_delta(factors: &[DimMult]) -> u64 {
    factors.iter().map(|&(_, r)| factorial(r)).product()
}

fn below_bound_warning(factors: &[DimMult], n: usize) -> Option<String> {
    let bound = span_count(factors).saturating_sub(1);
    ((n as u64) < bound).then(|| {
        format!("n = {n} is below the bound {bound} where the degree formula is proven")
    })
}

/// Dimension and degree of `L_1^{*r_1} * ... * L_k^{*r_k}` for generic
/// linear spaces.
pub fn degree_linear_products(factors: &[DimMult], n: usize) -> Result<DegreeResult> {
    check_factors(factors)?;
    if factors.is_empty() {
        return Err(Error::Invalid("no factors given".into()));
    }
    let (dim, degree) = dimension_and_weight(factors);
    if dim > n {
        return Err(Error::Invalid(format!("product dimension {dim} exceeds n = {n}")));
    }
    Ok(DegreeResult {
        dim,
        degree,
        warning: below_bound_warning(factors, n),
    })
}

/// Dimension and degree when reciprocal linear spaces are also present:
/// `binom(n - m, m~) * d / prod r! * d~ / prod s!`.
pub fn degree_with_reciprocals(
    plain: &[DimMult],
    reciprocal: &[DimMult],
    n: usize,
) -> Result<DegreeResult> {
    check_factors(plain)?;
    check_factors(reciprocal)?;
    if plain.is_empty() && reciprocal.is_empty() {
        return Err(Error::Invalid("no factors given".into()));
    }
    let (m, w) = dimension_and_weight(plain);
    let (mt, wt) = dimension_and_weight(reciprocal);
    if m + mt > n {
        return Err(Error::Invalid(format!(
            "product dimension {} exceeds n = {n}",
            m + mt
        )));
    }
    let all: Vec<DimMult> = plain.iter().chain(reciprocal).copied().collect();
    Ok(DegreeResult {
        dim: m + mt,
        degree: int(binomial(n - m, mt) as i64) * w * wt,
        warning: below_bound_warning(&all, n),
    })
}

/// Every step of the tropical degree computation.
#[derive(Clone, Debug, Serialize)]
pub struct FanTranscript {
    pub n: usize,
    pub delta: u64,
    pub product_fan: SignedConeFan,
    pub complement_fan: SignedConeFan,
    pub intersection: StableIntersection,
}

impl FanTranscript {
    pub fn degree(&self) -> &Rational {
        &self.intersection.multiplicity
    }
}

/// Degree through fans: `Lambda_{m_i}` for each plain factor, `-Lambda`
/// for each reciprocal one, Minkowski sum divided by `prod r! prod s!`,
/// then stable intersection with `Lambda_{n - m - m~}` at the origin.
pub fn degree_via_fans(
    plain: &[DimMult],
    reciprocal: &[DimMult],
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<FanTranscript> {
    check_factors(plain)?;
    check_factors(reciprocal)?;
    let mut fans = Vec::new();
    for &(m, r) in plain {
        let f = standard_tls(m, n)?;
        fans.extend(std::iter::repeat_n(f, r));
    }
    for &(m, s) in reciprocal {
        let f = negate_fan(&standard_tls(m, n)?);
        fans.extend(std::iter::repeat_n(f, s));
    }
    if fans.is_empty() {
        return Err(Error::Invalid("no factors given".into()));
    }
    let delta = identifiability_delta(plain) * identifiability_delta(reciprocal);
    let product_fan = minkowski_sum(&fans, delta)?;
    let complement_fan = standard_tls(n - product_fan.dim, n)?;
    let intersection =
        stable_mult_origin_generic(&product_fan, &complement_fan, rng, DISPLACEMENT_ATTEMPTS)?;
    Ok(FanTranscript {
        n,
        delta,
        product_fan,
        complement_fan,
        intersection,
    })
}
