//! Exact arithmetic: rationals, dense rational matrices, integer matrices
//! with Smith normal form, and sparse multivariate polynomials.
//!
//! Nothing in this crate touches floating point. Every "is zero" question is
//! answered exactly, which is what makes rank and nullspace computations
//! meaningful for the geometric routines built on top.

mod int_matrix;
mod matrix;
mod poly;

pub use int_matrix::IntMatrix;
pub use matrix::{QMatrix, Rref};
pub use poly::SparsePoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Invalid(format!("not a rational: {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Invalid(format!("not a rational: {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `(k_1 + ... + k_r)! / (k_1! ... k_r!)`.
pub fn multinomial(parts: &[usize]) -> u64 {
    let mut total = 0;
    let mut acc = 1;
    for &k in parts {
        total += k;
        acc *= binomial(total, k);
    }
    acc
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Rescales a vector to coprime integers whose first nonzero entry is
/// positive. The zero vector is returned unchanged.
pub fn primitive_vector(v: &[Rational]) -> Vec<Rational> {
    let den = common_denominator(v.iter());
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(&x / &g * &sign))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 3 / 9 ").unwrap(), rat(1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn display_round_trips() {
        for q in [rat(-3, 2), int(5), rat(0, 7)] {
            assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
        }
        assert_eq!(int(2).to_string(), "2");
        assert_eq!(rat(-1, 3).to_string(), "-1/3");
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(factorial(5), 120);
        assert_eq!(multinomial(&[1, 1, 1]), 6);
        assert_eq!(multinomial(&[2, 2]), 6);
        assert_eq!(multinomial(&[3]), 1);
    }

    #[test]
    fn primitive_vector_clears_denominators_and_content() {
        let v = [rat(-1, 2), rat(3, 4), int(0)];
        assert_eq!(primitive_vector(&v), vec![int(2), int(-3), int(0)]);
    }
}
