//! Stable intersection multiplicity at the origin by the fan displacement
//! rule: displace one fan by a generic `v` and add up the transverse
//! meeting points.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{seq::SliceRandom, Rng, RngCore};
use serde::Serialize;

use super::fan::{lattice_index, SignedCone, SignedConeFan};
use super::fm::nonnegative_solution_exists;
use crate::arith::{int, QMatrix, Rational};
use crate::error::{Error, Result};

/// A pair of cones meeting after displacement, with its contribution.
#[derive(Clone, Debug, Serialize)]
pub struct ContributingPair {
    pub first: SignedCone,
    pub second: SignedCone,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub contribution: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct StableIntersection {
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub multiplicity: Rational,
    #[serde(serialize_with = "crate::json::ser_rationals")]
    pub displacement: Vec<Rational>,
    pub pairs: Vec<ContributingPair>,
}

fn as_rational_columns(rays: Vec<Vec<BigInt>>, negate: bool) -> Vec<Vec<Rational>> {
    rays.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| Rational::from_integer(if negate { -x } else { x }))
                .collect()
        })
        .collect()
}

/// `sum` over cone pairs with `sigma_1 ∩ (sigma_2 + v) ≠ ∅` of
/// `mult(sigma_1) mult(sigma_2) [Z^n : N_1 + N_2]`.
///
/// `v` is validated: a pair that meets must do so transversally at a single
/// point in the relative interiors of both cones, otherwise the call fails
/// with [`Error::NonGeneric`].
pub fn stable_mult_origin(
    f: &SignedConeFan,
    g: &SignedConeFan,
    v: &[Rational],
) -> Result<StableIntersection> {
    let n = f.n;
    if g.n != n || v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if g.n != n { g.n } else { v.len() },
        });
    }
    if f.dim + g.dim != n {
        return Err(Error::Invalid(format!(
            "stable intersection at the origin needs complementary dimensions, got {} + {} != {n}",
            f.dim, g.dim
        )));
    }
    let mut total = Rational::zero();
    let mut pairs = Vec::new();
    for a in &f.cones {
        for b in &g.cones {
            // lambda . rays(a) - mu . rays(b) = v with lambda, mu >= 0.
            let mut columns = as_rational_columns(a.rays(n), false);
            columns.extend(as_rational_columns(b.rays(n), true));
            let m = if columns.is_empty() {
                QMatrix::zeros(n, 0)
            } else {
                QMatrix::from_rows(columns).expect("uniform").transpose()
            };
            if let Some(sol) = m.solve_square(v) {
                if sol.iter().any(Signed::is_negative) {
                    continue;
                }
                if sol.iter().any(Zero::is_zero) {
                    return Err(Error::NonGeneric(format!(
                        "displacement meets the boundary of the pair {:?}/{:?}",
                        a.key(),
                        b.key()
                    )));
                }
                let idx = Rational::from_integer(lattice_index(n, &[a, b])?);
                let contribution =
                    f.weighted_multiplicity(a) * g.weighted_multiplicity(b) * idx;
                total += &contribution;
                pairs.push(ContributingPair {
                    first: a.clone(),
                    second: b.clone(),
                    contribution,
                });
            } else if nonnegative_solution_exists(&m, v) {
                return Err(Error::NonGeneric(format!(
                    "non-transversal pair {:?}/{:?} meets after displacement",
                    a.key(),
                    b.key()
                )));
            }
        }
    }
    Ok(StableIntersection {
        multiplicity: total,
        displacement: v.to_vec(),
        pairs,
    })
}

fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi)
        .filter(|&p| p > 1 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// Displacement vector with coordinates `±p/q` for distinct primes, all
/// numerators different so no coordinate ratios coincide.
pub fn generic_vector(n: usize, rng: &mut dyn RngCore) -> Vec<Rational> {
    let primes = primes_between(1_000, 20_000);
    let chosen: Vec<u64> = primes
        .choose_multiple(rng, 2 * n)
        .copied()
        .collect();
    (0..n)
        .map(|i| {
            let num = int(chosen[i] as i64);
            let den = int(chosen[n + i] as i64);
            let q = num / den;
            if rng.gen_bool(0.5) {
                -q
            } else {
                q
            }
        })
        .collect()
}

/// [`stable_mult_origin`] with a generic displacement drawn from `rng`,
/// redrawn on rejection up to `attempts` times.
pub fn stable_mult_origin_generic(
    f: &SignedConeFan,
    g: &SignedConeFan,
    rng: &mut dyn RngCore,
    attempts: usize,
) -> Result<StableIntersection> {
    for _ in 0..attempts.max(1) {
        let v = generic_vector(f.n, rng);
        match stable_mult_origin(f, g, &v) {
            Err(Error::NonGeneric(_)) => continue,
            other => return other,
        }
    }
    Err(Error::RetryBudget(attempts))
}

/// Number of displacement redraws before giving up.
pub const DISPLACEMENT_ATTEMPTS: usize = 8;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::fan::{negate_fan, standard_tls};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(17)
    }

    #[test]
    fn complementary_standard_spaces_meet_once() {
        for n in 1..6 {
            for m in 0..=n {
                let f = standard_tls(m, n).unwrap();
                let g = standard_tls(n - m, n).unwrap();
                let s = stable_mult_origin_generic(&f, &g, &mut rng(), DISPLACEMENT_ATTEMPTS).unwrap();
                assert_eq!(s.multiplicity, int(1), "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn weight_is_carried_through() {
        let mut f = standard_tls(2, 4).unwrap();
        f.weight = crate::arith::rat(5, 3);
        let g = standard_tls(2, 4).unwrap();
        let s = stable_mult_origin_generic(&f, &g, &mut rng(), DISPLACEMENT_ATTEMPTS).unwrap();
        assert_eq!(s.multiplicity, crate::arith::rat(5, 3));
    }

    #[test]
    fn negated_ray_against_a_plane_fan() {
        // -Lambda_1 meets Lambda_2 in P^3 with multiplicity binom(3, 1) = 3.
        let f = negate_fan(&standard_tls(1, 3).unwrap());
        let g = standard_tls(2, 3).unwrap();
        let s = stable_mult_origin_generic(&f, &g, &mut rng(), DISPLACEMENT_ATTEMPTS).unwrap();
        assert_eq!(s.multiplicity, int(3));
    }

    #[test]
    fn boundary_displacement_is_rejected() {
        let f = standard_tls(1, 2).unwrap();
        let g = standard_tls(1, 2).unwrap();
        // v = e_0 lies on the ray of f and on the ray of g shifted by 0.
        let v = vec![int(1), int(0)];
        assert!(matches!(stable_mult_origin(&f, &g, &v), Err(Error::NonGeneric(_))));
    }

    #[test]
    fn dimension_checks() {
        let f = standard_tls(1, 3).unwrap();
        let v = vec![int(1), int(2), int(3)];
        assert!(stable_mult_origin(&f, &f, &v).is_err());
    }
}
