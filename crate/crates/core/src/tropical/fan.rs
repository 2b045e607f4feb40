use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{int, IntMatrix, QMatrix, Rational};
use crate::error::{Error, Result};

/// `pos(e_i : i in plus) + neg(e_j : j in minus)` in `R^{n+1} / R 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SignedCone {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub multiplicity: u64,
}

impl SignedCone {
    /// Sorts the index sets; fails if they overlap or repeat an index.
    pub fn new(mut plus: Vec<usize>, mut minus: Vec<usize>, multiplicity: u64) -> Result<Self> {
        plus.sort_unstable();
        minus.sort_unstable();
        let all: Vec<usize> = plus.iter().chain(&minus).copied().sorted().collect();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!(
                "signed cone repeats an index: plus {plus:?}, minus {minus:?}"
            )));
        }
        if multiplicity == 0 {
            return Err(Error::Invalid("cone multiplicity must be positive".into()));
        }
        Ok(SignedCone {
            plus,
            minus,
            multiplicity,
        })
    }

    pub fn dim(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.plus.clone(), self.minus.clone())
    }

    /// Ray generators in the quotient coordinates of [`quotient_image`].
    pub fn rays(&self, n: usize) -> Vec<Vec<BigInt>> {
        self.plus
            .iter()
            .map(|&i| quotient_image(n, i))
            .chain(self.minus.iter().map(|&j| {
                quotient_image(n, j).into_iter().map(|x| -x).collect()
            }))
            .collect()
    }
}

/// Image of `e_i` under `Z^{n+1} / Z 1 -> Z^n`, `v -> (v_k - v_n)_{k<n}`.
pub fn quotient_image(n: usize, i: usize) -> Vec<BigInt> {
    (0..n)
        .map(|k| {
            if i == n {
                -BigInt::one()
            } else if k == i {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

/// Weighted fan of signed coordinate cones of one common dimension, with
/// an overall rational weight multiplying every cone multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedConeFan {
    pub n: usize,
    pub dim: usize,
    pub cones: Vec<SignedCone>,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub weight: Rational,
}

impl SignedConeFan {
    /// Cones with equal index sets are merged by adding multiplicities.
    pub fn new(n: usize, dim: usize, cones: Vec<SignedCone>, weight: Rational) -> Result<Self> {
        let mut merged: BTreeMap<(Vec<usize>, Vec<usize>), u64> = BTreeMap::new();
        for c in cones {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
            if let Some(&bad) = c.plus.iter().chain(&c.minus).find(|&&i| i > n) {
                return Err(Error::IndexOutOfRange { index: bad, max: n });
            }
            *merged.entry(c.key()).or_default() += c.multiplicity;
        }
        Ok(SignedConeFan {
            n,
            dim,
            cones: merged
                .into_iter()
                .map(|((plus, minus), multiplicity)| SignedCone {
                    plus,
                    minus,
                    multiplicity,
                })
                .collect(),
            weight,
        })
    }

    /// Multiplicity of a cone including the global weight.
    pub fn weighted_multiplicity(&self, cone: &SignedCone) -> Rational {
        &self.weight * int(cone.multiplicity as i64)
    }

    /// Ridge balancing: for every codimension-one face `tau` of a cone, the
    /// weighted sum of the directions from `tau` to the cones containing it
    /// must lie in the span of `tau`.
    pub fn is_balanced(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        // Each ridge maps to the sum of (multiplicity * outgoing ray).
        let mut ridges: BTreeMap<(Vec<usize>, Vec<usize>), Vec<BigInt>> = BTreeMap::new();
        for cone in &self.cones {
            let m = BigInt::from(cone.multiplicity);
            let faces = cone
                .plus
                .iter()
                .map(|&i| (i, true))
                .chain(cone.minus.iter().map(|&j| (j, false)));
            for (idx, positive) in faces {
                let mut plus = cone.plus.clone();
                let mut minus = cone.minus.clone();
                if positive {
                    plus.retain(|&x| x != idx);
                } else {
                    minus.retain(|&x| x != idx);
                }
                let dir = quotient_image(self.n, idx);
                let sum = ridges
                    .entry((plus, minus))
                    .or_insert_with(|| vec![BigInt::zero(); self.n]);
                for (s, d) in sum.iter_mut().zip(dir) {
                    if positive {
                        *s += &m * d;
                    } else {
                        *s -= &m * d;
                    }
                }
            }
        }
        ridges.into_iter().all(|((plus, minus), sum)| {
            let ridge = SignedCone {
                plus,
                minus,
                multiplicity: 1,
            };
            let rays = ridge.rays(self.n);
            let to_q = |v: &Vec<BigInt>| v.iter().map(|x| Rational::from_integer(x.clone())).collect();
            let base_rank = if rays.is_empty() {
                0
            } else {
                QMatrix::from_rows(rays.iter().map(to_q).collect())
                    .expect("uniform")
                    .rank()
            };
            let mut with_sum: Vec<Vec<Rational>> = rays.iter().map(to_q).collect();
            with_sum.push(to_q(&sum));
            QMatrix::from_rows(with_sum).expect("uniform").rank() == base_rank
        })
    }
}

/// `Lambda_m`: the `binom(n+1, m)` cones `pos(e_S)`, `|S| = m`, all of
/// multiplicity 1.
pub fn standard_tls(m: usize, n: usize) -> Result<SignedConeFan> {
    if m > n {
        return Err(Error::Invalid(format!(
            "standard tropical linear space needs m <= n, got m = {m}, n = {n}"
        )));
    }
    let cones = (0..=n)
        .combinations(m)
        .map(|s| SignedCone {
            plus: s,
            minus: Vec::new(),
            multiplicity: 1,
        })
        .collect();
    SignedConeFan::new(n, m, cones, Rational::one())
}

/// Swaps the plus and minus index sets of every cone.
pub fn negate_fan(fan: &SignedConeFan) -> SignedConeFan {
    let cones = fan
        .cones
        .iter()
        .map(|c| SignedCone {
            plus: c.minus.clone(),
            minus: c.plus.clone(),
            multiplicity: c.multiplicity,
        })
        .collect();
    SignedConeFan::new(fan.n, fan.dim, cones, fan.weight.clone()).expect("same shape")
}

/// Index of the lattice generated by the cones' rays inside its
/// saturation, from the Smith normal form. Fails unless the spans of the
/// cones form a direct sum.
pub fn lattice_index(n: usize, cones: &[&SignedCone]) -> Result<BigInt> {
    let rows: Vec<Vec<BigInt>> = cones.iter().flat_map(|c| c.rays(n)).collect();
    if rows.is_empty() {
        return Ok(BigInt::one());
    }
    let expected: usize = cones.iter().map(|c| c.dim()).sum();
    let snf = IntMatrix::from_rows(rows)?.smith_normal_form();
    let nonzero: Vec<&BigInt> = snf.iter().filter(|d| !d.is_zero()).collect();
    if nonzero.len() != expected {
        return Err(Error::Invalid(format!(
            "non-transversal sum: spans have dimension {} instead of {expected}",
            nonzero.len()
        )));
    }
    Ok(nonzero.into_iter().product())
}

/// Minkowski sum of fans with multiplicities weighted by lattice indices,
/// then divided by `delta`. Pairs of cones that share an index are not
/// transversal and contribute nothing to the top-dimensional cones.
pub fn minkowski_sum(fans: &[SignedConeFan], delta: u64) -> Result<SignedConeFan> {
    let Some(first) = fans.first() else {
        return Err(Error::Invalid("Minkowski sum of no fans".into()));
    };
    if delta == 0 {
        return Err(Error::Invalid("delta must be positive".into()));
    }
    let n = first.n;
    let total: usize = fans.iter().map(|f| f.dim).sum();
    if total > n {
        return Err(Error::Invalid(format!(
            "Minkowski sum dimension {total} exceeds n = {n}"
        )));
    }
    let mut acc = first.clone();
    for f in &fans[1..] {
        if f.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.n,
            });
        }
        let mut cones = Vec::new();
        for a in &acc.cones {
            for b in &f.cones {
                let clash = a
                    .plus
                    .iter()
                    .chain(&a.minus)
                    .any(|i| b.plus.contains(i) || b.minus.contains(i));
                if clash {
                    continue;
                }
                let idx = lattice_index(n, &[a, b])?;
                let idx = u64::try_from(idx).map_err(|_| Error::Invalid("lattice index overflow".into()))?;
                cones.push(SignedCone::new(
                    a.plus.iter().chain(&b.plus).copied().collect(),
                    a.minus.iter().chain(&b.minus).copied().collect(),
                    a.multiplicity * b.multiplicity * idx,
                )?);
            }
        }
        acc = SignedConeFan::new(n, acc.dim + f.dim, cones, &acc.weight * &f.weight)?;
    }
    acc.weight /= int(delta as i64);
    Ok(acc)
}
