use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Column sums, in column order.
    pub fn column_sums(&self) -> Vec<BigInt> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Diagonal of the Smith normal form: `min(rows, cols)` nonnegative
    /// entries `d_1 | d_2 | ...`, zeros last.
    #[allow(clippy::needless_range_loop)]
    pub fn smith_normal_form(&self) -> Vec<BigInt> {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let size = m.min(n);
        for t in 0..size {
            loop {
                // Smallest nonzero entry in the trailing block becomes the pivot.
                let pivot = (t..m)
                    .flat_map(|i| (t..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !a[i][j].is_zero())
                    .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
                let Some((pi, pj)) = pivot else {
                    break;
                };
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }

                let mut clean = true;
                for i in (t + 1)..m {
                    let q = a[i][t].div_floor(&a[t][t]);
                    if !q.is_zero() {
                        for j in t..n {
                            let v = &q * &a[t][j];
                            a[i][j] -= v;
                        }
                    }
                    clean &= a[i][t].is_zero();
                }
                for j in (t + 1)..n {
                    let q = a[t][j].div_floor(&a[t][t]);
                    if !q.is_zero() {
                        for i in t..m {
                            let v = &q * &a[i][t];
                            a[i][j] -= v;
                        }
                    }
                    clean &= a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }

                // Enforce divisibility of the rest of the block by the pivot.
                let offender = ((t + 1)..m).find(|&i| {
                    ((t + 1)..n).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
                });
                match offender {
                    Some(i) => {
                        for j in t..n {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
        }
        (0..size).map(|t| a[t][t].abs()).collect()
    }

    pub fn rank(&self) -> usize {
        self.smith_normal_form()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}
