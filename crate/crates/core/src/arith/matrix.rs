use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. An empty list gives a `0 x cols`
    /// matrix only through [`QMatrix::zeros`]; here it yields `0 x 0`.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
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
        Ok(QMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.row_iter().map(<[Rational]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> Result<Self> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(QMatrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        QMatrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend(self.row(i).iter().cloned());
        }
        QMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Multiplies column `j` by `factors[j]`.
    pub fn scale_columns(&self, factors: &[Rational]) -> Result<Self> {
        if factors.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: factors.len(),
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, f) in factors.iter().enumerate() {
                let k = i * self.cols + j;
                out.data[k] = &out.data[k] * f;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .row_iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form. The pivot in each column is the first
    /// nonzero entry at or below the current row, so the output is a pure
    /// function of the input.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Rational>> = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let (head, tail) = rows.split_at_mut(r);
            let (pivot_row, rest) = tail.split_first_mut().expect("row r exists");
            for other in head.iter_mut().chain(rest.iter_mut()) {
                let f = other[c].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = rows.into_iter().flatten().collect();
        Rref {
            matrix: QMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Rows scaled by their denominators' lcm. Row scaling changes neither
    /// the rank nor the kernel.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.row_iter()
            .map(|row| {
                let den = Rational::from_integer(super::common_denominator(row));
                row.iter().map(|x| (x * &den).to_integer()).collect()
            })
            .collect()
    }

    /// Fraction-free (Bareiss) row echelon form of [`Self::integer_rows`],
    /// with first-nonzero pivoting. Every division is exact, so entries stay
    /// bounded by minors of the input instead of growing like rational RREF.
    fn echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut a = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                let f = std::mem::take(&mut row[c]);
                for j in (c + 1)..self.cols {
                    let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column
    /// `f`, normalized by `v_f = 1` and `v_g = 0` for the other free columns
    /// (the same basis the RREF would give).
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (u, pivots) = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                // Integer back-substitution with the content divided out at
                // each step; the common scale is removed at the end.
                let mut v = vec![BigInt::zero(); self.cols];
                v[free] = BigInt::one();
                for (t, &p) in pivots.iter().enumerate().rev() {
                    let s: BigInt = ((p + 1)..self.cols)
                        .filter(|&j| !v[j].is_zero() && !u[t][j].is_zero())
                        .map(|j| &u[t][j] * &v[j])
                        .sum();
                    if s.is_zero() {
                        continue;
                    }
                    let g = s.gcd(&u[t][p]);
                    let scale = &u[t][p] / &g;
                    if !scale.is_one() {
                        for x in v.iter_mut() {
                            *x *= &scale;
                        }
                    }
                    v[p] = -(&s / &g);
                    let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                    if !content.is_one() {
                        for x in v.iter_mut() {
                            *x /= &content;
                        }
                    }
                }
                let lead = v[free].clone();
                v.into_iter()
                    .map(|x| Rational::new(x, lead.clone()))
                    .collect()
            })
            .collect()
    }

    /// The unique solution of `M x = b` for square invertible `M`, or
    /// `None` if `M` is singular.
    pub fn solve_square(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.cols;
        if self.rows != n || b.len() != n {
            return None;
        }
        let rows = self
            .row_iter()
            .zip(b)
            .map(|(row, bi)| row.iter().cloned().chain([-bi.clone()]).collect())
            .collect();
        let aug = QMatrix::from_rows_with_cols(rows, n + 1).expect("uniform rows");
        // Invertible iff the only free column is the last one.
        match aug.nullspace().as_slice() {
            [v] if v[n].is_one() => Some(v[..n].to_vec()),
            _ => None,
        }
    }

    /// Determinant of a square matrix.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for i in (c + 1)..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] / &piv;
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
        Ok(det)
    }

    /// The nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> QMatrix {
        let rref = self.rref();
        let keep: Vec<usize> = (0..rref.rank()).collect();
        rref.matrix.select_rows(&keep)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = QMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank(), 3);
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        assert_eq!(m(&[&[1, 2, 3], &[2, 4, 6]]).rank(), 1);
    }

    #[test]
    fn vandermonde_has_full_rank() {
        let v = m(&[&[1, 1, 1], &[1, 2, 3], &[1, 4, 9]]);
        assert_eq!(v.rank(), 3);
        assert_eq!(v.det().unwrap(), int(2));
    }

    #[test]
    fn nullspace_examples() {
        assert!(QMatrix::identity(3).nullspace().is_empty());
        assert_eq!(m(&[&[1, -1]]).nullspace(), vec![vec![int(1), int(1)]]);
        assert_eq!(
            m(&[&[1, 0, -1], &[0, 1, -1]]).nullspace(),
            vec![vec![int(1), int(1), int(1)]]
        );
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(&[&[0, 2, 4], &[1, 1, 1], &[2, 4, 6]]);
        let once = a.rref().matrix;
        assert_eq!(once.rref().matrix, once);
    }

    #[test]
    fn square_solves() {
        let m = QMatrix::from_i64_rows(&[&[2, 1], &[1, 3]]).unwrap();
        assert_eq!(m.solve_square(&[int(3), int(5)]), Some(vec![rat(4, 5), rat(7, 5)]));
        let singular = QMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(singular.solve_square(&[int(1), int(2)]), None);
        assert_eq!(singular.solve_square(&[int(1), int(3)]), None);
    }

    #[test]
    fn det_sign_tracks_row_swaps() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), int(-1));
        assert!(m(&[&[1, 2]]).det().is_err());
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |v| {
                QMatrix::new(r, c, v.into_iter().map(int).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose(a in small_matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn nullspace_vectors_are_annihilated(a in small_matrix()) {
            let ns = a.nullspace();
            prop_assert_eq!(ns.len(), a.cols() - a.rank());
            for v in ns {
                prop_assert!(a.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn fraction_free_paths_agree_with_rref(a in small_matrix(), d in 1i64..7) {
            // Rational entries exercise the row-clearing step.
            let a = QMatrix::new(a.rows(), a.cols(), a.data.iter().map(|x| x / int(d)).collect()).unwrap();
            let rref = a.rref();
            prop_assert_eq!(a.rank(), rref.rank());
            let from_rref: Vec<Vec<Rational>> = (0..a.cols())
                .filter(|j| !rref.pivots.contains(j))
                .map(|free| {
                    let mut v = vec![Rational::zero(); a.cols()];
                    v[free] = Rational::one();
                    for (row, &p) in rref.pivots.iter().enumerate() {
                        v[p] = -rref.matrix.get(row, free).clone();
                    }
                    v
                })
                .collect();
            prop_assert_eq!(a.nullspace(), from_rref);
        }
    }
}
