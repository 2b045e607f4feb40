//! Exact feasibility of linear inequality systems by Fourier–Motzkin
//! elimination.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::arith::{primitive_vector, QMatrix, Rational};

/// The constraint `a . t + b >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ineq {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl Ineq {
    /// Scaled to coprime integers (positive scaling keeps the constraint).
    fn normalized(&self) -> Ineq {
        let mut v = self.a.clone();
        v.push(self.b.clone());
        let sign_fix = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        let mut p = primitive_vector(&v);
        if sign_fix {
            p.iter_mut().for_each(|x| *x = -x.clone());
        }
        let b = p.pop().expect("nonempty");
        Ineq { a: p, b }
    }
}

/// True iff some real `t` satisfies every constraint.
pub fn feasible(ineqs: &[Ineq], nvars: usize) -> bool {
    let mut current: BTreeSet<Ineq> = ineqs.iter().map(Ineq::normalized).collect();
    for k in (0..nvars).rev() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for c in current {
            if c.a[k].is_positive() {
                pos.push(c);
            } else if c.a[k].is_negative() {
                neg.push(c);
            } else {
                rest.insert(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let (wp, wq) = (-q.a[k].clone(), p.a[k].clone());
                let a: Vec<Rational> = p
                    .a
                    .iter()
                    .zip(&q.a)
                    .map(|(x, y)| &wp * x + &wq * y)
                    .collect();
                let b = &wp * &p.b + &wq * &q.b;
                rest.insert(Ineq { a, b }.normalized());
            }
        }
        current = rest;
        if current.iter().any(|c| c.a.iter().all(Zero::is_zero) && c.b.is_negative()) {
            return false;
        }
    }
    current.iter().all(|c| !c.b.is_negative())
}

/// True iff `A x = c` has a solution with `x >= 0`. The equalities are
/// solved first; the remaining freedom is checked by [`feasible`].
pub fn nonnegative_solution_exists(a: &QMatrix, c: &[Rational]) -> bool {
    let mut rows = a.to_rows();
    for (row, ci) in rows.iter_mut().zip(c) {
        row.push(ci.clone());
    }
    let cols = a.cols();
    let aug = QMatrix::from_rows_with_cols(rows, cols + 1).expect("uniform");
    let rref = aug.rref();
    if rref.pivots.contains(&cols) {
        return false;
    }
    let free: Vec<usize> = (0..cols).filter(|j| !rref.pivots.contains(j)).collect();
    // x_p = rhs - sum_f a_{p f} t_f for pivots, x_f = t_f for free columns.
    let mut ineqs = Vec::with_capacity(cols);
    for row in 0..rref.pivots.len() {
        let coeffs = free.iter().map(|&f| -rref.matrix.get(row, f).clone()).collect();
        ineqs.push(Ineq {
            a: coeffs,
            b: rref.matrix.get(row, cols).clone(),
        });
    }
    for (k, _) in free.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); free.len()];
        coeffs[k] = crate::arith::int(1);
        ineqs.push(Ineq {
            a: coeffs,
            b: Rational::zero(),
        });
    }
    feasible(&ineqs, free.len())
}
