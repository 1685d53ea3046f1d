//! Smith normal form over `Z` with both transformation matrices.
//!
//! Pivoting picks the nonzero entry of least absolute value in the active
//! block, ties broken by the lowest `(row, col)`, so output is reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `d = u * a * v` with `u`, `v` unimodular and `d` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `d_1, ..., d_min(m,n)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.a[(bi, bj)].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = w.min_pivot(t) else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &w.a[(i, t)] / &p;
                w.add_row(i, t, &-q);
                dirty |= !w.a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &w.a[(t, j)] / &p;
                w.add_col(j, t, &-q);
                dirty |= !w.a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce p | every remaining entry.
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !w.a[(i, j)].is_multiple_of(&p))
            });
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> SnfResult {
    SnfResult {
        u: w.u,
        d: w.a,
        v: w.v,
        u_inv: w.u_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(&(&r.u * a) * &r.v, r.d);
        assert_eq!(&r.u * &r.u_inv, IntMatrix::identity(a.rows()));
        assert!(r.u.determinant().unwrap().abs().is_one());
        assert!(r.v.determinant().unwrap().abs().is_one());
        r
    }

    #[test]
    fn two_by_two_example() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        let r = check(&a);
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(3);
        let r = check(&a);
        assert_eq!(r.d, a);
        assert_eq!(r.u, a);
        assert_eq!(r.v, a);
    }

    #[test]
    fn zero_and_empty() {
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(check(&z).d, z);
        let e = IntMatrix::zeros(0, 4);
        let r = check(&e);
        assert_eq!(r.d.cols(), 4);
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is diagonal but not a chain; SNF is diag(1, 6).
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        let r = check(&a);
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }
}
