//! Kernels and linear systems over `Z` and `Z/n`.
//!
//! Modular problems are lifted to `Z` through the augmented system
//! `[A | n·I]`; there is no separate modular elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::lattice::{unit, Lattice};
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::ring::RingDesc;

/// Particular solution plus the kernel of the coefficient matrix.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Option<Vec<BigInt>>,
    pub kernel: IntMatrix,
}

fn augment(a: &IntMatrix, n: &BigInt) -> IntMatrix {
    a.hcat(&IntMatrix::scalar(a.rows(), n))
        .expect("row counts agree")
}

/// Lattice `{x in Z^cols : A x = 0}` over the integers.
pub(crate) fn integer_kernel(a: &IntMatrix) -> Lattice {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    Lattice::from_generators(a.cols(), (r..a.cols()).map(|j| snf.v.column(j)))
}

/// Columns generate `{x : A x = 0}` over `ring`.
///
/// Over `Z` the columns are the Hermite basis of the kernel lattice. Over
/// `Z/n` entries lie in `[0, n)` and no column is zero.
pub fn kernel_basis(a: &IntMatrix, ring: &RingDesc) -> IntMatrix {
    match ring.modulus_big() {
        None => integer_kernel(a).to_matrix(),
        Some(n) => {
            let k = a.cols();
            let lifted = integer_kernel(&augment(a, &n));
            let xs = lifted
                .basis()
                .iter()
                .map(|v| v[..k].to_vec())
                .chain((0..k).map(|i| {
                    let mut e = unit(k, i);
                    e[i] = n.clone();
                    e
                }));
            let lat = Lattice::from_generators(k, xs);
            let cols: Vec<Vec<BigInt>> = lat
                .basis()
                .iter()
                .filter(|v| !v.iter().all(|x| x.is_multiple_of(&n)))
                .map(|v| v.iter().map(|x| x.mod_floor(&n)).collect())
                .collect();
            IntMatrix::from_columns(k, &cols).expect("kernel vectors have length cols")
        }
    }
}

/// A particular solution of `A x = b` over the integers, if one exists.
pub(crate) fn integer_solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b).expect("u is rows x rows");
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ci.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y).expect("v is cols x cols"))
}

/// Solves `A x = b` over `ring`.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt], ring: &RingDesc) -> Result<LinearSolution> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let particular = match ring.modulus_big() {
        None => integer_solve(a, b),
        Some(n) => integer_solve(&augment(a, &n), b)
            .map(|x| x[..a.cols()].iter().map(|v| v.mod_floor(&n)).collect()),
    };
    Ok(LinearSolution {
        particular,
        kernel: kernel_basis(a, ring),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_vec;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn kernel_over_integers_of_scalar_is_trivial() {
        let k = kernel_basis(&m(&[vec![2]]), &RingDesc::Integers);
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn kernel_over_z4_of_two() {
        let k = kernel_basis(&m(&[vec![2]]), &RingDesc::IntegersMod(4));
        assert_eq!(k, m(&[vec![2]]));
    }

    #[test]
    fn kernel_of_two_three() {
        let k = kernel_basis(&m(&[vec![2, 3]]), &RingDesc::Integers);
        assert_eq!(k, m(&[vec![3], vec![-2]]));
    }

    #[test]
    fn solve_examples() {
        let a = m(&[vec![2]]);
        let z = RingDesc::Integers;
        assert!(solve_linear(&a, &big_vec(&[3]), &z).unwrap().particular.is_none());
        let s = solve_linear(&a, &big_vec(&[4]), &z).unwrap();
        assert_eq!(s.particular, Some(big_vec(&[2])));
        assert_eq!(s.kernel.cols(), 0);
        let s = solve_linear(&a, &big_vec(&[2]), &RingDesc::IntegersMod(4)).unwrap();
        assert_eq!(s.particular, Some(big_vec(&[1])));
        assert_eq!(s.kernel, m(&[vec![2]]));
    }

    #[test]
    fn dimension_mismatch() {
        let a = m(&[vec![1, 2]]);
        assert!(solve_linear(&a, &big_vec(&[1, 2]), &RingDesc::Integers).is_err());
    }

    #[test]
    fn empty_matrix_kernel_is_everything() {
        let a = IntMatrix::zeros(0, 2);
        assert_eq!(kernel_basis(&a, &RingDesc::Integers), IntMatrix::identity(2));
        let a = IntMatrix::zeros(2, 0);
        assert_eq!(kernel_basis(&a, &RingDesc::Integers).cols(), 0);
    }
}
