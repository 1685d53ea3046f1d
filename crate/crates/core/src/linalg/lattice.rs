//! Integer lattices in `Z^dim` kept in row Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// A sublattice of `Z^dim`, stored as its unique echelon (Hermite) basis.
///
/// Basis vectors have strictly increasing pivot positions, positive pivots,
/// zeros left of the pivot, and entries above each pivot reduced into
/// `[0, pivot)`. Two lattices are equal iff their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_generators(dim, (0..dim).map(|i| unit(dim, i)))
    }

    pub fn from_matrix_columns(m: &IntMatrix) -> Self {
        Self::from_generators(m.rows(), m.columns())
    }

    pub fn from_generators<I>(dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut rows: Vec<Vec<BigInt>> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator length"))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..dim {
            if r == rows.len() {
                break;
            }
            let mut found = false;
            loop {
                let best = (r..rows.len())
                    .filter(|&i| !rows[i][col].is_zero())
                    .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
                let Some(best) = best else { break };
                rows.swap(r, best);
                found = true;
                let mut clean = true;
                for i in r + 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = &rows[i][col] / &rows[r][col];
                    sub_multiple(&mut rows, i, r, &q);
                    clean &= rows[i][col].is_zero();
                }
                if clean {
                    break;
                }
            }
            if !found {
                continue;
            }
            if rows[r][col].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for k in 0..r {
                let q = rows[k][col].div_floor(&rows[r][col]);
                sub_multiple(&mut rows, k, r, &q);
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        Lattice {
            dim,
            basis: rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// `[Z^dim : self]` when finite.
    pub fn index(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        Some(
            self.basis
                .iter()
                .zip(&self.pivots)
                .map(|(b, &p)| b[p].clone())
                .product(),
        )
    }

    /// Pivot value at coordinate `col`, if that coordinate has one.
    pub fn pivot_at(&self, col: usize) -> Option<&BigInt> {
        self.pivots
            .iter()
            .position(|&p| p == col)
            .map(|k| &self.basis[k][col])
    }

    /// Canonical coset representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let q = v[p].div_floor(&b[p]);
            if !q.is_zero() {
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &q * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn join(&self, other: &Lattice) -> Lattice {
        Self::from_generators(
            self.dim,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    /// Basis vectors as the columns of a `dim x rank` matrix.
    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis).expect("basis vectors have length dim")
    }
}

fn sub_multiple(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x -= q * y;
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::from(1);
    v
}
