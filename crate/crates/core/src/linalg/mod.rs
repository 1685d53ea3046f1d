//! Exact integer linear algebra: Smith form, Hermite lattices, kernels, solving.

mod lattice;
mod matrix;
mod snf;
mod solve;

pub use lattice::Lattice;
pub use matrix::{big_vec, IntMatrix};
pub use snf::{smith_normal_form, SnfResult};
pub use solve::{kernel_basis, solve_linear, LinearSolution};

pub(crate) use lattice::unit;
pub(crate) use solve::{integer_kernel, integer_solve};
