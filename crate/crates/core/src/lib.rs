//! Regular closure operators on finitely presented modules over `Z` and `Z/n`.
//!
//! A subcategory of injective modules `A` induces the closure
//! `c_A(N) = ⋂ { ker g : g: M → A, A ∈ A, g(N) = 0 }` on the submodule
//! lattice of every module `M`. This crate computes it exactly, decides
//! density and closedness, builds the induced torsion theory, and ships the
//! brute-force oracles used to cross-check every matrix computation.

pub mod closure;
pub mod error;
pub mod hom;
pub mod injective;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod ring;
pub mod torsion;
pub mod universe;

pub use closure::{
    axiom_suite, check_density, closedness_witness_scan, divisible_closure, is_closed, is_dense,
    is_hom_vanishing, regular_closure, AxiomReport, AxiomSample, ClosednessScan, ClosureResult,
    Divisible, ObjectRef, Subcategory,
};
pub use error::{Error, Result};
pub use hom::{enumerate_homs, hom_group, kernel_of_hom, HomGroup, Homomorphism};
pub use injective::{injective_by_baer, injective_by_structure, is_injective_module};
pub use linalg::{kernel_basis, smith_normal_form, solve_linear, IntMatrix, SnfResult};
pub use module::{present_module, FPModule, ModuleElement, Submodule};
pub use ring::RingDesc;
pub use torsion::{
    classify, free_summand_rank, is_bounded, torsion_radical, verify_torsion_theory,
    ModuleUniverse, TorsionClass, TorsionTheoryReport,
};
