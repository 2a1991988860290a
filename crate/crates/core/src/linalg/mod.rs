//! Exact linear algebra over the prime field F_l and over the integers.
//!
//! Everything here is exact: mod-l arithmetic on sparse matrices for cobar
//! homology, and arbitrary-precision integer Smith normal form for the
//! finite abelian groups produced by the weight-slice oracle.

mod abelian;
mod flmatrix;

pub use abelian::{
    identity_mat, int_mat, kernel_basis, mat_mul, preimage_lattice, quotient_invariants, snf,
    solve_exact, FiniteAbelianPresentation, IntMat, Snf,
};
pub use flmatrix::{homology_dim, FlMatrix, RowReduction};
