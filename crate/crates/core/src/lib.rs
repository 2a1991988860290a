//! Exact construction of trigraded Adams-Novikov charts over the base
//! fields C and R at an odd prime, from classical Adams-Novikov input.
//!
//! The crate has two halves that check each other:
//!
//! * a symbolic half ([`chart`], [`builder`]) that ingests classical E2
//!   charts, builds the trigraded chart, and pushes pages forward with exact
//!   tau/theta-torsion bookkeeping, and
//! * a brute-force half ([`steenrod`], [`cobar`], [`linalg`]) that computes
//!   the underlying algebra directly: monomial bases and comultiplication of
//!   the dual motivic Steenrod algebra, reduced cobar complexes, and Cotor
//!   groups by exact homology over F_l.
//!
//! The [`verify`] module wires the two halves together into the property
//! suites exposed by the `manss` CLI.

pub mod builder;
pub mod chart;
pub mod cobar;
pub mod error;
pub mod linalg;
pub mod par;
pub mod steenrod;
pub mod verify;

pub use error::{Error, Result};
pub use par::ExecMode;
