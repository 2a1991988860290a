//! Reduced cobar complexes and trigraded Cotor tables.
//!
//! Realizes the Cartan-Eilenberg E2 page (Cotor over P with coefficients in
//! the polynomial algebra on the Cotor_E classes a_i) and the algebraic
//! Novikov E1 page (same Cotor with the associated-graded coefficients
//! `Z/l[q_i]`), both computed by brute-force homology over F_l in a bounded
//! range with d.d = 0 verified on every slice.

mod comodule;
mod complex;
mod engine;
mod table;

pub use comodule::{CoactionExpr, Comodule, ComoduleKind, GenMono};
pub use complex::{build_column, ChainSlice, CobarChain, Column, ColumnKey};
pub use engine::{algnov_e1, build_cobar, cess_e2, cotor, CotorRange};
pub use table::{
    algnov_key_to_cess, cess_key_to_algnov, CotorEntry, CotorTable, RangeStamp, TableKey,
};
