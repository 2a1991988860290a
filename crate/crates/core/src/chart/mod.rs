//! Chart data model: classical input charts, trigraded output charts,
//! the fixture text format, chart JSON, entry normalization and the
//! seeded random chart generator.

mod classical;
mod format;
mod json;
mod motivic;
mod presentation;
mod random;
mod types;

pub use classical::{ClassicalChart, ClassicalDifferential, ClassicalGroup};
pub use format::{
    load_classical, parse_classical, parse_classical_unvalidated, write_classical, SCHEMA_VERSION,
};
pub use json::{chart_from_json, chart_to_json, fixture_sha256, JSON_SCHEMA_VERSION};
pub use motivic::{presentation_slice, ChartMeta, Entry, MotivicChart, Page};
pub use presentation::{kernel_invariants, normalize_entry, NormalizeOutcome};
pub use random::{random_classical, RandomChartConfig};
pub use types::{CyclicSummand, Order, Pos, PresentedEntry, RelCoef, Trigrade};
