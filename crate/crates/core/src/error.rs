//! Error types shared across the crate.

use std::fmt;

use thiserror::Error;

/// A single chart-invariant violation, pinned to the offending cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Filtration of the offending cell, if the rule is cell-local.
    pub s: Option<i64>,
    /// Stem of the offending cell, if the rule is cell-local.
    pub stem: Option<i64>,
    /// Name of the violated rule, e.g. `sparseness`.
    pub rule: &'static str,
    pub detail: String,
}

impl Violation {
    pub fn at(s: i64, stem: i64, rule: &'static str, detail: impl Into<String>) -> Self {
        Violation {
            s: Some(s),
            stem: Some(stem),
            rule,
            detail: detail.into(),
        }
    }

    pub fn global(rule: &'static str, detail: impl Into<String>) -> Self {
        Violation {
            s: None,
            stem: None,
            rule,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.s, self.stem) {
            (Some(s), Some(stem)) => {
                write!(f, "[{}] cell ({s},{stem}): {}", self.rule, self.detail)
            }
            _ => write!(f, "[{}] {}", self.rule, self.detail),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Bad run parameters: non-prime or even modulus, invalid page, conflicting flags.
    #[error("configuration error: {0}")]
    Config(String),

    /// A differential pair failed `d . d = 0`; the cobar construction is broken.
    #[error("complex construction error: {0}")]
    ComplexConstruction(String),

    /// A requested degree lies outside the configured enumeration bounds.
    #[error("range error: {0}")]
    Range(String),

    /// A slice grew past the configured size cap.
    #[error("resource error: slice {slice} has {size} chains (cap {cap})")]
    Resource {
        slice: String,
        size: usize,
        cap: usize,
    },

    /// Fixture text could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// One or more chart invariants failed validation.
    #[error("invariant violation(s):\n{}", format_violations(.0))]
    Invariant(Vec<Violation>),

    /// Differentials were applied out of page order, or E-infinity was
    /// requested with classical differentials still pending.
    #[error("sequencing error: {0}")]
    Sequencing(String),

    /// A differential touches an entry that an earlier page left in a
    /// non-split or torsion state.
    #[error("unsupported differential: {0}")]
    UnsupportedDifferential(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| format!("  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub type Result<T> = std::result::Result<T, Error>;
