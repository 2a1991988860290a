//! Homotopy-group queries against a finished chart.

use num_bigint::BigInt;

use crate::chart::{MotivicChart, Page, Trigrade};
use crate::error::{Error, Result};

/// Associated-graded answer to one (stem, weight) query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub stem: i64,
    pub weight: i64,
    /// Weight slices per filtration, lowest filtration first; invariant
    /// factors with `0` denoting an infinite cyclic factor.
    pub groups: Vec<(i64, Vec<BigInt>)>,
    /// True when multiplication by the ground generator is an isomorphism
    /// here, so the answer equals the weight-0 (classical, completed) one.
    pub tau_stable: bool,
}

impl QueryResult {
    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Printed form: one line per filtration, with the stability flag.
    pub fn render(&self, ground_symbol: &str) -> String {
        use num_traits::Zero;
        let mut out = format!(
            "pi_({}, {}) associated graded{}:\n",
            self.stem,
            self.weight,
            if self.tau_stable {
                format!(" [{ground_symbol}-stable: equals the weight-0 answer]")
            } else {
                String::new()
            }
        );
        if self.groups.is_empty() {
            out.push_str("  0\n");
        } else {
            for (s, orders) in &self.groups {
                let desc: Vec<String> = orders
                    .iter()
                    .map(|o| {
                        if o.is_zero() {
                            "Z_l".to_string()
                        } else {
                            format!("Z/{o}")
                        }
                    })
                    .collect();
                out.push_str(&format!("  s={s}: {}\n", desc.join(" + ")));
            }
        }
        out
    }
}

/// Per-filtration weight slices of the column `stem` at weight `u`.
///
/// Empty whenever `u > stem` (no class contributes above the weight
/// ceiling). The query is flagged tau-stable in the region
/// `u <= stem/2 + 1` (stem > 0) resp. `u <= 0` (stem = 0).
pub fn query_pi(chart: &MotivicChart, stem: i64, u: i64) -> Result<QueryResult> {
    if chart.page != Page::Infinity {
        return Err(Error::Config(
            "homotopy queries need a chart propagated to E-infinity".to_string(),
        ));
    }
    let tau_stable = if stem > 0 {
        2 * u <= stem + 2
    } else {
        stem == 0 && u <= 0
    };
    let mut groups = Vec::new();
    if u <= stem {
        let (max_s, _) = chart.extent();
        for s in 0..=max_s {
            let slice = chart.slice_at(Trigrade { s, stem, u });
            if !slice.is_empty() {
                groups.push((s, slice));
            }
        }
    }
    Ok(QueryResult {
        stem,
        weight: u,
        groups,
        tau_stable,
    })
}
