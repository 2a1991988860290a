//! Trigraded Cotor tables and their reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chart::{CyclicSummand, MotivicChart, Page, Pos};
use crate::error::{Error, Result};
use crate::steenrod::{AlgebraKind, GroundRing};

/// Key into a Cotor table. For plain Cotor tables `aux` is zero; for the
/// Cartan-Eilenberg page it is the polynomial degree s2 in the a_i, and for
/// the algebraic Novikov page the Novikov degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TableKey {
    pub s: i64,
    pub aux: i64,
    pub t: i64,
    pub u: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CotorEntry {
    pub dim: usize,
    /// True when the entry sits on the filtration boundary of the built
    /// range: the value is the chain-level upper bound, not a verified
    /// homology dimension.
    pub edge: bool,
}

/// The computed range: entries absent inside the stamp are asserted zero,
/// nothing is asserted outside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeStamp {
    pub s_max: i64,
    pub t_max: i64,
    /// Weight window per column: `[floor(t/2) - weight_depth, floor(t/2)]`.
    pub weight_depth: i64,
}

impl RangeStamp {
    pub fn window(&self, t: i64) -> (i64, i64) {
        let top = t.div_euclid(2);
        (top - self.weight_depth, top)
    }

    pub fn contains(&self, key: &TableKey) -> bool {
        let (lo, hi) = self.window(key.t);
        key.s >= 0
            && key.s <= self.s_max
            && key.t >= 0
            && key.t <= self.t_max
            && key.u >= lo
            && key.u <= hi
    }
}

/// Ground-ring module generators per (s, aux, t) column: pairs of
/// (weight, multiplicity), highest weight first.
pub type GeneratorProfile = BTreeMap<(i64, i64, i64), Vec<(i64, usize)>>;

/// Map from trigrade to Cotor dimension over F_l. Zero entries inside the
/// stamped range are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CotorTable {
    pub ring: GroundRing,
    pub hopf: AlgebraKind,
    pub coefficients: String,
    pub range: RangeStamp,
    pub entries: BTreeMap<TableKey, CotorEntry>,
}

impl CotorTable {
    pub fn dim(&self, s: i64, aux: i64, t: i64, u: i64) -> usize {
        self.entries
            .get(&TableKey { s, aux, t, u })
            .map(|e| e.dim)
            .unwrap_or(0)
    }

    /// Dimensions summed over the auxiliary grading at a fixed (s, t, u);
    /// for the Cartan-Eilenberg table with `s = s1 + s2` this is the total
    /// ground-ring rank the collapse comparison uses.
    pub fn total_dim(&self, s: i64, t: i64, u: i64) -> usize {
        self.entries
            .iter()
            .filter(|(k, _)| k.s + k.aux == s && k.t == t && k.u == u)
            .map(|(_, e)| e.dim)
            .sum()
    }

    /// Structured text report, one line per nonzero entry.
    pub fn report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# Cotor_{} over F_{}[{}], coefficients {}\n",
            self.hopf,
            self.ring.prime,
            self.ring.ground_symbol(),
            self.coefficients
        ));
        out.push_str(&format!(
            "# range: s <= {}, t <= {}, weight window depth {}\n",
            self.range.s_max, self.range.t_max, self.range.weight_depth
        ));
        let has_aux = self.entries.keys().any(|k| k.aux != 0);
        if has_aux {
            out.push_str("#    s  aux    t    u  dim\n");
        } else {
            out.push_str("#    s    t    u  dim\n");
        }
        for (k, e) in &self.entries {
            let edge = if e.edge { "  edge-unverified" } else { "" };
            if has_aux {
                out.push_str(&format!(
                    "  {:>4} {:>4} {:>4} {:>4}  {}{}\n",
                    k.s, k.aux, k.t, k.u, e.dim, edge
                ));
            } else {
                out.push_str(&format!(
                    "  {:>4} {:>4} {:>4}  {}{}\n",
                    k.s, k.t, k.u, e.dim, edge
                ));
            }
        }
        out
    }

    /// Free-module generator profile: for each (s, aux, t), the number of
    /// ground-ring module generators in each weight, recovered from the
    /// weight dimension staircase (`dim(u) - dim(u + step)`).
    ///
    /// Every Cotor table in scope is free over the ground ring, so a
    /// negative difference signals a broken table and is reported as an
    /// error.
    pub fn free_generator_profile(&self) -> Result<GeneratorProfile> {
        let step = self.ring.weight_step();
        let mut columns: BTreeMap<(i64, i64, i64), Vec<(i64, usize)>> = BTreeMap::new();
        for (k, e) in &self.entries {
            if e.edge {
                continue;
            }
            columns
                .entry((k.s, k.aux, k.t))
                .or_default()
                .push((k.u, e.dim));
        }
        let mut out = BTreeMap::new();
        for ((s, aux, t), dims) in columns {
            let by_u: BTreeMap<i64, usize> = dims.into_iter().collect();
            let mut gens = Vec::new();
            for (&u, &dim) in by_u.iter().rev() {
                let above = by_u.get(&(u + step)).copied().unwrap_or(0);
                if dim < above {
                    return Err(Error::ComplexConstruction(format!(
                        "table is not free over the ground ring at (s={s}, t={t}, u={u}): \
                         dim {dim} < dim {above} one weight up"
                    )));
                }
                if dim > above {
                    gens.push((u, dim - above));
                }
            }
            if !gens.is_empty() {
                out.insert((s, aux, t), gens);
            }
        }
        Ok(out)
    }
}

impl CotorTable {
    /// Renders the table as a chart: cells at (s1 + s2, t - s1 - s2) with
    /// one free summand per ground-ring module generator, weights intact.
    ///
    /// Cotor charts live on a different grid than transferred charts
    /// (internal degrees need not be even), so the produced chart carries
    /// the `chart_kind = cotor-table` marker and is validated against the
    /// relaxed table rules.
    pub fn to_chart(&self) -> Result<MotivicChart> {
        let profile = self.free_generator_profile()?;
        let mut chart = MotivicChart::new(self.ring.base, self.ring.prime, Page::Infinity);
        chart
            .meta
            .build_options
            .insert("chart_kind".to_string(), "cotor-table".to_string());
        chart
            .meta
            .build_options
            .insert("hopf".to_string(), self.hopf.to_string());
        chart
            .meta
            .build_options
            .insert("coefficients".to_string(), self.coefficients.clone());
        for ((s, aux, t), gens) in profile {
            let total_s = s + aux;
            let pos = Pos::new(total_s, t - total_s);
            let entry = chart.entries.entry(pos).or_default();
            for (u, count) in gens {
                for _ in 0..count {
                    entry.summands.push(CyclicSummand::free(1, u, None));
                }
            }
        }
        Ok(chart)
    }
}

/// Index map between the algebraic Novikov E1 table and the
/// Cartan-Eilenberg E2 table: q-monomials of Novikov degree m match
/// a-monomials of polynomial degree m with the internal degree shifted by
/// the cobar filtration they carry (|a_i| = |q_i| + (0, 1) per factor).
pub fn algnov_key_to_cess(key: TableKey) -> TableKey {
    TableKey {
        s: key.s,
        aux: key.aux,
        t: key.t + key.aux,
        u: key.u,
    }
}

pub fn cess_key_to_algnov(key: TableKey) -> TableKey {
    TableKey {
        s: key.s,
        aux: key.aux,
        t: key.t - key.aux,
        u: key.u,
    }
}
