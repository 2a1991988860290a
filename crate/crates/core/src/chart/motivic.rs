//! Trigraded charts over C and R: entries, pages, validation, slices.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::chart::types::{CyclicSummand, Order, Pos, PresentedEntry, Trigrade};
use crate::error::{Error, Result, Violation};
use crate::linalg::quotient_invariants;
use crate::steenrod::{BaseField, GroundRing};

/// Spectral sequence page index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Page {
    R(i64),
    Infinity,
}

impl std::fmt::Display for Page {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Page::R(r) => write!(f, "{r}"),
            Page::Infinity => write!(f, "inf"),
        }
    }
}

/// One chart cell: a list of cyclic summands, plus an optional retained
/// presentation when part of the cell failed to split.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Entry {
    pub summands: Vec<CyclicSummand>,
    pub presentation: Option<PresentedEntry>,
}

impl Entry {
    pub fn is_empty(&self) -> bool {
        self.summands.is_empty() && self.presentation.is_none()
    }

    /// Invariant factors (as l-power orders, `0` for infinite cyclic) of
    /// the weight-u slice of this entry.
    pub fn slice(&self, u: i64, ring: &GroundRing) -> Vec<BigInt> {
        let mut orders: Vec<BigInt> = Vec::new();
        for s in &self.summands {
            if let Some(o) = s.slice_order(u, ring) {
                orders.push(BigInt::from(o));
            }
        }
        if let Some(p) = &self.presentation {
            orders.extend(presentation_slice(p, u, ring));
        }
        // canonical form: merge into a single invariant-factor list
        let relations: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, o)| !num_traits::Zero::is_zero(*o))
            .map(|(i, o)| {
                let mut col = vec![BigInt::from(0); orders.len()];
                col[i] = o.clone();
                col
            })
            .collect();
        quotient_invariants(orders.len(), &relations)
    }
}

/// Weight-u slice of a presentation as an abstract finite abelian group.
pub fn presentation_slice(p: &PresentedEntry, u: i64, ring: &GroundRing) -> Vec<BigInt> {
    let step = ring.weight_step();
    let gens: Vec<usize> = (0..p.generators.len())
        .filter(|&j| {
            let off = p.generators[j].0 - u;
            off >= 0 && off % step == 0
        })
        .collect();
    if gens.is_empty() {
        return Vec::new();
    }
    let mut relations = Vec::new();
    for rel in &p.relations {
        let Ok(Some(w)) = p.relation_weight(rel, ring) else {
            continue;
        };
        let off = w - u;
        if off < 0 || off % step != 0 {
            continue;
        }
        let col: Vec<BigInt> = gens
            .iter()
            .map(|&j| BigInt::from(rel.get(j).map(|c| c.coeff).unwrap_or(0)))
            .collect();
        relations.push(col);
    }
    quotient_invariants(gens.len(), &relations)
}

/// Build metadata carried with every chart.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChartMeta {
    pub fixture_sha256: Option<String>,
    pub build_options: BTreeMap<String, String>,
}

/// A trigraded chart at a fixed page over a fixed base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotivicChart {
    pub base: BaseField,
    pub prime: u64,
    pub page: Page,
    pub entries: BTreeMap<Pos, Entry>,
    pub meta: ChartMeta,
}

impl MotivicChart {
    pub fn new(base: BaseField, prime: u64, page: Page) -> Self {
        MotivicChart {
            base,
            prime,
            page,
            entries: BTreeMap::new(),
            meta: ChartMeta::default(),
        }
    }

    pub fn ring(&self) -> GroundRing {
        GroundRing {
            base: self.base,
            prime: self.prime,
        }
    }

    pub fn q(&self) -> i64 {
        2 * self.prime as i64 - 2
    }

    pub fn entry(&self, pos: Pos) -> Option<&Entry> {
        self.entries.get(&pos)
    }

    /// Weight slice of one trigraded position, as invariant factors
    /// (empty when the cell is empty or the weight is unreachable).
    pub fn slice_at(&self, g: Trigrade) -> Vec<BigInt> {
        let ring = self.ring();
        self.entries
            .get(&g.pos())
            .map(|e| e.slice(g.u, &ring))
            .unwrap_or_default()
    }

    /// True for charts holding a Cotor table rather than transferred
    /// classical data; these live on a different grid (internal degrees
    /// need not be even) and skip the transfer-specific invariants.
    pub fn is_table_chart(&self) -> bool {
        self.meta
            .build_options
            .get("chart_kind")
            .map(|k| k == "cotor-table")
            .unwrap_or(false)
    }

    /// Checks all chart invariants, reporting every violation.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        let ring = self.ring();
        let q = self.q();
        let table = self.is_table_chart();
        if let Page::R(r) = self.page {
            if r < 2 {
                violations.push(Violation::global("page", format!("page {r} < 2")));
            }
        }
        for (pos, entry) in &self.entries {
            if entry.is_empty() {
                continue;
            }
            let t = pos.t();
            if pos.s < 0 {
                violations.push(Violation::at(pos.s, pos.stem, "filtration", "s < 0"));
            }
            if !table && pos.stem < pos.s {
                violations.push(Violation::at(
                    pos.s,
                    pos.stem,
                    "vanishing-line",
                    format!("stem {} < filtration {}", pos.stem, pos.s),
                ));
            }
            if !table && t.rem_euclid(q) != 0 {
                violations.push(Violation::at(
                    pos.s,
                    pos.stem,
                    "sparseness",
                    format!("t = {t} not divisible by q = {q}"),
                ));
            }
            for s in &entry.summands {
                // weight bound: generators never exceed t/2, free summands
                // of transferred charts sit exactly at t/2
                if 2 * s.gen_weight > t {
                    violations.push(Violation::at(
                        pos.s,
                        pos.stem,
                        "weight-bound",
                        format!("generator weight {} exceeds t/2 = {}/2", s.gen_weight, t),
                    ));
                }
                if !table && !s.is_torsion() && 2 * s.gen_weight != t {
                    violations.push(Violation::at(
                        pos.s,
                        pos.stem,
                        "free-weight",
                        format!("free summand weight {} != t/2", s.gen_weight),
                    ));
                }
                if s.l_exp == Order::Infinite && *pos != Pos::new(0, 0) {
                    violations.push(Violation::at(
                        pos.s,
                        pos.stem,
                        "origin-only-zl",
                        "Z_l summand away from the origin",
                    ));
                }
            }
            if let Some(p) = &entry.presentation {
                for &(w, _) in &p.generators {
                    if 2 * w > t {
                        violations.push(Violation::at(
                            pos.s,
                            pos.stem,
                            "weight-bound",
                            format!("presentation generator weight {w} exceeds t/2"),
                        ));
                    }
                }
                for rel in &p.relations {
                    if let Err(Error::Invariant(vs)) = p.relation_weight(rel, &ring) {
                        for mut v in vs {
                            v.s = Some(pos.s);
                            v.stem = Some(pos.stem);
                            violations.push(v);
                        }
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Invariant(violations))
        }
    }

    /// Largest filtration and stem with a nonempty entry.
    pub fn extent(&self) -> (i64, i64) {
        let mut max_s = 0;
        let mut max_stem = 0;
        for (pos, e) in &self.entries {
            if e.is_empty() {
                continue;
            }
            max_s = max_s.max(pos.s);
            max_stem = max_stem.max(pos.stem);
        }
        (max_s, max_stem)
    }
}
