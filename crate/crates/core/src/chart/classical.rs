//! Classical Adams-Novikov E2 charts: the tool's primary input.

use std::collections::BTreeMap;

use crate::chart::types::{Order, Pos};
use crate::error::{Error, Result, Violation};

/// One cyclic group in a classical chart cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalGroup {
    /// Z/l^n, or Z_l when infinite (origin only).
    pub l_exp: Order,
    pub label: String,
}

/// A recorded differential: an integer matrix on the named generators of
/// the source and target cells (rows indexed by target generators, columns
/// by source generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalDifferential {
    pub page: i64,
    pub source: Pos,
    pub target: Pos,
    pub matrix: Vec<Vec<i64>>,
}

/// Classical ANSS E2 data with differential records and per-cell
/// provenance notes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalChart {
    pub prime: u64,
    pub groups: BTreeMap<Pos, Vec<ClassicalGroup>>,
    pub differentials: Vec<ClassicalDifferential>,
    pub provenance: BTreeMap<Pos, String>,
    pub schema: u32,
}

impl ClassicalChart {
    /// A chart holding only Z_l at the origin.
    pub fn empty(prime: u64) -> Self {
        let mut groups = BTreeMap::new();
        groups.insert(
            Pos::new(0, 0),
            vec![ClassicalGroup {
                l_exp: Order::Infinite,
                label: "1".to_string(),
            }],
        );
        ClassicalChart {
            prime,
            groups,
            differentials: Vec::new(),
            provenance: BTreeMap::new(),
            schema: 1,
        }
    }

    pub fn q(&self) -> i64 {
        2 * self.prime as i64 - 2
    }

    /// Checks every structural invariant; returns the full violation list
    /// rather than stopping at the first.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        if self.prime < 3 || self.prime.is_multiple_of(2) {
            violations.push(Violation::global(
                "prime",
                format!(
                    "prime {} is not an odd prime (prime 2 unsupported)",
                    self.prime
                ),
            ));
        }
        let q = self.q();
        let origin = Pos::new(0, 0);
        match self.groups.get(&origin) {
            Some(gs) if gs.len() == 1 && gs[0].l_exp == Order::Infinite => {}
            Some(_) => violations.push(Violation::at(
                0,
                0,
                "origin",
                "the origin must hold exactly one copy of Z_l",
            )),
            None => violations.push(Violation::at(
                0,
                0,
                "origin",
                "missing origin entry (a single Z_l)",
            )),
        }
        for (pos, gs) in &self.groups {
            if gs.is_empty() {
                violations.push(Violation::at(
                    pos.s,
                    pos.stem,
                    "empty-cell",
                    "cell lists no groups",
                ));
                continue;
            }
            if pos.s < 0 {
                violations.push(Violation::at(pos.s, pos.stem, "filtration", "s < 0"));
            }
            // vanishing line: groups vanish when stem < s
            if pos.stem < pos.s {
                violations.push(Violation::at(
                    pos.s,
                    pos.stem,
                    "vanishing-line",
                    format!("stem {} < filtration {}", pos.stem, pos.s),
                ));
            }
            // sparseness: q | t
            if pos.t().rem_euclid(q) != 0 {
                violations.push(Violation::at(
                    pos.s,
                    pos.stem,
                    "sparseness",
                    format!("t = {} not divisible by q = {q}", pos.t()),
                ));
            }
            // away from the origin every group is a finite l-group
            if *pos != origin {
                for g in gs {
                    if g.l_exp == Order::Infinite {
                        violations.push(Violation::at(
                            pos.s,
                            pos.stem,
                            "finite-l-group",
                            format!("group '{}' is Z_l away from the origin", g.label),
                        ));
                    }
                }
            }
            // labels must be unique within a cell (matrices refer to them)
            let mut labels: Vec<&str> = gs.iter().map(|g| g.label.as_str()).collect();
            labels.sort_unstable();
            labels.dedup();
            if labels.len() != gs.len() {
                violations.push(Violation::at(
                    pos.s,
                    pos.stem,
                    "duplicate-labels",
                    "repeated generator label in cell",
                ));
            }
        }
        for d in &self.differentials {
            self.validate_differential(d, q, &mut violations);
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Invariant(violations))
        }
    }

    fn validate_differential(
        &self,
        d: &ClassicalDifferential,
        q: i64,
        violations: &mut Vec<Violation>,
    ) {
        let (s, stem) = (d.source.s, d.source.stem);
        if d.page < 2 || d.page.rem_euclid(q) != 1 {
            violations.push(Violation::at(
                s,
                stem,
                "differential-page",
                format!("page {} != 1 mod q = {q}", d.page),
            ));
        }
        let expect = Pos::new(d.source.s + d.page, d.source.stem - 1);
        if d.target != expect {
            violations.push(Violation::at(
                s,
                stem,
                "differential-target",
                format!("d_{} target {} should be {}", d.page, d.target, expect),
            ));
        }
        let (Some(src), Some(tgt)) = (self.groups.get(&d.source), self.groups.get(&d.target))
        else {
            violations.push(Violation::at(
                s,
                stem,
                "differential-cells",
                "source or target cell has no groups",
            ));
            return;
        };
        if d.matrix.len() != tgt.len() || d.matrix.iter().any(|row| row.len() != src.len()) {
            violations.push(Violation::at(
                s,
                stem,
                "differential-shape",
                format!(
                    "matrix must be {} x {} (target gens x source gens)",
                    tgt.len(),
                    src.len()
                ),
            ));
            return;
        }
        // column j must be annihilated by the source generator's order:
        // l^{n_j} * D[i][j] = 0 mod l^{n_i}, i.e. l^{max(0, n_i - n_j)} | D[i][j]
        for (i, row) in d.matrix.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                let (Some(ni), Some(nj)) = (tgt[i].l_exp.finite(), src[j].l_exp.finite()) else {
                    violations.push(Violation::at(
                        s,
                        stem,
                        "differential-origin",
                        "differential touches the origin Z_l",
                    ));
                    continue;
                };
                let need = ni.saturating_sub(nj);
                let modulus = (self.prime as i64).pow(need);
                if c.rem_euclid(modulus) != 0 {
                    violations.push(Violation::at(
                        s,
                        stem,
                        "differential-order",
                        format!(
                            "entry {c} at ({i},{j}) exceeds order bound: l^{need} must divide it"
                        ),
                    ));
                }
            }
        }
    }

    /// Differentials acting at the given page, in deterministic processing
    /// order (source filtration, then stem).
    pub fn differentials_at(&self, page: i64) -> Vec<&ClassicalDifferential> {
        let mut ds: Vec<_> = self
            .differentials
            .iter()
            .filter(|d| d.page == page)
            .collect();
        ds.sort_by_key(|d| (d.source.s, d.source.stem));
        ds
    }

    /// Pages at which a classical differential is recorded, ascending.
    pub fn differential_pages(&self) -> Vec<i64> {
        let mut pages: Vec<i64> = self.differentials.iter().map(|d| d.page).collect();
        pages.sort_unstable();
        pages.dedup();
        pages
    }
}
