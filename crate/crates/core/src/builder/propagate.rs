//! Page propagation with exact tau/theta-torsion bookkeeping.
//!
//! A classical differential d_r(x) = c y lifts to the trigraded chart as
//! d_r on the weight-t/2 generator, hitting ground^((r-1)/2step) times the
//! target generator. Passing to homology deletes the kernel complement on
//! the source and replaces the hit part of the target by ground-torsion of
//! order (r-1)/2 (in weight units); mixed-order images leave a presented
//! entry behind. Created torsion never takes part in any later
//! differential.

use num_bigint::BigInt;

use crate::chart::{
    kernel_invariants, normalize_entry, ClassicalChart, ClassicalDifferential, CyclicSummand,
    Entry, MotivicChart, NormalizeOutcome, Order, Page, Pos, PresentedEntry, RelCoef,
};
use crate::error::{Error, Result};
use crate::steenrod::BaseField;

/// One created torsion class (or retained presentation), with the
/// classical differential that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionRecord {
    pub position: Pos,
    pub summand: Option<CyclicSummand>,
    /// Set when the cell was left as a non-split presentation instead.
    pub non_split: bool,
    pub origin_page: i64,
    pub origin_source: Pos,
}

impl TorsionRecord {
    pub fn describe(&self, ground: &str) -> String {
        match (&self.summand, self.non_split) {
            (Some(s), _) => format!(
                "page {}: d{}{} -> {}: torsion Z/l^{}[{g}]/({g}^{}) at weight {}",
                self.origin_page,
                self.origin_page,
                self.origin_source,
                self.position,
                match s.l_exp {
                    Order::Finite(m) => m.to_string(),
                    Order::Infinite => "inf".to_string(),
                },
                match s.tau_exp {
                    Order::Finite(k) => k.to_string(),
                    Order::Infinite => "inf".to_string(),
                },
                s.gen_weight,
                g = ground,
            ),
            (None, true) => format!(
                "page {}: d{}{} -> {}: non-split entry retained as a presentation",
                self.origin_page, self.origin_page, self.origin_source, self.position
            ),
            _ => String::new(),
        }
    }
}

/// A chart at a page together with the classical differentials not yet
/// consumed and the log of torsion created so far.
#[derive(Debug, Clone)]
pub struct PageState {
    chart: MotivicChart,
    pending: Vec<ClassicalDifferential>,
    torsion_log: Vec<TorsionRecord>,
}

impl PageState {
    /// Starts at the E2 page of the given classical chart.
    pub fn build_e2(classical: &ClassicalChart, base: BaseField) -> Result<PageState> {
        let chart = super::build_e2(classical, base)?;
        let mut pending = classical.differentials.clone();
        pending.sort_by_key(|d| (d.page, d.source.s, d.source.stem));
        Ok(PageState {
            chart,
            pending,
            torsion_log: Vec::new(),
        })
    }

    pub fn chart(&self) -> &MotivicChart {
        &self.chart
    }

    pub fn into_chart(self) -> MotivicChart {
        self.chart
    }

    pub fn pending(&self) -> &[ClassicalDifferential] {
        &self.pending
    }

    pub fn torsion_log(&self) -> &[TorsionRecord] {
        &self.torsion_log
    }

    pub fn page(&self) -> Page {
        self.chart.page
    }

    /// Advances to the requested page, consuming every pending classical
    /// differential whose page lies below it (all of them for
    /// `Page::Infinity`).
    pub fn propagate(mut self, to_page: Page) -> Result<PageState> {
        let current = match self.chart.page {
            Page::R(r) => r,
            Page::Infinity => {
                return match to_page {
                    Page::Infinity => Ok(self),
                    Page::R(_) => Err(Error::Sequencing(
                        "cannot step backwards from the E-infinity page".to_string(),
                    )),
                }
            }
        };
        if let Page::R(r) = to_page {
            if r < current {
                return Err(Error::Sequencing(format!(
                    "cannot step backwards from page {current} to page {r}"
                )));
            }
        }
        while let Some(next_page) = self.pending.first().map(|d| d.page) {
            if next_page < current {
                return Err(Error::Sequencing(format!(
                    "pending differential at page {next_page} behind the current page {current}"
                )));
            }
            if let Page::R(r) = to_page {
                if next_page >= r {
                    break;
                }
            }
            let batch: Vec<ClassicalDifferential> = {
                let mut batch = Vec::new();
                while self.pending.first().map(|d| d.page) == Some(next_page) {
                    batch.push(self.pending.remove(0));
                }
                batch
            };
            for d in &batch {
                self.apply_differential(d)?;
            }
            self.chart.page = Page::R(next_page + 1);
            self.chart.validate()?;
        }
        match to_page {
            Page::R(r) => self.chart.page = Page::R(r),
            Page::Infinity => {}
        }
        Ok(self)
    }

    /// Finishes the spectral sequence. Errors if classical differentials
    /// are still pending.
    pub fn compute_einf(mut self) -> Result<PageState> {
        if !self.pending.is_empty() {
            return Err(Error::Sequencing(format!(
                "{} classical differential(s) not yet consumed; propagate past them first",
                self.pending.len()
            )));
        }
        self.chart.page = Page::Infinity;
        self.chart.validate()?;
        Ok(self)
    }

    /// Convenience: propagate everything and land on E-infinity.
    pub fn run_to_einf(self) -> Result<PageState> {
        self.propagate(Page::Infinity)?.compute_einf()
    }

    /// Text log of every torsion class with its originating classical
    /// differential.
    pub fn propagation_log(&self) -> String {
        let ground = self.chart.ring().ground_symbol();
        let mut out = String::new();
        for rec in &self.torsion_log {
            out.push_str(&rec.describe(ground));
            out.push('\n');
        }
        out
    }

    fn apply_differential(&mut self, d: &ClassicalDifferential) -> Result<()> {
        let l = self.chart.prime;
        let ring = self.chart.ring();
        let step = ring.weight_step();
        let weight_drop = (d.page - 1) / 2;
        if weight_drop % step != 0 {
            return Err(Error::Sequencing(format!(
                "differential d{} drops weight by {weight_drop}, not a multiple of the \
                 ground step {step}",
                d.page
            )));
        }
        let ground_pow = (weight_drop / step) as u32;

        let source = self
            .chart
            .entries
            .get(&d.source)
            .cloned()
            .unwrap_or_default();
        let target = self
            .chart
            .entries
            .get(&d.target)
            .cloned()
            .unwrap_or_default();
        for (pos, entry) in [(d.source, &source), (d.target, &target)] {
            if entry.presentation.is_some() {
                return Err(Error::UnsupportedDifferential(format!(
                    "cell {pos} holds a non-split presentation from an earlier page"
                )));
            }
        }
        let src_free: Vec<&CyclicSummand> =
            source.summands.iter().filter(|s| !s.is_torsion()).collect();
        let tgt_free: Vec<&CyclicSummand> =
            target.summands.iter().filter(|s| !s.is_torsion()).collect();
        if d.matrix.len() != tgt_free.len()
            || d.matrix.iter().any(|row| row.len() != src_free.len())
        {
            return Err(Error::UnsupportedDifferential(format!(
                "d{} {} -> {}: matrix is {}x{} but the cells hold {} and {} free summand(s); \
                 matrices address the surviving free generators at the acting page",
                d.page,
                d.source,
                d.target,
                d.matrix.len(),
                d.matrix.first().map(|r| r.len()).unwrap_or(0),
                src_free.len(),
                tgt_free.len(),
            )));
        }
        for s in src_free.iter().chain(tgt_free.iter()) {
            if s.l_exp == Order::Infinite {
                return Err(Error::UnsupportedDifferential(format!(
                    "d{} touches the origin tower",
                    d.page
                )));
            }
        }
        // order bounds against the generators surviving at this page (they
        // may be smaller than the ones the loader validated at E2)
        for (i, row) in d.matrix.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                let ni = tgt_free[i].l_exp.finite().expect("checked above");
                let nj = src_free[j].l_exp.finite().expect("checked above");
                let need = (l as i64).pow(ni.saturating_sub(nj));
                if c.rem_euclid(need) != 0 {
                    return Err(Error::UnsupportedDifferential(format!(
                        "d{} {} -> {}: entry {c} at ({i},{j}) exceeds the order bound of the                          surviving generators",
                        d.page, d.source, d.target
                    )));
                }
            }
        }
        if d.matrix.iter().all(|row| row.iter().all(|&c| c == 0)) {
            // zero image: nothing happens on this page
            return Ok(());
        }

        // source side: the kernel of the classical map, still free with the
        // same generator weight
        let w_src = d.source.t() / 2;
        let src_orders: Vec<BigInt> = src_free
            .iter()
            .map(|s| BigInt::from(l).pow(s.l_exp.finite().expect("checked above")))
            .collect();
        let tgt_orders: Vec<BigInt> = tgt_free
            .iter()
            .map(|s| BigInt::from(l).pow(s.l_exp.finite().expect("checked above")))
            .collect();
        let kernel = kernel_invariants(&src_orders, &tgt_orders, &d.matrix);
        let mut new_source = Entry {
            summands: source
                .summands
                .iter()
                .filter(|s| s.is_torsion())
                .cloned()
                .collect(),
            presentation: None,
        };
        for factor in &kernel {
            let m = big_l_exponent(factor, l)?;
            if m > 0 {
                new_source
                    .summands
                    .push(CyclicSummand::free(m, w_src, None));
            }
        }

        // target side: quotient by ground^k times the image, normalized
        let w_tgt = d.target.t() / 2;
        debug_assert_eq!(w_tgt, w_src + weight_drop);
        let mut generators = Vec::new();
        let mut relations = Vec::new();
        for (i, s) in tgt_free.iter().enumerate() {
            generators.push((w_tgt, s.label.clone()));
            let mut rel = vec![RelCoef::zero(); tgt_free.len()];
            rel[i] = RelCoef {
                coeff: (l as i64).pow(s.l_exp.finite().expect("checked above")),
                tau_pow: 0,
            };
            relations.push(rel);
        }
        for j in 0..src_free.len() {
            let rel: Vec<RelCoef> = (0..tgt_free.len())
                .map(|i| RelCoef {
                    coeff: d.matrix[i][j],
                    tau_pow: ground_pow,
                })
                .collect();
            if rel.iter().any(|c| c.coeff != 0) {
                relations.push(rel);
            }
        }
        let presented = PresentedEntry::new(generators, relations);
        let mut new_target = Entry {
            summands: target
                .summands
                .iter()
                .filter(|s| s.is_torsion())
                .cloned()
                .collect(),
            presentation: None,
        };
        match normalize_entry(&presented, &ring)? {
            NormalizeOutcome::Split(summands) => {
                for s in summands {
                    if s.is_torsion() {
                        self.torsion_log.push(TorsionRecord {
                            position: d.target,
                            summand: Some(s.clone()),
                            non_split: false,
                            origin_page: d.page,
                            origin_source: d.source,
                        });
                    }
                    new_target.summands.push(s);
                }
            }
            NormalizeOutcome::NonSplit(pe) => {
                self.torsion_log.push(TorsionRecord {
                    position: d.target,
                    summand: None,
                    non_split: true,
                    origin_page: d.page,
                    origin_source: d.source,
                });
                new_target.presentation = Some(pe);
            }
        }

        store_entry(&mut self.chart, d.source, new_source);
        store_entry(&mut self.chart, d.target, new_target);

        // torsion inertness: everything logged so far must still be present
        for rec in &self.torsion_log {
            if rec.non_split {
                continue;
            }
            let present = self
                .chart
                .entries
                .get(&rec.position)
                .map(|e| e.summands.iter().any(|s| Some(s) == rec.summand.as_ref()))
                .unwrap_or(false);
            if !present {
                return Err(Error::Invariant(vec![crate::error::Violation::at(
                    rec.position.s,
                    rec.position.stem,
                    "torsion-inertness",
                    "a previously created torsion summand was modified",
                )]));
            }
        }
        Ok(())
    }
}

fn store_entry(chart: &mut MotivicChart, pos: Pos, entry: Entry) {
    if entry.is_empty() {
        chart.entries.remove(&pos);
    } else {
        chart.entries.insert(pos, entry);
    }
}

fn big_l_exponent(order: &BigInt, l: u64) -> Result<u32> {
    use num_traits::{One, Zero};
    let lb = BigInt::from(l);
    let mut o = order.clone();
    let mut v = 0;
    if o.is_zero() {
        return Err(Error::UnsupportedDifferential(
            "infinite-order factor in a differential computation".to_string(),
        ));
    }
    while (&o % &lb).is_zero() {
        o /= &lb;
        v += 1;
    }
    if !o.is_one() {
        return Err(Error::UnsupportedDifferential(format!(
            "non-l-power order {order} in a differential computation"
        )));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::parse_classical;

    /// The bundled core fixture inline: the single differential the
    /// classical chart forces at l = 3.
    const L3_CORE: &str = "\
prime = 3
[groups]
0,0: l^inf 1
1,3: l^1 alpha_1
1,7: l^1 alpha_2
2,10: l^1 beta_1
2,34: l^1 beta_3/3
7,33: l^1 alpha_1.beta_1^3
[differentials]
5: 2,34 -> 7,33 : [1]
";

    #[test]
    fn d5_creates_the_expected_torsion_class() {
        let classical = parse_classical(L3_CORE).unwrap();
        let state = PageState::build_e2(&classical, BaseField::C).unwrap();
        let state = state.run_to_einf().unwrap();
        let chart = state.chart();
        // source deleted
        assert!(!chart.entries.contains_key(&Pos::new(2, 34)));
        // target replaced by one torsion summand Z/3[tau]/(tau^2), weight
        // (36 + 4)/2 = 20
        let entry = &chart.entries[&Pos::new(7, 33)];
        assert_eq!(entry.summands, vec![CyclicSummand::torsion(1, 2, 20, None)]);
        assert!(entry.presentation.is_none());
        // survivors unchanged
        assert!(chart.entries.contains_key(&Pos::new(1, 3)));
        assert!(chart.entries.contains_key(&Pos::new(1, 7)));
        assert!(chart.entries.contains_key(&Pos::new(2, 10)));
        // log records exactly one torsion class
        assert_eq!(state.torsion_log().len(), 1);
        assert_eq!(state.torsion_log()[0].origin_page, 5);
    }

    #[test]
    fn over_r_the_theta_order_is_half() {
        let classical = parse_classical(L3_CORE).unwrap();
        let state = PageState::build_e2(&classical, BaseField::R).unwrap();
        let state = state.run_to_einf().unwrap();
        let entry = &state.chart().entries[&Pos::new(7, 33)];
        assert_eq!(entry.summands, vec![CyclicSummand::torsion(1, 1, 20, None)]);
    }

    #[test]
    fn no_differentials_means_identity_propagation() {
        let classical =
            parse_classical("prime = 3\n[groups]\n0,0: l^inf 1\n1,3: l^1 alpha_1\n").unwrap();
        let state = PageState::build_e2(&classical, BaseField::C).unwrap();
        let e2_entries = state.chart().entries.clone();
        let state = state.propagate(Page::R(9)).unwrap();
        assert_eq!(state.chart().entries, e2_entries);
        assert_eq!(state.chart().page, Page::R(9));
        let state = state.run_to_einf().unwrap();
        assert_eq!(state.chart().entries, e2_entries);
    }

    #[test]
    fn einf_with_pending_differentials_is_a_sequencing_error() {
        let classical = parse_classical(L3_CORE).unwrap();
        let state = PageState::build_e2(&classical, BaseField::C).unwrap();
        // stop before page 5 consumes the d5
        let state = state.propagate(Page::R(5)).unwrap();
        assert!(matches!(state.compute_einf(), Err(Error::Sequencing(_))));
    }

    #[test]
    fn partial_order_image_leaves_a_presentation() {
        // d5: Z/9 --3--> Z/9 (both weight-bearing cells chosen on the grid)
        let classical = parse_classical(
            "prime = 3
[groups]
0,0: l^inf 1
2,10: l^2 x
7,9: l^2 y
[differentials]
5: 2,10 -> 7,9 : [3]
",
        )
        .unwrap();
        let state = PageState::build_e2(&classical, BaseField::C).unwrap();
        let state = state.run_to_einf().unwrap();
        let chart = state.chart();
        // kernel of multiplication by 3 on Z/9 is Z/3, still free, weight 6
        let src = &chart.entries[&Pos::new(2, 10)];
        assert_eq!(src.summands, vec![CyclicSummand::free(1, 6, None)]);
        // target retains a non-split presentation <y | 9y, 3 tau^2 y>
        let tgt = &chart.entries[&Pos::new(7, 9)];
        assert!(tgt.summands.is_empty());
        let p = tgt.presentation.as_ref().expect("non-split entry");
        assert!(p.non_split);
        // slices: Z/9 at weights 8 and 7, then Z/3
        let ring = chart.ring();
        assert_eq!(tgt.slice(8, &ring), vec![BigInt::from(9)]);
        assert_eq!(tgt.slice(7, &ring), vec![BigInt::from(9)]);
        assert_eq!(tgt.slice(6, &ring), vec![BigInt::from(3)]);
    }

    #[test]
    fn later_differentials_on_presented_cells_are_rejected() {
        // d5 leaves (7,21) non-split; the d9 out of it must be refused
        let classical = parse_classical(
            "prime = 3
[groups]
0,0: l^inf 1
2,22: l^2 x
7,21: l^2 y
16,20: l^1 w
[differentials]
5: 2,22 -> 7,21 : [3]
9: 7,21 -> 16,20 : [3]
",
        )
        .unwrap();
        let state = PageState::build_e2(&classical, BaseField::C).unwrap();
        let err = state.run_to_einf();
        assert!(matches!(err, Err(Error::UnsupportedDifferential(_))));
    }

    #[test]
    fn rank_one_matrix_on_two_generator_cells() {
        // d5 on Z/3 + Z/3 -> Z/3 + Z/3 with matrix [1 0; 0 0]: the kernel
        // keeps one free generator; the target splits into one torsion
        // class (the hit generator) plus one untouched free class
        let classical = parse_classical(
            "prime = 3
[groups]
0,0: l^inf 1
2,34: l^1 x1, l^1 x2
7,33: l^1 y1, l^1 y2
[differentials]
5: 2,34 -> 7,33 : [1 0; 0 0]
",
        )
        .unwrap();
        let state = PageState::build_e2(&classical, BaseField::C).unwrap();
        let state = state.run_to_einf().unwrap();
        let chart = state.chart();
        let src = &chart.entries[&Pos::new(2, 34)];
        assert_eq!(src.summands, vec![CyclicSummand::free(1, 18, None)]);
        let tgt = &chart.entries[&Pos::new(7, 33)];
        assert!(tgt.presentation.is_none());
        let mut got = tgt.summands.clone();
        got.sort_by_key(|s| s.tau_exp);
        assert_eq!(
            got,
            vec![
                CyclicSummand::torsion(1, 2, 20, None),
                CyclicSummand::free(1, 20, None),
            ]
        );
        assert_eq!(state.torsion_log().len(), 1);
    }

    #[test]
    fn shrunk_source_orders_invalidate_later_matrices() {
        // d5 shrinks (2,22) from Z/9 to its Z/3 kernel; the recorded d9
        // out of it maps onto Z/9 with a unit, legal against the E2
        // orders but not against the survivor
        let classical = parse_classical(
            "prime = 3
[groups]
0,0: l^inf 1
2,22: l^2 x
7,21: l^2 y
11,21: l^2 z
[differentials]
5: 2,22 -> 7,21 : [3]
9: 2,22 -> 11,21 : [1]
",
        )
        .unwrap();
        let state = PageState::build_e2(&classical, BaseField::C).unwrap();
        let err = state.run_to_einf();
        assert!(
            matches!(err, Err(Error::UnsupportedDifferential(_))),
            "{err:?}"
        );
    }

    #[test]
    fn torsion_survives_later_pages() {
        // two disjoint differentials at pages 5 and 9
        let classical = parse_classical(
            "prime = 3
[groups]
0,0: l^inf 1
2,34: l^1 b
7,33: l^1 ab
1,19: l^1 c
10,18: l^1 d
[differentials]
5: 2,34 -> 7,33 : [1]
9: 1,19 -> 10,18 : [1]
",
        )
        .unwrap();
        let state = PageState::build_e2(&classical, BaseField::C).unwrap();
        let state = state.run_to_einf().unwrap();
        let chart = state.chart();
        // both torsion classes present: orders (5-1)/2 = 2 and (9-1)/2 = 4
        assert_eq!(
            chart.entries[&Pos::new(7, 33)].summands,
            vec![CyclicSummand::torsion(1, 2, 20, None)]
        );
        assert_eq!(
            chart.entries[&Pos::new(10, 18)].summands,
            vec![CyclicSummand::torsion(1, 4, 14, None)]
        );
        assert_eq!(state.torsion_log().len(), 2);
    }
}
