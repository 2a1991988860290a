//! Acceptance suite: one test per acceptance criterion, each printing a
//! pass/fail line (run with `--nocapture` to see them).
//!
//! Oracles here are independent of the code paths they check: monomial
//! counts are recomputed combinatorially in this file, and chart
//! propagation is compared against per-weight finite-group homology.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use manss_core::builder::{
    base_change, query_pi, realize_weight0, same_classical_groups, weight_slice_oracle_check,
    PageState,
};
use manss_core::chart::{
    load_classical, random_classical, CyclicSummand, Page, Pos, RandomChartConfig,
};
use manss_core::cobar::{
    algnov_e1, algnov_key_to_cess, cess_e2, cess_key_to_algnov, cotor, Comodule, ComoduleKind,
    CotorRange,
};
use manss_core::steenrod::{AlgebraKind, BaseField, DualAlgebra, EnumBounds, GroundRing};
use manss_core::ExecMode;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn report<F>(criterion: u32, name: &str, body: F)
where
    F: FnOnce() -> Result<String, String>,
{
    match body() {
        Ok(detail) => println!("criterion {criterion} PASS: {name}: {detail}"),
        Err(e) => {
            println!("criterion {criterion} FAIL: {name}: {e}");
            panic!("criterion {criterion} failed: {e}");
        }
    }
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    if elapsed > budget {
        return Err(format!("runtime {elapsed:?} exceeds the {budget:?} budget"));
    }
    Ok(elapsed)
}

/// l = 3 over C: building the core fixture to E-infinity yields at
/// (s = 7, stem = 33) exactly one torsion summand with tau-order 2,
/// l-order 1, generator weight 20, and deletes the source summand at
/// (2, 34). Budget: 5 seconds.
#[test]
fn criterion_1_first_differential() {
    report(1, "first-differential reproduction", || {
        let start = Instant::now();
        let classical = load_classical(&fixture("l3-core.chart")).map_err(|e| e.to_string())?;
        let state = PageState::build_e2(&classical, BaseField::C)
            .map_err(|e| e.to_string())?
            .run_to_einf()
            .map_err(|e| e.to_string())?;
        let chart = state.chart();
        let entry = chart
            .entries
            .get(&Pos::new(7, 33))
            .ok_or("no entry at (7, 33)")?;
        let expect = vec![CyclicSummand::torsion(1, 2, 20, None)];
        if entry.summands != expect {
            return Err(format!("(7,33) holds {:?}", entry.summands));
        }
        if entry.presentation.is_some() {
            return Err("(7,33) unexpectedly retains a presentation".to_string());
        }
        if chart.entries.contains_key(&Pos::new(2, 34)) {
            return Err("source summand at (2,34) survived".to_string());
        }
        let elapsed = within(start, Duration::from_secs(5))?;
        Ok(format!(
            "one summand Z/3[tau]/(tau^2) at weight 20, source deleted ({elapsed:?})"
        ))
    });
}

/// Hopf-map weights: over C the l = 3 fixture places alpha_1 at (1, 3)
/// with weight 2 and alpha_2 at (1, 7) with weight 4; at l = 5 the
/// one-cell fixture places alpha_1 at (1, 7) with weight 4. Exact match.
#[test]
fn criterion_2_hopf_map_weights() {
    report(2, "Hopf-map weights", || {
        let l3 = load_classical(&fixture("l3-core.chart")).map_err(|e| e.to_string())?;
        let chart = manss_core::builder::build_e2(&l3, BaseField::C).map_err(|e| e.to_string())?;
        let check = |chart: &manss_core::chart::MotivicChart,
                     pos: Pos,
                     weight: i64|
         -> Result<(), String> {
            let entry = chart
                .entries
                .get(&pos)
                .ok_or(format!("no entry at {pos}"))?;
            let s = entry.summands.first().ok_or(format!("empty cell {pos}"))?;
            if s.gen_weight != weight || s.l_exp != manss_core::chart::Order::Finite(1) {
                return Err(format!(
                    "{pos}: weight {} order {:?}, expected weight {weight} order l^1",
                    s.gen_weight, s.l_exp
                ));
            }
            Ok(())
        };
        check(&chart, Pos::new(1, 3), 2)?;
        check(&chart, Pos::new(1, 7), 4)?;
        let l5 = load_classical(&fixture("l5-hopf.chart")).map_err(|e| e.to_string())?;
        let chart5 = manss_core::builder::build_e2(&l5, BaseField::C).map_err(|e| e.to_string())?;
        check(&chart5, Pos::new(1, 7), 4)?;
        Ok("alpha_1 at weight 2 (l=3) and weight 4 (l=5), alpha_2 at weight 4".to_string())
    });
}

/// Independent combinatorial oracle frozen for criterion 3: the number of
/// monomials tau^n a_0^i a_1^j with trigrade exactly (s, t, u), where
/// |a_0| = (1, 1, 0) and |a_1| = (1, 5, 2).
fn count_a0_a1_monomials(s: i64, t: i64, u: i64) -> usize {
    let mut count = 0;
    for j in 0..=s {
        let i = s - j;
        if i + 5 * j != t {
            continue;
        }
        let n = 2 * j - u; // tau-power needed to land at weight u
        if n >= 0 {
            count += 1;
        }
    }
    count as usize
}

/// Cotor_E polynomial check (l = 3): cobar homology of E over F_3[tau] in
/// the range s <= 3, t <= 12 equals the monomial count in a_0, a_1 in
/// every trigrade. Budget: 60 seconds.
#[test]
fn criterion_3_cotor_e_polynomial() {
    report(3, "Cotor_E polynomial identification", || {
        let start = Instant::now();
        // frozen spot values from the oracle
        assert_eq!(count_a0_a1_monomials(1, 1, 0), 1); // a_0
        assert_eq!(count_a0_a1_monomials(2, 6, 2), 1); // a_0 a_1
        assert_eq!(count_a0_a1_monomials(3, 7, 1), 1); // tau a_0^2 a_1
        assert_eq!(count_a0_a1_monomials(1, 1, 1), 0); // above the ceiling
        let alg = DualAlgebra::new(
            GroundRing::new(BaseField::C, 3).map_err(|e| e.to_string())?,
            EnumBounds::default(),
        );
        let range = CotorRange::new(3, 12);
        let trivial = Comodule::new(ComoduleKind::Trivial, 3).map_err(|e| e.to_string())?;
        let table = cotor(&alg, AlgebraKind::E, &trivial, &range, ExecMode::Parallel)
            .map_err(|e| e.to_string())?;
        let depth = range.depth(3);
        let mut checked = 0usize;
        for s in 0..=3i64 {
            for t in 0..=12i64 {
                let top = t.div_euclid(2);
                for u in (top - depth)..=top {
                    let expect = count_a0_a1_monomials(s, t, u);
                    let got = table.dim(s, 0, t, u);
                    if got != expect {
                        return Err(format!(
                            "(s,t,u)=({s},{t},{u}): cobar gives {got}, count gives {expect}"
                        ));
                    }
                    checked += 1;
                }
            }
        }
        let elapsed = within(start, Duration::from_secs(60))?;
        Ok(format!("{checked} trigrades match exactly ({elapsed:?})"))
    });
}

/// Cartan-Eilenberg collapse (l = 3): total ground-ring rank at each
/// (s1 + s2 = s, t, u) with s <= 2, t <= 8 equals the directly computed
/// Cotor_A dimension; both sides computed independently.
#[test]
fn criterion_4_cess_collapse() {
    report(4, "Cartan-Eilenberg collapse", || {
        let alg = DualAlgebra::new(
            GroundRing::new(BaseField::C, 3).map_err(|e| e.to_string())?,
            EnumBounds::default(),
        );
        let range = CotorRange::new(2, 8);
        let cess = cess_e2(&alg, &range, ExecMode::Parallel).map_err(|e| e.to_string())?;
        let trivial = Comodule::new(ComoduleKind::Trivial, 3).map_err(|e| e.to_string())?;
        let direct = cotor(&alg, AlgebraKind::A, &trivial, &range, ExecMode::Parallel)
            .map_err(|e| e.to_string())?;
        let depth = range.depth(3);
        let mut checked = 0usize;
        let mut nonzero = 0usize;
        for s in 0..=2i64 {
            for t in 0..=8i64 {
                let top = t.div_euclid(2);
                for u in (top - depth)..=top {
                    let lhs = cess.total_dim(s, t, u);
                    let rhs = direct.dim(s, 0, t, u);
                    if lhs != rhs {
                        return Err(format!(
                            "(s,t,u)=({s},{t},{u}): cess total {lhs} != Cotor_A {rhs}"
                        ));
                    }
                    checked += 1;
                    nonzero += usize::from(lhs > 0);
                }
            }
        }
        Ok(format!(
            "{checked} trigrades agree ({nonzero} nonzero), exact equality"
        ))
    });
}

/// Algebraic Novikov reindexing: the E1 table and the Cartan-Eilenberg
/// table agree under the documented q <-> a index map on the full
/// computed range, in both directions, and the index map round-trips.
#[test]
fn criterion_5_algnov_reindexing() {
    report(5, "algebraic Novikov reindexing", || {
        let alg = DualAlgebra::new(
            GroundRing::new(BaseField::C, 3).map_err(|e| e.to_string())?,
            EnumBounds::default(),
        );
        let range = CotorRange::new(2, 8);
        let cess = cess_e2(&alg, &range, ExecMode::Parallel).map_err(|e| e.to_string())?;
        let algnov = algnov_e1(&alg, &range, ExecMode::Parallel).map_err(|e| e.to_string())?;
        let mut checked = 0usize;
        for (k, e) in algnov.entries.iter().filter(|(_, e)| !e.edge) {
            let ck = algnov_key_to_cess(*k);
            if cess_key_to_algnov(ck) != *k {
                return Err(format!("index map does not round-trip at {k:?}"));
            }
            if cess.range.contains(&ck) && e.dim != cess.dim(ck.s, ck.aux, ck.t, ck.u) {
                return Err(format!(
                    "algnov {k:?} has dim {}, cess {} at the mapped key",
                    e.dim,
                    cess.dim(ck.s, ck.aux, ck.t, ck.u)
                ));
            }
            checked += 1;
        }
        for (k, e) in cess.entries.iter().filter(|(_, e)| !e.edge) {
            let ak = cess_key_to_algnov(*k);
            if ak.t >= 0 && algnov.range.contains(&ak) {
                if e.dim != algnov.dim(ak.s, ak.aux, ak.t, ak.u) {
                    return Err(format!("cess {k:?} disagrees with algnov at {ak:?}"));
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} entries agree under the index map"))
    });
}

/// Structural property suite on every built page: sparseness, vanishing
/// line, torsion inertness, weight ceiling at E-infinity, weight-0
/// realization, and the R = even-part-of-C comparison, on the core
/// fixture and on 100 seeded random charts with stems <= 20.
#[test]
fn criterion_6_structural_properties() {
    report(6, "structural property suite", || {
        let core = load_classical(&fixture("l3-core.chart")).map_err(|e| e.to_string())?;
        let config = RandomChartConfig {
            prime: 3,
            max_stem: 20,
            ..RandomChartConfig::default()
        };
        let seed = 2026u64;
        let mut charts = vec![("l3-core".to_string(), core)];
        for i in 0..100u64 {
            charts.push((
                format!("random[{}]", seed + i),
                random_classical(&config, seed + i),
            ));
        }
        for (name, classical) in &charts {
            classical.validate().map_err(|e| format!("{name}: {e}"))?;
            // both base fields, every page, with validation at each stop
            let mut state_c =
                PageState::build_e2(classical, BaseField::C).map_err(|e| format!("{name}: {e}"))?;
            let mut state_r =
                PageState::build_e2(classical, BaseField::R).map_err(|e| format!("{name}: {e}"))?;
            // E2 realization inverts the input away from the origin
            let realized = realize_weight0(state_c.chart()).map_err(|e| e.to_string())?;
            if !same_classical_groups(&realized, classical) {
                return Err(format!("{name}: weight-0 of E2 differs from input"));
            }
            for page in classical.differential_pages() {
                state_c = state_c
                    .propagate(Page::R(page + 1))
                    .map_err(|e| format!("{name}: {e}"))?;
                state_r = state_r
                    .propagate(Page::R(page + 1))
                    .map_err(|e| format!("{name}: {e}"))?;
                state_c
                    .chart()
                    .validate()
                    .map_err(|e| format!("{name}: {e}"))?;
                state_r
                    .chart()
                    .validate()
                    .map_err(|e| format!("{name}: {e}"))?;
                let mapped = base_change(state_r.chart()).map_err(|e| e.to_string())?;
                if mapped.entries != state_c.chart().entries {
                    return Err(format!("{name}: R chart differs from even part of C"));
                }
            }
            let state_c = state_c.run_to_einf().map_err(|e| format!("{name}: {e}"))?;
            let state_r = state_r.run_to_einf().map_err(|e| format!("{name}: {e}"))?;
            let chart = state_c.chart();
            chart.validate().map_err(|e| format!("{name}: {e}"))?;
            // weight ceiling per column on E-infinity
            for (pos, entry) in &chart.entries {
                for s in &entry.summands {
                    if s.gen_weight > pos.stem {
                        return Err(format!("{name}: weight above stem at {pos}"));
                    }
                    if s.gen_weight == pos.stem && pos.s != pos.stem {
                        return Err(format!(
                            "{name}: ceiling attained off the diagonal at {pos}"
                        ));
                    }
                }
            }
            // torsion inertness from the log
            for rec in state_c.torsion_log() {
                if rec.non_split {
                    continue;
                }
                let ok = chart
                    .entries
                    .get(&rec.position)
                    .map(|e| e.summands.iter().any(|s| Some(s) == rec.summand.as_ref()))
                    .unwrap_or(false);
                if !ok {
                    return Err(format!("{name}: torsion modified at {}", rec.position));
                }
            }
            // final base comparison
            let mapped = base_change(state_r.chart()).map_err(|e| e.to_string())?;
            if mapped.entries != chart.entries {
                return Err(format!("{name}: E-infinity base comparison fails"));
            }
        }
        Ok(format!("{} charts pass on every page", charts.len()))
    });
}

/// Oracle equivalence: symbolic page propagation agrees with the
/// independent weight-slice finite-group homology oracle at every
/// (s, stem, u, page) on the seeded random suite. Budget: 5 minutes.
#[test]
fn criterion_7_oracle_equivalence() {
    report(7, "weight-slice oracle equivalence", || {
        let start = Instant::now();
        let core = load_classical(&fixture("l3-core.chart")).map_err(|e| e.to_string())?;
        let config = RandomChartConfig {
            prime: 3,
            max_stem: 20,
            ..RandomChartConfig::default()
        };
        let seed = 2026u64;
        let mut charts = vec![core];
        for i in 0..100u64 {
            charts.push(random_classical(&config, seed + i));
        }
        let mut transitions = 0usize;
        for classical in &charts {
            for base in [BaseField::C, BaseField::R] {
                let mut state = PageState::build_e2(classical, base).map_err(|e| e.to_string())?;
                for page in classical.differential_pages() {
                    let before = state.chart().clone();
                    let batch: Vec<_> = classical
                        .differentials
                        .iter()
                        .filter(|d| d.page == page)
                        .cloned()
                        .collect();
                    state = state
                        .propagate(Page::R(page + 1))
                        .map_err(|e| e.to_string())?;
                    let mismatches = weight_slice_oracle_check(
                        &before,
                        state.chart(),
                        &batch,
                        ExecMode::Parallel,
                    )
                    .map_err(|e| e.to_string())?;
                    if !mismatches.is_empty() {
                        return Err(format!("seed suite page {page}: {}", mismatches[0]));
                    }
                    transitions += 1;
                }
            }
        }
        let elapsed = within(start, Duration::from_secs(300))?;
        Ok(format!(
            "{transitions} page transitions over {} charts confirmed ({elapsed:?})",
            charts.len()
        ))
    });
}

/// Tau-stability of queries: the flagged region is exactly
/// u <= stem/2 + 1 (stem > 0) plus (stem = 0, u <= 0), and inside it
/// every weight-u slice equals the weight-0 slice; the boundary is tight
/// on the core fixture.
#[test]
fn criterion_8_tau_stability() {
    report(8, "tau-stability of queries", || {
        let classical = load_classical(&fixture("l3-core.chart")).map_err(|e| e.to_string())?;
        let chart = PageState::build_e2(&classical, BaseField::C)
            .map_err(|e| e.to_string())?
            .run_to_einf()
            .map_err(|e| e.to_string())?
            .into_chart();
        let mut stable = 0usize;
        for stem in 0..=34i64 {
            for u in -4..=(stem + 2) {
                let r = query_pi(&chart, stem, u).map_err(|e| e.to_string())?;
                let in_region = if stem > 0 { 2 * u <= stem + 2 } else { u <= 0 };
                if r.tau_stable != in_region {
                    return Err(format!(
                        "flag at (stem {stem}, u {u}) is {}, region gives {in_region}",
                        r.tau_stable
                    ));
                }
                if in_region {
                    let base = query_pi(&chart, stem, 0).map_err(|e| e.to_string())?;
                    if r.groups != base.groups {
                        return Err(format!(
                            "stable slice at (stem {stem}, u {u}) differs from weight 0"
                        ));
                    }
                    stable += 1;
                }
            }
        }
        // the boundary is honest: just outside the region the torsion class
        // in stem 33 makes the weight-20 slice differ from weight 0
        let outside = query_pi(&chart, 33, 20).map_err(|e| e.to_string())?;
        let base = query_pi(&chart, 33, 0).map_err(|e| e.to_string())?;
        if outside.tau_stable || outside.groups == base.groups {
            return Err("the unstable torsion slice at (33, 20) was not detected".to_string());
        }
        Ok(format!(
            "{stable} stable queries equal their weight-0 slices; boundary tight at (33, 20)"
        ))
    });
}
