//! Verification suites: every structural invariant and cross-check in one
//! place, consumed by both the CLI `verify` subcommand and the acceptance
//! tests.
//!
//! Each suite pits two independent routes against each other: symbolic
//! page propagation against per-weight finite-group homology, cobar
//! homology against combinatorial monomial counts, the Cartan-Eilenberg
//! page against a direct Cotor computation, and so on.

use crate::builder::{
    base_change, classical_page_groups, query_pi, realize_weight0, same_classical_groups,
    weight_slice_oracle_check, PageState,
};
use crate::chart::{
    chart_from_json, chart_to_json, parse_classical, random_classical, write_classical,
    ClassicalChart, MotivicChart, Page, RandomChartConfig,
};
use crate::cobar::{
    algnov_e1, algnov_key_to_cess, cess_e2, cotor, Comodule, ComoduleKind, CotorRange,
};
use crate::error::Result;
use crate::par::ExecMode;
use crate::steenrod::{AlgebraKind, BaseField, DualAlgebra, EnumBounds, GroundRing};

/// Outcome of one suite: machine-readable pass/fail plus a short detail.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Everything the suites need.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub classical: ClassicalChart,
    pub seed: u64,
    pub random_charts: usize,
    pub random_config: RandomChartConfig,
    pub mode: ExecMode,
}

impl VerifyConfig {
    pub fn new(classical: ClassicalChart, seed: u64) -> Self {
        let prime = classical.prime;
        VerifyConfig {
            classical,
            seed,
            random_charts: 100,
            random_config: RandomChartConfig {
                prime,
                ..RandomChartConfig::default()
            },
            mode: ExecMode::Parallel,
        }
    }
}

pub const ALL_SUITES: &[&str] = &[
    "chart-invariants",
    "structural",
    "realization",
    "base-change",
    "propagation-oracle",
    "cobar-d2",
    "cotor-poly",
    "cess-collapse",
    "algnov-reindex",
    "roundtrip",
    "tau-stability",
];

/// Runs the named suites (all of them for an empty list), returning one
/// outcome per suite.
pub fn run_suites(config: &VerifyConfig, names: &[String]) -> Vec<SuiteOutcome> {
    let selected: Vec<&'static str> = if names.is_empty() {
        ALL_SUITES.to_vec()
    } else {
        ALL_SUITES
            .iter()
            .copied()
            .filter(|s| names.iter().any(|n| n == s))
            .collect()
    };
    selected
        .into_iter()
        .map(|name| match run_one(name, config) {
            Ok(detail) => SuiteOutcome {
                name,
                passed: true,
                detail,
            },
            Err(e) => SuiteOutcome {
                name,
                passed: false,
                detail: e.to_string(),
            },
        })
        .collect()
}

fn run_one(name: &'static str, config: &VerifyConfig) -> Result<String> {
    match name {
        "chart-invariants" => suite_chart_invariants(config),
        "structural" => suite_structural(config),
        "realization" => suite_realization(config),
        "base-change" => suite_base_change(config),
        "propagation-oracle" => suite_propagation_oracle(config),
        "cobar-d2" => suite_cobar_d2(config),
        "cotor-poly" => suite_cotor_poly(config),
        "cess-collapse" => suite_cess_collapse(config),
        "algnov-reindex" => suite_algnov_reindex(config),
        "roundtrip" => suite_roundtrip(config),
        "tau-stability" => suite_tau_stability(config),
        other => Err(crate::error::Error::Config(format!(
            "unknown suite '{other}'"
        ))),
    }
}

fn fail(msg: String) -> crate::error::Error {
    crate::error::Error::Invariant(vec![crate::error::Violation::global("suite", msg)])
}

fn charts_under_test(config: &VerifyConfig) -> Vec<(String, ClassicalChart)> {
    let mut charts = vec![("fixture".to_string(), config.classical.clone())];
    for i in 0..config.random_charts {
        let seed = config.seed.wrapping_add(i as u64);
        charts.push((
            format!("random[seed={seed}]"),
            random_classical(&config.random_config, seed),
        ));
    }
    charts
}

/// Input fixture and generated charts satisfy every classical invariant.
fn suite_chart_invariants(config: &VerifyConfig) -> Result<String> {
    let charts = charts_under_test(config);
    for (name, chart) in &charts {
        chart.validate().map_err(|e| fail(format!("{name}: {e}")))?;
    }
    Ok(format!("{} chart(s) validated", charts.len()))
}

/// Sparseness, vanishing line, weight bounds and torsion inertness on
/// every built page of every chart.
fn suite_structural(config: &VerifyConfig) -> Result<String> {
    let charts = charts_under_test(config);
    let mut pages_checked = 0usize;
    for (name, classical) in &charts {
        for base in [BaseField::C, BaseField::R] {
            let mut state =
                PageState::build_e2(classical, base).map_err(|e| fail(format!("{name}: {e}")))?;
            state.chart().validate()?;
            for page in classical.differential_pages() {
                state = state
                    .propagate(Page::R(page + 1))
                    .map_err(|e| fail(format!("{name} page {page}: {e}")))?;
                state.chart().validate()?;
                pages_checked += 1;
            }
            let state = state
                .run_to_einf()
                .map_err(|e| fail(format!("{name}: {e}")))?;
            let chart = state.chart();
            chart.validate()?;
            // weight ceiling on E-infinity: no generator weight above the
            // stem, equality only on the diagonal
            for (pos, entry) in &chart.entries {
                for s in &entry.summands {
                    if s.gen_weight > pos.stem {
                        return Err(fail(format!(
                            "{name}: weight {} above stem at {pos}",
                            s.gen_weight
                        )));
                    }
                    if s.gen_weight == pos.stem && pos.s != pos.stem {
                        return Err(fail(format!(
                            "{name}: weight ceiling attained off the diagonal at {pos}"
                        )));
                    }
                }
            }
            // torsion inertness: the log is an exhaustive, untouched record
            for rec in state.torsion_log() {
                if rec.non_split {
                    continue;
                }
                let present = chart
                    .entries
                    .get(&rec.position)
                    .map(|e| e.summands.iter().any(|s| Some(s) == rec.summand.as_ref()))
                    .unwrap_or(false);
                if !present {
                    return Err(fail(format!(
                        "{name}: logged torsion at {} missing from E-infinity",
                        rec.position
                    )));
                }
            }
        }
    }
    Ok(format!(
        "{} chart(s), {pages_checked} page transition(s) validated over both base fields",
        charts.len()
    ))
}

/// Weight-0 realization commutes with propagation and inverts E2 away
/// from the origin.
fn suite_realization(config: &VerifyConfig) -> Result<String> {
    let charts = charts_under_test(config);
    for (name, classical) in &charts {
        let state = PageState::build_e2(classical, BaseField::C)
            .map_err(|e| fail(format!("{name}: {e}")))?;
        let realized = realize_weight0(state.chart())?;
        if !same_classical_groups(&realized, classical) {
            return Err(fail(format!(
                "{name}: weight-0 of E2 differs from the input"
            )));
        }
        // after all differentials: weight-0 slices equal the classically
        // propagated groups
        let state = state
            .run_to_einf()
            .map_err(|e| fail(format!("{name}: {e}")))?;
        let realized = realize_weight0(state.chart())?;
        let classical_einf = classical_page_groups(classical, None)?;
        for (pos, orders) in &classical_einf {
            let got = realized
                .groups
                .get(pos)
                .map(|gs| {
                    let mut v: Vec<u32> =
                        gs.iter().map(|g| g.l_exp.finite().unwrap_or(0)).collect();
                    v.sort_unstable();
                    v
                })
                .unwrap_or_default();
            let mut want: Vec<u32> = orders
                .iter()
                .map(|o| l_exp_of(o, classical.prime))
                .collect();
            want.sort_unstable();
            if got != want {
                return Err(fail(format!(
                    "{name}: weight-0 at {pos} is {got:?}, classical homology gives {want:?}"
                )));
            }
        }
        // and nothing extra away from the classical support
        for pos in realized.groups.keys() {
            if !classical_einf.contains_key(pos) && *pos != crate::chart::Pos::new(0, 0) {
                return Err(fail(format!(
                    "{name}: weight-0 has an entry at {pos} the classical chart lacks"
                )));
            }
        }
    }
    Ok(format!("{} chart(s): realization commutes", charts.len()))
}

fn l_exp_of(order: &num_bigint::BigInt, l: u64) -> u32 {
    use num_traits::Zero;
    if order.is_zero() {
        return 0;
    }
    let lb = num_bigint::BigInt::from(l);
    let mut o = order.clone();
    let mut v = 0;
    while (&o % &lb).is_zero() {
        o /= &lb;
        v += 1;
    }
    v
}

/// The chart over R maps onto the even-weight-step part of the chart over
/// C under theta -> tau^2, on every page.
fn suite_base_change(config: &VerifyConfig) -> Result<String> {
    let charts = charts_under_test(config);
    for (name, classical) in &charts {
        let mut state_r = PageState::build_e2(classical, BaseField::R)
            .map_err(|e| fail(format!("{name}: {e}")))?;
        let mut state_c = PageState::build_e2(classical, BaseField::C)
            .map_err(|e| fail(format!("{name}: {e}")))?;
        let check = |r: &MotivicChart, c: &MotivicChart, stage: &str| -> Result<()> {
            let mapped = base_change(r)?;
            if mapped.entries != c.entries {
                return Err(fail(format!(
                    "{name}: {stage}: base change disagrees with the chart over C"
                )));
            }
            Ok(())
        };
        check(state_r.chart(), state_c.chart(), "E2")?;
        for page in classical.differential_pages() {
            state_r = state_r.propagate(Page::R(page + 1))?;
            state_c = state_c.propagate(Page::R(page + 1))?;
            check(state_r.chart(), state_c.chart(), &format!("E{}", page + 1))?;
        }
        let state_r = state_r.run_to_einf()?;
        let state_c = state_c.run_to_einf()?;
        check(state_r.chart(), state_c.chart(), "E-infinity")?;
    }
    Ok(format!(
        "{} chart(s): base change commutes on every page",
        charts.len()
    ))
}

/// Symbolic propagation equals the weight-slice homology oracle at every
/// position, weight and page.
fn suite_propagation_oracle(config: &VerifyConfig) -> Result<String> {
    let charts = charts_under_test(config);
    let mut transitions = 0usize;
    for (name, classical) in &charts {
        for base in [BaseField::C, BaseField::R] {
            let mut state =
                PageState::build_e2(classical, base).map_err(|e| fail(format!("{name}: {e}")))?;
            for page in classical.differential_pages() {
                let before = state.chart().clone();
                let batch: Vec<_> = classical
                    .differentials
                    .iter()
                    .filter(|d| d.page == page)
                    .cloned()
                    .collect();
                state = state.propagate(Page::R(page + 1))?;
                let mismatches =
                    weight_slice_oracle_check(&before, state.chart(), &batch, config.mode)?;
                if !mismatches.is_empty() {
                    return Err(fail(format!(
                        "{name} ({base}) page {page}: {}",
                        mismatches.join("; ")
                    )));
                }
                transitions += 1;
            }
        }
    }
    Ok(format!(
        "{} chart(s), {transitions} page transition(s) confirmed slice-by-slice",
        charts.len()
    ))
}

/// Builds cobar complexes over both base fields; construction verifies
/// d.d = 0 on every slice exactly.
fn suite_cobar_d2(config: &VerifyConfig) -> Result<String> {
    let l = config.classical.prime;
    let range = CotorRange::new(3, 10);
    let mut columns = 0usize;
    for base in [BaseField::C, BaseField::R] {
        let alg = DualAlgebra::new(GroundRing::new(base, l)?, EnumBounds::default());
        for hopf in [AlgebraKind::A, AlgebraKind::P, AlgebraKind::E] {
            let comodule = Comodule::new(ComoduleKind::Trivial, l)?;
            let cols = crate::cobar::build_cobar(&alg, hopf, &comodule, &range, config.mode)?;
            columns += cols.len();
        }
    }
    Ok(format!("d.d = 0 on every slice of {columns} columns"))
}

/// The number of tau^n a-monomials of exact trigrade (s, t, u), the
/// combinatorial oracle for Cotor_E = P(a_0, a_1, ...).
pub fn count_cotor_e_monomials(l: i64, step: i64, s: i64, t: i64, u: i64) -> usize {
    fn rec(l: i64, step: i64, idx: u32, s: i64, t: i64, u_free: i64, target: i64) -> usize {
        if s == 0 {
            let deficit = u_free - target;
            return usize::from(t == 0 && deficit >= 0 && deficit % step == 0);
        }
        let gen_t = 2 * l.pow(idx) - 1;
        if gen_t > t {
            return 0;
        }
        let gen_u = l.pow(idx) - 1;
        rec(l, step, idx, s - 1, t - gen_t, u_free + gen_u, target)
            + rec(l, step, idx + 1, s, t, u_free, target)
    }
    rec(l, step, 0, s, t, 0, u)
}

/// Cobar homology of E equals the polynomial count in every trigrade.
fn suite_cotor_poly(config: &VerifyConfig) -> Result<String> {
    let l = config.classical.prime;
    let range = CotorRange::new(3, 12);
    let mut checked = 0usize;
    for base in [BaseField::C, BaseField::R] {
        let alg = DualAlgebra::new(GroundRing::new(base, l)?, EnumBounds::default());
        let step = alg.ring().weight_step();
        let comodule = Comodule::new(ComoduleKind::Trivial, l)?;
        let table = cotor(&alg, AlgebraKind::E, &comodule, &range, config.mode)?;
        let depth = range.depth(l);
        for s in 0..=3i64 {
            for t in 0..=12i64 {
                let top = t.div_euclid(2);
                for u in (top - depth)..=top {
                    let expect = count_cotor_e_monomials(l as i64, step, s, t, u);
                    let got = table.dim(s, 0, t, u);
                    if got != expect {
                        return Err(fail(format!(
                            "Cotor_E over {base} at (s,t,u)=({s},{t},{u}): cobar {got}, \
                             monomial count {expect}"
                        )));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} trigrades match the monomial count"))
}

/// Total Cartan-Eilenberg rank at s1 + s2 = s equals the direct Cotor_A
/// dimension (the collapse).
fn suite_cess_collapse(config: &VerifyConfig) -> Result<String> {
    let l = config.classical.prime;
    let range = CotorRange::new(2, 8);
    let alg = DualAlgebra::new(GroundRing::new(BaseField::C, l)?, EnumBounds::default());
    let cess = cess_e2(&alg, &range, config.mode)?;
    let trivial = Comodule::new(ComoduleKind::Trivial, l)?;
    let direct = cotor(&alg, AlgebraKind::A, &trivial, &range, config.mode)?;
    let depth = range.depth(l);
    let mut checked = 0usize;
    for s in 0..=2i64 {
        for t in 0..=8i64 {
            let top = t.div_euclid(2);
            for u in (top - depth)..=top {
                let lhs = cess.total_dim(s, t, u);
                let rhs = direct.dim(s, 0, t, u);
                if lhs != rhs {
                    return Err(fail(format!(
                        "collapse fails at (s,t,u)=({s},{t},{u}): cess total {lhs}, \
                         direct Cotor_A {rhs}"
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} trigrades collapse onto Cotor_A"))
}

/// The algebraic Novikov E1 equals the Cartan-Eilenberg E2 under the
/// documented index map, both ways, over the full computed range.
fn suite_algnov_reindex(config: &VerifyConfig) -> Result<String> {
    let l = config.classical.prime;
    let range = CotorRange::new(2, 8);
    let alg = DualAlgebra::new(GroundRing::new(BaseField::C, l)?, EnumBounds::default());
    let cess = cess_e2(&alg, &range, config.mode)?;
    let algnov = algnov_e1(&alg, &range, config.mode)?;
    let mut checked = 0usize;
    for (k, e) in algnov.entries.iter().filter(|(_, e)| !e.edge) {
        let ck = algnov_key_to_cess(*k);
        if cess.range.contains(&ck) {
            let want = cess.dim(ck.s, ck.aux, ck.t, ck.u);
            if e.dim != want {
                return Err(fail(format!(
                    "reindexing fails at {k:?}: algnov {}, cess {want}",
                    e.dim
                )));
            }
            checked += 1;
        }
    }
    for (k, e) in cess.entries.iter().filter(|(_, e)| !e.edge) {
        let ak = crate::cobar::cess_key_to_algnov(*k);
        if ak.t >= 0 && algnov.range.contains(&ak) {
            let want = algnov.dim(ak.s, ak.aux, ak.t, ak.u);
            if e.dim != want {
                return Err(fail(format!(
                    "reindexing fails at {k:?}: cess {}, algnov {want}",
                    e.dim
                )));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} entries agree under the q <-> a index map"
    ))
}

/// Fixture text and chart JSON round-trip exactly.
fn suite_roundtrip(config: &VerifyConfig) -> Result<String> {
    let charts = charts_under_test(config);
    for (name, classical) in &charts {
        let text = write_classical(classical);
        let back = parse_classical(&text).map_err(|e| fail(format!("{name}: {e}")))?;
        if &back != classical {
            return Err(fail(format!("{name}: fixture text round-trip differs")));
        }
        for base in [BaseField::C, BaseField::R] {
            let chart = PageState::build_e2(classical, base)?
                .run_to_einf()?
                .into_chart();
            let doc = chart_to_json(&chart)?;
            let back = chart_from_json(&doc)?;
            if back != chart {
                return Err(fail(format!("{name}: chart JSON round-trip differs")));
            }
        }
    }
    Ok(format!("{} chart(s) round-trip bit-exactly", charts.len()))
}

/// Queries are flagged tau-stable exactly in the documented region, and
/// flagged slices equal the weight-0 slice.
fn suite_tau_stability(config: &VerifyConfig) -> Result<String> {
    let chart = PageState::build_e2(&config.classical, BaseField::C)?
        .run_to_einf()?
        .into_chart();
    let (_, max_stem) = chart.extent();
    let mut checked = 0usize;
    for stem in 0..=max_stem {
        for u in -4..=(stem + 2) {
            let r = query_pi(&chart, stem, u)?;
            let in_region = if stem > 0 { 2 * u <= stem + 2 } else { u <= 0 };
            if r.tau_stable != in_region {
                return Err(fail(format!(
                    "tau-stability flag at (stem {stem}, u {u}) is {}, region says {in_region}",
                    r.tau_stable
                )));
            }
            if in_region {
                let base = query_pi(&chart, stem, 0)?;
                if r.groups != base.groups {
                    return Err(fail(format!(
                        "stable slice at (stem {stem}, u {u}) differs from weight 0"
                    )));
                }
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} queries consistent with the stable region"
    ))
}
