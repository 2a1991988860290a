//! Independent verification of page propagation: per-weight finite-group
//! homology.
//!
//! For each weight u, the chart slices to a diagram of finite abelian
//! groups with integer-matrix differentials (the motivic differential is
//! the classical matrix once both slices are alive, zero otherwise).
//! Computing homology slice by slice with Smith normal form gives a second
//! route to the next page that never touches the symbolic tau bookkeeping.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chart::{ClassicalChart, ClassicalDifferential, MotivicChart, Pos};
use crate::error::{Error, Result};
use crate::linalg::{int_mat, kernel_basis, preimage_lattice, quotient_invariants, solve_exact};
use crate::par::{self, ExecMode};

/// Invariant factors of `ker(out) / im(in)` inside the finite abelian
/// group with the given cyclic orders.
///
/// `out_matrix` is `m x n` into a group with `out_orders`; `in_matrix` is
/// `n x k`. The image of `in` must land in the kernel of `out` (the page
/// differential squares to zero); violations surface as errors.
pub fn slice_homology(
    ambient_orders: &[BigInt],
    out_matrix: &[Vec<i64>],
    out_orders: &[BigInt],
    in_matrix: &[Vec<i64>],
) -> Result<Vec<BigInt>> {
    let n = ambient_orders.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if out_matrix.len() != out_orders.len() {
        return Err(Error::Config(format!(
            "outgoing slice map has {} rows but {} target orders",
            out_matrix.len(),
            out_orders.len()
        )));
    }
    // kernel lattice K = {x : B x in L_out}, which contains L = diag(orders)
    let mut b = int_mat(out_orders.len(), n);
    for (i, row) in out_matrix.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            b[i][j] = BigInt::from(c);
        }
    }
    let l_out: Vec<Vec<BigInt>> = (0..out_orders.len())
        .map(|i| {
            let mut col = vec![BigInt::zero(); out_orders.len()];
            col[i] = out_orders[i].clone();
            col
        })
        .collect();
    let k_gens = preimage_lattice(&b, n, &l_out);
    let k_mat: Vec<Vec<BigInt>> = (0..n)
        .map(|r| k_gens.iter().map(|c| c[r].clone()).collect())
        .collect();

    // denominator: images of the incoming map plus the ambient orders,
    // both expressed in kernel coordinates
    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    let k_cols = in_matrix.first().map(|r| r.len()).unwrap_or(0);
    for j in 0..k_cols {
        let col: Vec<BigInt> = in_matrix.iter().map(|row| BigInt::from(row[j])).collect();
        let sol = solve_exact(&k_mat, &col).ok_or_else(|| {
            Error::Invariant(vec![crate::error::Violation::global(
                "slice-exactness",
                "incoming slice differential does not land in the outgoing kernel",
            )])
        })?;
        rels.push(sol);
    }
    for (i, o) in ambient_orders.iter().enumerate() {
        let mut col = vec![BigInt::zero(); n];
        col[i] = o.clone();
        let sol = solve_exact(&k_mat, &col).ok_or_else(|| {
            Error::Invariant(vec![crate::error::Violation::global(
                "slice-order-bound",
                "an outgoing slice map is not annihilated by its source orders",
            )])
        })?;
        rels.push(sol);
    }
    for col in kernel_basis(&k_mat) {
        rels.push(col);
    }
    Ok(quotient_invariants(k_gens.len(), &rels))
}

/// Classical page-following oracle: applies all differentials with page
/// below the limit (all of them when `None`) by repeated finite-group
/// homology, returning the surviving groups as invariant-factor lists.
pub fn classical_page_groups(
    chart: &ClassicalChart,
    below_page: Option<i64>,
) -> Result<BTreeMap<Pos, Vec<BigInt>>> {
    let mut groups: BTreeMap<Pos, Vec<BigInt>> = chart
        .groups
        .iter()
        .map(|(pos, gs)| {
            let orders = gs
                .iter()
                .map(|g| match g.l_exp.finite() {
                    Some(n) => BigInt::from(chart.prime).pow(n),
                    None => BigInt::zero(),
                })
                .collect();
            (*pos, orders)
        })
        .collect();
    for page in chart.differential_pages() {
        if let Some(limit) = below_page {
            if page >= limit {
                break;
            }
        }
        let batch = chart.differentials_at(page);
        groups = apply_classical_batch(&groups, &batch)?;
    }
    groups.retain(|_, orders| !orders.is_empty());
    Ok(groups)
}

fn apply_classical_batch(
    groups: &BTreeMap<Pos, Vec<BigInt>>,
    batch: &[&ClassicalDifferential],
) -> Result<BTreeMap<Pos, Vec<BigInt>>> {
    let mut out = groups.clone();
    for d in batch {
        let src = groups.get(&d.source).cloned().unwrap_or_default();
        let tgt = groups.get(&d.target).cloned().unwrap_or_default();
        if d.matrix.len() != tgt.len() || d.matrix.iter().any(|r| r.len() != src.len()) {
            return Err(Error::UnsupportedDifferential(format!(
                "classical d{} {} -> {}: matrix shape does not match the surviving groups",
                d.page, d.source, d.target
            )));
        }
        // kernel at the source: no outgoing map beyond d, no incoming here
        let kernel = slice_homology(&src, &d.matrix, &tgt, &vec![Vec::new(); src.len()])?;
        // cokernel at the target
        let zero_out: Vec<Vec<i64>> = Vec::new();
        let coker = slice_homology(&tgt, &zero_out, &[], &d.matrix)?;
        out.insert(d.source, kernel);
        out.insert(d.target, coker);
    }
    out.retain(|_, orders| !orders.is_empty());
    Ok(out)
}

/// Runs the weight-slice oracle across one page transition: slices the
/// `before` chart at every weight in the window, pushes each slice through
/// finite-group homology, and compares with the slices of `after`.
///
/// Returns the list of disagreements (empty means the symbolic propagation
/// is confirmed at this page).
pub fn weight_slice_oracle_check(
    before: &MotivicChart,
    after: &MotivicChart,
    batch: &[ClassicalDifferential],
    mode: ExecMode,
) -> Result<Vec<String>> {
    let ring = before.ring();
    let step = ring.weight_step();
    // positions of interest: everything in either chart
    let mut positions: Vec<Pos> = before
        .entries
        .keys()
        .chain(after.entries.keys())
        .copied()
        .collect();
    positions.sort_unstable();
    positions.dedup();
    // weight window: down from the top generator weight far enough to see
    // every torsion order die out; one work item per position keeps the
    // parallel grain coarse enough to pay for itself
    let max_order: i64 = batch.iter().map(|d| (d.page - 1) / 2).max().unwrap_or(0);
    let depth = max_order / step + 3;

    let in_map: BTreeMap<Pos, &ClassicalDifferential> =
        batch.iter().map(|d| (d.target, d)).collect();
    let out_map: BTreeMap<Pos, &ClassicalDifferential> =
        batch.iter().map(|d| (d.source, d)).collect();

    let results = par::map(mode, positions, |pos| -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let top = pos.t() / 2;
        for k in 0..=depth {
            let u = top - k * step;
            if let Some(m) = check_one_slice(before, after, pos, u, &in_map, &out_map, &ring)? {
                bad.push(m);
            }
        }
        Ok(bad)
    });
    let mut mismatches = Vec::new();
    for r in results {
        mismatches.extend(r?);
    }
    Ok(mismatches)
}

#[allow(clippy::too_many_arguments)]
fn check_one_slice(
    before: &MotivicChart,
    after: &MotivicChart,
    pos: Pos,
    u: i64,
    in_map: &BTreeMap<Pos, &ClassicalDifferential>,
    out_map: &BTreeMap<Pos, &ClassicalDifferential>,
    ring: &crate::steenrod::GroundRing,
) -> Result<Option<String>> {
    let step = ring.weight_step();
    {
        // the differential acts on the free part only; at any weight where
        // the free slice is alive it is the whole matrix, otherwise zero
        let free_alive = |p: Pos, w: i64| {
            let top = p.t() / 2;
            let off = top - w;
            before
                .entries
                .get(&p)
                .map(|e| off >= 0 && off % step == 0 && e.summands.iter().any(|s| !s.is_torsion()))
                .unwrap_or(false)
        };
        let free_orders: Vec<BigInt> = before
            .entries
            .get(&pos)
            .map(|e| {
                e.summands
                    .iter()
                    .filter(|s| !s.is_torsion())
                    .filter_map(|s| s.slice_order(u, ring).map(BigInt::from))
                    .collect()
            })
            .unwrap_or_default();
        // torsion summands and retained presentations are inert: they ride
        // through the page transition untouched
        let inert_orders: Vec<BigInt> = before
            .entries
            .get(&pos)
            .map(|e| {
                let mut v: Vec<BigInt> = e
                    .summands
                    .iter()
                    .filter(|s| s.is_torsion())
                    .filter_map(|s| s.slice_order(u, ring).map(BigInt::from))
                    .collect();
                if let Some(p) = &e.presentation {
                    v.extend(crate::chart::presentation_slice(p, u, ring));
                }
                v
            })
            .unwrap_or_default();

        let (out_matrix, out_orders) = match out_map.get(&pos) {
            Some(d) if free_alive(pos, u) => {
                let tgt_orders: Vec<BigInt> = before
                    .entries
                    .get(&d.target)
                    .map(|e| {
                        e.summands
                            .iter()
                            .filter(|s| !s.is_torsion())
                            .filter_map(|s| {
                                // the target free slice at weight u
                                s.slice_order(u, ring).map(BigInt::from)
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                (d.matrix.clone(), tgt_orders)
            }
            _ => (Vec::new(), Vec::new()),
        };
        let in_matrix: Vec<Vec<i64>> = match in_map.get(&pos) {
            Some(d) if free_alive(d.source, u) && free_alive(pos, u) => d.matrix.clone(),
            _ => vec![Vec::new(); free_orders.len()],
        };

        let mut predicted = slice_homology(&free_orders, &out_matrix, &out_orders, &in_matrix)?;
        predicted.extend(inert_orders);
        let predicted = canonical_group(&predicted);
        let actual = after
            .entries
            .get(&pos)
            .map(|e| e.slice(u, ring))
            .unwrap_or_default();
        let actual = canonical_group(&actual);
        if predicted != actual {
            return Ok(Some(format!(
                "slice mismatch at (s={}, stem={}, u={u}): oracle {predicted:?}, chart {actual:?}",
                pos.s, pos.stem
            )));
        }
        Ok(None)
    }
}

/// Canonical invariant-factor form of a direct sum given by arbitrary
/// cyclic orders.
fn canonical_group(orders: &[BigInt]) -> Vec<BigInt> {
    let nonzero: Vec<&BigInt> = orders.iter().filter(|o| !o.is_zero()).collect();
    let free = orders.len() - nonzero.len();
    let relations: Vec<Vec<BigInt>> = nonzero
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let mut col = vec![BigInt::zero(); nonzero.len()];
            col[i] = (*o).clone();
            col
        })
        .collect();
    let mut factors = quotient_invariants(nonzero.len(), &relations);
    for _ in 0..free {
        factors.push(BigInt::zero());
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::PageState;
    use crate::chart::{parse_classical, random_classical, Page, RandomChartConfig};
    use crate::steenrod::BaseField;

    #[test]
    fn slice_homology_of_multiplication_by_l() {
        // Z/9 --3--> Z/9: kernel Z/3 at the source, cokernel Z/3 at target
        let nine = vec![BigInt::from(9)];
        let ker = slice_homology(&nine, &[vec![3]], &nine, &vec![Vec::new(); 1]).unwrap();
        assert_eq!(ker, vec![BigInt::from(3)]);
        let coker = slice_homology(&nine, &Vec::new(), &[], &[vec![3]]).unwrap();
        assert_eq!(coker, vec![BigInt::from(3)]);
    }

    #[test]
    fn classical_oracle_follows_the_d5() {
        let chart = parse_classical(
            "prime = 3
[groups]
0,0: l^inf 1
2,34: l^1 b
7,33: l^1 ab
[differentials]
5: 2,34 -> 7,33 : [1]
",
        )
        .unwrap();
        let einf = classical_page_groups(&chart, None).unwrap();
        assert!(!einf.contains_key(&Pos::new(2, 34)));
        assert!(!einf.contains_key(&Pos::new(7, 33)));
        assert!(einf.contains_key(&Pos::new(0, 0)));
    }

    #[test]
    fn oracle_confirms_the_core_d5_transition() {
        let chart = parse_classical(
            "prime = 3
[groups]
0,0: l^inf 1
1,3: l^1 alpha_1
2,34: l^1 b
7,33: l^1 ab
[differentials]
5: 2,34 -> 7,33 : [1]
",
        )
        .unwrap();
        let state = PageState::build_e2(&chart, BaseField::C).unwrap();
        let before = state.chart().clone();
        let batch: Vec<_> = chart.differentials.clone();
        let after = state.run_to_einf().unwrap().into_chart();
        let mismatches =
            weight_slice_oracle_check(&before, &after, &batch, ExecMode::Sequential).unwrap();
        assert!(mismatches.is_empty(), "{mismatches:?}");
    }

    #[test]
    fn oracle_confirms_randomized_charts() {
        let config = RandomChartConfig {
            max_stem: 16,
            ..RandomChartConfig::default()
        };
        for seed in 0..10u64 {
            let classical = random_classical(&config, seed);
            let mut state = PageState::build_e2(&classical, BaseField::C).unwrap();
            for page in classical.differential_pages() {
                let before = state.chart().clone();
                let batch: Vec<_> = classical
                    .differentials
                    .iter()
                    .filter(|d| d.page == page)
                    .cloned()
                    .collect();
                state = state.propagate(Page::R(page + 1)).unwrap();
                let mismatches =
                    weight_slice_oracle_check(&before, state.chart(), &batch, ExecMode::Sequential)
                        .unwrap();
                assert!(
                    mismatches.is_empty(),
                    "seed {seed} page {page}: {mismatches:?}"
                );
            }
        }
    }
}
