//! Transfer of classical Adams-Novikov data to trigraded charts:
//! E2 construction, page propagation with torsion bookkeeping, weight-0
//! realization, base change and homotopy queries.

mod oracle;
mod propagate;
mod query;

pub use oracle::{classical_page_groups, slice_homology, weight_slice_oracle_check};
pub use propagate::{PageState, TorsionRecord};
pub use query::{query_pi, QueryResult};

use std::collections::BTreeMap;

use crate::chart::{
    ClassicalChart, ClassicalGroup, CyclicSummand, Entry, MotivicChart, Order, Page, Pos,
};
use crate::error::{Error, Result};
use crate::steenrod::BaseField;

/// Builds the trigraded E2 page from a classical chart.
///
/// Every classical Z/l^n at (s, t) becomes one summand free over the
/// ground ring with generator weight t/2; the origin becomes the single
/// `Z_l[tau]` (resp. `Z_l[theta]`) tower.
pub fn build_e2(classical: &ClassicalChart, base: BaseField) -> Result<MotivicChart> {
    classical.validate()?;
    let mut chart = MotivicChart::new(base, classical.prime, Page::R(2));
    for (pos, groups) in &classical.groups {
        let t = pos.t();
        // sparseness gives q | t with q even, so t/2 is an integer
        debug_assert_eq!(t % 2, 0);
        let entry = Entry {
            summands: groups
                .iter()
                .map(|g| match g.l_exp {
                    Order::Finite(n) => CyclicSummand::free(n, t / 2, Some(g.label.clone())),
                    Order::Infinite => CyclicSummand::origin(),
                })
                .collect(),
            presentation: None,
        };
        chart.entries.insert(*pos, entry);
    }
    chart.validate()?;
    Ok(chart)
}

/// Reads off the weight-0 slice of every entry as a classical chart.
///
/// Defined over the base field C, where weight-0 realization is an
/// isomorphism of spectral sequences onto the classical chart (created
/// torsion always lives in weights at or above its tau-order and is
/// invisible at weight 0).
pub fn realize_weight0(chart: &MotivicChart) -> Result<ClassicalChart> {
    if chart.base != BaseField::C {
        return Err(Error::Config(
            "weight-0 realization is defined over the base field C".to_string(),
        ));
    }
    let ring = chart.ring();
    let mut groups: BTreeMap<Pos, Vec<ClassicalGroup>> = BTreeMap::new();
    for (pos, entry) in &chart.entries {
        let orders = entry.slice(0, &ring);
        if orders.is_empty() {
            continue;
        }
        let gs = orders
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let l_exp = if num_traits::Zero::is_zero(o) {
                    Order::Infinite
                } else {
                    Order::Finite(l_exponent(o, chart.prime))
                };
                ClassicalGroup {
                    l_exp,
                    label: match &entry.summands.get(i).and_then(|s| s.label.clone()) {
                        Some(l) => l.clone(),
                        None => format!("w0_{}_{}_{i}", pos.s, pos.stem),
                    },
                }
            })
            .collect();
        groups.insert(*pos, gs);
    }
    // the origin tower always reaches weight 0
    groups.entry(Pos::new(0, 0)).or_insert_with(|| {
        vec![ClassicalGroup {
            l_exp: Order::Infinite,
            label: "1".to_string(),
        }]
    });
    Ok(ClassicalChart {
        prime: chart.prime,
        groups,
        differentials: Vec::new(),
        provenance: BTreeMap::new(),
        schema: crate::chart::SCHEMA_VERSION,
    })
}

fn l_exponent(order: &num_bigint::BigInt, l: u64) -> u32 {
    use num_traits::Zero;
    let l = num_bigint::BigInt::from(l);
    let mut o = order.clone();
    let mut v = 0;
    while !o.is_zero() && (&o % &l).is_zero() {
        o /= &l;
        v += 1;
    }
    v
}

/// Reindexes a chart over R along theta -> tau^2, producing a chart over C
/// whose entries form the even-weight-step part.
pub fn base_change(chart: &MotivicChart) -> Result<MotivicChart> {
    if chart.base != BaseField::R {
        return Err(Error::Config(
            "base change theta -> tau^2 starts from a chart over R".to_string(),
        ));
    }
    let mut out = MotivicChart::new(BaseField::C, chart.prime, chart.page);
    out.meta = chart.meta.clone();
    out.meta
        .build_options
        .insert("base_change".to_string(), "theta->tau^2".to_string());
    for (pos, entry) in &chart.entries {
        let mapped = Entry {
            summands: entry
                .summands
                .iter()
                .map(|s| CyclicSummand {
                    l_exp: s.l_exp,
                    tau_exp: match s.tau_exp {
                        Order::Finite(k) => Order::Finite(2 * k),
                        Order::Infinite => Order::Infinite,
                    },
                    gen_weight: s.gen_weight,
                    label: s.label.clone(),
                })
                .collect(),
            presentation: entry.presentation.as_ref().map(|p| {
                let mut mapped = p.clone();
                for rel in &mut mapped.relations {
                    for c in rel.iter_mut() {
                        c.tau_pow *= 2;
                    }
                }
                mapped
            }),
        };
        out.entries.insert(*pos, mapped);
    }
    out.validate()?;
    Ok(out)
}

/// Compares two charts' groups cell by cell as multisets of l-exponents,
/// ignoring labels.
pub fn same_classical_groups(a: &ClassicalChart, b: &ClassicalChart) -> bool {
    if a.groups.len() != b.groups.len() {
        return false;
    }
    a.groups.iter().all(|(pos, gs)| {
        let Some(hs) = b.groups.get(pos) else {
            return false;
        };
        let mut x: Vec<Order> = gs.iter().map(|g| g.l_exp).collect();
        let mut y: Vec<Order> = hs.iter().map(|g| g.l_exp).collect();
        x.sort_unstable();
        y.sort_unstable();
        x == y
    })
}
