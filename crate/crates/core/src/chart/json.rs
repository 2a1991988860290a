//! Chart JSON: the stable on-disk encoding of trigraded charts.
//!
//! Top level is `{meta, entries[]}`. Infinite exponents are encoded as the
//! pair `(0, true)`: `l_exp`/`tau_exp` hold the finite value (0 when
//! infinite) and `l_inf`/`tau_inf` the infinity flag; the page uses the
//! same scheme. This encoding is stable across versions (bumping
//! `meta.schema` is the upgrade path).

use serde::{Deserialize, Serialize};

use crate::chart::motivic::{ChartMeta, Entry, MotivicChart, Page};
use crate::chart::types::{CyclicSummand, Order, Pos, PresentedEntry, RelCoef};
use crate::error::Result;
use crate::steenrod::BaseField;

pub const JSON_SCHEMA_VERSION: u32 = 1;

/// Hex SHA-256 of fixture bytes, recorded in chart metadata.
pub fn fixture_sha256(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct MetaJson {
    schema: u32,
    base: BaseField,
    prime: u64,
    page: i64,
    page_inf: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    fixture_sha256: Option<String>,
    #[serde(skip_serializing_if = "std::collections::BTreeMap::is_empty", default)]
    build_options: std::collections::BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct SummandJson {
    l_exp: u32,
    l_inf: bool,
    tau_exp: u32,
    tau_inf: bool,
    gen_weight: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorJson {
    weight: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<GeneratorJson>,
    relations: Vec<Vec<RelCoef>>,
    non_split: bool,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    s: i64,
    stem: i64,
    summands: Vec<SummandJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    presentation: Option<PresentationJson>,
}

#[derive(Serialize, Deserialize)]
struct ChartJson {
    meta: MetaJson,
    entries: Vec<EntryJson>,
}

fn order_to_pair(o: Order) -> (u32, bool) {
    match o {
        Order::Finite(n) => (n, false),
        Order::Infinite => (0, true),
    }
}

fn order_from_pair(n: u32, inf: bool) -> Order {
    if inf {
        Order::Infinite
    } else {
        Order::Finite(n)
    }
}

/// Serializes a chart to its canonical JSON document (deterministic byte
/// output for identical charts).
pub fn chart_to_json(chart: &MotivicChart) -> Result<String> {
    let (page, page_inf) = match chart.page {
        Page::R(r) => (r, false),
        Page::Infinity => (0, true),
    };
    let doc = ChartJson {
        meta: MetaJson {
            schema: JSON_SCHEMA_VERSION,
            base: chart.base,
            prime: chart.prime,
            page,
            page_inf,
            fixture_sha256: chart.meta.fixture_sha256.clone(),
            build_options: chart.meta.build_options.clone(),
        },
        entries: chart
            .entries
            .iter()
            .filter(|(_, e)| !e.is_empty())
            .map(|(pos, e)| EntryJson {
                s: pos.s,
                stem: pos.stem,
                summands: e
                    .summands
                    .iter()
                    .map(|s| {
                        let (l_exp, l_inf) = order_to_pair(s.l_exp);
                        let (tau_exp, tau_inf) = order_to_pair(s.tau_exp);
                        SummandJson {
                            l_exp,
                            l_inf,
                            tau_exp,
                            tau_inf,
                            gen_weight: s.gen_weight,
                            label: s.label.clone(),
                        }
                    })
                    .collect(),
                presentation: e.presentation.as_ref().map(|p| PresentationJson {
                    generators: p
                        .generators
                        .iter()
                        .map(|(w, l)| GeneratorJson {
                            weight: *w,
                            label: l.clone(),
                        })
                        .collect(),
                    relations: p.relations.clone(),
                    non_split: p.non_split,
                }),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// Loads a chart from its JSON document and validates it.
pub fn chart_from_json(text: &str) -> Result<MotivicChart> {
    let doc: ChartJson = serde_json::from_str(text)?;
    let page = if doc.meta.page_inf {
        Page::Infinity
    } else {
        Page::R(doc.meta.page)
    };
    let mut chart = MotivicChart::new(doc.meta.base, doc.meta.prime, page);
    chart.meta = ChartMeta {
        fixture_sha256: doc.meta.fixture_sha256,
        build_options: doc.meta.build_options,
    };
    for e in doc.entries {
        let entry = Entry {
            summands: e
                .summands
                .into_iter()
                .map(|s| CyclicSummand {
                    l_exp: order_from_pair(s.l_exp, s.l_inf),
                    tau_exp: order_from_pair(s.tau_exp, s.tau_inf),
                    gen_weight: s.gen_weight,
                    label: s.label,
                })
                .collect(),
            presentation: e.presentation.map(|p| {
                let mut pe = PresentedEntry::new(
                    p.generators
                        .into_iter()
                        .map(|g| (g.weight, g.label))
                        .collect(),
                    p.relations,
                );
                pe.non_split = p.non_split;
                pe
            }),
        };
        chart.entries.insert(Pos::new(e.s, e.stem), entry);
    }
    chart.validate()?;
    Ok(chart)
}
