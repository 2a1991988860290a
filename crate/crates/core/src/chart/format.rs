//! The classical chart fixture format: human-editable structured text.
//!
//! ```text
//! # comments start with '#'
//! schema = 1
//! prime = 3
//!
//! [groups]
//! # s,stem: l^n label (, l^n label)*      l^inf marks Z_l (origin only)
//! 0,0: l^inf 1
//! 1,3: l^1 alpha_1
//!
//! [differentials]
//! # page: source s,stem -> target s,stem : [rows; separated]
//! # matrix rows are indexed by target generators, columns by source
//! 5: 2,34 -> 7,33 : [1]
//!
//! [provenance]
//! 2,34: transcription note
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use crate::chart::classical::{ClassicalChart, ClassicalDifferential, ClassicalGroup};
use crate::chart::types::{Order, Pos};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Parses and validates a classical chart from fixture text.
pub fn parse_classical(text: &str) -> Result<ClassicalChart> {
    let parsed = parse_classical_unvalidated(text)?;
    parsed.validate()?;
    Ok(parsed)
}

/// Reads a fixture file, parses and validates it.
pub fn load_classical(path: &Path) -> Result<ClassicalChart> {
    let text = std::fs::read_to_string(path)?;
    parse_classical(&text)
}

/// Parses without running chart validation (used by tests that inject
/// invalid fixtures on purpose).
pub fn parse_classical_unvalidated(text: &str) -> Result<ClassicalChart> {
    #[derive(PartialEq)]
    enum Section {
        Header,
        Groups,
        Differentials,
        Provenance,
    }
    let mut section = Section::Header;
    let mut prime: Option<u64> = None;
    let mut schema: Option<u32> = None;
    let mut groups: BTreeMap<Pos, Vec<ClassicalGroup>> = BTreeMap::new();
    let mut differentials = Vec::new();
    let mut provenance = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "[groups]" => {
                section = Section::Groups;
                continue;
            }
            "[differentials]" => {
                section = Section::Differentials;
                continue;
            }
            "[provenance]" => {
                section = Section::Provenance;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Header => {
                let (key, value) = split_once(line, '=', line_no)?;
                match key.trim() {
                    "schema" => schema = Some(parse_num(value.trim(), line_no)?),
                    "prime" => prime = Some(parse_num(value.trim(), line_no)?),
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("unknown header key '{other}'"),
                        })
                    }
                }
            }
            Section::Groups => {
                let (pos_str, rest) = split_once(line, ':', line_no)?;
                let pos = parse_pos(pos_str.trim(), line_no)?;
                let mut cell = Vec::new();
                for part in rest.split(',') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    cell.push(parse_group(part, line_no)?);
                }
                if groups.insert(pos, cell).is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("duplicate cell {pos}"),
                    });
                }
            }
            Section::Differentials => {
                differentials.push(parse_differential(line, line_no)?);
            }
            Section::Provenance => {
                let (pos_str, rest) = split_once(line, ':', line_no)?;
                let pos = parse_pos(pos_str.trim(), line_no)?;
                provenance.insert(pos, rest.trim().to_string());
            }
        }
    }

    let prime = prime.ok_or(Error::Parse {
        line: 0,
        msg: "missing 'prime =' header".to_string(),
    })?;
    let schema = schema.unwrap_or(SCHEMA_VERSION);
    if schema != SCHEMA_VERSION {
        return Err(Error::Parse {
            line: 0,
            msg: format!("unsupported schema {schema}, this build reads schema {SCHEMA_VERSION}"),
        });
    }
    Ok(ClassicalChart {
        prime,
        groups,
        differentials,
        provenance,
        schema,
    })
}

/// Canonical textual form; `parse_classical(write_classical(c)) == c`.
pub fn write_classical(chart: &ClassicalChart) -> String {
    let mut out = String::new();
    out.push_str(&format!("schema = {}\n", chart.schema));
    out.push_str(&format!("prime = {}\n\n[groups]\n", chart.prime));
    for (pos, gs) in &chart.groups {
        let cell = gs
            .iter()
            .map(|g| match g.l_exp {
                Order::Finite(n) => format!("l^{n} {}", g.label),
                Order::Infinite => format!("l^inf {}", g.label),
            })
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!("{},{}: {}\n", pos.s, pos.stem, cell));
    }
    if !chart.differentials.is_empty() {
        out.push_str("\n[differentials]\n");
        for d in &chart.differentials {
            let rows = d
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("; ");
            out.push_str(&format!(
                "{}: {},{} -> {},{} : [{}]\n",
                d.page, d.source.s, d.source.stem, d.target.s, d.target.stem, rows
            ));
        }
    }
    if !chart.provenance.is_empty() {
        out.push_str("\n[provenance]\n");
        for (pos, note) in &chart.provenance {
            out.push_str(&format!("{},{}: {}\n", pos.s, pos.stem, note));
        }
    }
    out
}

fn split_once(line: &str, sep: char, line_no: usize) -> Result<(&str, &str)> {
    line.split_once(sep).ok_or(Error::Parse {
        line: line_no,
        msg: format!("expected '{sep}' in '{line}'"),
    })
}

fn parse_num<T: std::str::FromStr>(s: &str, line_no: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line: line_no,
        msg: format!("bad number '{s}'"),
    })
}

fn parse_pos(s: &str, line_no: usize) -> Result<Pos> {
    let (a, b) = split_once(s, ',', line_no)?;
    Ok(Pos::new(
        parse_num(a.trim(), line_no)?,
        parse_num(b.trim(), line_no)?,
    ))
}

fn parse_group(s: &str, line_no: usize) -> Result<ClassicalGroup> {
    let mut parts = s.split_whitespace();
    let order = parts.next().ok_or(Error::Parse {
        line: line_no,
        msg: "empty group".to_string(),
    })?;
    let label = parts.next().ok_or(Error::Parse {
        line: line_no,
        msg: format!("group '{s}' is missing a generator label"),
    })?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("trailing tokens in group '{s}'"),
        });
    }
    let l_exp = match order.strip_prefix("l^") {
        Some("inf") => Order::Infinite,
        Some(n) => Order::Finite(parse_num(n, line_no)?),
        None => {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("group order '{order}' must look like l^n or l^inf"),
            })
        }
    };
    Ok(ClassicalGroup {
        l_exp,
        label: label.to_string(),
    })
}

fn parse_differential(line: &str, line_no: usize) -> Result<ClassicalDifferential> {
    let (page_str, rest) = split_once(line, ':', line_no)?;
    let page = parse_num(page_str.trim(), line_no)?;
    let (cells, matrix_str) = split_once(rest, ':', line_no)?;
    let (src, tgt) = cells.split_once("->").ok_or(Error::Parse {
        line: line_no,
        msg: "expected 'source -> target'".to_string(),
    })?;
    let source = parse_pos(src.trim(), line_no)?;
    let target = parse_pos(tgt.trim(), line_no)?;
    let matrix_str = matrix_str.trim();
    if !matrix_str.starts_with('[') || !matrix_str.ends_with(']') {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("matrix '{matrix_str}' must be bracketed"),
        });
    }
    let inner = &matrix_str[1..matrix_str.len() - 1];
    let mut matrix = Vec::new();
    for row in inner.split(';') {
        let entries: Result<Vec<i64>> = row
            .split_whitespace()
            .map(|e| parse_num(e, line_no))
            .collect();
        matrix.push(entries?);
    }
    Ok(ClassicalDifferential {
        page,
        source,
        target,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const L3_MINI: &str = "\
# minimal example
schema = 1
prime = 3

[groups]
0,0: l^inf 1
1,3: l^1 alpha_1
";

    #[test]
    fn parses_a_minimal_fixture() {
        let chart = parse_classical(L3_MINI).unwrap();
        assert_eq!(chart.prime, 3);
        assert_eq!(chart.groups.len(), 2);
        let cell = &chart.groups[&Pos::new(1, 3)];
        assert_eq!(cell[0].label, "alpha_1");
        assert_eq!(cell[0].l_exp, Order::Finite(1));
    }

    #[test]
    fn round_trips_through_text() {
        let chart = parse_classical(L3_MINI).unwrap();
        let rendered = write_classical(&chart);
        let back = parse_classical(&rendered).unwrap();
        assert_eq!(chart, back);
    }

    #[test]
    fn differential_lines_parse() {
        let text = "\
prime = 3
[groups]
0,0: l^inf 1
2,34: l^1 b33
7,33: l^1 a1b1_3
[differentials]
5: 2,34 -> 7,33 : [1]
";
        let chart = parse_classical(text).unwrap();
        assert_eq!(chart.differentials.len(), 1);
        let d = &chart.differentials[0];
        assert_eq!(d.page, 5);
        assert_eq!(d.matrix, vec![vec![1]]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "prime = 3\n[groups]\n0,0 l^inf 1\n";
        match parse_classical(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn prime_two_fixtures_are_rejected() {
        let text = "prime = 2\n[groups]\n0,0: l^inf 1\n";
        match parse_classical(text) {
            Err(Error::Invariant(vs)) => {
                assert!(vs.iter().any(|v| v.rule == "prime"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unsupported_schema_is_rejected() {
        let text = "schema = 99\nprime = 3\n[groups]\n0,0: l^inf 1\n";
        assert!(matches!(parse_classical(text), Err(Error::Parse { .. })));
    }
}
