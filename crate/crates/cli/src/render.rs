//! Chart rendering: deterministic SVG and ASCII output.
//!
//! Stems run along the horizontal axis, filtration along the vertical
//! axis, one glyph per summand: a filled dot for summands free over the
//! ground ring, an open dot with its torsion order for ground-torsion, a
//! square for retained non-split presentations. Weights are printed next
//! to glyphs when requested.

use manss_core::chart::{MotivicChart, Order};

const CELL: i64 = 44;
const MARGIN: i64 = 56;
const GLYPH_R: i64 = 5;

/// Renders the chart as an SVG document. Byte-identical output for equal
/// charts.
pub fn svg_chart(chart: &MotivicChart, show_weights: bool) -> String {
    let ground = chart.ring().ground_symbol();
    let (max_s, max_stem) = chart.extent();
    let width = MARGIN * 2 + (max_stem + 1) * CELL;
    let height = MARGIN * 2 + (max_s + 1) * CELL;
    let x = |stem: i64| MARGIN + stem * CELL;
    let y = |s: i64| height - MARGIN - s * CELL;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str(&format!(
        "  <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    // grid and axis labels
    for stem in 0..=max_stem {
        out.push_str(&format!(
            "  <line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#eeeeee\"/>\n",
            x(stem),
            y(max_s) - CELL / 2,
            y(0) + CELL / 2
        ));
        if stem % 2 == 0 {
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\" \
                 fill=\"#333333\">{stem}</text>\n",
                x(stem),
                y(0) + CELL
            ));
        }
    }
    for s in 0..=max_s {
        out.push_str(&format!(
            "  <line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#eeeeee\"/>\n",
            y(s),
            x(0) - CELL / 2,
            x(max_stem) + CELL / 2
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\" \
             fill=\"#333333\">{s}</text>\n",
            x(0) - CELL,
            y(s) + 4
        ));
    }
    out.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#000000\">stem</text>\n",
        x(max_stem) + CELL / 2,
        y(0) + CELL
    ));
    out.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#000000\">s</text>\n",
        x(0) - CELL,
        y(max_s) - CELL / 2
    ));

    for (pos, entry) in &chart.entries {
        let cx = x(pos.stem);
        let cy = y(pos.s);
        let mut slot = 0i64;
        let offset = |slot: i64| slot * (2 * GLYPH_R + 4);
        for s in &entry.summands {
            let gx = cx + offset(slot);
            match s.tau_exp {
                Order::Infinite => {
                    out.push_str(&format!(
                        "  <circle cx=\"{gx}\" cy=\"{cy}\" r=\"{GLYPH_R}\" fill=\"black\"/>\n"
                    ));
                }
                Order::Finite(k) => {
                    out.push_str(&format!(
                        "  <circle cx=\"{gx}\" cy=\"{cy}\" r=\"{GLYPH_R}\" fill=\"white\" \
                         stroke=\"black\"/>\n"
                    ));
                    out.push_str(&format!(
                        "  <text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#000000\">{ground}^{k}</text>\n",
                        gx + GLYPH_R + 1,
                        cy - GLYPH_R
                    ));
                }
            }
            if let Order::Finite(m) = s.l_exp {
                if m > 1 {
                    out.push_str(&format!(
                        "  <text x=\"{}\" y=\"{}\" font-size=\"9\" fill=\"#555555\">l^{m}</text>\n",
                        gx + GLYPH_R + 1,
                        cy + GLYPH_R + 8
                    ));
                }
            }
            if show_weights {
                out.push_str(&format!(
                    "  <text x=\"{}\" y=\"{}\" font-size=\"9\" fill=\"#1a6faa\">w={}</text>\n",
                    gx - GLYPH_R,
                    cy + 2 * GLYPH_R + 8,
                    s.gen_weight
                ));
            }
            slot += 1;
        }
        if entry.presentation.is_some() {
            let gx = cx + offset(slot);
            out.push_str(&format!(
                "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" \
                 stroke=\"black\"/>\n",
                gx - GLYPH_R,
                cy - GLYPH_R,
                2 * GLYPH_R,
                2 * GLYPH_R
            ));
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#000000\">non-split</text>\n",
                gx + GLYPH_R + 1,
                cy - GLYPH_R
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Renders the chart as a plain-text cell table.
pub fn ascii_chart(chart: &MotivicChart, show_weights: bool) -> String {
    let ground = chart.ring().ground_symbol();
    let (max_s, _) = chart.extent();
    let mut out = String::new();
    out.push_str(&format!(
        "# chart over {}, prime {}, page {}\n",
        chart.base, chart.prime, chart.page
    ));
    for s in (0..=max_s).rev() {
        let mut row = Vec::new();
        for (pos, entry) in &chart.entries {
            if pos.s != s || entry.is_empty() {
                continue;
            }
            let mut cell = format!("({},{}): ", pos.s, pos.stem);
            let mut parts: Vec<String> = entry
                .summands
                .iter()
                .map(|x| {
                    let mut p = match x.l_exp {
                        Order::Finite(m) => format!("l^{m}"),
                        Order::Infinite => "l^inf".to_string(),
                    };
                    if let Order::Finite(k) = x.tau_exp {
                        p.push_str(&format!("/{ground}^{k}"));
                    }
                    if show_weights {
                        p.push_str(&format!("@{}", x.gen_weight));
                    }
                    p
                })
                .collect();
            if entry.presentation.is_some() {
                parts.push("[non-split]".to_string());
            }
            cell.push_str(&parts.join(" + "));
            row.push(cell);
        }
        if !row.is_empty() {
            out.push_str(&format!("s={s:<3} {}\n", row.join("   ")));
        }
    }
    out
}
