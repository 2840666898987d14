//! ASCII and SVG drawings of bigraded charts: stem `t - s` across,
//! filtration `s` up the page.
//!
//! ASCII legend: `*` one class, a digit for several classes in one
//! bidegree, `|` multiplication by `a0`, `/` multiplication by `a1`, `:`
//! over a tower that continues past the top row.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::ext_charts::{BigradedChart, PageStatus};

fn status_line(chart: &BigradedChart) -> &'static str {
    match chart.status {
        PageStatus::Collapsed => "E2 = E_infinity",
        PageStatus::E2Only => "E2 only; differentials unresolved",
    }
}

pub fn render_ascii(chart: &BigradedChart) -> String {
    let stems = (chart.max_stem.max(0) + 1) as usize;
    let width = 2 * stems + 1;
    let a0: BTreeSet<(i64, i64)> = chart.a0_lines.iter().map(|l| (l.from.0, l.from.1)).collect();
    let a1: BTreeSet<(i64, i64)> = chart.a1_lines.iter().map(|l| (l.from.0, l.from.1)).collect();
    let continues: BTreeSet<i64> = chart
        .cells
        .iter()
        .filter(|((_, s), v)| *s == chart.max_filt && v.iter().any(|c| c.on_tower))
        .map(|((stem, _), _)| *stem)
        .collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}  (stems 0..{}, s <= {}; {})",
        chart.title,
        chart.max_stem,
        chart.max_filt,
        status_line(chart)
    );
    let label_w = chart.max_filt.max(0).to_string().len();
    let row = |fill: &dyn Fn(usize) -> char| -> String {
        let line: String = (0..width).map(fill).collect();
        line.trim_end().to_string()
    };

    let top = row(&|x| if x % 2 == 0 && continues.contains(&((x / 2) as i64)) { ':' } else { ' ' });
    let _ = writeln!(out, "{:>label_w$} {}", "", top);
    for s in (0..=chart.max_filt).rev() {
        if s < chart.max_filt {
            let conn = row(&|x| {
                let stem = (x / 2) as i64;
                if x % 2 == 0 && a0.contains(&(stem, s)) {
                    '|'
                } else if x % 2 == 1 && a1.contains(&(stem, s)) {
                    '/'
                } else {
                    ' '
                }
            });
            let _ = writeln!(out, "{:>label_w$} {}", "", conn);
        }
        let dots = row(&|x| {
            if x % 2 == 1 {
                return ' ';
            }
            match chart.count((x / 2) as i64, s) {
                0 => ' ',
                1 => '*',
                k if k < 10 => char::from_digit(k as u32, 10).unwrap(),
                _ => '#',
            }
        });
        let _ = writeln!(out, "{:>label_w$} {}", s, dots);
    }
    let mut axis = vec![' '; width + 4];
    let mut stem = 0usize;
    while stem < stems {
        for (i, c) in stem.to_string().chars().enumerate() {
            if 2 * stem + i < axis.len() {
                axis[2 * stem + i] = c;
            }
        }
        stem += if stems > 20 { 4 } else { 2 };
    }
    let axis: String = axis.into_iter().collect();
    let _ = writeln!(out, "{:>label_w$} {}  t-s", "", axis.trim_end());
    out
}

const DX: f64 = 28.0;
const DY: f64 = 24.0;
const MARGIN: f64 = 40.0;

pub fn render_svg(chart: &BigradedChart) -> String {
    let stems = chart.max_stem.max(0) as f64;
    let filts = chart.max_filt.max(0) as f64;
    let w = 2.0 * MARGIN + (stems + 1.0) * DX;
    let h = 2.0 * MARGIN + (filts + 1.0) * DY + 20.0;
    let x = |stem: i64, k: usize, count: usize| {
        let spread = (k as f64 - (count as f64 - 1.0) / 2.0) * 6.0;
        MARGIN + stem as f64 * DX + spread + DX / 2.0
    };
    let y = |s: i64| h - MARGIN - s as f64 * DY - DY / 2.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="18" font-size="13">{} ({})</text>"#,
        escape(&chart.title),
        status_line(chart)
    );
    let x0 = MARGIN;
    let y0 = h - MARGIN;
    let _ = writeln!(
        out,
        r##"<g stroke="#999" stroke-width="1"><line x1="{x0}" y1="{y0}" x2="{:.1}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{:.1}"/></g>"##,
        w - MARGIN / 2.0,
        MARGIN
    );
    for stem in 0..=chart.max_stem.max(0) {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{stem}</text>"#,
            MARGIN + stem as f64 * DX + DX / 2.0,
            y0 + 14.0
        );
    }
    for s in 0..=chart.max_filt.max(0) {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{s}</text>"#,
            x0 - 6.0,
            y(s) + 4.0
        );
    }
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">t-s</text>"#, w - MARGIN / 2.0 + 2.0, y0 + 4.0);
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">s</text>"#, x0 - 4.0, MARGIN - 6.0);

    let pos = |(stem, s, k): (i64, i64, usize)| (x(stem, k, chart.count(stem, s)), y(s));
    let _ = writeln!(out, r##"<g stroke="#000" stroke-width="1.2">"##);
    for line in chart.a0_lines.iter().chain(&chart.a1_lines) {
        let (x1, y1) = pos(line.from);
        let (x2, y2) = pos(line.to);
        let _ = writeln!(out, r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g fill="#000">"##);
    for (&(stem, s), list) in &chart.cells {
        for (k, cell) in list.iter().enumerate() {
            let (cx, cy) = pos((stem, s, k));
            let title = match &cell.summand {
                Some(from) => format!("{} [{}]", cell.name, from),
                None => cell.name.clone(),
            };
            let _ = writeln!(
                out,
                r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="3"><title>{}</title></circle>"#,
                escape(&title)
            );
            if cell.on_tower && s == chart.max_filt {
                for d in 1..=3 {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{cx:.1}" cy="{:.1}" r="1"/>"#,
                        cy - 6.0 - 4.0 * d as f64
                    );
                }
            }
        }
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
