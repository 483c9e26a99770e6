//! Minimal line-plot renderer over a [`Table`]. CSV stays the contract; this
//! is a convenience view.

use std::fmt::Write;

use crate::table::Table;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

/// Series label values and the curve's points.
type Curve = (Vec<f64>, Vec<(f64, f64)>);

/// One polyline per distinct combination of `series` columns. Non-finite
/// samples break the line.
pub fn render(table: &Table, x: &str, y: &str, series: &[&str], title: &str) -> String {
    let (xi, yi) = (
        table.column(x).expect("x column"),
        table.column(y).expect("y column"),
    );
    let keys: Vec<usize> = series
        .iter()
        .map(|s| table.column(s).expect("series column"))
        .collect();

    let mut groups: Vec<Curve> = Vec::new();
    for row in &table.rows {
        let label: Vec<f64> = keys.iter().map(|&k| row[k]).collect();
        let pt = (row[xi], row[yi]);
        match groups.iter_mut().find(|(l, _)| *l == label) {
            Some((_, pts)) => pts.push(pt),
            None => groups.push((label, vec![pt])),
        }
    }

    let finite = table
        .rows
        .iter()
        .filter(|r| r[xi].is_finite() && r[yi].is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for r in finite {
        x0 = x0.min(r[xi]);
        x1 = x1.max(r[xi]);
        y0 = y0.min(r[yi]);
        y1 = y1.max(r[yi]);
    }
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let px = |v: f64| MARGIN + (v - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |v: f64| HEIGHT - MARGIN - (v - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{title}</text>"#,
        WIDTH / 2.0
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        right - left,
        bottom - top
    );
    if y0 < 0.0 && y1 > 0.0 {
        let z = py(0.0);
        let _ = writeln!(
            s,
            r##"<line x1="{left}" y1="{z:.2}" x2="{right}" y2="{z:.2}" stroke="#888" stroke-dasharray="4 3"/>"##
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{left}" y="{}" text-anchor="middle">{}</text>"#,
        bottom + 16.0,
        fmt(x0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{right}" y="{}" text-anchor="middle">{}</text>"#,
        bottom + 16.0,
        fmt(x1)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{x}</text>"#,
        WIDTH / 2.0,
        bottom + 34.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        left - 4.0,
        bottom,
        fmt(y0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        left - 4.0,
        top + 8.0,
        fmt(y1)
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{}" transform="rotate(-90 14 {})" text-anchor="middle">{y}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    for (k, (label, pts)) in groups.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        for run in pts.split(|(a, b)| !(a.is_finite() && b.is_finite())) {
            if run.len() < 2 {
                continue;
            }
            let path: Vec<String> = run
                .iter()
                .map(|&(a, b)| format!("{:.2},{:.2}", px(a), py(b)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                path.join(" ")
            );
        }
        if !series.is_empty() {
            let text: Vec<String> = series
                .iter()
                .zip(label)
                .map(|(n, v)| format!("{n}={}", fmt(*v)))
                .collect();
            let ly = top + 14.0 + 14.0 * k as f64;
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{ly}" fill="{color}">{}</text>"#,
                right - 150.0,
                text.join(" ")
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}
