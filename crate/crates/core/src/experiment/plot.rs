//! Static SVG line charts from result tables.

use std::fmt::Write;

use super::records::Table;
use crate::error::{invalid, GgmError, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn column(table: &Table, name: &str) -> Result<usize> {
    table
        .column(name)
        .ok_or_else(|| GgmError::InvalidArgument(format!("no column named '{name}'")))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One polyline per distinct `series` value (in order of first appearance),
/// points sorted by x. Output depends only on the table contents.
pub fn emit_plot(table: &Table, x: &str, y: &str, series: &str) -> Result<String> {
    if table.rows.is_empty() {
        return Err(GgmError::EmptyInput("no rows to plot".into()));
    }
    let (xi, yi, si) = (column(table, x)?, column(table, y)?, column(table, series)?);

    let mut lines: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for (row_no, row) in table.rows.iter().enumerate() {
        let parse = |i: usize, name: &str| -> Result<f64> {
            let cell = row.get(i).map(String::as_str).unwrap_or("");
            cell.parse::<f64>().or_else(|_| {
                invalid(format!("row {}: '{cell}' in column '{name}' is not a number", row_no + 1))
            })
        };
        let point = (parse(xi, x)?, parse(yi, y)?);
        let key = row.get(si).cloned().unwrap_or_default();
        match lines.iter_mut().find(|(k, _)| *k == key) {
            Some((_, pts)) => pts.push(point),
            None => lines.push((key, vec![point])),
        }
    }
    for (_, pts) in &mut lines {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    }

    let all = lines.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(px, py) in all {
        x0 = x0.min(px);
        x1 = x1.max(px);
        y0 = y0.min(py);
        y1 = y1.max(py);
    }
    if x1 == x0 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 == y0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |v: f64| LEFT + (v - x0) / (x1 - x0) * plot_w;
    let sy = |v: f64| TOP + plot_h - (v - y0) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let xv = x0 + t * (x1 - x0);
        let yv = y0 + t * (y1 - y0);
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 20.0,
            tick_label(xv)
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0,
        escape(x)
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(y)
    );

    for (i, (key, pts)) in lines.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = pts.iter().map(|&(px, py)| format!("{:.2},{:.2}", sx(px), sy(py))).collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
        for &(px, py) in pts {
            let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, sx(px), sy(py));
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(key)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e5).contains(&a) {
        format!("{v:.2e}")
    } else if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round())
    } else {
        format!("{v:.3}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[(&str, f64, f64)]) -> Table {
        Table {
            headers: vec!["strategy".into(), "n".into(), "rounds".into()],
            rows: rows
                .iter()
                .map(|(s, x, y)| vec![s.to_string(), x.to_string(), y.to_string()])
                .collect(),
        }
    }

    #[test]
    fn one_series() {
        let rows: Vec<(&str, f64, f64)> = (1..=10).map(|i| ("cycle-block", i as f64 * 100.0, (i * i) as f64)).collect();
        let svg = emit_plot(&table(&rows), "n", "rounds", "strategy").unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        let poly = svg.lines().find(|l| l.starts_with("<polyline")).unwrap();
        let points = poly.split("points=\"").nth(1).unwrap().trim_end_matches("\"/>");
        assert_eq!(points.split(' ').count(), 10);
    }

    #[test]
    fn several_series_and_determinism() {
        let mut rows = Vec::new();
        for (k, s) in ["degree", "betweenness", "closeness", "random"].iter().enumerate() {
            for a in 1..=5 {
                rows.push((*s, a as f64 / 10.0, (a + k) as f64 / 10.0));
            }
        }
        let t = table(&rows);
        let a = emit_plot(&t, "n", "rounds", "strategy").unwrap();
        let b = emit_plot(&t, "n", "rounds", "strategy").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<polyline").count(), 4);
        for s in ["degree", "betweenness", "closeness", "random"] {
            assert!(a.contains(&format!(">{s}</text>")));
        }
    }

    #[test]
    fn errors() {
        assert!(emit_plot(&table(&[]), "n", "rounds", "strategy").is_err());
        assert!(emit_plot(&table(&[("a", 1.0, 2.0)]), "alpha", "rounds", "strategy").is_err());
        let mut t = table(&[("a", 1.0, 2.0)]);
        t.rows[0][1] = "x".into();
        assert!(emit_plot(&t, "n", "rounds", "strategy").is_err());
    }
}
