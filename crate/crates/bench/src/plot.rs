//! Grouped bar charts of a report summary as standalone SVG.
//!
//! One group per attack model (per `(attack, w_low)` in sweeps), one bar per
//! algorithm at the median, whiskers at the 25th and 75th percentiles.
//! Settings that meet no constraint get a hatched bar labelled `n/a`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{BenchError, Result};
use crate::experiment::MetricMode;
use crate::report::{summarize, ExperimentReport, Outcome};

const WIDTH: f64 = 880.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 70.0;
const COLORS: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Round axis maximum: 1, 2 or 5 times a power of ten.
fn nice_ceiling(x: f64) -> f64 {
    if !(x > 0.0) || !x.is_finite() {
        return 1.0;
    }
    let p = 10f64.powf(x.log10().floor());
    [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * p).find(|&v| v >= x).unwrap_or(10.0 * p)
}

pub fn render_svg(report: &ExperimentReport, mode: MetricMode) -> String {
    let cells = summarize(report, mode);
    let mut groups: Vec<&str> = Vec::new();
    let mut algorithms: Vec<&str> = Vec::new();
    for c in &cells {
        if !groups.contains(&c.group.as_str()) {
            groups.push(&c.group);
        }
        if !algorithms.contains(&c.algorithm.as_str()) {
            algorithms.push(&c.algorithm);
        }
    }
    let finite_top = cells
        .iter()
        .filter_map(|c| match &c.outcome {
            Outcome::Value { q, .. } => Some(q.q75.max(q.median)),
            Outcome::NotAvailable => None,
        })
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max);
    let y_max = nice_ceiling(finite_top * 1.05);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let y_of = |v: f64| TOP + plot_h * (1.0 - (v / y_max).clamp(0.0, 1.0));
    let (title, y_label) = match mode {
        MetricMode::FixListSize(l) => (format!("worst error at list size <= {l}"), "worst error"),
        MetricMode::FixError(x) => (format!("list size at median error <= {x}"), "list size"),
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    s.push_str(
        r##"<defs><pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><rect width="6" height="6" fill="#ffffff"/><line x1="0" y1="0" x2="0" y2="6" stroke="#888888" stroke-width="2"/></pattern></defs>
"##,
    );
    let _ = writeln!(s, r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(&title)
    );
    // axes and ticks
    let _ = writeln!(
        s,
        r##"<path d="M{LEFT} {TOP} V{} H{}" fill="none" stroke="#000000"/>"##,
        TOP + plot_h,
        LEFT + plot_w
    );
    for i in 0..=5 {
        let v = y_max * i as f64 / 5.0;
        let y = y_of(v);
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="#000000"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"##,
            LEFT - 4.0,
            LEFT - 6.0,
            y + 4.0,
            format_tick(v)
        );
    }
    let _ = writeln!(
        s,
        r#"<text transform="translate(18 {}) rotate(-90)" text-anchor="middle">{y_label}</text>"#,
        TOP + plot_h / 2.0
    );

    if cells.is_empty() {
        let _ = writeln!(
            s,
            r##"<text x="{}" y="{}" text-anchor="middle" fill="#555555">no data</text>"##,
            LEFT + plot_w / 2.0,
            TOP + plot_h / 2.0
        );
        s.push_str("</svg>\n");
        return s;
    }

    let group_w = plot_w / groups.len() as f64;
    let bar_w = group_w * 0.8 / algorithms.len() as f64;
    for (gi, g) in groups.iter().enumerate() {
        let gx = LEFT + gi as f64 * group_w + group_w * 0.1;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            gx + group_w * 0.4,
            TOP + plot_h + 18.0,
            escape(g)
        );
        for (ai, a) in algorithms.iter().enumerate() {
            let Some(cell) = cells.iter().find(|c| c.group == *g && c.algorithm == *a) else {
                continue;
            };
            let x = gx + ai as f64 * bar_w;
            let color = COLORS[ai % COLORS.len()];
            match &cell.outcome {
                Outcome::Value { q, .. } => {
                    let y = y_of(q.median);
                    let _ = writeln!(
                        s,
                        r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{color}"><title>{}: median {}</title></rect>"#,
                        bar_w * 0.9,
                        TOP + plot_h - y,
                        escape(a),
                        format_tick(q.median)
                    );
                    let cx = x + bar_w * 0.45;
                    let (lo, hi) = (y_of(q.q25), y_of(q.q75));
                    let _ = writeln!(
                        s,
                        r##"<path d="M{cx:.2} {lo:.2} V{hi:.2} M{:.2} {lo:.2} H{:.2} M{:.2} {hi:.2} H{:.2}" stroke="#000000" fill="none"/>"##,
                        cx - 4.0,
                        cx + 4.0,
                        cx - 4.0,
                        cx + 4.0
                    );
                }
                Outcome::NotAvailable => {
                    let _ = writeln!(
                        s,
                        r##"<rect x="{x:.2}" y="{TOP}" width="{:.2}" height="{plot_h}" fill="url(#hatch)" stroke="{color}"/><text x="{:.2}" y="{}" text-anchor="middle" font-size="10">n/a</text>"##,
                        bar_w * 0.9,
                        x + bar_w * 0.45,
                        TOP - 4.0
                    );
                }
            }
        }
    }
    for (ai, a) in algorithms.iter().enumerate() {
        let y = TOP + 10.0 + 20.0 * ai as f64;
        let x = WIDTH - RIGHT + 20.0;
        let _ = writeln!(
            s,
            r#"<rect x="{x}" y="{}" width="12" height="12" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            y - 10.0,
            COLORS[ai % COLORS.len()],
            x + 18.0,
            y,
            escape(a)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn format_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn emit_plot(report: &ExperimentReport, mode: MetricMode, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(report, mode)).map_err(|e| BenchError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Row;

    #[test]
    fn nice_ceilings() {
        assert_eq!(nice_ceiling(0.0), 1.0);
        assert_eq!(nice_ceiling(0.73), 1.0);
        assert_eq!(nice_ceiling(1.2), 2.0);
        assert_eq!(nice_ceiling(13.0), 20.0);
        assert_eq!(nice_ceiling(f64::INFINITY), 1.0);
    }

    #[test]
    fn empty_report_has_axes_and_caption() {
        let svg = render_svg(&ExperimentReport::default(), MetricMode::FixListSize(10));
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("no data"));
        assert!(svg.contains("<path d=\"M70 40"));
    }

    #[test]
    fn unavailable_cells_are_hatched() {
        let row = Row {
            algorithm: "ours".into(),
            params: "attack=x w_low=0.1".into(),
            seed: 0,
            list_size: 30,
            worst_error: 1.0,
            per_cluster_errors: vec![1.0],
            runtime_ms: 0.0,
        };
        let svg = render_svg(&ExperimentReport::new(vec![row]), MetricMode::FixListSize(10));
        assert!(svg.contains("url(#hatch)") && svg.contains("n/a"));
    }
}
