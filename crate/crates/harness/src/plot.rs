//! Minimal SVG line charts with optional logarithmic axes.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{HarnessError, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Default)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub series: Vec<Series>,
    /// Dashed vertical reference lines at the given x positions.
    pub markers: Vec<(f64, String)>,
}

struct Axis {
    log: bool,
    lo: f64,
    hi: f64,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Axis {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() || !hi.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if hi - lo < 1e-12 {
            let pad = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
            (lo, hi) = (lo - pad, hi + pad);
        }
        if log {
            (lo, hi) = (lo.floor(), hi.ceil());
        }
        Axis { log, lo, hi }
    }

    /// Position in `[0, 1]` along the axis, `None` when unplottable.
    fn frac(&self, v: f64) -> Option<f64> {
        if !v.is_finite() || (self.log && v <= 0.0) {
            return None;
        }
        let v = if self.log { v.log10() } else { v };
        Some((v - self.lo) / (self.hi - self.lo))
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let (a, b) = (self.lo as i32, self.hi as i32);
            let step = ((b - a) / 8).max(1);
            (a..=b)
                .step_by(step as usize)
                .map(|k| (10f64.powi(k), format!("1e{k}")))
                .collect()
        } else {
            (0..=5)
                .map(|i| {
                    let v = self.lo + (self.hi - self.lo) * i as f64 / 5.0;
                    (v, format!("{v:.3}"))
                })
                .collect()
        }
    }
}

fn usable(v: f64, log: bool) -> bool {
    v.is_finite() && (!log || v > 0.0)
}

impl Chart {
    pub fn render(&self) -> String {
        let pts = || self.series.iter().flat_map(|s| s.points.iter());
        let xs = Axis::fit(
            pts().map(|p| p.0).chain(self.markers.iter().map(|m| m.0)).filter(|&v| usable(v, self.log_x)),
            self.log_x,
        );
        let ys = Axis::fit(pts().map(|p| p.1).filter(|&v| usable(v, self.log_y)), self.log_y);
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let px = |f: f64| LEFT + f * pw;
        let py = |f: f64| TOP + (1.0 - f) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            LEFT + pw / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for (v, label) in xs.ticks() {
            if let Some(f) = xs.frac(v) {
                let x = px(f);
                let _ = writeln!(
                    s,
                    r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
                    TOP + ph,
                    TOP + ph + 5.0,
                    TOP + ph + 18.0
                );
            }
        }
        for (v, label) in ys.ticks() {
            if let Some(f) = ys.frac(v) {
                let y = py(f);
                let _ = writeln!(
                    s,
                    r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#,
                    LEFT - 5.0,
                    LEFT - 8.0,
                    y + 4.0
                );
            }
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text transform="translate(18 {}) rotate(-90)" text-anchor="middle">{}</text>"#,
            TOP + ph / 2.0,
            escape(&self.y_label)
        );
        for (x, label) in &self.markers {
            if let Some(f) = xs.frac(*x) {
                let x = px(f);
                let _ = writeln!(
                    s,
                    r#"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="black" stroke-dasharray="5,4"/><text x="{:.2}" y="{:.2}" font-size="10">{}</text>"#,
                    TOP + ph,
                    x + 3.0,
                    TOP + 12.0,
                    escape(label)
                );
            }
        }
        for (i, series) in self.series.iter().enumerate() {
            let colour = PALETTE[i % PALETTE.len()];
            let path: Vec<String> = series
                .points
                .iter()
                .filter_map(|&(x, y)| Some(format!("{:.2},{:.2}", px(xs.frac(x)?), py(ys.frac(y)?))))
                .collect();
            if !path.is_empty() {
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                    path.join(" ")
                );
            }
            let ly = TOP + 10.0 + 18.0 * i as f64;
            let lx = LEFT + pw + 12.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                lx + 20.0,
                lx + 26.0,
                ly + 4.0,
                escape(&series.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()).map_err(|e| HarnessError::io(path, e))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_log_chart_and_skips_unplottable_points() {
        let chart = Chart {
            title: "t < x & y".into(),
            log_y: true,
            series: vec![Series {
                label: "N=10".into(),
                points: vec![(0.0, 1.0), (1.0, 100.0), (2.0, 0.0), (3.0, f64::INFINITY)],
            }],
            markers: vec![(0.5, "r = mu".into())],
            ..Chart::default()
        };
        let svg = chart.render();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(svg.contains("t &lt; x &amp; y"));
        assert!(svg.contains("1e0") && svg.contains("1e2"));
        let polyline = svg.lines().find(|l| l.starts_with("<polyline")).unwrap();
        assert_eq!(polyline.matches(',').count(), 2);
    }

    #[test]
    fn empty_chart_still_renders() {
        assert!(Chart::default().render().contains("</svg>"));
    }
}
