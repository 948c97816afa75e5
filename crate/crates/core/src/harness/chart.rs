use std::fmt::Write as _;
use std::path::Path;

use super::SeriesStats;
use crate::Error;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// A labelled curve; `values[i]` is plotted at episode `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartSeries {
    pub label: String,
    pub values: Vec<f64>,
}

impl ChartSeries {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Self {
        ChartSeries {
            label: label.into(),
            values,
        }
    }

    pub fn from_stats(label: impl Into<String>, stats: &SeriesStats) -> Self {
        ChartSeries::new(label, stats.mean_rewards())
    }
}

/// Horizontal line across the plot, e.g. the optimal return.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceLine {
    pub label: String,
    pub y: f64,
}

impl ReferenceLine {
    pub fn new(label: impl Into<String>, y: f64) -> Self {
        ReferenceLine { label: label.into(), y }
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Rounds a span to a 1/2/5 step giving roughly `target` ticks.
fn tick_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let magnitude = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * magnitude)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * magnitude);
    step.max(f64::MIN_POSITIVE)
}

/// Renders a standalone SVG line chart.
pub fn render_svg(title: &str, series: &[ChartSeries], references: &[ReferenceLine]) -> Result<String, Error> {
    if series.is_empty() {
        return Err(Error::InvalidConfig("a chart needs at least one series".into()));
    }
    let finite = series
        .iter()
        .flat_map(|s| s.values.iter().copied())
        .chain(references.iter().map(|r| r.y))
        .filter(|v| v.is_finite());
    let (mut lo, mut hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        lo = 0.0;
        hi = 1.0;
    }
    if hi - lo < 1e-9 {
        lo -= 1.0;
        hi += 1.0;
    }
    let pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
    let n = series.iter().map(|s| s.values.len()).max().unwrap_or(0);
    let x_max = (n.max(2) - 1) as f64;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + x / x_max * plot_w;
    let sy = |y: f64| TOP + (hi - y) / (hi - lo) * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(
        w,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(title)
    )
    .unwrap();

    // Axes and ticks.
    writeln!(
        w,
        r#"<g stroke="black" fill="none"><line x1="{LEFT}" y1="{0}" x2="{1}" y2="{0}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{0}"/></g>"#,
        TOP + plot_h,
        LEFT + plot_w
    )
    .unwrap();
    let y_step = tick_step(hi - lo, 6.0);
    let mut y = (lo / y_step).ceil() * y_step;
    while y <= hi {
        writeln!(
            w,
            r##"<line x1="{0:.2}" y1="{1:.2}" x2="{LEFT}" y2="{1:.2}" stroke="black"/><text x="{2:.2}" y="{3:.2}" text-anchor="end">{4}</text>"##,
            LEFT - 4.0,
            sy(y),
            LEFT - 6.0,
            sy(y) + 4.0,
            y
        )
        .unwrap();
        y += y_step;
    }
    let x_step = tick_step(x_max, 8.0).max(1.0);
    let mut x = 0.0;
    while x <= x_max + 1e-9 {
        writeln!(
            w,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="black"/><text x="{0:.2}" y="{3:.2}" text-anchor="middle">{4}</text>"#,
            sx(x),
            TOP + plot_h,
            TOP + plot_h + 4.0,
            TOP + plot_h + 18.0,
            x
        )
        .unwrap();
        x += x_step;
    }
    writeln!(
        w,
        r#"<text x="{}" y="{}" text-anchor="middle">episode</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    )
    .unwrap();
    writeln!(
        w,
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">cumulative reward</text>"#,
        TOP + plot_h / 2.0
    )
    .unwrap();

    for r in references {
        writeln!(
            w,
            r##"<line x1="{LEFT}" y1="{0:.2}" x2="{1:.2}" y2="{0:.2}" stroke="#555555" stroke-dasharray="6 4"/>"##,
            sy(r.y),
            LEFT + plot_w
        )
        .unwrap();
    }
    for (i, s) in series.iter().enumerate() {
        let points: Vec<String> = s
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(|(x, v)| format!("{:.2},{:.2}", sx(x as f64), sy(*v)))
            .collect();
        writeln!(
            w,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            PALETTE[i % PALETTE.len()],
            points.join(" ")
        )
        .unwrap();
    }

    // Legend.
    let lx = LEFT + plot_w + 15.0;
    let entries = series
        .iter()
        .enumerate()
        .map(|(i, s)| (s.label.as_str(), PALETTE[i % PALETTE.len()], ""))
        .chain(references.iter().map(|r| (r.label.as_str(), "#555555", " stroke-dasharray=\"6 4\"")));
    for (k, (label, colour, dash)) in entries.enumerate() {
        let ly = TOP + 10.0 + 20.0 * k as f64;
        writeln!(
            w,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="1.5"{dash}/><text x="{}" y="{}">{}</text>"#,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0,
            escape(label)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn render_chart(
    title: &str,
    series: &[ChartSeries],
    references: &[ReferenceLine],
    path: impl AsRef<Path>,
) -> Result<(), Error> {
    let svg = render_svg(title, series, references)?;
    std::fs::write(path, svg)?;
    Ok(())
}
