//! Deterministic SVG rendering of line plots, and a small reader for the
//! polylines it emits.

use std::fmt::Write as _;

use crate::format::fmt_sig;

/// Significant digits of every coordinate in the SVG output.
pub const SVG_DIGITS: usize = 6;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];
const MAX_LEGEND: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Energy tag written to `data-energy`.
    pub energy: Option<f64>,
    pub stroke: Option<String>,
    pub dashed: bool,
}

impl Curve {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            label: label.into(),
            points,
            energy: None,
            stroke: None,
            dashed: false,
        }
    }

    pub fn with_energy(mut self, energy: f64) -> Self {
        self.energy = Some(energy);
        self
    }

    pub fn with_stroke(mut self, stroke: impl Into<String>) -> Self {
        self.stroke = Some(stroke.into());
        self
    }

    pub fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FigureDocument {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
    pub curves: Vec<Curve>,
}

impl FigureDocument {
    pub fn new(title: impl Into<String>, x_label: impl Into<String>, y_label: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            ..Self::default()
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FigureError {
    #[error("figure has no curves with points")]
    EmptyFigure,
    #[error("curve {label:?} contains a non-finite point")]
    NonFinite { label: String },
    #[error("invalid axis range ({0}, {1})")]
    InvalidRange(f64, f64),
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn data_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let span = hi - lo;
    if span > 0.0 {
        (lo - 0.05 * span, hi + 0.05 * span)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn checked_range(range: (f64, f64)) -> Result<(f64, f64), FigureError> {
    if range.0.is_finite() && range.1.is_finite() && range.1 > range.0 {
        Ok(range)
    } else {
        Err(FigureError::InvalidRange(range.0, range.1))
    }
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * magnitude)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * magnitude);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn unescape(s: &str) -> String {
    s.replace("&quot;", "\"")
        .replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&amp;", "&")
}

fn num(v: f64) -> String {
    fmt_sig(v, SVG_DIGITS)
}

/// Renders the figure. Each curve polyline carries its pixel coordinates in
/// `points` and its data coordinates in `data-points`.
pub fn render_svg(figure: &FigureDocument) -> Result<String, FigureError> {
    let curves: Vec<&Curve> = figure.curves.iter().filter(|c| !c.points.is_empty()).collect();
    if curves.is_empty() {
        return Err(FigureError::EmptyFigure);
    }
    for c in &curves {
        if c.points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(FigureError::NonFinite { label: c.label.clone() });
        }
    }
    let all = || curves.iter().flat_map(|c| c.points.iter());
    let frame = Frame {
        x: checked_range(figure.x_range.unwrap_or_else(|| data_range(all().map(|p| p.0))))?,
        y: checked_range(figure.y_range.unwrap_or_else(|| data_range(all().map(|p| p.1))))?,
    };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<defs><clipPath id="plot-area"><rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}"/></clipPath></defs>"#
    );
    let _ = writeln!(
        svg,
        r#"<text class="title" x="{}" y="{}" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + plot_w / 2.0,
        TOP - 14.0,
        escape(&figure.title)
    );
    let _ = writeln!(
        svg,
        r##"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#444"/>"##
    );

    for t in ticks(frame.x.0, frame.x.1) {
        let x = num(frame.px(t));
        let base = HEIGHT - BOTTOM;
        let _ = writeln!(
            svg,
            r##"<line x1="{x}" y1="{base}" x2="{x}" y2="{}" stroke="#444"/>"##,
            base + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
            base + 18.0,
            num(t)
        );
    }
    for t in ticks(frame.y.0, frame.y.1) {
        let y = num(frame.py(t));
        let _ = writeln!(
            svg,
            r##"<line x1="{}" y1="{y}" x2="{LEFT}" y2="{y}" stroke="#444"/>"##,
            LEFT - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{y}" text-anchor="end" dy="4">{}</text>"#,
            LEFT - 8.0,
            num(t)
        );
    }
    if frame.y.0 < 0.0 && frame.y.1 > 0.0 {
        let y = num(frame.py(0.0));
        let _ = writeln!(
            svg,
            r##"<line class="zero" x1="{LEFT}" y1="{y}" x2="{}" y2="{y}" stroke="#bbb" stroke-dasharray="2 3"/>"##,
            WIDTH - RIGHT
        );
    }
    let _ = writeln!(
        svg,
        r#"<text class="x-label" x="{}" y="{}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 16.0,
        escape(&figure.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text class="y-label" x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(&figure.y_label)
    );

    let _ = writeln!(svg, r#"<g clip-path="url(#plot-area)">"#);
    for (i, c) in curves.iter().enumerate() {
        let stroke = c
            .stroke
            .clone()
            .unwrap_or_else(|| PALETTE[i % PALETTE.len()].to_owned());
        let pixels: Vec<String> = c
            .points
            .iter()
            .map(|(x, y)| format!("{},{}", num(frame.px(*x)), num(frame.py(*y))))
            .collect();
        let data: Vec<String> = c
            .points
            .iter()
            .map(|(x, y)| format!("{},{}", num(*x), num(*y)))
            .collect();
        let _ = write!(svg, r#"<polyline class="curve" data-label="{}""#, escape(&c.label));
        if let Some(e) = c.energy {
            let _ = write!(svg, r#" data-energy="{}""#, num(e));
        }
        let _ = write!(
            svg,
            r#" data-points="{}" points="{}" fill="none" stroke="{}" stroke-width="1.5""#,
            data.join(" "),
            pixels.join(" "),
            stroke
        );
        if c.dashed {
            let _ = write!(svg, r#" stroke-dasharray="6 4""#);
        }
        let _ = writeln!(svg, "/>");
    }
    let _ = writeln!(svg, "</g>");

    if curves.len() <= MAX_LEGEND {
        for (i, c) in curves.iter().enumerate() {
            let stroke = c
                .stroke
                .clone()
                .unwrap_or_else(|| PALETTE[i % PALETTE.len()].to_owned());
            let y = TOP + 16.0 + 16.0 * i as f64;
            let x = WIDTH - RIGHT - 150.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{stroke}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                x + 18.0,
                x + 24.0,
                y + 4.0,
                escape(&c.label)
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// A curve recovered from SVG text.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtractedCurve {
    pub label: String,
    pub energy: Option<f64>,
    pub points: Vec<(f64, f64)>,
}

fn attribute<'a>(tag: &'a str, name: &str) -> Option<&'a str> {
    let key = format!(" {name}=\"");
    let start = tag.find(&key)? + key.len();
    let len = tag[start..].find('"')?;
    Some(&tag[start..start + len])
}

/// Reads every `<polyline class="curve">` element written by `render_svg`,
/// returning data coordinates. Malformed coordinate pairs are skipped.
pub fn extract_polylines(svg: &str) -> Vec<ExtractedCurve> {
    let mut out = Vec::new();
    let mut rest = svg;
    while let Some(start) = rest.find("<polyline") {
        let tail = &rest[start..];
        let end = tail.find("/>").map_or(tail.len(), |e| e + 2);
        let tag = &tail[..end];
        rest = &tail[end..];
        if attribute(tag, "class") != Some("curve") {
            continue;
        }
        let points = attribute(tag, "data-points")
            .unwrap_or("")
            .split_whitespace()
            .filter_map(|pair| {
                let (x, y) = pair.split_once(',')?;
                Some((x.parse().ok()?, y.parse().ok()?))
            })
            .collect();
        out.push(ExtractedCurve {
            label: attribute(tag, "data-label").map(unescape).unwrap_or_default(),
            energy: attribute(tag, "data-energy").and_then(|e| e.parse().ok()),
            points,
        });
    }
    out
}
