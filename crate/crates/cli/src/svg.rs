//! SVG 1.1 line charts for the four standard figures.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use skylink::antenna::VerticalPattern;
use skylink::scenario::{LinkClass, LinkKind, SweepSeries, SweepSpec};

use crate::error::{CliError, Result};
use crate::output;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// LoS probability against aircraft height.
    Los,
    /// Combined path loss against aircraft height.
    PathLoss,
    /// Vertical pattern and the gain seen by the aircraft, against angle.
    Gain,
    /// RSSI against aircraft height, with sensitivity lines.
    Rssi,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Los, Figure::PathLoss, Figure::Gain, Figure::Rssi];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Los => "los",
            Figure::PathLoss => "pathloss",
            Figure::Gain => "gain",
            Figure::Rssi => "rssi",
        }
    }
}

impl FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "unknown figure {s:?}; expected los, pathloss, gain or rssi"
                ))
            })
    }
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

struct Line {
    label: String,
    class: &'static str,
    points: Vec<(f64, f64)>,
}

struct Chart {
    title: String,
    x_label: &'static str,
    y_label: &'static str,
    x_range: (f64, f64),
    x_step: Option<f64>,
    y_range: (f64, f64),
    lines: Vec<Line>,
    thresholds: Vec<(String, f64)>,
}

/// Tick step of 1, 2 or 5 times a power of ten giving about `target` ticks.
fn nice_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let unit = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    unit * mag
}

fn nice_range(lo: f64, hi: f64) -> (f64, f64) {
    if !(hi > lo) {
        return (lo - 1.0, lo + 1.0);
    }
    let step = nice_step(hi - lo, 6.0);
    ((lo / step).floor() * step, (hi / step).ceil() * step)
}

fn ticks(range: (f64, f64), step: Option<f64>) -> Vec<f64> {
    let step = step.unwrap_or_else(|| nice_step(range.1 - range.0, 6.0));
    let first = (range.0 / step).ceil() as i64;
    let last = (range.1 / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn tick_label(v: f64) -> String {
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

impl Chart {
    fn sx(&self, x: f64) -> f64 {
        LEFT + (x - self.x_range.0) / (self.x_range.1 - self.x_range.0) * (WIDTH - LEFT - RIGHT)
    }

    fn sy(&self, y: f64) -> f64 {
        HEIGHT
            - BOTTOM
            - (y - self.y_range.0) / (self.y_range.1 - self.y_range.0) * (HEIGHT - TOP - BOTTOM)
    }

    fn render(&self) -> String {
        let mut s = String::new();
        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(
            s,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            LEFT + plot_w / 2.0,
            escape(&self.title)
        );

        for x in ticks(self.x_range, self.x_step) {
            let px = self.sx(x);
            let _ = writeln!(
                s,
                r##"<line class="grid" x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{:.2}" stroke="#dddddd"/>"##,
                TOP + plot_h
            );
            let _ = writeln!(
                s,
                r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                TOP + plot_h + 18.0,
                tick_label(x)
            );
        }
        for y in ticks(self.y_range, None) {
            let py = self.sy(y);
            let _ = writeln!(
                s,
                r##"<line class="grid" x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#dddddd"/>"##,
                LEFT + plot_w
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 6.0,
                py + 4.0,
                tick_label(y)
            );
        }
        let _ = writeln!(
            s,
            r#"<rect class="frame" x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + plot_w / 2.0,
            HEIGHT - 15.0,
            escape(self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            TOP + plot_h / 2.0,
            TOP + plot_h / 2.0,
            escape(self.y_label)
        );

        for (label, y) in &self.thresholds {
            let py = self.sy(*y);
            let _ = writeln!(
                s,
                r##"<line class="threshold" data-label="{}" x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#555555" stroke-dasharray="6 4"/>"##,
                escape(label),
                LEFT + plot_w
            );
        }

        let mut legend_y = TOP + 10.0;
        let legend_x = WIDTH - RIGHT + 15.0;
        for (i, line) in self.lines.iter().enumerate() {
            let colour = PALETTE[i % PALETTE.len()];
            let pts: Vec<String> = line
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", self.sx(x), self.sy(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline class="{}" data-label="{}" fill="none" stroke="{colour}" stroke-width="1.8" points="{}"/>"#,
                line.class,
                escape(&line.label),
                pts.join(" ")
            );
            let _ = writeln!(
                s,
                r#"<line x1="{legend_x}" y1="{legend_y}" x2="{}" y2="{legend_y}" stroke="{colour}" stroke-width="2"/>"#,
                legend_x + 20.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}">{}</text>"#,
                legend_x + 26.0,
                legend_y + 4.0,
                escape(&line.label)
            );
            legend_y += 18.0;
        }
        for (label, _) in &self.thresholds {
            let _ = writeln!(
                s,
                r##"<line x1="{legend_x}" y1="{legend_y}" x2="{}" y2="{legend_y}" stroke="#555555" stroke-dasharray="6 4"/>"##,
                legend_x + 20.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}">{}</text>"#,
                legend_x + 26.0,
                legend_y + 4.0,
                escape(label)
            );
            legend_y += 18.0;
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Patterns used by terrestrial links, deduplicated, with display names.
pub fn distinct_patterns(spec: &SweepSpec<f64>) -> Vec<(String, VerticalPattern<f64>)> {
    let mut out: Vec<VerticalPattern<f64>> = Vec::new();
    for link in &spec.links {
        if let LinkKind::Terrestrial { pattern, .. } = link.kind {
            if !out.contains(&pattern) {
                out.push(pattern);
            }
        }
    }
    out.into_iter()
        .map(|p| (format!("pattern, tilt {} deg", p.etilt_deg), p))
        .collect()
}

/// The pattern sampled every half degree over [-90, 90].
pub fn pattern_curve(pattern: &VerticalPattern<f64>) -> Vec<(f64, f64)> {
    (0..=360)
        .map(|i| {
            let theta = -90.0 + 0.5 * i as f64;
            (
                theta,
                pattern
                    .attenuation_db(theta)
                    .expect("angle within [-90, 90]"),
            )
        })
        .collect()
}

fn height_lines(
    series: &SweepSeries<f64>,
    value: impl Fn(&skylink::SweepRecord) -> f64,
) -> Vec<Line> {
    series
        .links
        .iter()
        .map(|link| Line {
            label: link.label.clone(),
            class: "series",
            points: link
                .records
                .iter()
                .map(|r| (r.height_m, value(r)))
                .collect(),
        })
        .collect()
}

fn height_range(series: &SweepSeries<f64>) -> (f64, f64) {
    let lo = series.heights_m.first().copied().unwrap_or(0.0);
    let hi = series.heights_m.last().copied().unwrap_or(1.0);
    (lo.min(0.0), if hi > lo { hi } else { lo + 1.0 })
}

fn value_range<'a>(values: impl Iterator<Item = &'a f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    });
    nice_range(lo, hi)
}

pub fn render_figure(spec: &SweepSpec<f64>, series: &SweepSeries<f64>, figure: Figure) -> String {
    let chart = match figure {
        Figure::Los => Chart {
            title: "LoS probability".into(),
            x_label: "Aircraft height (m)",
            y_label: "LoS probability",
            x_range: height_range(series),
            x_step: None,
            y_range: (0.0, 1.0),
            lines: height_lines(series, |r| r.path_loss.p_los),
            thresholds: Vec::new(),
        },
        Figure::PathLoss => {
            let lines = height_lines(series, |r| r.path_loss.pl_combined_db);
            let y_range = value_range(lines.iter().flat_map(|l| l.points.iter().map(|(_, y)| y)));
            Chart {
                title: "Path loss".into(),
                x_label: "Aircraft height (m)",
                y_label: "Path loss (dB)",
                x_range: height_range(series),
                x_step: None,
                y_range,
                lines,
                thresholds: Vec::new(),
            }
        }
        Figure::Rssi => {
            let lines = height_lines(series, |r| r.budget.rssi_dbm);
            let mut thresholds: Vec<(String, f64)> = Vec::new();
            for link in &series.links {
                if !thresholds.iter().any(|(_, s)| *s == link.sensitivity_dbm) {
                    let who = match link.class {
                        LinkClass::Tn => "TN",
                        LinkClass::Ntn => "NTN",
                    };
                    thresholds.push((
                        format!("{who} sensitivity {} dBm", link.sensitivity_dbm),
                        link.sensitivity_dbm,
                    ));
                }
            }
            let ys = lines
                .iter()
                .flat_map(|l| l.points.iter().map(|(_, y)| y))
                .chain(thresholds.iter().map(|(_, y)| y));
            let y_range = value_range(ys);
            Chart {
                title: "Received signal strength".into(),
                x_label: "Aircraft height (m)",
                y_label: "RSSI (dBm)",
                x_range: height_range(series),
                x_step: None,
                y_range,
                lines,
                thresholds,
            }
        }
        Figure::Gain => {
            let mut lines: Vec<Line> = distinct_patterns(spec)
                .into_iter()
                .map(|(label, p)| Line {
                    label,
                    class: "pattern",
                    points: pattern_curve(&p),
                })
                .collect();
            let floor = lines
                .iter()
                .flat_map(|l| l.points.iter().map(|&(_, y)| y))
                .fold(0.0f64, f64::min);
            for link in series.links.iter().filter(|l| l.class == LinkClass::Tn) {
                lines.push(Line {
                    label: format!("{} (aircraft)", link.label),
                    class: "series",
                    points: link
                        .records
                        .iter()
                        .filter_map(|r| r.pattern_angle_deg.map(|t| (t, r.budget.antenna_gain_db)))
                        .collect(),
                });
            }
            Chart {
                title: "Vertical antenna gain".into(),
                x_label: "Depression angle at the mast (deg)",
                y_label: "Gain (dB)",
                x_range: (-90.0, 90.0),
                x_step: Some(30.0),
                y_range: nice_range(floor - 1.0, 0.0),
                lines,
                thresholds: Vec::new(),
            }
        }
    };
    chart.render()
}

pub fn emit_figure(
    spec: &SweepSpec<f64>,
    series: &SweepSeries<f64>,
    figure: Figure,
    path: &Path,
) -> Result<()> {
    output::emit_text(path, &render_figure(spec, series, figure))
}
