//! CSV series. Numbers use six significant digits, lines end in LF.

use std::fs;
use std::io::Write;
use std::path::Path;

use skylink::scenario::{LinkClass, SweepSeries, SweepSpec};

use crate::error::{CliError, Result};
use crate::format::sig6;
use crate::svg;

pub const RECORD_HEADER: [&str; 11] = [
    "link_label",
    "height_m",
    "p_los",
    "pl_los_dB",
    "pl_nlos_dB",
    "clutter_dB",
    "pl_combined_dB",
    "antenna_gain_dB",
    "rssi_dBm",
    "margin_dB",
    "covered",
];

/// One row of the sweep CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub link_label: String,
    pub height_m: f64,
    pub p_los: f64,
    pub pl_los_db: f64,
    pub pl_nlos_db: f64,
    pub clutter_db: f64,
    pub pl_combined_db: f64,
    pub antenna_gain_db: f64,
    pub rssi_dbm: f64,
    pub margin_db: f64,
    pub covered: bool,
}

impl OutputRecord {
    pub fn fields(&self) -> Vec<String> {
        let mut row = vec![self.link_label.clone()];
        row.extend(
            [
                self.height_m,
                self.p_los,
                self.pl_los_db,
                self.pl_nlos_db,
                self.clutter_db,
                self.pl_combined_db,
                self.antenna_gain_db,
                self.rssi_dbm,
                self.margin_db,
            ]
            .into_iter()
            .map(sig6),
        );
        row.push(self.covered.to_string());
        row
    }
}

/// Records in canonical order: links as configured, heights ascending.
pub fn output_records(series: &SweepSeries<f64>) -> Vec<OutputRecord> {
    series
        .links
        .iter()
        .flat_map(|link| {
            link.records.iter().map(move |r| OutputRecord {
                link_label: link.label.clone(),
                height_m: r.height_m,
                p_los: r.path_loss.p_los,
                pl_los_db: r.path_loss.pl_los_db,
                pl_nlos_db: r.path_loss.pl_nlos_db,
                clutter_db: r.path_loss.clutter_db,
                pl_combined_db: r.path_loss.pl_combined_db,
                antenna_gain_db: r.budget.antenna_gain_db,
                rssi_dbm: r.budget.rssi_dbm,
                margin_db: r.budget.margin_db,
                covered: r.budget.covered,
            })
        })
        .collect()
}

fn csv_bytes<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn render_csv(series: &SweepSeries<f64>) -> Vec<u8> {
    csv_bytes(
        &RECORD_HEADER,
        output_records(series).iter().map(OutputRecord::fields),
    )
}

pub fn write_records<W: Write>(mut out: W, records: &[OutputRecord]) -> std::io::Result<()> {
    out.write_all(&csv_bytes(
        &RECORD_HEADER,
        records.iter().map(OutputRecord::fields),
    ))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::write(dir, e))?;
    }
    fs::write(path, bytes).map_err(|e| CliError::write(path, e))
}

pub fn emit_csv(series: &SweepSeries<f64>, path: &Path) -> Result<()> {
    if series.record_count() == 0 {
        return Err(CliError::Config("nothing to write: empty series".into()));
    }
    write_file(path, &render_csv(series))
}

/// Data behind one figure, as CSV.
pub fn figure_csv(
    spec: &SweepSpec<f64>,
    series: &SweepSeries<f64>,
    figure: svg::Figure,
) -> Vec<u8> {
    use svg::Figure::*;
    let per_height = |header: &[&str], cols: &dyn Fn(&skylink::SweepRecord, f64) -> Vec<f64>| {
        let rows = series.links.iter().flat_map(|link| {
            link.records.iter().map(move |r| {
                let mut row = vec![link.label.clone()];
                row.extend(cols(r, link.sensitivity_dbm).into_iter().map(sig6));
                row
            })
        });
        csv_bytes(header, rows)
    };
    match figure {
        Los => per_height(&["link_label", "height_m", "p_los"], &|r, _| {
            vec![r.height_m, r.path_loss.p_los]
        }),
        PathLoss => per_height(
            &[
                "link_label",
                "height_m",
                "pl_los_dB",
                "pl_nlos_dB",
                "clutter_dB",
                "pl_combined_dB",
            ],
            &|r, _| {
                let p = r.path_loss;
                vec![
                    r.height_m,
                    p.pl_los_db,
                    p.pl_nlos_db,
                    p.clutter_db,
                    p.pl_combined_db,
                ]
            },
        ),
        Rssi => {
            let rows = series.links.iter().flat_map(|link| {
                link.records.iter().map(move |r| {
                    vec![
                        link.label.clone(),
                        sig6(r.height_m),
                        sig6(r.budget.rssi_dbm),
                        sig6(link.sensitivity_dbm),
                        sig6(r.budget.margin_db),
                        r.budget.covered.to_string(),
                    ]
                })
            });
            csv_bytes(
                &[
                    "link_label",
                    "height_m",
                    "rssi_dBm",
                    "sensitivity_dBm",
                    "margin_dB",
                    "covered",
                ],
                rows,
            )
        }
        Gain => {
            let mut rows = Vec::new();
            for (name, pattern) in svg::distinct_patterns(spec) {
                for (theta, gain) in svg::pattern_curve(&pattern) {
                    rows.push(vec![name.clone(), String::new(), sig6(theta), sig6(gain)]);
                }
            }
            for link in series.links.iter().filter(|l| l.class == LinkClass::Tn) {
                for r in &link.records {
                    if let Some(theta) = r.pattern_angle_deg {
                        rows.push(vec![
                            link.label.clone(),
                            sig6(r.height_m),
                            sig6(theta),
                            sig6(r.budget.antenna_gain_db),
                        ]);
                    }
                }
            }
            csv_bytes(&["series", "height_m", "theta_deg", "gain_dB"], rows)
        }
    }
}

pub fn emit_figure_csv(
    spec: &SweepSpec<f64>,
    series: &SweepSeries<f64>,
    figure: svg::Figure,
    path: &Path,
) -> Result<()> {
    write_file(path, &figure_csv(spec, series, figure))
}

pub(crate) fn emit_text(path: &Path, text: &str) -> Result<()> {
    write_file(path, text.as_bytes())
}
