//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use skylink::scenario::{self, SweepSeries, SweepSpec};
use skylink::{preset, run_sweep};

use crate::config::{self, LinkConfig, LinkKindTag, OutputOptions, ScenarioConfig, SCHEMA_VERSION};
use crate::error::{CliError, Result};
use crate::output;
use crate::svg::{self, Figure};

#[derive(Debug, Parser)]
#[command(
    name = "skylink",
    version,
    about = "Air-to-ground coverage of terrestrial and satellite links"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep every link over the height grid of a scenario file.
    Sweep(SweepArgs),
    /// Evaluate one link at one height.
    Point(PointArgs),
    /// Write the standard figures and their data for the built-in preset.
    PaperFigs(FigsArgs),
    /// Print the built-in preset as a scenario file.
    Preset,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// CSV destination; overrides the scenario file. Without either, CSV goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for SVG figures and figure data.
    #[arg(long)]
    pub figures: Option<PathBuf>,
    /// Report interval endpoints at interpolated margin crossings.
    #[arg(long)]
    pub refine: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LinkArg {
    Tn,
    Ntn,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_enum)]
    pub link: LinkArg,
    #[arg(
        long,
        required_unless_present = "elevation_deg",
        conflicts_with = "elevation_deg"
    )]
    pub distance_km: Option<f64>,
    #[arg(long)]
    pub elevation_deg: Option<f64>,
    #[arg(long)]
    pub height_m: f64,
    #[arg(long)]
    pub node_height_m: Option<f64>,
    #[arg(long = "carrier-frequency-ghz")]
    pub carrier_frequency_ghz: Option<f64>,
    #[arg(long = "tx-power-dbm")]
    pub tx_power_dbm: Option<f64>,
    #[arg(long = "tx-gain-dbi")]
    pub tx_gain_dbi: Option<f64>,
    #[arg(long = "rx-gain-dbi")]
    pub rx_gain_dbi: Option<f64>,
    #[arg(long = "sensitivity-dbm")]
    pub sensitivity_dbm: Option<f64>,
    #[arg(long)]
    pub etilt_deg: Option<f64>,
    #[arg(long)]
    pub hpbw_deg: Option<f64>,
    #[arg(long = "sla-v-db")]
    pub sla_v_db: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta_per_km2: Option<f64>,
    #[arg(long)]
    pub gamma_m: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FigsArgs {
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command) -> Result<()> {
    match command {
        Command::Sweep(a) => sweep(a),
        Command::Point(a) => point(a),
        Command::PaperFigs(a) => paper_figs(&a.out),
        Command::Preset => {
            println!(
                "{}",
                ScenarioConfig::from_spec(&preset::reference_sweep()).to_json_pretty()
            );
            Ok(())
        }
    }
}

fn sweep(args: SweepArgs) -> Result<()> {
    let loaded = config::parse_config(&args.config)?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    // Paths inside the file are relative to the file; command-line paths to the cwd.
    let base = args.config.parent().unwrap_or(Path::new(""));
    let opts = OutputOptions {
        csv: args.out.or(loaded.output.csv.map(|p| base.join(p))),
        figures_dir: args
            .figures
            .or(loaded.output.figures_dir.map(|p| base.join(p))),
        refine_intervals: args.refine || loaded.output.refine_intervals,
    };
    let series = run_sweep(&loaded.spec)?;

    let summary = summary(&series, opts.refine_intervals)?;
    match &opts.csv {
        Some(path) => {
            output::emit_csv(&series, path)?;
            print!("{summary}");
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(&output::render_csv(&series))
                .and_then(|_| lock.flush())
                .map_err(|e| CliError::write("<stdout>", e))?;
            eprint!("{summary}");
        }
    }
    if let Some(dir) = &opts.figures_dir {
        write_figures(&loaded.spec, &series, dir)?;
    }
    Ok(())
}

/// Coverage intervals per link and the hybrid availability, as text.
pub fn summary(series: &SweepSeries<f64>, refine: bool) -> Result<String> {
    let mut s = String::new();
    for link in &series.links {
        let intervals = if refine {
            scenario::refined_coverage_intervals(series, &link.label)?
        } else {
            scenario::coverage_intervals(series, &link.label)?
        };
        let text = if intervals.is_empty() {
            "none".to_string()
        } else {
            intervals
                .iter()
                .map(|iv| format!("[{}, {}] m", round3(iv.low_m), round3(iv.high_m)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        s.push_str(&format!("{}: covered {text}\n", link.label));
    }
    let hybrid = scenario::hybrid_availability(series);
    s.push_str(&format!("hybrid availability: {:.4}\n", hybrid.fraction));
    Ok(s)
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

fn point(a: PointArgs) -> Result<()> {
    let kind = match a.link {
        LinkArg::Tn => LinkKindTag::Tn,
        LinkArg::Ntn => LinkKindTag::Ntn,
    };
    match (kind, a.distance_km, a.elevation_deg) {
        (LinkKindTag::Tn, None, _) => {
            return Err(CliError::Config("--link tn needs --distance-km".into()))
        }
        (LinkKindTag::Ntn, _, None) => {
            return Err(CliError::Config("--link ntn needs --elevation-deg".into()))
        }
        _ => {}
    }
    let mut link = LinkConfig::new(kind);
    link.ground_range_km = a.distance_km;
    link.elevation_deg = a.elevation_deg;
    link.node_height_m = a.node_height_m;
    link.carrier_frequency_ghz = a.carrier_frequency_ghz;
    link.tx_power_dbm = a.tx_power_dbm;
    link.tx_gain_dbi = a.tx_gain_dbi;
    link.rx_gain_dbi = a.rx_gain_dbi;
    link.sensitivity_dbm = a.sensitivity_dbm;
    link.etilt_deg = a.etilt_deg;
    link.hpbw_deg = a.hpbw_deg;
    link.sla_v_db = a.sla_v_db;

    let environment = match (a.alpha, a.beta_per_km2, a.gamma_m) {
        (None, None, None) => None,
        (alpha, beta, gamma) => Some(config::EnvironmentConfig {
            alpha: alpha.unwrap_or(preset::ALPHA),
            beta_per_km2: beta.unwrap_or(preset::BETA_PER_KM2),
            gamma_m: gamma.unwrap_or(preset::GAMMA_M),
        }),
    };
    let cfg = ScenarioConfig {
        schema_version: SCHEMA_VERSION,
        environment,
        earth: None,
        heights: None,
        heights_m: Some(vec![a.height_m]),
        links: vec![link],
        output: None,
    };
    let loaded = cfg.into_scenario()?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    let series = run_sweep(&loaded.spec)?;
    let stdout = std::io::stdout();
    output::write_records(stdout.lock(), &output::output_records(&series))
        .map_err(|e| CliError::write("<stdout>", e))
}

fn write_figures(spec: &SweepSpec<f64>, series: &SweepSeries<f64>, dir: &Path) -> Result<()> {
    for figure in Figure::ALL {
        svg::emit_figure(
            spec,
            series,
            figure,
            &dir.join(format!("{}.svg", figure.name())),
        )?;
        output::emit_figure_csv(
            spec,
            series,
            figure,
            &dir.join(format!("{}.csv", figure.name())),
        )?;
    }
    Ok(())
}

fn paper_figs(dir: &Path) -> Result<()> {
    let spec = preset::reference_sweep();
    let series = run_sweep(&spec)?;
    write_figures(&spec, &series, dir)?;
    print!("{}", summary(&series, false)?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_lists_every_link() {
        let series = run_sweep(&preset::reference_sweep()).unwrap();
        let s = summary(&series, false).unwrap();
        assert!(s.contains("TN 1 km: covered [12, "), "{s}");
        assert!(s.contains("NTN 10 deg: covered none"), "{s}");
        assert!(s.contains("NTN 90 deg: covered [1, 300] m"), "{s}");
        assert!(s.ends_with("hybrid availability: 1.0000\n"));
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
