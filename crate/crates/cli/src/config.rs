//! JSON scenario files.
//!
//! Every physical quantity carries its unit in the key name. Unknown keys are
//! rejected. Omitted optional values fall back to the built-in evaluation
//! preset, per link kind.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use skylink::antenna::VerticalPattern;
use skylink::geometry::{EarthModel, EARTH_RADIUS_M, STANDARD_K_FACTOR};
use skylink::link_budget::RadioTerminal;
use skylink::los::UrbanEnvironment;
use skylink::preset;
use skylink::propagation::{PropagationParams, CLUTTER_HEIGHT_PER_GAMMA};
use skylink::scenario::{height_grid, LinkKind, LinkSpec, SweepSpec};
use skylink::{FieldError, ModelError};

use crate::bands;
use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<EnvironmentConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub earth: Option<EarthConfig>,
    /// Regular grid; mutually exclusive with `heights_m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<HeightGridConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights_m: Option<Vec<f64>>,
    pub links: Vec<LinkConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentConfig {
    pub alpha: f64,
    pub beta_per_km2: f64,
    pub gamma_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EarthConfig {
    #[serde(default = "default_radius")]
    pub radius_m: f64,
    #[serde(default = "default_k")]
    pub k_factor: f64,
}

fn default_radius() -> f64 {
    EARTH_RADIUS_M
}

fn default_k() -> f64 {
    STANDARD_K_FACTOR
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeightGridConfig {
    pub start_m: f64,
    pub stop_m: f64,
    pub step_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkKindTag {
    Tn,
    Ntn,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figures_dir: Option<PathBuf>,
    /// Report coverage interval endpoints at interpolated margin crossings.
    #[serde(default)]
    pub refine_intervals: bool,
}

/// One link. Fields left out take the preset value for the link's kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkConfig {
    pub kind: LinkKindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_range_km: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elevation_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_height_m: Option<f64>,
    #[serde(
        rename = "carrier_frequency_GHz",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub carrier_frequency_ghz: Option<f64>,
    #[serde(rename = "sf_los_dB", default, skip_serializing_if = "Option::is_none")]
    pub sf_los_db: Option<f64>,
    #[serde(
        rename = "sf_nlos_dB",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub sf_nlos_db: Option<f64>,
    #[serde(rename = "cl_max_dB", default, skip_serializing_if = "Option::is_none")]
    pub cl_max_db: Option<f64>,
    #[serde(
        rename = "tx_power_dBm",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub tx_power_dbm: Option<f64>,
    #[serde(
        rename = "tx_gain_dBi",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub tx_gain_dbi: Option<f64>,
    #[serde(
        rename = "rx_gain_dBi",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub rx_gain_dbi: Option<f64>,
    #[serde(
        rename = "sensitivity_dBm",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub sensitivity_dbm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub etilt_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hpbw_deg: Option<f64>,
    #[serde(rename = "sla_v_dB", default, skip_serializing_if = "Option::is_none")]
    pub sla_v_db: Option<f64>,
    /// Carried through for reference; not used by the model.
    #[serde(
        rename = "bandwidth_MHz",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub bandwidth_mhz: Option<f64>,
    #[serde(rename = "scs_kHz", default, skip_serializing_if = "Option::is_none")]
    pub scs_khz: Option<f64>,
}

impl LinkConfig {
    pub fn new(kind: LinkKindTag) -> Self {
        Self {
            kind,
            label: None,
            ground_range_km: None,
            elevation_deg: None,
            node_height_m: None,
            carrier_frequency_ghz: None,
            sf_los_db: None,
            sf_nlos_db: None,
            cl_max_db: None,
            tx_power_dbm: None,
            tx_gain_dbi: None,
            rx_gain_dbi: None,
            sensitivity_dbm: None,
            etilt_deg: None,
            hpbw_deg: None,
            sla_v_db: None,
            bandwidth_mhz: None,
            scs_khz: None,
        }
    }
}

/// Where results go, after merging config and command line.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputOptions {
    pub csv: Option<PathBuf>,
    pub figures_dir: Option<PathBuf>,
    pub refine_intervals: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedScenario {
    pub spec: SweepSpec<f64>,
    pub output: OutputOptions,
    /// Advisory messages, e.g. carrier frequencies outside satellite bands.
    pub warnings: Vec<String>,
}

/// Reads and validates a scenario file.
pub fn parse_config(path: &Path) -> Result<LoadedScenario> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<LoadedScenario> {
    let config: ScenarioConfig =
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("scenario file: {e}")))?;
    config.into_scenario()
}

struct Collector(Vec<FieldError>);

impl Collector {
    fn push(&mut self, field: impl Into<String>, message: impl Into<String>) {
        self.0.push(FieldError::new(field, message));
    }
}

impl ScenarioConfig {
    pub fn into_scenario(self) -> Result<LoadedScenario> {
        let mut errs = Collector(Vec::new());
        if self.schema_version != SCHEMA_VERSION {
            errs.push(
                "schema_version",
                format!(
                    "unsupported version {} (expected {SCHEMA_VERSION})",
                    self.schema_version
                ),
            );
        }

        let env_cfg = self.environment.unwrap_or(EnvironmentConfig {
            alpha: preset::ALPHA,
            beta_per_km2: preset::BETA_PER_KM2,
            gamma_m: preset::GAMMA_M,
        });
        let environment =
            UrbanEnvironment::new(env_cfg.alpha, env_cfg.beta_per_km2, env_cfg.gamma_m)
                .unwrap_or_else(|_| preset::environment());
        let h0_m = CLUTTER_HEIGHT_PER_GAMMA * env_cfg.gamma_m;

        let earth_cfg = self.earth.unwrap_or(EarthConfig {
            radius_m: EARTH_RADIUS_M,
            k_factor: STANDARD_K_FACTOR,
        });
        let earth = match EarthModel::new(earth_cfg.radius_m, earth_cfg.k_factor) {
            Ok(e) => e,
            Err(ModelError::Domain {
                param,
                value,
                reason,
            }) => {
                let key = if param == "true_radius_m" {
                    "radius_m"
                } else {
                    param
                };
                errs.push(format!("earth.{key}"), format!("{value} {reason}"));
                EarthModel::default()
            }
            Err(e) => return Err(e.into()),
        };

        let heights_m = match (&self.heights, &self.heights_m) {
            (Some(_), Some(_)) => {
                errs.push("heights", "give either heights or heights_m, not both");
                Vec::new()
            }
            (Some(g), None) => match height_grid(g.start_m, g.stop_m, g.step_m) {
                Ok(h) => h,
                Err(e) => {
                    errs.push("heights", e.to_string());
                    Vec::new()
                }
            },
            (None, Some(h)) => h.clone(),
            (None, None) => skylink::scenario::default_heights(),
        };

        let mut warnings = Vec::new();
        let links: Vec<LinkSpec<f64>> = self
            .links
            .iter()
            .enumerate()
            .map(|(i, l)| link_spec(i, l, h0_m, &mut errs, &mut warnings))
            .collect();

        let spec = SweepSpec {
            environment,
            links,
            heights_m,
            earth,
        };
        // An invalid environment was swapped for the preset above, so its raw
        // values are checked here to get them into the report.
        for (field, msg) in raw_environment_errors(&env_cfg) {
            errs.push(field, msg);
        }
        if let Err(ModelError::Config(found)) = spec.validate() {
            errs.0.extend(found);
        }

        let mut seen = BTreeSet::new();
        let unique: Vec<FieldError> = errs
            .0
            .into_iter()
            .filter(|e| seen.insert(e.field.clone()))
            .collect();
        if !unique.is_empty() {
            return Err(ModelError::Config(unique).into());
        }

        let output = self.output.unwrap_or_default();
        Ok(LoadedScenario {
            spec,
            output: OutputOptions {
                csv: output.csv,
                figures_dir: output.figures_dir,
                refine_intervals: output.refine_intervals,
            },
            warnings,
        })
    }

    /// Canonical config describing `spec` with every value spelled out.
    pub fn from_spec(spec: &SweepSpec<f64>) -> Self {
        let env = &spec.environment;
        let links = spec
            .links
            .iter()
            .map(|link| {
                let mut c = match link.kind {
                    LinkKind::Terrestrial {
                        ground_range_km,
                        node_height_m,
                        pattern,
                    } => {
                        let mut c = LinkConfig::new(LinkKindTag::Tn);
                        c.ground_range_km = Some(ground_range_km);
                        c.node_height_m = Some(node_height_m);
                        c.etilt_deg = Some(pattern.etilt_deg);
                        c.hpbw_deg = Some(pattern.hpbw_deg);
                        c.sla_v_db = Some(pattern.sla_v_db);
                        c
                    }
                    LinkKind::Satellite {
                        elevation_deg,
                        node_height_m,
                    } => {
                        let mut c = LinkConfig::new(LinkKindTag::Ntn);
                        c.elevation_deg = Some(elevation_deg);
                        c.node_height_m = Some(node_height_m);
                        c
                    }
                };
                c.label = Some(link.label.clone());
                c.carrier_frequency_ghz = Some(link.propagation.carrier_frequency_ghz);
                c.sf_los_db = Some(link.propagation.sf_los_db);
                c.sf_nlos_db = Some(link.propagation.sf_nlos_db);
                c.cl_max_db = Some(link.propagation.cl_max_db);
                c.tx_power_dbm = Some(link.terminal.tx_power_dbm);
                c.tx_gain_dbi = Some(link.terminal.tx_gain_dbi);
                c.rx_gain_dbi = Some(link.terminal.rx_gain_dbi);
                c.sensitivity_dbm = Some(link.terminal.sensitivity_dbm);
                c
            })
            .collect();
        ScenarioConfig {
            schema_version: SCHEMA_VERSION,
            environment: Some(EnvironmentConfig {
                alpha: env.alpha(),
                beta_per_km2: env.beta_per_km2(),
                gamma_m: env.gamma_m(),
            }),
            earth: Some(EarthConfig {
                radius_m: spec.earth.true_radius_m(),
                k_factor: spec.earth.k_factor(),
            }),
            heights: None,
            heights_m: Some(spec.heights_m.clone()),
            links,
            output: None,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

fn raw_environment_errors(env: &EnvironmentConfig) -> Vec<(String, String)> {
    let mut out = Vec::new();
    if !(env.alpha > 0.0 && env.alpha <= 1.0) {
        out.push((
            "environment.alpha".into(),
            format!("{} must lie in (0, 1]", env.alpha),
        ));
    }
    if !(env.beta_per_km2 > 0.0) || !env.beta_per_km2.is_finite() {
        out.push((
            "environment.beta_per_km2".into(),
            format!("{} must be positive", env.beta_per_km2),
        ));
    }
    if !(env.gamma_m > 0.0) || !env.gamma_m.is_finite() {
        out.push((
            "environment.gamma_m".into(),
            format!("{} must be positive", env.gamma_m),
        ));
    }
    out
}

fn link_spec(
    i: usize,
    l: &LinkConfig,
    h0_m: f64,
    errs: &mut Collector,
    warnings: &mut Vec<String>,
) -> LinkSpec<f64> {
    let field = |name: &str| format!("links[{i}].{name}");
    let tn = l.kind == LinkKindTag::Tn;
    let (carrier, rx_gain, sensitivity, node_height) = if tn {
        (
            preset::TN_CARRIER_GHZ,
            preset::TN_RX_GAIN_DBI,
            preset::TN_SENSITIVITY_DBM,
            preset::TN_NODE_HEIGHT_M,
        )
    } else {
        (
            preset::NTN_CARRIER_GHZ,
            preset::NTN_RX_GAIN_DBI,
            preset::NTN_SENSITIVITY_DBM,
            preset::NTN_NODE_HEIGHT_M,
        )
    };

    let misplaced: &[(&str, bool)] = if tn {
        &[("elevation_deg", l.elevation_deg.is_some())]
    } else {
        &[
            ("ground_range_km", l.ground_range_km.is_some()),
            ("etilt_deg", l.etilt_deg.is_some()),
            ("hpbw_deg", l.hpbw_deg.is_some()),
            ("sla_v_dB", l.sla_v_db.is_some()),
        ]
    };
    for (name, present) in misplaced {
        if *present {
            errs.push(
                field(name),
                format!("not allowed on {} links", if tn { "tn" } else { "ntn" }),
            );
        }
    }

    let node_height_m = l.node_height_m.unwrap_or(node_height);
    let kind = if tn {
        let ground_range_km = l.ground_range_km.unwrap_or_else(|| {
            errs.push(field("ground_range_km"), "required for tn links");
            f64::NAN
        });
        LinkKind::Terrestrial {
            ground_range_km,
            node_height_m,
            pattern: VerticalPattern {
                etilt_deg: l.etilt_deg.unwrap_or(preset::TN_ETILT_DEG),
                hpbw_deg: l.hpbw_deg.unwrap_or(preset::TN_HPBW_DEG),
                sla_v_db: l.sla_v_db.unwrap_or(preset::TN_SLA_V_DB),
            },
        }
    } else {
        let elevation_deg = l.elevation_deg.unwrap_or_else(|| {
            errs.push(field("elevation_deg"), "required for ntn links");
            f64::NAN
        });
        LinkKind::Satellite {
            elevation_deg,
            node_height_m,
        }
    };

    let label = l.label.clone().unwrap_or_else(|| match kind {
        LinkKind::Terrestrial {
            ground_range_km, ..
        } => preset::tn_label(ground_range_km),
        LinkKind::Satellite { elevation_deg, .. } => preset::ntn_label(elevation_deg),
    });

    let carrier_frequency_ghz = l.carrier_frequency_ghz.unwrap_or(carrier);
    if !tn && carrier_frequency_ghz > 0.0 {
        warnings.extend(bands::band_warning(&label, carrier_frequency_ghz));
    }

    LinkSpec {
        label,
        kind,
        propagation: PropagationParams {
            carrier_frequency_ghz,
            sf_los_db: l.sf_los_db.unwrap_or(preset::SF_LOS_DB),
            sf_nlos_db: l.sf_nlos_db.unwrap_or(preset::SF_NLOS_DB),
            cl_max_db: l.cl_max_db.unwrap_or(preset::CL_MAX_DB),
            h0_m,
        },
        terminal: RadioTerminal {
            tx_power_dbm: l.tx_power_dbm.unwrap_or(preset::UE_TX_POWER_DBM),
            tx_gain_dbi: l.tx_gain_dbi.unwrap_or(preset::UE_GAIN_DBI),
            rx_gain_dbi: l.rx_gain_dbi.unwrap_or(rx_gain),
            sensitivity_dbm: l.sensitivity_dbm.unwrap_or(sensitivity),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema_version": 1,
        "environment": {"alpha": 0.3, "beta_per_km2": 500, "gamma_m": 15},
        "links": [
            {"kind": "tn", "ground_range_km": 0.5},
            {"kind": "ntn", "elevation_deg": 30}
        ]
    }"#;

    fn field_names(err: CliError) -> Vec<String> {
        match err {
            CliError::Model(ModelError::Config(f)) => f.into_iter().map(|e| e.field).collect(),
            other => panic!("expected field errors, got {other}"),
        }
    }

    #[test]
    fn defaults_fill_in() {
        let s = parse_config_str(MINIMAL).unwrap();
        assert_eq!(
            s.spec.heights_m,
            skylink::scenario::default_heights::<f64>()
        );
        assert_eq!(s.spec.links[0], preset::tn_link(0.5));
        assert_eq!(s.spec.links[1], preset::ntn_link(30.0));
        assert_eq!(s.spec.earth, EarthModel::default());
        assert!(s.warnings.is_empty());
        assert_eq!(s.output, OutputOptions::default());
    }

    #[test]
    fn zero_gamma_is_named() {
        let text = MINIMAL.replace("\"gamma_m\": 15", "\"gamma_m\": 0");
        let fields = field_names(parse_config_str(&text).unwrap_err());
        assert!(fields.iter().any(|f| f.contains("gamma")), "{fields:?}");
    }

    #[test]
    fn misspelled_keys_are_rejected() {
        let text = MINIMAL.replace("ground_range_km", "ground_rang_km");
        let err = parse_config_str(&text).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("ground_rang_km"), "{err}");
        let text = MINIMAL.replace(
            "\"schema_version\": 1,",
            "\"schema_version\": 1, \"colour\": 3,",
        );
        assert!(parse_config_str(&text).is_err());
    }

    #[test]
    fn every_bad_field_is_reported() {
        let text = r#"{
            "schema_version": 2,
            "environment": {"alpha": 1.5, "beta_per_km2": -1, "gamma_m": 0},
            "earth": {"k_factor": 0.5},
            "heights_m": [5, 3],
            "links": [
                {"kind": "tn", "elevation_deg": 10},
                {"kind": "ntn", "elevation_deg": 95, "hpbw_deg": 10},
                {"kind": "tn", "ground_range_km": 1, "carrier_frequency_GHz": -3}
            ]
        }"#;
        let fields = field_names(parse_config_str(text).unwrap_err());
        for want in [
            "schema_version",
            "environment.alpha",
            "environment.beta_per_km2",
            "environment.gamma_m",
            "earth.k_factor",
            "heights_m[1]",
            "links[0].elevation_deg",
            "links[0].ground_range_km",
            "links[1].elevation_deg",
            "links[1].hpbw_deg",
            "links[2].carrier_frequency_GHz",
        ] {
            assert!(
                fields.iter().any(|f| f == want),
                "missing {want} in {fields:?}"
            );
        }
    }

    #[test]
    fn out_of_band_satellite_carrier_warns() {
        let text = MINIMAL.replace(
            "\"elevation_deg\": 30",
            "\"elevation_deg\": 30, \"carrier_frequency_GHz\": 0.85",
        );
        let s = parse_config_str(&text).unwrap();
        assert_eq!(s.warnings.len(), 1);
        assert!(s.warnings[0].contains("0.85"));
    }

    #[test]
    fn grid_and_explicit_heights_conflict() {
        let text = MINIMAL.replace(
            "\"links\"",
            "\"heights\": {\"start_m\": 1, \"stop_m\": 10, \"step_m\": 1}, \"heights_m\": [1], \"links\"",
        );
        assert!(field_names(parse_config_str(&text).unwrap_err()).contains(&"heights".to_string()));
        let text = MINIMAL.replace(
            "\"links\"",
            "\"heights\": {\"start_m\": 10, \"stop_m\": 50, \"step_m\": 10}, \"links\"",
        );
        assert_eq!(
            parse_config_str(&text).unwrap().spec.heights_m,
            vec![10.0, 20.0, 30.0, 40.0, 50.0]
        );
    }

    #[test]
    fn canonical_json_round_trips() {
        let spec = preset::reference_sweep::<f64>();
        let json = ScenarioConfig::from_spec(&spec).to_json_pretty();
        let back = parse_config_str(&json).unwrap();
        assert_eq!(back.spec, spec);
    }
}
