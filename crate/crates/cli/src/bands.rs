//! Satellite NR band edges, used only to warn about unusual carrier
//! frequencies.

use serde::Deserialize;

const BANDS_CSV: &str = include_str!("../data/ntn_bands.csv");

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct NtnBand {
    pub band: String,
    pub uplink_low_mhz: f64,
    pub uplink_high_mhz: f64,
    pub downlink_low_mhz: f64,
    pub downlink_high_mhz: f64,
}

impl NtnBand {
    pub fn contains_mhz(&self, f_mhz: f64) -> bool {
        (self.uplink_low_mhz..=self.uplink_high_mhz).contains(&f_mhz)
            || (self.downlink_low_mhz..=self.downlink_high_mhz).contains(&f_mhz)
    }
}

pub fn ntn_bands() -> Vec<NtnBand> {
    csv::Reader::from_reader(BANDS_CSV.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .expect("bundled band table is well formed")
}

/// Warning text when `carrier_ghz` falls outside every satellite band.
pub fn band_warning(label: &str, carrier_ghz: f64) -> Option<String> {
    let f_mhz = carrier_ghz * 1000.0;
    if ntn_bands().iter().any(|b| b.contains_mhz(f_mhz)) {
        None
    } else {
        Some(format!(
            "link {label:?}: carrier {carrier_ghz} GHz lies outside every NR NTN band"
        ))
    }
}
