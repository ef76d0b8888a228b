//! Built-in evaluation scenario: a dense urban city, a 25 m rooftop base
//! station at 3.6 GHz, and a 300 km satellite at 2 GHz.

use crate::antenna::VerticalPattern;
use crate::geometry::EarthModel;
use crate::link_budget::RadioTerminal;
use crate::los::UrbanEnvironment;
use crate::propagation::PropagationParams;
use crate::scalar::Scalar;
use crate::scenario::{default_heights, LinkKind, LinkSpec, SweepSpec};

pub const ALPHA: f64 = 0.3;
pub const BETA_PER_KM2: f64 = 500.0;
pub const GAMMA_M: f64 = 15.0;

pub const SF_LOS_DB: f64 = 4.0;
pub const SF_NLOS_DB: f64 = 6.0;
pub const CL_MAX_DB: f64 = 34.3;
pub const UE_TX_POWER_DBM: f64 = 23.0;
pub const UE_GAIN_DBI: f64 = 0.0;

pub const TN_CARRIER_GHZ: f64 = 3.6;
pub const TN_NODE_HEIGHT_M: f64 = 25.0;
pub const TN_RX_GAIN_DBI: f64 = 8.0;
pub const TN_ETILT_DEG: f64 = 6.0;
pub const TN_HPBW_DEG: f64 = 10.0;
pub const TN_SLA_V_DB: f64 = 20.0;
pub const TN_SENSITIVITY_DBM: f64 = -100.0;

pub const NTN_CARRIER_GHZ: f64 = 2.0;
pub const NTN_NODE_HEIGHT_M: f64 = 300_000.0;
pub const NTN_RX_GAIN_DBI: f64 = 38.0;
pub const NTN_SENSITIVITY_DBM: f64 = -102.4;

pub const TN_GROUND_RANGES_KM: [f64; 3] = [0.5, 1.0, 2.0];
pub const NTN_ELEVATIONS_DEG: [f64; 3] = [10.0, 30.0, 90.0];

pub fn environment<T: Scalar>() -> UrbanEnvironment<T> {
    UrbanEnvironment::new(T::lit(ALPHA), T::lit(BETA_PER_KM2), T::lit(GAMMA_M))
        .expect("preset environment")
}

pub fn tn_pattern<T: Scalar>() -> VerticalPattern<T> {
    VerticalPattern::new(
        T::lit(TN_ETILT_DEG),
        T::lit(TN_HPBW_DEG),
        T::lit(TN_SLA_V_DB),
    )
    .expect("preset pattern")
}

fn propagation<T: Scalar>(carrier_ghz: f64) -> PropagationParams<T> {
    PropagationParams::for_environment(
        &environment(),
        T::lit(carrier_ghz),
        T::lit(SF_LOS_DB),
        T::lit(SF_NLOS_DB),
        T::lit(CL_MAX_DB),
    )
    .expect("preset propagation")
}

fn terminal<T: Scalar>(rx_gain_dbi: T, sensitivity_dbm: f64) -> RadioTerminal<T> {
    RadioTerminal {
        tx_power_dbm: T::lit(UE_TX_POWER_DBM),
        tx_gain_dbi: T::lit(UE_GAIN_DBI),
        rx_gain_dbi,
        sensitivity_dbm: T::lit(sensitivity_dbm),
    }
}

pub fn tn_label<T: Scalar>(ground_range_km: T) -> String {
    format!("TN {ground_range_km} km")
}

pub fn ntn_label<T: Scalar>(elevation_deg: T) -> String {
    format!("NTN {elevation_deg} deg")
}

pub fn tn_link<T: Scalar>(ground_range_km: T) -> LinkSpec<T> {
    LinkSpec {
        label: tn_label(ground_range_km),
        kind: LinkKind::Terrestrial {
            ground_range_km,
            node_height_m: T::lit(TN_NODE_HEIGHT_M),
            pattern: tn_pattern(),
        },
        propagation: propagation(TN_CARRIER_GHZ),
        terminal: terminal(T::lit(TN_RX_GAIN_DBI), TN_SENSITIVITY_DBM),
    }
}

pub fn ntn_link<T: Scalar>(elevation_deg: T) -> LinkSpec<T> {
    ntn_link_with_gain(elevation_deg, T::lit(NTN_RX_GAIN_DBI))
}

/// Satellite link with a non-default receive antenna gain. The label gains
/// a `@ <gain> dBi` suffix when the gain differs from the default.
pub fn ntn_link_with_gain<T: Scalar>(elevation_deg: T, rx_gain_dbi: T) -> LinkSpec<T> {
    let mut label = ntn_label(elevation_deg);
    if rx_gain_dbi != T::lit(NTN_RX_GAIN_DBI) {
        label = format!("{label} @ {rx_gain_dbi} dBi");
    }
    LinkSpec {
        label,
        kind: LinkKind::Satellite {
            elevation_deg,
            node_height_m: T::lit(NTN_NODE_HEIGHT_M),
        },
        propagation: propagation(NTN_CARRIER_GHZ),
        terminal: terminal(rx_gain_dbi, NTN_SENSITIVITY_DBM),
    }
}

/// The six evaluation links (TN at 0.5/1/2 km, NTN at 10/30/90 degrees) on
/// the default 1..=300 m grid.
pub fn reference_sweep<T: Scalar>() -> SweepSpec<T> {
    let links = TN_GROUND_RANGES_KM
        .iter()
        .map(|&km| tn_link(T::lit(km)))
        .chain(NTN_ELEVATIONS_DEG.iter().map(|&el| ntn_link(T::lit(el))))
        .collect();
    SweepSpec {
        environment: environment(),
        links,
        heights_m: default_heights(),
        earth: EarthModel::default(),
    }
}
