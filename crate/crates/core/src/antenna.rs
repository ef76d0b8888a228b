//! Down-tilted base-station vertical pattern.
//!
//! Angles follow a depression-positive convention: `theta > 0` points below
//! the node's horizontal, matching a positive electrical downtilt. An
//! aircraft flying above the mast therefore sees a negative angle, far from
//! boresight. The horizontal pattern is taken as omnidirectional.

use crate::error::{ModelError, Result};
use crate::geometry;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalPattern<T> {
    /// Electrical downtilt, positive below the horizon.
    pub etilt_deg: T,
    /// Half-power beamwidth.
    pub hpbw_deg: T,
    /// Side-lobe attenuation floor.
    pub sla_v_db: T,
}

impl<T: Scalar> VerticalPattern<T> {
    pub fn new(etilt_deg: T, hpbw_deg: T, sla_v_db: T) -> Result<Self> {
        let pattern = Self {
            etilt_deg,
            hpbw_deg,
            sla_v_db,
        };
        if let Some((param, value, reason)) = pattern.field_errors().into_iter().next() {
            return Err(ModelError::domain(param, value, reason));
        }
        Ok(pattern)
    }

    pub(crate) fn field_errors(&self) -> Vec<(&'static str, f64, &'static str)> {
        let mut out = Vec::new();
        if !(self.etilt_deg >= T::lit(-90.0) && self.etilt_deg <= T::lit(90.0)) {
            out.push((
                "etilt_deg",
                self.etilt_deg.as_f64(),
                "must lie in [-90, 90]",
            ));
        }
        if !(self.hpbw_deg > T::zero()) || !self.hpbw_deg.is_finite() {
            out.push(("hpbw_deg", self.hpbw_deg.as_f64(), "must be positive"));
        }
        if !(self.sla_v_db >= T::zero()) || !self.sla_v_db.is_finite() {
            out.push(("sla_v_dB", self.sla_v_db.as_f64(), "must be >= 0"));
        }
        out
    }

    /// Pattern gain in dB (always in `[-sla_v_db, 0]`) at depression angle `theta_deg`.
    pub fn attenuation_db(&self, theta_deg: T) -> Result<T> {
        vertical_attenuation(theta_deg, self)
    }

    /// Offset from boresight at which the side-lobe floor is reached.
    pub fn floor_offset_deg(&self) -> T {
        self.hpbw_deg * (self.sla_v_db / T::lit(12.0)).sqrt()
    }
}

/// `−min(12·((θ − θ_etilt)/θ_3dB)², SLA_V)`.
pub fn vertical_attenuation<T: Scalar>(theta_deg: T, pattern: &VerticalPattern<T>) -> Result<T> {
    if !(theta_deg >= T::lit(-90.0) && theta_deg <= T::lit(90.0)) {
        return Err(ModelError::domain(
            "theta_deg",
            theta_deg.as_f64(),
            "must lie in [-90, 90]",
        ));
    }
    let off = (theta_deg - pattern.etilt_deg) / pattern.hpbw_deg;
    Ok(-(T::lit(12.0) * off * off).min(pattern.sla_v_db))
}

/// Depression angle of the aircraft as seen from the mast.
///
/// Terrestrial links are short enough that the flat-Earth angle is used,
/// consistent with the flat slant-range formula for the same links.
pub fn pattern_angle_for_aircraft<T: Scalar>(h_tx_m: T, h_rx_m: T, ground_range_m: T) -> Result<T> {
    Ok(-geometry::flat_elevation_seen_from_node(
        h_tx_m,
        h_rx_m,
        ground_range_m,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn mast() -> VerticalPattern<f64> {
        VerticalPattern::new(6.0, 10.0, 20.0).unwrap()
    }

    #[test]
    fn attenuation_examples() {
        let p = mast();
        assert_eq!(p.attenuation_db(6.0).unwrap(), 0.0);
        assert_eq!(p.attenuation_db(11.0).unwrap(), -3.0);
        assert_eq!(p.attenuation_db(1.0).unwrap(), -3.0);
        assert_eq!(p.attenuation_db(30.0).unwrap(), -20.0);
        assert!(p.attenuation_db(90.5).is_err());
        assert!(p.attenuation_db(-91.0).is_err());
    }

    #[test]
    fn floor_offset() {
        assert_abs_diff_eq!(mast().floor_offset_deg(), 12.9099, epsilon = 1e-4);
    }

    #[test]
    fn pattern_angle_examples() {
        assert_abs_diff_eq!(
            pattern_angle_for_aircraft(5.0, 25.0, 500.0).unwrap(),
            2.29,
            epsilon = 0.05
        );
        assert_eq!(pattern_angle_for_aircraft(25.0, 25.0, 1000.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            pattern_angle_for_aircraft(230.0, 25.0, 2000.0).unwrap(),
            -5.855,
            epsilon = 0.05
        );
        assert!(pattern_angle_for_aircraft(5.0, 25.0, 0.0).is_err());
    }

    #[test]
    fn high_aircraft_sits_far_off_boresight() {
        let p = mast();
        let high = p
            .attenuation_db(pattern_angle_for_aircraft(230.0, 25.0, 2000.0).unwrap())
            .unwrap();
        let level = p
            .attenuation_db(pattern_angle_for_aircraft(25.0, 25.0, 2000.0).unwrap())
            .unwrap();
        assert!(level - high >= 10.0, "{level} vs {high}");
    }

    #[test]
    fn rejects_invalid_pattern() {
        assert!(VerticalPattern::new(6.0, 0.0, 20.0).is_err());
        assert!(VerticalPattern::new(6.0, 10.0, -1.0).is_err());
    }
}
