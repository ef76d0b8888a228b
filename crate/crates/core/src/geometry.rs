//! Effective-Earth link geometry.
//!
//! Terrestrial links use a flat right triangle. Satellite links are traced as
//! straight rays over a sphere whose radius is the true Earth radius scaled by
//! a k-factor (4/3 by default), which is the usual way of folding standard
//! atmospheric refraction into straight-line geometry.

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;

/// Mean Earth radius in meters.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Standard radar-horizon effective-radius factor.
pub const STANDARD_K_FACTOR: f64 = 4.0 / 3.0;

/// Spherical Earth with an effective-radius multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarthModel<T> {
    true_radius_m: T,
    k_factor: T,
}

impl<T: Scalar> EarthModel<T> {
    pub fn new(true_radius_m: T, k_factor: T) -> Result<Self> {
        if !(true_radius_m > T::zero()) || !true_radius_m.is_finite() {
            return Err(ModelError::domain(
                "true_radius_m",
                true_radius_m.as_f64(),
                "must be positive and finite",
            ));
        }
        if !(k_factor >= T::one()) {
            return Err(ModelError::domain(
                "k_factor",
                k_factor.as_f64(),
                "must be >= 1",
            ));
        }
        Ok(Self {
            true_radius_m,
            k_factor,
        })
    }

    pub fn true_radius_m(&self) -> T {
        self.true_radius_m
    }

    pub fn k_factor(&self) -> T {
        self.k_factor
    }

    pub fn effective_radius_m(&self) -> T {
        self.true_radius_m * self.k_factor
    }
}

impl<T: Scalar> Default for EarthModel<T> {
    fn default() -> Self {
        Self {
            true_radius_m: T::lit(EARTH_RADIUS_M),
            k_factor: T::lit(STANDARD_K_FACTOR),
        }
    }
}

fn check_sat_args<T: Scalar>(
    aircraft_height_m: T,
    node_height_m: T,
    elevation_deg: T,
) -> Result<()> {
    if !(aircraft_height_m >= T::zero()) {
        return Err(ModelError::domain(
            "aircraft_height_m",
            aircraft_height_m.as_f64(),
            "must be >= 0",
        ));
    }
    if !(node_height_m > aircraft_height_m) || !node_height_m.is_finite() {
        return Err(ModelError::domain(
            "node_height_m",
            node_height_m.as_f64(),
            "must be finite and above the aircraft",
        ));
    }
    if !(elevation_deg > T::zero() && elevation_deg <= T::lit(90.0)) {
        return Err(ModelError::domain(
            "elevation_deg",
            elevation_deg.as_f64(),
            "must lie in (0, 90]",
        ));
    }
    Ok(())
}

/// Straight-ray distance from the aircraft up to a node seen at
/// `elevation_deg` above the aircraft's local horizontal.
///
/// Solves `d² + 2d(R'+h_a)·sin(el) − [(R'+h_n)² − (R'+h_a)²] = 0` for the
/// positive root, written in the cancellation-free form
/// `d = c / (a·sin(el) + sqrt(a²·sin²(el) + c))`.
pub fn slant_range<T: Scalar>(
    aircraft_height_m: T,
    node_height_m: T,
    elevation_deg: T,
    earth: &EarthModel<T>,
) -> Result<T> {
    check_sat_args(aircraft_height_m, node_height_m, elevation_deg)?;
    let height_gap = node_height_m - aircraft_height_m;
    if elevation_deg == T::lit(90.0) {
        return Ok(height_gap);
    }
    let r_eff = earth.effective_radius_m();
    let a = r_eff + aircraft_height_m;
    let b = r_eff + node_height_m;
    // (b - a)(b + a) without squaring two large radii.
    let c = height_gap * (a + b);
    let a_sin = a * elevation_deg.to_radians().sin();
    Ok(c / (a_sin + (a_sin * a_sin + c).sqrt()))
}

/// Surface arc between the nadir points of the aircraft and the node.
pub fn ground_range<T: Scalar>(
    aircraft_height_m: T,
    node_height_m: T,
    elevation_deg: T,
    earth: &EarthModel<T>,
) -> Result<T> {
    let d = slant_range(aircraft_height_m, node_height_m, elevation_deg, earth)?;
    if elevation_deg == T::lit(90.0) {
        return Ok(T::zero());
    }
    let r_eff = earth.effective_radius_m();
    let el = elevation_deg.to_radians();
    // Node position in the aircraft's local frame: horizontal d·cos(el),
    // radial (R' + h_a) + d·sin(el) from the Earth's centre.
    let central_angle = (d * el.cos()).atan2(r_eff + aircraft_height_m + d * el.sin());
    Ok(r_eff * central_angle)
}

/// Elevation of the node above the aircraft's horizontal, recovered from a
/// slant range. Inverse of [`slant_range`] in its last argument.
pub fn elevation_from_slant_range<T: Scalar>(
    aircraft_height_m: T,
    node_height_m: T,
    slant_range_m: T,
    earth: &EarthModel<T>,
) -> Result<T> {
    if !(slant_range_m > T::zero()) {
        return Err(ModelError::domain(
            "slant_range_m",
            slant_range_m.as_f64(),
            "must be positive",
        ));
    }
    let r_eff = earth.effective_radius_m();
    let a = r_eff + aircraft_height_m;
    let b = r_eff + node_height_m;
    let d = slant_range_m;
    // Decompose the ray into radial (v) and horizontal (u) parts at the aircraft.
    let v = ((node_height_m - aircraft_height_m) * (a + b) - d * d) / (T::lit(2.0) * a);
    let u2 = (d - v) * (d + v);
    let u = if u2 > T::zero() { u2.sqrt() } else { T::zero() };
    Ok(v.atan2(u).to_degrees())
}

/// Flat-Earth slant range for a terrestrial link:
/// `sqrt((ground_range_km·1000)² + |h_tx − h_rx|²)`.
pub fn tn_slant_range<T: Scalar>(
    aircraft_height_m: T,
    node_height_m: T,
    ground_range_km: T,
) -> Result<T> {
    if !(ground_range_km >= T::zero()) {
        return Err(ModelError::domain(
            "ground_range_km",
            ground_range_km.as_f64(),
            "must be >= 0",
        ));
    }
    if !(aircraft_height_m >= T::zero()) {
        return Err(ModelError::domain(
            "aircraft_height_m",
            aircraft_height_m.as_f64(),
            "must be >= 0",
        ));
    }
    if !(node_height_m >= T::zero()) {
        return Err(ModelError::domain(
            "node_height_m",
            node_height_m.as_f64(),
            "must be >= 0",
        ));
    }
    let horizontal = ground_range_km * T::lit(1000.0);
    Ok(horizontal.hypot((aircraft_height_m - node_height_m).abs()))
}

/// Angle of the aircraft above (+) or below (−) the node's local horizontal,
/// over the curved effective Earth.
pub fn elevation_seen_from_node<T: Scalar>(
    aircraft_height_m: T,
    node_height_m: T,
    ground_range_m: T,
    earth: &EarthModel<T>,
) -> Result<T> {
    check_ground_range(ground_range_m)?;
    let r_eff = earth.effective_radius_m();
    let phi = ground_range_m / r_eff;
    let a = r_eff + aircraft_height_m;
    let dx = a * phi.sin();
    // a·cos(φ) − b, rearranged to avoid subtracting two Earth radii.
    let dy =
        (aircraft_height_m - node_height_m) - a * T::lit(2.0) * (phi / T::lit(2.0)).sin().powi(2);
    Ok(dy.atan2(dx).to_degrees())
}

/// Flat-Earth reference for [`elevation_seen_from_node`]:
/// `atan((h_tx − h_rx) / ground_range)`.
pub fn flat_elevation_seen_from_node<T: Scalar>(
    aircraft_height_m: T,
    node_height_m: T,
    ground_range_m: T,
) -> Result<T> {
    check_ground_range(ground_range_m)?;
    Ok((aircraft_height_m - node_height_m)
        .atan2(ground_range_m)
        .to_degrees())
}

fn check_ground_range<T: Scalar>(ground_range_m: T) -> Result<()> {
    if !(ground_range_m > T::zero()) || !ground_range_m.is_finite() {
        return Err(ModelError::domain(
            "ground_range_m",
            ground_range_m.as_f64(),
            "must be positive",
        ));
    }
    Ok(())
}

/// Aircraft-to-satellite geometry at one elevation snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatLinkGeometry<T> {
    pub aircraft_height_m: T,
    pub node_height_m: T,
    pub elevation_deg: T,
    pub slant_range_m: T,
    pub ground_range_m: T,
}

impl<T: Scalar> SatLinkGeometry<T> {
    pub fn new(
        aircraft_height_m: T,
        node_height_m: T,
        elevation_deg: T,
        earth: &EarthModel<T>,
    ) -> Result<Self> {
        let slant_range_m = slant_range(aircraft_height_m, node_height_m, elevation_deg, earth)?;
        let ground_range_m = ground_range(aircraft_height_m, node_height_m, elevation_deg, earth)?;
        Ok(Self {
            aircraft_height_m,
            node_height_m,
            elevation_deg,
            slant_range_m,
            ground_range_m,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn earth() -> EarthModel<f64> {
        EarthModel::default()
    }

    // Law-of-sines route, kept separate from the atan2 route used above.
    fn ground_range_oracle(h_a: f64, h_n: f64, el_deg: f64) -> f64 {
        let r = EARTH_RADIUS_M * STANDARD_K_FACTOR;
        let el = el_deg.to_radians();
        let a = r + h_a;
        let b = r + h_n;
        let d = -a * el.sin() + (a * a * el.sin().powi(2) + b * b - a * a).sqrt();
        r * (d * el.cos() / b).asin()
    }

    #[test]
    fn slant_ranges_for_300_km_node() {
        let e = earth();
        let s10 = slant_range(0.0, 300_000.0, 10.0, &e).unwrap();
        let s30 = slant_range(0.0, 300_000.0, 30.0, &e).unwrap();
        assert_abs_diff_eq!(s10 / 1000.0, 1237.0, epsilon = 2.0);
        assert_abs_diff_eq!(s30 / 1000.0, 572.0, epsilon = 2.0);
        assert_eq!(slant_range(0.0, 300_000.0, 90.0, &e).unwrap(), 300_000.0);
    }

    #[test]
    fn true_radius_geometry_is_shorter() {
        let e = EarthModel::new(EARTH_RADIUS_M, 1.0).unwrap();
        let s10 = slant_range(0.0, 300_000.0, 10.0, &e).unwrap();
        assert!((s10 / 1000.0 - 1160.0).abs() < 5.0, "{s10}");
    }

    #[test]
    fn ground_range_matches_law_of_sines() {
        let e = earth();
        for (el, approx_m) in [(10.0, 1.18e6), (30.0, 4.79e5)] {
            let g = ground_range(0.0, 300_000.0, el, &e).unwrap();
            let oracle = ground_range_oracle(0.0, 300_000.0, el);
            assert_abs_diff_eq!(g, oracle, epsilon = 1e-3);
            assert!((g - approx_m).abs() / approx_m < 0.005, "{el}: {g}");
        }
        assert_eq!(ground_range(120.0, 300_000.0, 90.0, &e).unwrap(), 0.0);
    }

    #[test]
    fn tn_slant_range_examples() {
        assert_abs_diff_eq!(
            tn_slant_range(50.0, 25.0, 0.5).unwrap(),
            500.625,
            epsilon = 1e-3
        );
        assert_eq!(tn_slant_range(25.0, 25.0, 1.0).unwrap(), 1000.0);
        assert_eq!(tn_slant_range(40.0, 40.0, 0.0).unwrap(), 0.0);
        assert!(tn_slant_range(1.0, 25.0, -0.1).is_err());
    }

    #[test]
    fn node_elevation_examples() {
        let e = earth();
        let cases = [
            (230.0, 25.0, 2000.0, 5.855),
            (25.0, 25.0, 1000.0, 0.0),
            (5.0, 25.0, 500.0, -2.29),
        ];
        for (h_tx, h_rx, gr, want) in cases {
            let curved = elevation_seen_from_node(h_tx, h_rx, gr, &e).unwrap();
            let flat = flat_elevation_seen_from_node(h_tx, h_rx, gr).unwrap();
            assert_abs_diff_eq!(curved, want, epsilon = 0.05);
            assert_abs_diff_eq!(flat, want, epsilon = 0.01);
        }
        assert!(elevation_seen_from_node(10.0, 25.0, 0.0, &e).is_err());
    }

    #[test]
    fn curved_and_flat_agree_within_2_km() {
        let e = earth();
        for gr in [10.0, 100.0, 500.0, 1000.0, 2000.0] {
            for h in [0.0, 1.0, 25.0, 100.0, 300.0] {
                let curved = elevation_seen_from_node(h, 25.0, gr, &e).unwrap();
                let flat = flat_elevation_seen_from_node(h, 25.0, gr).unwrap();
                assert!((curved - flat).abs() < 0.05, "{h} {gr}");
            }
        }
    }

    #[test]
    fn rejects_bad_satellite_arguments() {
        let e = earth();
        assert!(slant_range(0.0, 300_000.0, 0.0, &e).is_err());
        assert!(slant_range(0.0, 300_000.0, 91.0, &e).is_err());
        assert!(slant_range(400.0, 300.0, 45.0, &e).is_err());
        assert!(slant_range(-1.0, 300.0, 45.0, &e).is_err());
        assert!(EarthModel::new(6.4e6, 0.9).is_err());
        assert!(EarthModel::new(0.0, 1.0).is_err());
    }

    #[test]
    fn flat_earth_limit() {
        let e = EarthModel::new(EARTH_RADIUS_M, 1e9).unwrap();
        for el in [10.0_f64, 20.0, 45.0, 70.0] {
            let flat = 300_000.0 / el.to_radians().sin();
            let s = slant_range(0.0, 300_000.0, el, &e).unwrap();
            assert!((s - flat).abs() / flat < 1e-3);
        }
    }

    #[test]
    fn works_in_f32() {
        let e = EarthModel::<f32>::default();
        let s = slant_range(0.0f32, 300_000.0, 10.0, &e).unwrap();
        assert!((s / 1000.0 - 1238.34).abs() < 0.5, "{s}");
    }
}
