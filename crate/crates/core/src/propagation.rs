//! LoS / NLoS path loss with altitude-dependent clutter.

use crate::error::{ModelError, Result};
use crate::los::{self, UrbanEnvironment};
use crate::scalar::Scalar;

/// Ratio between the clutter decay height and the building-height scale.
pub const CLUTTER_HEIGHT_PER_GAMMA: f64 = 1.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationParams<T> {
    pub carrier_frequency_ghz: T,
    /// Shadow-fading margin added to the LoS branch.
    pub sf_los_db: T,
    /// Shadow-fading margin added to the NLoS branch.
    pub sf_nlos_db: T,
    /// Clutter loss for an aircraft on the ground.
    pub cl_max_db: T,
    /// Height over which clutter loss falls by a factor of e.
    pub h0_m: T,
}

impl<T: Scalar> PropagationParams<T> {
    /// Builds parameters with the clutter decay height tied to the
    /// environment, `h0 = 1.25·gamma`.
    pub fn for_environment(
        env: &UrbanEnvironment<T>,
        carrier_frequency_ghz: T,
        sf_los_db: T,
        sf_nlos_db: T,
        cl_max_db: T,
    ) -> Result<Self> {
        let params = Self {
            carrier_frequency_ghz,
            sf_los_db,
            sf_nlos_db,
            cl_max_db,
            h0_m: T::lit(CLUTTER_HEIGHT_PER_GAMMA) * env.gamma_m(),
        };
        if let Some((param, value, reason)) = params.field_errors().into_iter().next() {
            return Err(ModelError::domain(param, value, reason));
        }
        Ok(params)
    }

    pub(crate) fn field_errors(&self) -> Vec<(&'static str, f64, &'static str)> {
        let mut out = Vec::new();
        if !(self.carrier_frequency_ghz > T::zero()) || !self.carrier_frequency_ghz.is_finite() {
            out.push((
                "carrier_frequency_GHz",
                self.carrier_frequency_ghz.as_f64(),
                "must be positive",
            ));
        }
        if !(self.sf_los_db >= T::zero()) || !self.sf_los_db.is_finite() {
            out.push(("sf_los_dB", self.sf_los_db.as_f64(), "must be >= 0"));
        }
        if !(self.sf_nlos_db >= T::zero()) || !self.sf_nlos_db.is_finite() {
            out.push(("sf_nlos_dB", self.sf_nlos_db.as_f64(), "must be >= 0"));
        }
        if !(self.cl_max_db >= T::zero()) || !self.cl_max_db.is_finite() {
            out.push(("cl_max_dB", self.cl_max_db.as_f64(), "must be >= 0"));
        }
        if !(self.h0_m > T::zero()) {
            out.push(("h0_m", self.h0_m.as_f64(), "must be positive"));
        }
        out
    }
}

fn free_space_db<T: Scalar>(f_c_ghz: T, slant_range_m: T) -> Result<T> {
    if !(f_c_ghz > T::zero()) {
        return Err(ModelError::domain(
            "carrier_frequency_GHz",
            f_c_ghz.as_f64(),
            "must be positive",
        ));
    }
    if !(slant_range_m > T::zero()) {
        return Err(ModelError::domain(
            "slant_range_m",
            slant_range_m.as_f64(),
            "must be positive",
        ));
    }
    let twenty = T::lit(20.0);
    Ok(T::lit(32.45) + twenty * f_c_ghz.log10() + twenty * slant_range_m.log10())
}

/// `32.45 + 20·log10(f_c) + 20·log10(r) + SF` with `f_c` in GHz and `r` in m.
pub fn path_loss_los<T: Scalar>(f_c_ghz: T, slant_range_m: T, sf_los_db: T) -> Result<T> {
    Ok(free_space_db(f_c_ghz, slant_range_m)? + sf_los_db)
}

/// Clutter loss decaying exponentially with aircraft height.
pub fn clutter_loss<T: Scalar>(h_tx_m: T, cl_max_db: T, h0_m: T) -> T {
    cl_max_db * (-h_tx_m.max(T::zero()) / h0_m).exp()
}

pub fn path_loss_nlos<T: Scalar>(
    f_c_ghz: T,
    slant_range_m: T,
    sf_nlos_db: T,
    clutter_db: T,
) -> Result<T> {
    Ok(free_space_db(f_c_ghz, slant_range_m)? + sf_nlos_db + clutter_db)
}

/// LoS-probability weighted mean of the two branch losses, taken directly in dB.
pub fn combined_path_loss<T: Scalar>(p_los: T, pl_los_db: T, pl_nlos_db: T) -> T {
    p_los * pl_los_db + (T::one() - p_los) * pl_nlos_db
}

/// Endpoint heights and distances needed to evaluate path loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry<T> {
    pub aircraft_height_m: T,
    pub node_height_m: T,
    /// Horizontal distance used for the building profile.
    pub ground_range_m: T,
    /// Straight-line distance used for spreading loss.
    pub slant_range_m: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossBreakdown<T> {
    pub p_los: T,
    pub pl_los_db: T,
    pub pl_nlos_db: T,
    pub clutter_db: T,
    pub pl_combined_db: T,
}

pub fn evaluate_path_loss<T: Scalar>(
    env: &UrbanEnvironment<T>,
    params: &PropagationParams<T>,
    geometry: &LinkGeometry<T>,
) -> Result<PathLossBreakdown<T>> {
    let p_los = los::los_probability(
        env,
        geometry.aircraft_height_m,
        geometry.node_height_m,
        geometry.ground_range_m,
    );
    let clutter_db = clutter_loss(geometry.aircraft_height_m, params.cl_max_db, params.h0_m);
    let pl_los_db = path_loss_los(
        params.carrier_frequency_ghz,
        geometry.slant_range_m,
        params.sf_los_db,
    )?;
    let pl_nlos_db = path_loss_nlos(
        params.carrier_frequency_ghz,
        geometry.slant_range_m,
        params.sf_nlos_db,
        clutter_db,
    )?;
    Ok(PathLossBreakdown {
        p_los,
        pl_los_db,
        pl_nlos_db,
        clutter_db,
        pl_combined_db: combined_path_loss(p_los, pl_los_db, pl_nlos_db),
    })
}
