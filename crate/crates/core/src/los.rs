//! Statistical line-of-sight probability over a synthetic city.
//!
//! Buildings are placed at equal spacing along the ground projection of the
//! ray and their heights follow a Rayleigh distribution with scale `gamma`.
//! The ray clears building `i` with probability `1 − exp(−h_i² / 2γ²)`, and
//! the link is LoS when it clears all of them.

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;

/// Statistical description of the built-up area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UrbanEnvironment<T> {
    alpha: T,
    beta_per_km2: T,
    gamma_m: T,
}

impl<T: Scalar> UrbanEnvironment<T> {
    /// `alpha` is the built-up fraction of land, `beta_per_km2` the building
    /// density and `gamma_m` the Rayleigh scale of building heights.
    pub fn new(alpha: T, beta_per_km2: T, gamma_m: T) -> Result<Self> {
        let errors = Self::field_errors(alpha, beta_per_km2, gamma_m);
        if let Some((param, value, reason)) = errors.into_iter().next() {
            return Err(ModelError::domain(param, value, reason));
        }
        Ok(Self {
            alpha,
            beta_per_km2,
            gamma_m,
        })
    }

    pub(crate) fn field_errors(
        alpha: T,
        beta: T,
        gamma: T,
    ) -> Vec<(&'static str, f64, &'static str)> {
        let mut out = Vec::new();
        if !(alpha > T::zero() && alpha <= T::one()) {
            out.push(("alpha", alpha.as_f64(), "must lie in (0, 1]"));
        }
        if !(beta > T::zero()) || !beta.is_finite() {
            out.push(("beta_per_km2", beta.as_f64(), "must be positive"));
        }
        if !(gamma > T::zero()) || !gamma.is_finite() {
            out.push(("gamma_m", gamma.as_f64(), "must be positive"));
        }
        out
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta_per_km2(&self) -> T {
        self.beta_per_km2
    }

    pub fn gamma_m(&self) -> T {
        self.gamma_m
    }
}

/// Buildings crossed per kilometre of ground range, `sqrt(alpha·beta)`.
pub fn buildings_per_km<T: Scalar>(env: &UrbanEnvironment<T>) -> T {
    (env.alpha * env.beta_per_km2).sqrt()
}

/// Whole buildings crossed over `ground_range_km`.
pub fn building_count<T: Scalar>(ground_range_km: T, per_km: T) -> usize {
    let n = (ground_range_km * per_km).floor();
    if n > T::zero() {
        n.to_usize().unwrap_or(usize::MAX)
    } else {
        0
    }
}

/// Building positions and ray heights along one link.
#[derive(Debug, Clone, PartialEq)]
pub struct RayProfile<T> {
    pub building_count: usize,
    /// Zero when no building is crossed.
    pub spacing_m: T,
    pub building_distances_m: Vec<T>,
    pub ray_heights_m: Vec<T>,
}

impl<T: Scalar> RayProfile<T> {
    pub fn is_empty(&self) -> bool {
        self.building_count == 0
    }
}

fn profile_params<T: Scalar>(env: &UrbanEnvironment<T>, ground_range_m: T) -> (usize, T) {
    let count = building_count(ground_range_m / T::lit(1000.0), buildings_per_km(env));
    let spacing = if count == 0 {
        T::zero()
    } else {
        ground_range_m / T::from_usize(count).unwrap()
    };
    (count, spacing)
}

#[inline]
fn building_distance<T: Scalar>(i: usize, spacing: T) -> T {
    (T::from_usize(i).unwrap() + T::lit(0.5)) * spacing
}

#[inline]
fn ray_height<T: Scalar>(h_tx: T, h_rx: T, ground_range_m: T, distance_m: T) -> T {
    h_tx - distance_m * (h_tx - h_rx) / ground_range_m
}

/// Evenly spaced buildings at `(i + ½)·spacing` and the ray height above
/// each, interpolated linearly from `h_tx_m` at the aircraft to `h_rx_m` at
/// the node.
pub fn ray_profile<T: Scalar>(
    env: &UrbanEnvironment<T>,
    h_tx_m: T,
    h_rx_m: T,
    ground_range_m: T,
) -> RayProfile<T> {
    let (count, spacing) = profile_params(env, ground_range_m);
    let building_distances_m: Vec<T> = (0..count).map(|i| building_distance(i, spacing)).collect();
    let ray_heights_m = building_distances_m
        .iter()
        .map(|&d| ray_height(h_tx_m, h_rx_m, ground_range_m, d))
        .collect();
    RayProfile {
        building_count: count,
        spacing_m: spacing,
        building_distances_m,
        ray_heights_m,
    }
}

/// Probability that a Rayleigh-distributed building is lower than the ray.
/// Rays at or below ground are always blocked.
pub fn clearance_probability<T: Scalar>(ray_height_m: T, gamma_m: T) -> T {
    if !(ray_height_m > T::zero()) {
        return T::zero();
    }
    let x = ray_height_m * ray_height_m / (T::lit(2.0) * gamma_m * gamma_m);
    (-(-x).exp_m1()).min(T::one()).max(T::zero())
}

/// `ln(clearance_probability)`, accurate at both ends of the range.
fn ln_clearance<T: Scalar>(ray_height_m: T, gamma_m: T) -> T {
    if !(ray_height_m > T::zero()) {
        return T::neg_infinity();
    }
    let x = ray_height_m * ray_height_m / (T::lit(2.0) * gamma_m * gamma_m);
    if x > T::LN_2() {
        (-(-x).exp()).ln_1p()
    } else {
        (-(-x).exp_m1()).ln()
    }
}

/// How many factors of the LoS product to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LosMode {
    /// Evaluate every building on the profile.
    Exact,
    /// Stop once the ray climbs past ten building-height scales toward a
    /// higher receiver; every remaining factor is within 1e-12 of one.
    #[default]
    EarlyExit,
}

/// Probability that the ray from the aircraft to the node clears every
/// building, with [`LosMode::EarlyExit`].
pub fn los_probability<T: Scalar>(
    env: &UrbanEnvironment<T>,
    h_tx_m: T,
    h_rx_m: T,
    ground_range_m: T,
) -> T {
    los_probability_with(env, h_tx_m, h_rx_m, ground_range_m, LosMode::EarlyExit)
}

pub fn los_probability_with<T: Scalar>(
    env: &UrbanEnvironment<T>,
    h_tx_m: T,
    h_rx_m: T,
    ground_range_m: T,
    mode: LosMode,
) -> T {
    let (count, spacing) = profile_params(env, ground_range_m);
    if count == 0 {
        return T::one();
    }
    let gamma = env.gamma_m;
    let clear_height = T::lit(10.0) * gamma;
    let climbing = h_rx_m > h_tx_m;
    let mut ln_p = T::zero();
    for i in 0..count {
        let h = ray_height(
            h_tx_m,
            h_rx_m,
            ground_range_m,
            building_distance(i, spacing),
        );
        if mode == LosMode::EarlyExit && climbing && h > clear_height {
            break;
        }
        ln_p = ln_p + ln_clearance(h, gamma);
        if ln_p == T::neg_infinity() {
            return T::zero();
        }
    }
    ln_p.exp().min(T::one())
}

/// Running products `P_LoS,i` for every prefix of the profile. The last
/// entry equals [`los_probability`]; the sequence is empty when no building
/// is crossed.
pub fn los_prefix_probabilities<T: Scalar>(profile: &RayProfile<T>, gamma_m: T) -> Vec<T> {
    let mut ln_p = T::zero();
    profile
        .ray_heights_m
        .iter()
        .map(|&h| {
            ln_p = ln_p + ln_clearance(h, gamma_m);
            ln_p.exp()
        })
        .collect()
}
