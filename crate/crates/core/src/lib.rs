//! Link budget and coverage model for low-altitude aircraft served by
//! terrestrial base stations and low-Earth-orbit satellites over a
//! statistical city.
//!
//! The models are generic over [`Scalar`] (`f32` or `f64`). The aliases at
//! the crate root fix the scalar to `f64`; reach into the modules for the
//! generic forms.
//!
//! ```
//! use skylink::{preset, scenario};
//!
//! let series = scenario::run_sweep(&preset::reference_sweep::<f64>()).unwrap();
//! let h = scenario::min_feasible_height(&series, "TN 1 km").unwrap();
//! assert_eq!(h, Some(12.0));
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antenna;
pub mod error;
pub mod geometry;
pub mod link_budget;
pub mod los;
pub mod preset;
pub mod propagation;
pub mod scalar;
pub mod scenario;

pub use error::{FieldError, ModelError, Result};
pub use los::LosMode;
pub use scalar::Scalar;
pub use scenario::{
    coverage_intervals, evaluate_point, hybrid_availability, hybrid_availability_of,
    min_feasible_height, refined_coverage_intervals, run_sweep, HybridAvailability, LinkClass,
};

pub type EarthModel = geometry::EarthModel<f64>;
pub type SatLinkGeometry = geometry::SatLinkGeometry<f64>;
pub type UrbanEnvironment = los::UrbanEnvironment<f64>;
pub type RayProfile = los::RayProfile<f64>;
pub type PropagationParams = propagation::PropagationParams<f64>;
pub type LinkGeometry = propagation::LinkGeometry<f64>;
pub type PathLossBreakdown = propagation::PathLossBreakdown<f64>;
pub type VerticalPattern = antenna::VerticalPattern<f64>;
pub type RadioTerminal = link_budget::RadioTerminal<f64>;
pub type LinkBudgetResult = link_budget::LinkBudgetResult<f64>;
pub type LinkKind = scenario::LinkKind<f64>;
pub type LinkSpec = scenario::LinkSpec<f64>;
pub type SweepSpec = scenario::SweepSpec<f64>;
pub type SweepRecord = scenario::SweepRecord<f64>;
pub type LinkSeries = scenario::LinkSeries<f64>;
pub type SweepSeries = scenario::SweepSeries<f64>;
pub type CoverageInterval = scenario::CoverageInterval<f64>;
