//! Height sweeps over terrestrial and satellite links, coverage intervals and
//! combined (hybrid) availability.

use rayon::prelude::*;

use crate::antenna::{self, VerticalPattern};
use crate::error::{FieldError, ModelError, Result};
use crate::geometry::{self, EarthModel, SatLinkGeometry};
use crate::link_budget::{self, LinkBudgetResult, RadioTerminal};
use crate::los::UrbanEnvironment;
use crate::propagation::{self, LinkGeometry, PathLossBreakdown, PropagationParams};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinkKind<T> {
    /// Rooftop base station at a fixed horizontal distance.
    Terrestrial {
        ground_range_km: T,
        node_height_m: T,
        pattern: VerticalPattern<T>,
    },
    /// Satellite seen at a fixed elevation; no vertical pattern applies.
    Satellite { elevation_deg: T, node_height_m: T },
}

/// Short tag for a [`LinkKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkClass {
    Tn,
    Ntn,
}

impl LinkClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LinkClass::Tn => "tn",
            LinkClass::Ntn => "ntn",
        }
    }
}

impl<T> LinkKind<T> {
    pub fn class(&self) -> LinkClass {
        match self {
            LinkKind::Terrestrial { .. } => LinkClass::Tn,
            LinkKind::Satellite { .. } => LinkClass::Ntn,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkSpec<T> {
    pub label: String,
    pub kind: LinkKind<T>,
    pub propagation: PropagationParams<T>,
    pub terminal: RadioTerminal<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<T> {
    pub environment: UrbanEnvironment<T>,
    pub links: Vec<LinkSpec<T>>,
    /// Aircraft heights AGL, strictly increasing.
    pub heights_m: Vec<T>,
    pub earth: EarthModel<T>,
}

/// Heights `start, start + step, …` up to and including `stop` (within a
/// hundredth of a step).
pub fn height_grid<T: Scalar>(start_m: T, stop_m: T, step_m: T) -> Result<Vec<T>> {
    if !(step_m > T::zero()) || !step_m.is_finite() {
        return Err(ModelError::domain(
            "step_m",
            step_m.as_f64(),
            "must be positive",
        ));
    }
    if !(start_m > T::zero()) || !(stop_m >= start_m) || !stop_m.is_finite() {
        return Err(ModelError::domain(
            "stop_m",
            stop_m.as_f64(),
            "grid needs 0 < start_m <= stop_m",
        ));
    }
    let n = ((stop_m - start_m) / step_m + T::lit(0.01))
        .floor()
        .to_usize()
        .unwrap_or(0);
    Ok((0..=n)
        .map(|i| start_m + T::from_usize(i).unwrap() * step_m)
        .collect())
}

/// The 1..=300 m grid at 1 m resolution.
pub fn default_heights<T: Scalar>() -> Vec<T> {
    (1..=300).map(|h| T::from_u32(h).unwrap()).collect()
}

fn push_all(
    errors: &mut Vec<FieldError>,
    prefix: &str,
    found: Vec<(&'static str, f64, &'static str)>,
) {
    for (name, value, reason) in found {
        errors.push(FieldError::new(
            format!("{prefix}{name}"),
            format!("{value} {reason}"),
        ));
    }
}

impl<T: Scalar> SweepSpec<T> {
    /// Checks every field and reports all problems at once.
    pub fn validate(&self) -> Result<()> {
        let mut errors = Vec::new();
        let env = &self.environment;
        push_all(
            &mut errors,
            "environment.",
            UrbanEnvironment::field_errors(env.alpha(), env.beta_per_km2(), env.gamma_m()),
        );
        if self.links.is_empty() {
            errors.push(FieldError::new("links", "at least one link is required"));
        }
        if self.heights_m.is_empty() {
            errors.push(FieldError::new(
                "heights_m",
                "at least one height is required",
            ));
        }
        if let Some(i) = self
            .heights_m
            .iter()
            .position(|h| !(*h > T::zero()) || !h.is_finite())
        {
            errors.push(FieldError::new(
                format!("heights_m[{i}]"),
                "heights must be positive",
            ));
        }
        if let Some(i) = self.heights_m.windows(2).position(|w| !(w[1] > w[0])) {
            errors.push(FieldError::new(
                format!("heights_m[{}]", i + 1),
                "heights must be strictly increasing",
            ));
        }
        for (i, link) in self.links.iter().enumerate() {
            let prefix = format!("links[{i}].");
            if link.label.trim().is_empty() {
                errors.push(FieldError::new(
                    format!("{prefix}label"),
                    "must not be empty",
                ));
            } else if self.links[..i].iter().any(|l| l.label == link.label) {
                errors.push(FieldError::new(
                    format!("{prefix}label"),
                    format!("duplicate label {:?}", link.label),
                ));
            }
            push_all(&mut errors, &prefix, link.propagation.field_errors());
            push_all(&mut errors, &prefix, link.terminal.field_errors());
            match &link.kind {
                LinkKind::Terrestrial {
                    ground_range_km,
                    node_height_m,
                    pattern,
                } => {
                    if !(*ground_range_km > T::zero()) || !ground_range_km.is_finite() {
                        errors.push(FieldError::new(
                            format!("{prefix}ground_range_km"),
                            format!("{ground_range_km} must be positive"),
                        ));
                    }
                    if !(*node_height_m >= T::zero()) || !node_height_m.is_finite() {
                        errors.push(FieldError::new(
                            format!("{prefix}node_height_m"),
                            format!("{node_height_m} must be >= 0"),
                        ));
                    }
                    push_all(&mut errors, &prefix, pattern.field_errors());
                }
                LinkKind::Satellite {
                    elevation_deg,
                    node_height_m,
                } => {
                    if !(*elevation_deg > T::zero() && *elevation_deg <= T::lit(90.0)) {
                        errors.push(FieldError::new(
                            format!("{prefix}elevation_deg"),
                            format!("{elevation_deg} must lie in (0, 90]"),
                        ));
                    }
                    let top = self.heights_m.last().copied().unwrap_or(T::zero());
                    if !(*node_height_m > top) || !node_height_m.is_finite() {
                        errors.push(FieldError::new(
                            format!("{prefix}node_height_m"),
                            format!("{node_height_m} must exceed the highest aircraft height"),
                        ));
                    }
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(ModelError::Config(errors))
        }
    }
}

/// Everything computed for one link at one aircraft height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord<T> {
    pub height_m: T,
    pub geometry: LinkGeometry<T>,
    /// Depression angle at the mast; `None` for satellite links.
    pub pattern_angle_deg: Option<T>,
    pub path_loss: PathLossBreakdown<T>,
    pub budget: LinkBudgetResult<T>,
}

/// Evaluates a single link at a single aircraft height.
pub fn evaluate_point<T: Scalar>(
    environment: &UrbanEnvironment<T>,
    earth: &EarthModel<T>,
    link: &LinkSpec<T>,
    height_m: T,
) -> Result<SweepRecord<T>> {
    let (geometry, pattern_angle_deg, antenna_gain_db) = match &link.kind {
        LinkKind::Terrestrial {
            ground_range_km,
            node_height_m,
            pattern,
        } => {
            let ground_range_m = *ground_range_km * T::lit(1000.0);
            let slant_range_m =
                geometry::tn_slant_range(height_m, *node_height_m, *ground_range_km)?;
            let theta =
                antenna::pattern_angle_for_aircraft(height_m, *node_height_m, ground_range_m)?;
            let gain = pattern.attenuation_db(theta)?;
            let g = LinkGeometry {
                aircraft_height_m: height_m,
                node_height_m: *node_height_m,
                ground_range_m,
                slant_range_m,
            };
            (g, Some(theta), gain)
        }
        LinkKind::Satellite {
            elevation_deg,
            node_height_m,
        } => {
            let sat = SatLinkGeometry::new(height_m, *node_height_m, *elevation_deg, earth)?;
            let g = LinkGeometry {
                aircraft_height_m: height_m,
                node_height_m: *node_height_m,
                ground_range_m: sat.ground_range_m,
                slant_range_m: sat.slant_range_m,
            };
            (g, None, T::zero())
        }
    };
    let path_loss = propagation::evaluate_path_loss(environment, &link.propagation, &geometry)?;
    let budget = link_budget::evaluate_link_budget(
        &link.terminal,
        antenna_gain_db,
        path_loss.pl_combined_db,
    );
    Ok(SweepRecord {
        height_m,
        geometry,
        pattern_angle_deg,
        path_loss,
        budget,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkSeries<T> {
    pub label: String,
    pub class: LinkClass,
    pub sensitivity_dbm: T,
    /// One record per sweep height, ascending.
    pub records: Vec<SweepRecord<T>>,
}

impl<T: Scalar> LinkSeries<T> {
    pub fn covered(&self) -> impl Iterator<Item = bool> + '_ {
        self.records.iter().map(|r| r.budget.covered)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries<T> {
    pub heights_m: Vec<T>,
    /// In the same order as the links of the spec.
    pub links: Vec<LinkSeries<T>>,
    /// OR over links of `covered` at each height.
    pub covered_any: Vec<bool>,
}

impl<T: Scalar> SweepSeries<T> {
    pub fn link(&self, label: &str) -> Result<&LinkSeries<T>> {
        self.links
            .iter()
            .find(|l| l.label == label)
            .ok_or_else(|| ModelError::UnknownLink(label.to_string()))
    }

    pub fn record_count(&self) -> usize {
        self.links.iter().map(|l| l.records.len()).sum()
    }
}

/// Evaluates every (link, height) pair. Work is spread over the rayon pool;
/// results are always in link order, then ascending height.
pub fn run_sweep<T: Scalar>(spec: &SweepSpec<T>) -> Result<SweepSeries<T>> {
    spec.validate()?;
    let n_heights = spec.heights_m.len();
    let outcomes: Vec<Result<SweepRecord<T>>> = (0..spec.links.len() * n_heights)
        .into_par_iter()
        .map(|k| {
            let link = &spec.links[k / n_heights];
            let height_m = spec.heights_m[k % n_heights];
            evaluate_point(&spec.environment, &spec.earth, link, height_m).map_err(|e| {
                ModelError::Evaluation {
                    link: link.label.clone(),
                    height_m: height_m.as_f64(),
                    source: Box::new(e),
                }
            })
        })
        .collect();

    let mut records = outcomes
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter();
    let links: Vec<LinkSeries<T>> = spec
        .links
        .iter()
        .map(|link| LinkSeries {
            label: link.label.clone(),
            class: link.kind.class(),
            sensitivity_dbm: link.terminal.sensitivity_dbm,
            records: records.by_ref().take(n_heights).collect(),
        })
        .collect();
    let covered_any = (0..n_heights)
        .map(|i| links.iter().any(|l| l.records[i].budget.covered))
        .collect();
    Ok(SweepSeries {
        heights_m: spec.heights_m.clone(),
        links,
        covered_any,
    })
}

/// Closed height interval on the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageInterval<T> {
    pub low_m: T,
    pub high_m: T,
}

/// Maximal runs of consecutive covered grid heights.
pub fn coverage_intervals<T: Scalar>(
    series: &SweepSeries<T>,
    link_label: &str,
) -> Result<Vec<CoverageInterval<T>>> {
    let link = series.link(link_label)?;
    Ok(runs(link.covered())
        .into_iter()
        .map(|(a, b)| CoverageInterval {
            low_m: link.records[a].height_m,
            high_m: link.records[b].height_m,
        })
        .collect())
}

/// Like [`coverage_intervals`], but each endpoint that has an uncovered grid
/// neighbour is moved to the zero crossing of the margin, linearly
/// interpolated between the two grid heights.
pub fn refined_coverage_intervals<T: Scalar>(
    series: &SweepSeries<T>,
    link_label: &str,
) -> Result<Vec<CoverageInterval<T>>> {
    let link = series.link(link_label)?;
    let rec = &link.records;
    let crossing = |i: usize, j: usize| {
        let (h0, m0) = (rec[i].height_m, rec[i].budget.margin_db);
        let (h1, m1) = (rec[j].height_m, rec[j].budget.margin_db);
        if m1 == m0 {
            h1
        } else {
            h0 + (h1 - h0) * (-m0 / (m1 - m0))
        }
    };
    Ok(runs(link.covered())
        .into_iter()
        .map(|(a, b)| CoverageInterval {
            low_m: if a > 0 {
                crossing(a - 1, a)
            } else {
                rec[a].height_m
            },
            high_m: if b + 1 < rec.len() {
                crossing(b, b + 1)
            } else {
                rec[b].height_m
            },
        })
        .collect())
}

fn runs(flags: impl Iterator<Item = bool>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut last = 0;
    for (i, f) in flags.enumerate() {
        match (f, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
        last = i;
    }
    if let Some(s) = start {
        out.push((s, last));
    }
    out
}

/// Per-height OR of link coverage and the covered fraction of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridAvailability {
    pub covered_any: Vec<bool>,
    pub fraction: f64,
}

fn availability(covered_any: Vec<bool>) -> HybridAvailability {
    let n = covered_any.len();
    let hits = covered_any.iter().filter(|&&c| c).count();
    let fraction = if n == 0 { 0.0 } else { hits as f64 / n as f64 };
    HybridAvailability {
        covered_any,
        fraction,
    }
}

pub fn hybrid_availability<T: Scalar>(series: &SweepSeries<T>) -> HybridAvailability {
    availability(series.covered_any.clone())
}

/// Hybrid availability restricted to the named links.
pub fn hybrid_availability_of<T: Scalar>(
    series: &SweepSeries<T>,
    labels: &[&str],
) -> Result<HybridAvailability> {
    let chosen = labels
        .iter()
        .map(|l| series.link(l))
        .collect::<Result<Vec<_>>>()?;
    let covered_any = (0..series.heights_m.len())
        .map(|i| chosen.iter().any(|l| l.records[i].budget.covered))
        .collect();
    Ok(availability(covered_any))
}

/// Lowest grid height at which the link is covered.
pub fn min_feasible_height<T: Scalar>(
    series: &SweepSeries<T>,
    link_label: &str,
) -> Result<Option<T>> {
    let link = series.link(link_label)?;
    Ok(link
        .records
        .iter()
        .find(|r| r.budget.covered)
        .map(|r| r.height_m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preset;

    #[test]
    fn runs_are_maximal() {
        let f = |v: &[u8]| runs(v.iter().map(|&x| x == 1));
        assert_eq!(f(&[0, 1, 1, 0, 1]), vec![(1, 2), (4, 4)]);
        assert_eq!(f(&[1, 1, 1]), vec![(0, 2)]);
        assert_eq!(f(&[0, 0]), vec![]);
        assert_eq!(f(&[]), vec![]);
    }

    #[test]
    fn grid_construction() {
        assert_eq!(
            height_grid(1.0, 5.0, 1.0).unwrap(),
            vec![1.0, 2.0, 3.0, 4.0, 5.0]
        );
        assert_eq!(height_grid(1.0, 2.0, 0.5).unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(
            height_grid(1.0, 300.0, 1.0).unwrap(),
            default_heights::<f64>()
        );
        assert!(height_grid(1.0, 5.0, 0.0).is_err());
        assert!(height_grid(0.0, 5.0, 1.0).is_err());
    }

    #[test]
    fn validation_lists_every_field() {
        let mut spec = preset::reference_sweep::<f64>();
        spec.heights_m = vec![3.0, 2.0];
        spec.links[0].propagation.carrier_frequency_ghz = -1.0;
        if let LinkKind::Satellite { elevation_deg, .. } = &mut spec.links[4].kind {
            *elevation_deg = 0.0;
        }
        spec.links[5].label = spec.links[1].label.clone();
        let Err(ModelError::Config(errs)) = spec.validate() else {
            panic!("expected config error");
        };
        let fields: Vec<_> = errs.iter().map(|e| e.field.as_str()).collect();
        assert!(fields.contains(&"heights_m[1]"), "{fields:?}");
        assert!(fields.contains(&"links[0].carrier_frequency_GHz"));
        assert!(fields.contains(&"links[4].elevation_deg"));
        assert!(fields.contains(&"links[5].label"));
    }

    #[test]
    fn empty_links_rejected() {
        let mut spec = preset::reference_sweep::<f64>();
        spec.links.clear();
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn unknown_label() {
        let series = run_sweep(&preset::reference_sweep::<f64>()).unwrap();
        assert!(matches!(
            coverage_intervals(&series, "nope"),
            Err(ModelError::UnknownLink(_))
        ));
        assert!(min_feasible_height(&series, "nope").is_err());
    }

    #[test]
    fn refined_endpoints_lie_between_grid_points() {
        let series = run_sweep(&preset::reference_sweep::<f64>()).unwrap();
        let label = preset::tn_label(2.0);
        let coarse = coverage_intervals(&series, &label).unwrap();
        let fine = refined_coverage_intervals(&series, &label).unwrap();
        assert_eq!(coarse.len(), 1);
        assert_eq!(fine.len(), 1);
        assert!(fine[0].low_m <= coarse[0].low_m && fine[0].low_m >= coarse[0].low_m - 1.0);
        assert!(fine[0].high_m >= coarse[0].high_m && fine[0].high_m <= coarse[0].high_m + 1.0);
    }

    #[test]
    fn sweep_runs_in_f32() {
        let series = run_sweep(&preset::reference_sweep::<f32>()).unwrap();
        assert_eq!(series.record_count(), 1800);
        let h = min_feasible_height(&series, &preset::tn_label(1.0f32)).unwrap();
        assert_eq!(h, Some(12.0));
    }
}
