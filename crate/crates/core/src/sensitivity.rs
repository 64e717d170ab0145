//! One-at-a-time parameter sweeps over the procurement model.
//!
//! A sweep varies exactly one input — mean fire area, total seasonal
//! fire hours, radio range, or hover height — across an arithmetic grid
//! while all other inputs stay at their baseline, recomputing the whole
//! pipeline (reception radius, scan plan, budget) at every point. Grid
//! points where the geometry breaks down (hover at or above the radio
//! range, no feasible scan) produce error rows; the sweep continues.

use thiserror::Error;

use crate::fleet::{annual_budget, build_scan_plan, DroneSpec, FireHistory};
use crate::radio::receive_radius_km;

/// The input a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    /// Mean burned area per fire, km^2.
    MeanArea,
    /// Total fire hours over the season.
    TotalDuration,
    /// Effective radio range d, km.
    RadioRange,
    /// Hover height h, km.
    HoverHeight,
}

impl SweepParameter {
    /// Machine-readable name used in CSV output and CLI flags.
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::MeanArea => "mean_area",
            SweepParameter::TotalDuration => "total_duration",
            SweepParameter::RadioRange => "radio_range",
            SweepParameter::HoverHeight => "hover_height",
        }
    }
}

/// The inputs held fixed while one parameter sweeps.
#[derive(Debug, Clone)]
pub struct SweepBaseline {
    /// Seasonal fire statistics.
    pub history: FireHistory,
    /// Drone performance figures.
    pub spec: DroneSpec,
    /// Effective radio range d, km.
    pub radio_range_km: f64,
    /// Hover height h, km.
    pub hover_height_km: f64,
    /// Airframe service cycle, flight hours.
    pub service_cycle_hours: f64,
    /// Maximum time between surveillance passes, hours.
    pub revisit_hours: f64,
}

/// One sweep: which parameter, over which arithmetic grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    /// The varied input.
    pub parameter: SweepParameter,
    /// First grid value.
    pub start: f64,
    /// Last grid value (inclusive up to grid rounding).
    pub stop: f64,
    /// Grid spacing; must be positive.
    pub step: f64,
}

/// Counts produced at one feasible grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepCell {
    /// Seasonal relay procurement.
    pub q3: u64,
    /// Seasonal surveillance procurement.
    pub q4: u64,
    /// Relays committed to the mean fire.
    pub qbar1: u64,
    /// Surveillance drones committed to the mean fire.
    pub qbar2: u64,
}

/// One grid point: counts, or the reason this point has none.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// The swept parameter's value at this point.
    pub parameter_value: f64,
    /// Counts when the point is feasible, the error message otherwise.
    pub outcome: Result<SweepCell, String>,
}

/// Errors that abort a sweep before any row is produced.
#[derive(Debug, Error)]
pub enum SensitivityError {
    /// The grid is empty, inverted, non-finite, or too large.
    #[error("invalid sweep range: {0}")]
    InvalidRange(String),
    /// A baseline input is outside its meaningful range.
    #[error("invalid sweep baseline: {0}")]
    InvalidBaseline(String),
}

/// Largest number of grid points one sweep may produce.
const MAX_SWEEP_POINTS: u64 = 1_000_000;

/// Evaluates the procurement pipeline at one parameter setting.
fn evaluate(
    baseline: &SweepBaseline,
    mean_area_km2: f64,
    total_duration_h: f64,
    radio_range_km: f64,
    hover_height_km: f64,
) -> Result<SweepCell, String> {
    // Normalize to a single-fire history carrying the mean area, the
    // baseline mean distance, and the season's total hours — the only
    // statistics the budget reads.
    let history = FireHistory::new(
        mean_area_km2,
        1,
        baseline.history.mean_distance_km(),
        total_duration_h,
    )
    .map_err(|err| err.to_string())?;
    let radius =
        receive_radius_km(radio_range_km, hover_height_km).map_err(|err| err.to_string())?;
    let plan = build_scan_plan(radius, &baseline.spec).map_err(|err| err.to_string())?;
    let budget = annual_budget(
        &history,
        &plan,
        &baseline.spec,
        baseline.service_cycle_hours,
        baseline.revisit_hours,
    );
    Ok(SweepCell {
        q3: budget.q3,
        q4: budget.q4,
        qbar1: budget.qbar1,
        qbar2: budget.qbar2,
    })
}

/// Runs a sweep, producing one row per grid point in ascending order.
///
/// Grid values are `start + i * step` for `i = 0..=floor((stop - start)
/// / step)`, so `stop` itself is included exactly when it lies on the
/// grid. Infeasible points become error rows; the sweep always returns
/// every row.
pub fn run_sweep(
    spec: &SweepSpec,
    baseline: &SweepBaseline,
) -> Result<Vec<SweepRow>, SensitivityError> {
    if !(spec.step.is_finite() && spec.step > 0.0) {
        return Err(SensitivityError::InvalidRange(format!(
            "step must be positive, got {}",
            spec.step
        )));
    }
    if !spec.start.is_finite() || !spec.stop.is_finite() {
        return Err(SensitivityError::InvalidRange(format!(
            "bounds must be finite, got start {} stop {}",
            spec.start, spec.stop
        )));
    }
    if spec.start > spec.stop {
        return Err(SensitivityError::InvalidRange(format!(
            "start {} exceeds stop {}",
            spec.start, spec.stop
        )));
    }
    let positive = |value: f64, name: &str| {
        if value.is_finite() && value > 0.0 {
            Ok(())
        } else {
            Err(SensitivityError::InvalidBaseline(format!(
                "{name} must be positive, got {value}"
            )))
        }
    };
    positive(baseline.service_cycle_hours, "service cycle")?;
    positive(baseline.revisit_hours, "revisit interval")?;

    // A hair of slack so a stop that lands on the grid is not lost to
    // division rounding.
    let spans = (spec.stop - spec.start) / spec.step + 1e-9;
    let count = spans.floor() as u64 + 1;
    if count > MAX_SWEEP_POINTS {
        return Err(SensitivityError::InvalidRange(format!(
            "sweep would produce {count} points (limit {MAX_SWEEP_POINTS})"
        )));
    }

    let mean_area = baseline.history.mean_area_km2();
    let total_duration = baseline.history.total_duration_h();
    let rows = (0..count)
        .map(|i| {
            let value = spec.start + i as f64 * spec.step;
            let outcome = match spec.parameter {
                SweepParameter::MeanArea => evaluate(
                    baseline,
                    value,
                    total_duration,
                    baseline.radio_range_km,
                    baseline.hover_height_km,
                ),
                SweepParameter::TotalDuration => evaluate(
                    baseline,
                    mean_area,
                    value,
                    baseline.radio_range_km,
                    baseline.hover_height_km,
                ),
                SweepParameter::RadioRange => evaluate(
                    baseline,
                    mean_area,
                    total_duration,
                    value,
                    baseline.hover_height_km,
                ),
                SweepParameter::HoverHeight => evaluate(
                    baseline,
                    mean_area,
                    total_duration,
                    baseline.radio_range_km,
                    value,
                ),
            };
            SweepRow {
                parameter_value: value,
                outcome,
            }
        })
        .collect();
    Ok(rows)
}

/// Serializes sweep rows as CSV with the header
/// `parameter_value,q3,q4,qbar1,qbar2,error`.
///
/// Feasible rows leave the error column empty; error rows leave the
/// count columns empty. Numbers use shortest round-trip formatting.
pub fn emit_sweep_csv(rows: &[SweepRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["parameter_value", "q3", "q4", "qbar1", "qbar2", "error"])
        .expect("writing to memory cannot fail");
    for row in rows {
        let value = format!("{}", row.parameter_value);
        let record = match &row.outcome {
            Ok(cell) => [
                value,
                cell.q3.to_string(),
                cell.q4.to_string(),
                cell.qbar1.to_string(),
                cell.qbar2.to_string(),
                String::new(),
            ],
            Err(message) => [
                value,
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                message.clone(),
            ],
        };
        writer
            .write_record(&record)
            .expect("writing to memory cannot fail");
    }
    String::from_utf8(writer.into_inner().expect("writer flushes cleanly"))
        .expect("CSV output is UTF-8")
}
