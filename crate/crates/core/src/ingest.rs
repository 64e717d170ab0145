//! Input tables and the run configuration.
//!
//! Parsers for the CSV tables the planner consumes (satellite hotspots,
//! candidate command-post cities, historical fire records, seasonal count
//! series) and for the JSON run configuration. Parsing is strict: a
//! missing column is a schema error naming the column, and a bad field is
//! a row error carrying the 1-based line number of the offending row.
//! Extra CSV columns are ignored so exports with vendor columns load
//! unchanged.

use chrono::NaiveDate;
use serde::Deserialize;
use thiserror::Error;

use crate::firemask::{ChannelRange, HsvThresholds};
use crate::fleet::{DroneSpec, FireRecord};
use crate::geo::GeoPoint;
use crate::radio::{LinkGeometry, RadioEnvironment, RadioError};

/// One satellite fire detection.
#[derive(Debug, Clone, PartialEq)]
pub struct Hotspot {
    /// Detection latitude in degrees, in [-90, 90].
    pub latitude: f64,
    /// Detection longitude in degrees, in [-180, 180].
    pub longitude: f64,
    /// Fire radiative power in megawatts; non-negative.
    pub frp: f64,
    /// Acquisition date.
    pub acq_date: NaiveDate,
}

impl Hotspot {
    /// Detection location as a [`GeoPoint`].
    pub fn point(&self) -> GeoPoint {
        GeoPoint {
            latitude: self.latitude,
            longitude: self.longitude,
        }
    }
}

/// A candidate emergency-operations-centre host city.
#[derive(Debug, Clone, PartialEq)]
pub struct City {
    /// City name; non-empty.
    pub name: String,
    /// City latitude in degrees, in [-90, 90].
    pub latitude: f64,
    /// City longitude in degrees, in [-180, 180].
    pub longitude: f64,
    /// Resident population.
    pub population: u64,
}

impl City {
    /// City location as a [`GeoPoint`].
    pub fn point(&self) -> GeoPoint {
        GeoPoint {
            latitude: self.latitude,
            longitude: self.longitude,
        }
    }
}

/// One row of a seasonal count series (e.g. monthly fire counts).
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRow {
    /// Period label, carried through untouched (e.g. "2019-10").
    pub label: String,
    /// Observed count for the period; finite.
    pub count: f64,
}

/// Errors raised while parsing input tables.
#[derive(Debug, Error)]
pub enum IngestError {
    /// The header row lacks a required column.
    #[error("missing required column \"{column}\"")]
    MissingColumn { column: String },
    /// A data row holds a value that cannot be used.
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    /// The input is not well-formed CSV at all.
    #[error("malformed CSV: {0}")]
    Malformed(String),
}

impl From<csv::Error> for IngestError {
    fn from(err: csv::Error) -> Self {
        match err.position() {
            Some(pos) => IngestError::Row {
                line: pos.line(),
                message: err.to_string(),
            },
            None => IngestError::Malformed(err.to_string()),
        }
    }
}

/// Looks up required column positions in a header row.
struct ColumnMap {
    indices: Vec<usize>,
}

impl ColumnMap {
    fn new(headers: &csv::StringRecord, required: &[&str]) -> Result<Self, IngestError> {
        let mut indices = Vec::with_capacity(required.len());
        for &column in required {
            let idx = headers
                .iter()
                .position(|h| h.trim() == column)
                .ok_or_else(|| IngestError::MissingColumn {
                    column: column.to_string(),
                })?;
            indices.push(idx);
        }
        Ok(ColumnMap { indices })
    }

    fn get<'r>(&self, record: &'r csv::StringRecord, required_idx: usize) -> &'r str {
        record.get(self.indices[required_idx]).unwrap_or("")
    }
}

fn reader_for(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn parse_f64(field: &str, name: &str, line: u64) -> Result<f64, IngestError> {
    let value: f64 = field.parse().map_err(|_| IngestError::Row {
        line,
        message: format!("cannot parse field \"{name}\" from \"{field}\""),
    })?;
    if !value.is_finite() {
        return Err(IngestError::Row {
            line,
            message: format!("field \"{name}\" must be finite, got \"{field}\""),
        });
    }
    Ok(value)
}

fn check_range(value: f64, lo: f64, hi: f64, name: &str, line: u64) -> Result<f64, IngestError> {
    if value < lo || value > hi {
        return Err(IngestError::Row {
            line,
            message: format!("field \"{name}\" is {value}, outside [{lo}, {hi}]"),
        });
    }
    Ok(value)
}

/// Parses a hotspot table.
///
/// The header must contain `latitude`, `longitude`, `frp`, and `acq_date`
/// (ISO-8601 date); extra columns are ignored. Coordinates must lie in
/// valid ranges and `frp` must be a finite non-negative number.
pub fn parse_hotspots(text: &str) -> Result<Vec<Hotspot>, IngestError> {
    let mut reader = reader_for(text);
    let headers = reader.headers()?.clone();
    let cols = ColumnMap::new(&headers, &["latitude", "longitude", "frp", "acq_date"])?;

    let mut hotspots = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record_line(&record);
        let latitude = check_range(
            parse_f64(cols.get(&record, 0), "latitude", line)?,
            -90.0,
            90.0,
            "latitude",
            line,
        )?;
        let longitude = check_range(
            parse_f64(cols.get(&record, 1), "longitude", line)?,
            -180.0,
            180.0,
            "longitude",
            line,
        )?;
        let frp = parse_f64(cols.get(&record, 2), "frp", line)?;
        if frp < 0.0 {
            return Err(IngestError::Row {
                line,
                message: format!("field \"frp\" must be non-negative, got {frp}"),
            });
        }
        let date_field = cols.get(&record, 3);
        let acq_date =
            NaiveDate::parse_from_str(date_field, "%Y-%m-%d").map_err(|_| IngestError::Row {
                line,
                message: format!("cannot parse field \"acq_date\" from \"{date_field}\""),
            })?;
        hotspots.push(Hotspot {
            latitude,
            longitude,
            frp,
            acq_date,
        });
    }
    Ok(hotspots)
}

/// Serializes hotspots back to CSV in the canonical column order.
///
/// Reparsing the result yields the same sequence of hotspots; floats are
/// written with shortest round-trip formatting.
pub fn hotspots_to_csv(hotspots: &[Hotspot]) -> String {
    let mut out = String::from("latitude,longitude,frp,acq_date\n");
    for h in hotspots {
        out.push_str(&format!(
            "{},{},{},{}\n",
            h.latitude,
            h.longitude,
            h.frp,
            h.acq_date.format("%Y-%m-%d")
        ));
    }
    out
}

/// Keeps only hotspots whose radiative power reaches the threshold.
///
/// A detection exactly at the threshold is kept.
pub fn filter_significant(mut hotspots: Vec<Hotspot>, frp_threshold: f64) -> Vec<Hotspot> {
    hotspots.retain(|h| h.frp >= frp_threshold);
    hotspots
}

/// Parses a city table.
///
/// The header must contain `name`, `latitude`, `longitude`, and
/// `population`; extra columns are ignored. Population must be a
/// non-negative integer, so a negative value is a row error.
pub fn parse_cities(text: &str) -> Result<Vec<City>, IngestError> {
    let mut reader = reader_for(text);
    let headers = reader.headers()?.clone();
    let cols = ColumnMap::new(&headers, &["name", "latitude", "longitude", "population"])?;

    let mut cities = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record_line(&record);
        let name = cols.get(&record, 0).to_string();
        if name.is_empty() {
            return Err(IngestError::Row {
                line,
                message: "field \"name\" must not be empty".to_string(),
            });
        }
        let latitude = check_range(
            parse_f64(cols.get(&record, 1), "latitude", line)?,
            -90.0,
            90.0,
            "latitude",
            line,
        )?;
        let longitude = check_range(
            parse_f64(cols.get(&record, 2), "longitude", line)?,
            -180.0,
            180.0,
            "longitude",
            line,
        )?;
        let pop_field = cols.get(&record, 3);
        let population: u64 = pop_field.parse().map_err(|_| IngestError::Row {
            line,
            message: format!("cannot parse field \"population\" from \"{pop_field}\""),
        })?;
        cities.push(City {
            name,
            latitude,
            longitude,
            population,
        });
    }
    Ok(cities)
}

/// Parses a historical fire table with columns `area_km2`, `duration_h`,
/// and `distance_km` (one row per fire).
///
/// Every value must be finite and non-negative.
pub fn parse_fire_history(text: &str) -> Result<Vec<FireRecord>, IngestError> {
    let mut reader = reader_for(text);
    let headers = reader.headers()?.clone();
    let cols = ColumnMap::new(&headers, &["area_km2", "duration_h", "distance_km"])?;

    let mut records = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record_line(&record);
        let field = |idx: usize, name: &str| -> Result<f64, IngestError> {
            let value = parse_f64(cols.get(&record, idx), name, line)?;
            if value < 0.0 {
                return Err(IngestError::Row {
                    line,
                    message: format!("field \"{name}\" must be non-negative, got {value}"),
                });
            }
            Ok(value)
        };
        records.push(FireRecord {
            area_km2: field(0, "area_km2")?,
            duration_h: field(1, "duration_h")?,
            distance_km: field(2, "distance_km")?,
        });
    }
    Ok(records)
}

/// Parses a seasonal count series with columns `period_label` and `count`.
pub fn parse_series(text: &str) -> Result<Vec<SeriesRow>, IngestError> {
    let mut reader = reader_for(text);
    let headers = reader.headers()?.clone();
    let cols = ColumnMap::new(&headers, &["period_label", "count"])?;

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record_line(&record);
        let label = cols.get(&record, 0).to_string();
        let count = parse_f64(cols.get(&record, 1), "count", line)?;
        rows.push(SeriesRow { label, count });
    }
    Ok(rows)
}

/// Parses a plain position table with columns `latitude` and `longitude`
/// (one row per point), used for ground-team stations.
pub fn parse_positions(text: &str) -> Result<Vec<GeoPoint>, IngestError> {
    let mut reader = reader_for(text);
    let headers = reader.headers()?.clone();
    let cols = ColumnMap::new(&headers, &["latitude", "longitude"])?;

    let mut points = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record_line(&record);
        let latitude = check_range(
            parse_f64(cols.get(&record, 0), "latitude", line)?,
            -90.0,
            90.0,
            "latitude",
            line,
        )?;
        let longitude = check_range(
            parse_f64(cols.get(&record, 1), "longitude", line)?,
            -180.0,
            180.0,
            "longitude",
            line,
        )?;
        points.push(GeoPoint {
            latitude,
            longitude,
        });
    }
    Ok(points)
}

/// Errors raised while loading or validating the run configuration.
#[derive(Debug, Error)]
pub enum ConfigError {
    /// The document is not valid JSON or has unknown/ill-typed keys.
    #[error("cannot parse configuration: {0}")]
    Parse(String),
    /// A key parsed but holds a value outside its allowed range.
    #[error("configuration key \"{key}\": {message}")]
    Invalid { key: &'static str, message: String },
}

/// Run-wide tuning knobs, loaded from a flat JSON document.
///
/// Every key is optional; absent keys take the documented defaults. The
/// parser rejects unknown keys so typos fail loudly instead of silently
/// reverting to defaults.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Minimum fire radiative power (MW) for a hotspot to count. Default 90.
    pub frp_threshold: f64,
    /// Minimum population for a city to host an EOC. Default 10000.
    pub min_population: u64,
    /// Single-linkage clustering radius in km. Default 20.
    pub cluster_radius_km: f64,
    /// Drone cruise speed in km/h. Default 72.
    pub max_speed_kmh: f64,
    /// Flight endurance per charge in hours. Default 2.5.
    pub endurance_h: f64,
    /// Recharge time in hours. Default 1.75.
    pub charge_h: f64,
    /// Radio repeater link range in km. Default 20.
    pub repeater_range_km: f64,
    /// Procurement cost per drone in AUD. Default 10000.
    pub unit_cost_aud: f64,
    /// Flight hours one airframe provides before replacement. Default 200.
    pub service_cycle_hours: f64,
    /// Target revisit interval for scan coverage in hours. Default 0.5.
    pub revisit_hours: f64,
    /// Radio attenuation coefficient, in (0, 1]. Default 1.
    pub radio_k: f64,
    /// Tree canopy density along the link, in [0, 1). Default 0.
    pub tree_density: f64,
    /// Open-terrain radio range in km. Default 5.
    pub open_range_km: f64,
    /// Direct override for the effective radio range d in km; when set it
    /// replaces the attenuation product. Default unset.
    pub radio_range_km: Option<f64>,
    /// Repeater hover height in km. Default 0.5.
    pub hover_height_km: f64,
    /// Grid step for Holt-Winters parameter fitting, in (0, 1]. Default 0.05.
    pub forecast_grid_step: f64,
    /// Yellow-flame hue band lower bound (half-degrees, 0..180). Default 26.
    pub yellow_hue_lo: u8,
    /// Yellow-flame hue band upper bound. Default 34.
    pub yellow_hue_hi: u8,
    /// Yellow-flame saturation lower bound. Default 43.
    pub yellow_sat_lo: u8,
    /// Yellow-flame saturation upper bound. Default 255.
    pub yellow_sat_hi: u8,
    /// Yellow-flame value lower bound. Default 46.
    pub yellow_val_lo: u8,
    /// Yellow-flame value upper bound. Default 255.
    pub yellow_val_hi: u8,
    /// Red-flame low hue band lower bound. Default 0.
    pub red_hue_low_lo: u8,
    /// Red-flame low hue band upper bound. Default 10.
    pub red_hue_low_hi: u8,
    /// Red-flame high hue band lower bound. Default 156.
    pub red_hue_high_lo: u8,
    /// Red-flame high hue band upper bound. Default 179.
    pub red_hue_high_hi: u8,
    /// Red-flame saturation lower bound. Default 43.
    pub red_sat_lo: u8,
    /// Red-flame saturation upper bound. Default 255.
    pub red_sat_hi: u8,
    /// Red-flame value lower bound. Default 46.
    pub red_val_lo: u8,
    /// Red-flame value upper bound. Default 255.
    pub red_val_hi: u8,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            frp_threshold: 90.0,
            min_population: 10_000,
            cluster_radius_km: 20.0,
            max_speed_kmh: 72.0,
            endurance_h: 2.5,
            charge_h: 1.75,
            repeater_range_km: 20.0,
            unit_cost_aud: 10_000.0,
            service_cycle_hours: 200.0,
            revisit_hours: 0.5,
            radio_k: 1.0,
            tree_density: 0.0,
            open_range_km: 5.0,
            radio_range_km: None,
            hover_height_km: 0.5,
            forecast_grid_step: 0.05,
            yellow_hue_lo: 26,
            yellow_hue_hi: 34,
            yellow_sat_lo: 43,
            yellow_sat_hi: 255,
            yellow_val_lo: 46,
            yellow_val_hi: 255,
            red_hue_low_lo: 0,
            red_hue_low_hi: 10,
            red_hue_high_lo: 156,
            red_hue_high_hi: 179,
            red_sat_lo: 43,
            red_sat_hi: 255,
            red_val_lo: 46,
            red_val_hi: 255,
        }
    }
}

impl RunConfig {
    /// Checks every key against its allowed range.
    pub fn validate(&self) -> Result<(), ConfigError> {
        fn positive(value: f64, key: &'static str) -> Result<(), ConfigError> {
            if !(value.is_finite() && value > 0.0) {
                return Err(ConfigError::Invalid {
                    key,
                    message: format!("must be a positive finite number, got {value}"),
                });
            }
            Ok(())
        }
        fn non_negative(value: f64, key: &'static str) -> Result<(), ConfigError> {
            if !(value.is_finite() && value >= 0.0) {
                return Err(ConfigError::Invalid {
                    key,
                    message: format!("must be a non-negative finite number, got {value}"),
                });
            }
            Ok(())
        }

        non_negative(self.frp_threshold, "frp_threshold")?;
        positive(self.cluster_radius_km, "cluster_radius_km")?;
        positive(self.max_speed_kmh, "max_speed_kmh")?;
        positive(self.endurance_h, "endurance_h")?;
        positive(self.charge_h, "charge_h")?;
        positive(self.repeater_range_km, "repeater_range_km")?;
        positive(self.unit_cost_aud, "unit_cost_aud")?;
        positive(self.service_cycle_hours, "service_cycle_hours")?;
        positive(self.revisit_hours, "revisit_hours")?;
        if !(self.radio_k.is_finite() && self.radio_k > 0.0 && self.radio_k <= 1.0) {
            return Err(ConfigError::Invalid {
                key: "radio_k",
                message: format!("must lie in (0, 1], got {}", self.radio_k),
            });
        }
        if !(self.tree_density.is_finite() && (0.0..1.0).contains(&self.tree_density)) {
            return Err(ConfigError::Invalid {
                key: "tree_density",
                message: format!("must lie in [0, 1), got {}", self.tree_density),
            });
        }
        positive(self.open_range_km, "open_range_km")?;
        if let Some(d) = self.radio_range_km {
            positive(d, "radio_range_km")?;
        }
        non_negative(self.hover_height_km, "hover_height_km")?;
        if !(self.forecast_grid_step.is_finite()
            && self.forecast_grid_step > 0.0
            && self.forecast_grid_step <= 1.0)
        {
            return Err(ConfigError::Invalid {
                key: "forecast_grid_step",
                message: format!("must lie in (0, 1], got {}", self.forecast_grid_step),
            });
        }
        self.hsv_thresholds()
            .validate()
            .map_err(|err| ConfigError::Invalid {
                key: "hsv thresholds",
                message: err.to_string(),
            })?;
        Ok(())
    }

    /// Drone performance figures assembled from the config keys.
    pub fn drone_spec(&self) -> DroneSpec {
        DroneSpec {
            max_speed_kmh: self.max_speed_kmh,
            endurance_h: self.endurance_h,
            charge_h: self.charge_h,
            repeater_range_km: self.repeater_range_km,
            unit_cost_aud: self.unit_cost_aud,
        }
    }

    /// HSV segmentation thresholds assembled from the config keys.
    pub fn hsv_thresholds(&self) -> HsvThresholds {
        HsvThresholds {
            yellow_hue: ChannelRange::new(self.yellow_hue_lo, self.yellow_hue_hi),
            yellow_sat: ChannelRange::new(self.yellow_sat_lo, self.yellow_sat_hi),
            yellow_val: ChannelRange::new(self.yellow_val_lo, self.yellow_val_hi),
            red_hue_low: ChannelRange::new(self.red_hue_low_lo, self.red_hue_low_hi),
            red_hue_high: ChannelRange::new(self.red_hue_high_lo, self.red_hue_high_hi),
            red_sat: ChannelRange::new(self.red_sat_lo, self.red_sat_hi),
            red_val: ChannelRange::new(self.red_val_lo, self.red_val_hi),
        }
    }

    /// Effective radio range d in km: the direct override when set,
    /// otherwise the attenuation product k * (1 - tree_density) * open range.
    pub fn radio_range_km(&self) -> Result<f64, RadioError> {
        match self.radio_range_km {
            Some(d) => Ok(d),
            None => {
                let env =
                    RadioEnvironment::new(self.radio_k, self.tree_density, self.open_range_km)?;
                Ok(env.effective_range_km())
            }
        }
    }

    /// The configured repeater link: range, hover height, and the derived
    /// ground-reception radius.
    pub fn link_geometry(&self) -> Result<LinkGeometry, RadioError> {
        LinkGeometry::new(self.radio_range_km()?, self.hover_height_km)
    }
}

/// Parses and validates a run configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig =
        serde_json::from_str(text).map_err(|err| ConfigError::Parse(err.to_string()))?;
    config.validate()?;
    Ok(config)
}
