//! `firefleet`: command-line driver for the wildfire drone-fleet
//! planning pipeline.
//!
//! One binary, one subcommand per pipeline stage; stages compose through
//! files. Outputs are deterministic: identical inputs and configuration
//! produce byte-identical bytes on every run. Machine-readable results
//! go to `--output` (or standard output); diagnostics go to standard
//! error. Exit codes: 0 success, 1 input or validation error, 2
//! infeasible request (no eligible host city, scan beyond battery,
//! hover above radio range).

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use firefleet::deploy::{emit_geojson, plan_deployment};
use firefleet::firemask::{
    encode_mask_png, grid_cover, in_range_mask, load_rgb_png, parse_geo_sidecar, parse_grid_csv,
    GeoTransform, MaskError,
};
use firefleet::fleet::{
    annual_budget, build_scan_plan, incident_fleet, repeater_chain_count, repeater_count_area,
    ssa_count, FireHistory, FleetError,
};
use firefleet::forecast::{hw_fit, hw_forecast, hw_init, hw_smooth, ForecastError, SeasonalSeries};
use firefleet::geo::{assign_eoc, cluster_hotspots, GeoError, GeoPoint};
use firefleet::ingest::{
    filter_significant, parse_cities, parse_config, parse_fire_history, parse_hotspots,
    parse_positions, parse_series, ConfigError, IngestError, RunConfig,
};
use firefleet::radio::RadioError;
use firefleet::sensitivity::{
    emit_sweep_csv, run_sweep, SensitivityError, SweepBaseline, SweepParameter, SweepSpec,
};

#[derive(Parser)]
#[command(
    name = "firefleet",
    version,
    about = "Plan drone fleets for rapid wildfire response",
    arg_required_else_help = true
)]
struct Cli {
    /// JSON run configuration; built-in defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write the primary output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster hotspots and assign each fire to its closest host city.
    EocAssign {
        /// Hotspot table: latitude, longitude, frp, acq_date.
        #[arg(long, value_name = "PATH")]
        hotspots: PathBuf,
        /// Candidate city table: name, latitude, longitude, population.
        #[arg(long, value_name = "PATH")]
        cities: PathBuf,
    },
    /// Size the relay and surveillance fleet for one incident.
    FleetPlan {
        /// Fire area in square kilometres.
        #[arg(long, value_name = "KM2", allow_negative_numbers = true)]
        area: f64,
        /// Fire-to-command-post distance in kilometres.
        #[arg(long, value_name = "KM", allow_negative_numbers = true)]
        distance: f64,
        /// Emit the plan as JSON instead of key=value lines.
        #[arg(long)]
        json: bool,
    },
    /// Roll a season's fire history into a procurement budget.
    Budget {
        /// Fire history table: area_km2, duration_h, distance_km.
        #[arg(long, value_name = "PATH")]
        history: PathBuf,
    },
    /// Fit the seasonal smoothing model and forecast future counts.
    Forecast {
        /// Count series table: period_label, count.
        #[arg(long, value_name = "PATH")]
        series: PathBuf,
        /// Periods per season (e.g. 12 for monthly data).
        #[arg(long, value_name = "N")]
        season_length: usize,
        /// Number of periods to forecast past the series end.
        #[arg(long, value_name = "K")]
        horizon: u64,
    },
    /// Segment burn pixels in a georeferenced photo and grid the cover.
    FireMask {
        /// Aerial photo, PNG.
        #[arg(long, value_name = "PATH")]
        image: PathBuf,
        /// Georeference sidecar: origin_lat, origin_lon, km_per_pixel.
        #[arg(long, value_name = "PATH")]
        geo: PathBuf,
        /// Where to write the burn-mask PNG.
        #[arg(long, value_name = "PATH")]
        mask_out: PathBuf,
        /// Where to write the coverage-grid CSV.
        #[arg(long, value_name = "PATH")]
        grid_out: PathBuf,
    },
    /// Turn a coverage grid into relay drone positions as GeoJSON.
    Deploy {
        /// Coverage grid CSV of 0/1 cells.
        #[arg(long, value_name = "PATH")]
        grid: PathBuf,
        /// Command-post latitude in degrees.
        #[arg(long, value_name = "DEG", allow_negative_numbers = true)]
        eoc_lat: f64,
        /// Command-post longitude in degrees.
        #[arg(long, value_name = "DEG", allow_negative_numbers = true)]
        eoc_lon: f64,
        /// Latitude of the grid's north-west corner.
        #[arg(
            long,
            value_name = "DEG",
            default_value_t = 0.0,
            allow_negative_numbers = true
        )]
        origin_lat: f64,
        /// Longitude of the grid's north-west corner.
        #[arg(
            long,
            value_name = "DEG",
            default_value_t = 0.0,
            allow_negative_numbers = true
        )]
        origin_lon: f64,
        /// Optional firefighter-team positions: latitude, longitude.
        #[arg(long, value_name = "PATH")]
        teams: Option<PathBuf>,
    },
    /// Sweep one model input and tabulate the budget response.
    Sweep {
        /// Input to vary: mean_area, total_duration, radio_range, or
        /// hover_height.
        #[arg(long, value_name = "NAME")]
        parameter: String,
        /// First swept value.
        #[arg(long, value_name = "X", allow_negative_numbers = true)]
        start: f64,
        /// Last swept value (inclusive).
        #[arg(long, value_name = "X", allow_negative_numbers = true)]
        stop: f64,
        /// Spacing between swept values.
        #[arg(long, value_name = "X", allow_negative_numbers = true)]
        step: f64,
        /// Baseline fire history table: area_km2, duration_h, distance_km.
        #[arg(long, value_name = "PATH")]
        history: PathBuf,
    },
}

/// A command failure, split by exit code.
enum CliError {
    /// Unreadable, unparsable, or out-of-range input: exit 1.
    Input(String),
    /// Well-formed request with no feasible answer: exit 2.
    Infeasible(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Infeasible(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(message) | CliError::Infeasible(message) => f.write_str(message),
        }
    }
}

impl From<IngestError> for CliError {
    fn from(err: IngestError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(err: ConfigError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<MaskError> for CliError {
    fn from(err: MaskError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<ForecastError> for CliError {
    fn from(err: ForecastError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<SensitivityError> for CliError {
    fn from(err: SensitivityError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<FleetError> for CliError {
    fn from(err: FleetError) -> Self {
        match err {
            FleetError::InfeasibleScan { .. } => CliError::Infeasible(err.to_string()),
            _ => CliError::Input(err.to_string()),
        }
    }
}

impl From<GeoError> for CliError {
    fn from(err: GeoError) -> Self {
        match err {
            GeoError::NoEligibleCity { .. } => CliError::Infeasible(err.to_string()),
        }
    }
}

impl From<RadioError> for CliError {
    fn from(err: RadioError) -> Self {
        match err {
            RadioError::HoverTooHigh { .. } => CliError::Infeasible(err.to_string()),
            RadioError::InvalidEnvironment(_) => CliError::Input(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let config = load_config(cli.config.as_deref())?;
    let output = match &cli.command {
        Command::EocAssign { hotspots, cities } => cmd_eoc_assign(hotspots, cities, &config)?,
        Command::FleetPlan {
            area,
            distance,
            json,
        } => cmd_fleet_plan(*area, *distance, *json, &config)?,
        Command::Budget { history } => cmd_budget(history, &config)?,
        Command::Forecast {
            series,
            season_length,
            horizon,
        } => cmd_forecast(series, *season_length, *horizon, &config)?,
        Command::FireMask {
            image,
            geo,
            mask_out,
            grid_out,
        } => cmd_fire_mask(image, geo, mask_out, grid_out, &config)?,
        Command::Deploy {
            grid,
            eoc_lat,
            eoc_lon,
            origin_lat,
            origin_lon,
            teams,
        } => cmd_deploy(
            grid,
            *eoc_lat,
            *eoc_lon,
            *origin_lat,
            *origin_lon,
            teams.as_deref(),
            &config,
        )?,
        Command::Sweep {
            parameter,
            start,
            stop,
            step,
            history,
        } => cmd_sweep(parameter, *start, *stop, *step, history, &config)?,
    };
    write_output(cli.output.as_deref(), &output)
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        None => Ok(RunConfig::default()),
        Some(path) => Ok(parse_config(&read_text(path)?)?),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|err| CliError::Input(format!("cannot read {}: {err}", path.display())))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|err| CliError::Input(format!("cannot read {}: {err}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes)
        .map_err(|err| CliError::Input(format!("cannot write {}: {err}", path.display())))
}

/// Sends the primary output to `--output` or standard output, newline
/// terminated either way so the bytes never depend on the destination.
fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    let mut rendered = content.to_owned();
    if !rendered.is_empty() && !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match path {
        Some(path) => write_file(path, rendered.as_bytes()),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn require_finite(value: f64, what: &str) -> Result<(), CliError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "{what} must be a finite number, got {value}"
        )))
    }
}

fn require_non_negative(value: f64, what: &str) -> Result<(), CliError> {
    require_finite(value, what)?;
    if value >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "{what} must be non-negative, got {value}"
        )))
    }
}

fn require_coordinate(value: f64, what: &str, limit: f64) -> Result<(), CliError> {
    require_finite(value, what)?;
    if value.abs() <= limit {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "{what} must lie in [-{limit}, {limit}], got {value}"
        )))
    }
}

fn cmd_eoc_assign(hotspots: &Path, cities: &Path, config: &RunConfig) -> Result<String, CliError> {
    let hotspots = parse_hotspots(&read_text(hotspots)?)?;
    let cities = parse_cities(&read_text(cities)?)?;

    let significant = filter_significant(hotspots, config.frp_threshold);
    let clusters = cluster_hotspots(significant, config.cluster_radius_km);
    let assignments = assign_eoc(clusters, &cities, config.min_population)?;

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "cluster_id",
            "n_hotspots",
            "centroid_lat",
            "centroid_lon",
            "eoc_name",
            "mean_distance_km",
        ])
        .expect("writing to memory cannot fail");
    for (id, assignment) in assignments.iter().enumerate() {
        writer
            .write_record([
                id.to_string(),
                assignment.cluster.members.len().to_string(),
                assignment.cluster.centroid.latitude.to_string(),
                assignment.cluster.centroid.longitude.to_string(),
                assignment.eoc.name.clone(),
                assignment.mean_distance_km.to_string(),
            ])
            .expect("writing to memory cannot fail");
    }
    Ok(String::from_utf8(writer.into_inner().expect("memory writer")).expect("CSV is UTF-8"))
}

/// One incident's fleet, reported as key=value lines or as JSON.
#[derive(Serialize)]
struct IncidentReport {
    receive_radius_km: f64,
    scan_rings: u32,
    first_side_km: f64,
    scan_path_km: f64,
    coverage_km2: f64,
    area_repeaters: u64,
    chain_repeaters: u64,
    relay_total: u64,
    surveillance_count: u64,
}

fn cmd_fleet_plan(
    area: f64,
    distance: f64,
    json: bool,
    config: &RunConfig,
) -> Result<String, CliError> {
    require_non_negative(area, "--area")?;
    require_non_negative(distance, "--distance")?;

    let spec = config.drone_spec();
    spec.validate()?;
    let link = config.link_geometry()?;
    let plan = build_scan_plan(link.receive_radius_km, &spec)?;
    let fleet = incident_fleet(
        repeater_count_area(area),
        repeater_chain_count(distance, &spec),
    );

    let report = IncidentReport {
        receive_radius_km: plan.receive_radius_km,
        scan_rings: plan.rings,
        first_side_km: plan.side_lengths_km[0],
        scan_path_km: plan.path_length_km,
        coverage_km2: plan.coverage_km2,
        area_repeaters: fleet.area_repeaters,
        chain_repeaters: fleet.chain_repeaters,
        relay_total: fleet.total_drones,
        surveillance_count: ssa_count(area, &plan, &spec, config.revisit_hours),
    };

    if json {
        return Ok(serde_json::to_string_pretty(&report).expect("plain structs serialize"));
    }
    Ok(format!(
        "receive_radius_km={}\nscan_rings={}\nfirst_side_km={}\nscan_path_km={}\n\
         coverage_km2={}\narea_repeaters={}\nchain_repeaters={}\nrelay_total={}\n\
         surveillance_count={}",
        report.receive_radius_km,
        report.scan_rings,
        report.first_side_km,
        report.scan_path_km,
        report.coverage_km2,
        report.area_repeaters,
        report.chain_repeaters,
        report.relay_total,
        report.surveillance_count,
    ))
}

fn cmd_budget(history: &Path, config: &RunConfig) -> Result<String, CliError> {
    let records = parse_fire_history(&read_text(history)?)?;
    let history = FireHistory::from_records(&records)?;

    let spec = config.drone_spec();
    spec.validate()?;
    let link = config.link_geometry()?;
    let plan = build_scan_plan(link.receive_radius_km, &spec)?;
    let budget = annual_budget(
        &history,
        &plan,
        &spec,
        config.service_cycle_hours,
        config.revisit_hours,
    );
    let total_cost = (budget.q3 + budget.q4) as f64 * spec.unit_cost_aud;

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "mean_area_km2",
            "mean_distance_km",
            "mean_duration_h",
            "qbar1",
            "qbar2",
            "q3",
            "q4",
            "ratio",
            "total_cost_aud",
        ])
        .expect("writing to memory cannot fail");
    writer
        .write_record([
            budget.mean_area_km2.to_string(),
            budget.mean_distance_km.to_string(),
            budget.mean_duration_h.to_string(),
            budget.qbar1.to_string(),
            budget.qbar2.to_string(),
            budget.q3.to_string(),
            budget.q4.to_string(),
            budget.ratio.map(|r| r.to_string()).unwrap_or_default(),
            total_cost.to_string(),
        ])
        .expect("writing to memory cannot fail");
    Ok(String::from_utf8(writer.into_inner().expect("memory writer")).expect("CSV is UTF-8"))
}

fn cmd_forecast(
    series: &Path,
    season_length: usize,
    horizon: u64,
    config: &RunConfig,
) -> Result<String, CliError> {
    let rows = parse_series(&read_text(series)?)?;
    let counts: Vec<f64> = rows.iter().map(|row| row.count).collect();
    let series = SeasonalSeries::new(counts, season_length)?;

    let fit = hw_fit(&series, config.forecast_grid_step)?;
    let init = hw_init(&series)?;
    let smoothed = hw_smooth(&series, &fit.params, &init);
    let last = smoothed
        .states
        .last()
        .expect("a fittable series smooths to at least one state");

    eprintln!(
        "fit: alpha={} beta={} gamma={} rmse={}",
        fit.params.alpha(),
        fit.params.beta(),
        fit.params.gamma(),
        fit.rmse
    );

    let mut out = String::from("horizon_k,forecast\n");
    for k in 1..=horizon {
        out.push_str(&format!("{k},{}\n", hw_forecast(last, k)));
    }
    Ok(out)
}

fn cmd_fire_mask(
    image: &Path,
    geo: &Path,
    mask_out: &Path,
    grid_out: &Path,
    config: &RunConfig,
) -> Result<String, CliError> {
    let frame = load_rgb_png(&read_bytes(image)?)?;
    let transform = parse_geo_sidecar(&read_text(geo)?)?;

    let mask = in_range_mask(&frame, &config.hsv_thresholds(), transform);
    let cover = grid_cover(&mask);

    write_file(mask_out, &encode_mask_png(&mask)?)?;
    write_file(grid_out, cover.to_csv().as_bytes())?;

    Ok(format!(
        "fire_pixels={} area_km2={} covered_cells_q1={}",
        mask.fire_pixel_count(),
        mask.area_km2(),
        cover.covered_cell_count()
    ))
}

fn cmd_deploy(
    grid: &Path,
    eoc_lat: f64,
    eoc_lon: f64,
    origin_lat: f64,
    origin_lon: f64,
    teams: Option<&Path>,
    config: &RunConfig,
) -> Result<String, CliError> {
    require_coordinate(eoc_lat, "--eoc-lat", 90.0)?;
    require_coordinate(eoc_lon, "--eoc-lon", 180.0)?;
    require_coordinate(origin_lat, "--origin-lat", 90.0)?;
    require_coordinate(origin_lon, "--origin-lon", 180.0)?;

    let cover = parse_grid_csv(&read_text(grid)?)?;
    let teams = match teams {
        Some(path) => parse_positions(&read_text(path)?)?,
        None => Vec::new(),
    };
    let spec = config.drone_spec();
    spec.validate()?;

    let transform = GeoTransform {
        origin: GeoPoint {
            latitude: origin_lat,
            longitude: origin_lon,
        },
        km_per_pixel: 1.0,
    };
    // A grid with no burning cells and no teams is no incident at all:
    // the plan is empty rather than a lone command-post marker.
    let eoc = if cover.covered_cell_count() == 0 && teams.is_empty() {
        None
    } else {
        Some(GeoPoint {
            latitude: eoc_lat,
            longitude: eoc_lon,
        })
    };
    let plan = plan_deployment(&cover, transform, eoc, &teams, &spec);
    Ok(emit_geojson(&plan))
}

fn cmd_sweep(
    parameter: &str,
    start: f64,
    stop: f64,
    step: f64,
    history: &Path,
    config: &RunConfig,
) -> Result<String, CliError> {
    let parameter = match parameter {
        "mean_area" => SweepParameter::MeanArea,
        "total_duration" => SweepParameter::TotalDuration,
        "radio_range" => SweepParameter::RadioRange,
        "hover_height" => SweepParameter::HoverHeight,
        other => {
            return Err(CliError::Input(format!(
                "unknown sweep parameter {other:?}; expected mean_area, \
                 total_duration, radio_range, or hover_height"
            )));
        }
    };

    let records = parse_fire_history(&read_text(history)?)?;
    let spec = config.drone_spec();
    spec.validate()?;
    let baseline = SweepBaseline {
        history: FireHistory::from_records(&records)?,
        spec,
        radio_range_km: config.radio_range_km()?,
        hover_height_km: config.hover_height_km,
        service_cycle_hours: config.service_cycle_hours,
        revisit_hours: config.revisit_hours,
    };
    let rows = run_sweep(
        &SweepSpec {
            parameter,
            start,
            stop,
            step,
        },
        &baseline,
    )?;
    Ok(emit_sweep_csv(&rows))
}
