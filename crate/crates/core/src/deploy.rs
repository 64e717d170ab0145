//! Concrete drone positions: hover lattice, relay chain, overwatch.
//!
//! A coverage grid becomes a lattice of hover stations, one at the
//! center of each covered cell, so that lattice neighbors (diagonals
//! included) stay within the repeater link range. A relay chain runs
//! from the EOC toward the fire's center of mass at one-link intervals,
//! with the last drone clamped onto the fire itself. Mobile overwatch
//! drones sit directly above firefighter teams.
//!
//! Positions are emitted as a GeoJSON FeatureCollection of points whose
//! `role` property distinguishes the four kinds of station.

use serde::Serialize;

use crate::firemask::{GeoTransform, GridCover};
use crate::fleet::{incident_fleet, repeater_chain_count, DroneSpec, IncidentFleet};
use crate::geo::{haversine_km, point_along, GeoPoint, EARTH_RADIUS_KM};

/// Kilometres per degree of latitude (and of longitude at the equator).
const KM_PER_DEGREE: f64 = EARTH_RADIUS_KM * std::f64::consts::PI / 180.0;

/// Every planned drone position for one incident.
#[derive(Debug, Clone, PartialEq)]
pub struct DeploymentPlan {
    /// One hovering relay per covered grid cell, row-major.
    pub hover_points: Vec<GeoPoint>,
    /// Relay chain from the EOC to the fire's center of mass.
    pub chain_points: Vec<GeoPoint>,
    /// One mobile drone above each firefighter team.
    pub overwatch_points: Vec<GeoPoint>,
    /// The EOC the chain starts from, when one is known.
    pub eoc: Option<GeoPoint>,
    /// Position counts with the charging reserve; the plan itself lists
    /// one position per airborne drone.
    pub fleet: IncidentFleet,
}

/// Places one hover station at the geographic center of each covered
/// cell, in row-major order.
///
/// Rows run south from the grid origin (the image's top-left corner)
/// and columns run east. Column offsets convert to longitude at the
/// origin's latitude, so cells keep their nominal east spacing near the
/// origin and shrink slightly as a southern-hemisphere grid grows
/// poleward; latitudes are clamped to the poles and longitudes wrap.
pub fn hover_lattice(cover: &GridCover, geo: GeoTransform) -> Vec<GeoPoint> {
    let cell = cover.cell_side_km();
    let origin = geo.origin;
    let east_scale = KM_PER_DEGREE * origin.latitude.to_radians().cos();

    cover
        .covered_cells()
        .map(|(row, col)| {
            let south_km = (row as f64 + 0.5) * cell;
            let east_km = (col as f64 + 0.5) * cell;
            let latitude = (origin.latitude - south_km / KM_PER_DEGREE).clamp(-90.0, 90.0);
            let longitude =
                (origin.longitude + east_km / east_scale + 180.0).rem_euclid(360.0) - 180.0;
            GeoPoint {
                latitude,
                longitude,
            }
        })
        .collect()
}

/// Places relay drones along the great circle from the EOC to the fire,
/// one per link range, with the last clamped onto the fire itself.
///
/// Returns `ceil(l / repeater_range)` points at distances
/// `min(i * range, l)` from the EOC; coincident endpoints need no chain.
pub fn chain_waypoints(eoc: GeoPoint, fire: GeoPoint, spec: &DroneSpec) -> Vec<GeoPoint> {
    let total_km = haversine_km(eoc, fire);
    let hops = repeater_chain_count(total_km, spec);
    (1..=hops)
        .map(|i| {
            let along_km = (i as f64 * spec.repeater_range_km).min(total_km);
            point_along(eoc, fire, along_km / total_km)
        })
        .collect()
}

/// One mobile overwatch drone directly above each team, order
/// preserved.
pub fn overwatch_points(teams: &[GeoPoint]) -> Vec<GeoPoint> {
    teams.to_vec()
}

/// Arithmetic mean of the stations' coordinates; `None` for no
/// stations.
fn center_of(points: &[GeoPoint]) -> Option<GeoPoint> {
    if points.is_empty() {
        return None;
    }
    let n = points.len() as f64;
    Some(GeoPoint {
        latitude: points.iter().map(|p| p.latitude).sum::<f64>() / n,
        longitude: points.iter().map(|p| p.longitude).sum::<f64>() / n,
    })
}

/// Assembles the full position plan for one incident.
///
/// The relay chain runs from `eoc` to the hover lattice's center of
/// mass; without an EOC, or without any covered cell to anchor the fire
/// end, no chain is planned. Fleet counts double the positions for the
/// charging reserve.
pub fn plan_deployment(
    cover: &GridCover,
    geo: GeoTransform,
    eoc: Option<GeoPoint>,
    teams: &[GeoPoint],
    spec: &DroneSpec,
) -> DeploymentPlan {
    let hover_points = hover_lattice(cover, geo);
    let chain_points = match (eoc, center_of(&hover_points)) {
        (Some(eoc), Some(fire)) => chain_waypoints(eoc, fire, spec),
        _ => Vec::new(),
    };
    let fleet = incident_fleet(hover_points.len() as u64, chain_points.len() as u64);
    DeploymentPlan {
        overwatch_points: overwatch_points(teams),
        hover_points,
        chain_points,
        eoc,
        fleet,
    }
}

#[derive(Serialize)]
struct Geometry {
    #[serde(rename = "type")]
    kind: &'static str,
    /// Longitude first, then latitude.
    coordinates: [f64; 2],
}

#[derive(Serialize)]
struct Properties {
    role: &'static str,
}

#[derive(Serialize)]
struct Feature {
    #[serde(rename = "type")]
    kind: &'static str,
    geometry: Geometry,
    properties: Properties,
}

#[derive(Serialize)]
struct FeatureCollection {
    #[serde(rename = "type")]
    kind: &'static str,
    features: Vec<Feature>,
}

fn feature(point: GeoPoint, role: &'static str) -> Feature {
    Feature {
        kind: "Feature",
        geometry: Geometry {
            kind: "Point",
            coordinates: [point.longitude, point.latitude],
        },
        properties: Properties { role },
    }
}

/// Serializes a plan as a GeoJSON FeatureCollection of points.
///
/// Features appear in a fixed order — hover, chain, overwatch, then the
/// EOC if known — each tagged with a `role` property, so identical plans
/// serialize byte-identically.
pub fn emit_geojson(plan: &DeploymentPlan) -> String {
    let mut features = Vec::new();
    features.extend(plan.hover_points.iter().map(|&p| feature(p, "hover")));
    features.extend(plan.chain_points.iter().map(|&p| feature(p, "chain")));
    features.extend(
        plan.overwatch_points
            .iter()
            .map(|&p| feature(p, "overwatch")),
    );
    if let Some(eoc) = plan.eoc {
        features.push(feature(eoc, "eoc"));
    }
    let collection = FeatureCollection {
        kind: "FeatureCollection",
        features,
    };
    serde_json::to_string_pretty(&collection).expect("plain structs always serialize")
}
