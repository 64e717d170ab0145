//! Spherical geometry, hotspot clustering, and EOC assignment.
//!
//! All distances are great-circle (haversine) lengths on a sphere of
//! radius [`EARTH_RADIUS_KM`]. Hotspots are grouped into fires by
//! single-linkage: two detections within the clustering radius belong to
//! the same fire, and membership propagates transitively, so a chain of
//! nearby detections forms one cluster even when its endpoints are far
//! apart. Each cluster is then assigned to the eligible city that
//! minimizes the mean distance to the cluster's members.

use thiserror::Error;

use crate::ingest::{City, Hotspot};

/// Mean Earth radius in kilometres; every great-circle computation in
/// this crate uses exactly this value.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// A location in degrees latitude / longitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    /// Degrees north, in [-90, 90].
    pub latitude: f64,
    /// Degrees east, in [-180, 180].
    pub longitude: f64,
}

/// Great-circle distance between two points in kilometres.
///
/// Symmetric, zero for identical points, and never negative. The
/// intermediate sine term is clamped before `asin` so rounding can never
/// produce NaN for near-antipodal pairs.
pub fn haversine_km(a: GeoPoint, b: GeoPoint) -> f64 {
    let lat_a = a.latitude.to_radians();
    let lat_b = b.latitude.to_radians();
    let d_lat = (b.latitude - a.latitude).to_radians();
    let d_lon = (b.longitude - a.longitude).to_radians();

    let s = (d_lat / 2.0).sin().powi(2) + lat_a.cos() * lat_b.cos() * (d_lon / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_KM * s.sqrt().min(1.0).asin()
}

/// A group of hotspots treated as one fire.
#[derive(Debug, Clone, PartialEq)]
pub struct FireCluster {
    /// Member detections in input order; never empty.
    pub members: Vec<Hotspot>,
    /// Arithmetic mean of the member coordinates. Adequate for regional
    /// clusters; no antimeridian handling is attempted.
    pub centroid: GeoPoint,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]]; // path halving
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra != rb {
        parent[rb] = ra;
    }
}

/// Groups hotspots into fire clusters by single-linkage within
/// `radius_km`.
///
/// Two hotspots at distance <= `radius_km` share a cluster. Every hotspot
/// lands in exactly one cluster, and clusters are ordered by their first
/// member's position in the input.
///
/// # Panics
///
/// Panics if `radius_km` is not a positive finite number.
pub fn cluster_hotspots(hotspots: Vec<Hotspot>, radius_km: f64) -> Vec<FireCluster> {
    assert!(
        radius_km.is_finite() && radius_km > 0.0,
        "clustering radius must be positive and finite"
    );

    let n = hotspots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            if haversine_km(hotspots[i].point(), hotspots[j].point()) <= radius_km {
                union(&mut parent, i, j);
            }
        }
    }

    let mut slot_of_root: Vec<Option<usize>> = vec![None; n];
    let mut groups: Vec<Vec<Hotspot>> = Vec::new();
    for (i, hotspot) in hotspots.into_iter().enumerate() {
        let root = find(&mut parent, i);
        let slot = match slot_of_root[root] {
            Some(slot) => slot,
            None => {
                groups.push(Vec::new());
                slot_of_root[root] = Some(groups.len() - 1);
                groups.len() - 1
            }
        };
        groups[slot].push(hotspot);
    }

    groups
        .into_iter()
        .map(|members| {
            let n = members.len() as f64;
            let centroid = GeoPoint {
                latitude: members.iter().map(|h| h.latitude).sum::<f64>() / n,
                longitude: members.iter().map(|h| h.longitude).sum::<f64>() / n,
            };
            FireCluster { members, centroid }
        })
        .collect()
}

/// A fire cluster matched to its emergency operations centre.
#[derive(Debug, Clone, PartialEq)]
pub struct EocAssignment {
    /// The fire this assignment serves.
    pub cluster: FireCluster,
    /// The chosen host city.
    pub eoc: City,
    /// Mean distance from the cluster's members to the city, km.
    pub mean_distance_km: f64,
}

/// Errors raised during EOC assignment.
#[derive(Debug, Error)]
pub enum GeoError {
    /// No city passes the population floor, so nothing can host an EOC.
    #[error("no city with population >= {min_population} is available to host an EOC")]
    NoEligibleCity { min_population: u64 },
}

/// Assigns each fire cluster to the eligible city with the smallest mean
/// distance to the cluster's members.
///
/// Only cities with population >= `min_population` are eligible. Distance
/// ties break toward the lexicographically smaller city name, so output
/// never depends on input city order. Assignments are returned in cluster
/// order.
pub fn assign_eoc(
    clusters: Vec<FireCluster>,
    cities: &[City],
    min_population: u64,
) -> Result<Vec<EocAssignment>, GeoError> {
    let eligible: Vec<&City> = cities
        .iter()
        .filter(|c| c.population >= min_population)
        .collect();
    if eligible.is_empty() {
        return Err(GeoError::NoEligibleCity { min_population });
    }

    Ok(clusters
        .into_iter()
        .map(|cluster| {
            let mut best: Option<(f64, &City)> = None;
            for city in &eligible {
                let total: f64 = cluster
                    .members
                    .iter()
                    .map(|h| haversine_km(h.point(), city.point()))
                    .sum();
                let mean = total / cluster.members.len() as f64;
                let better = match best {
                    None => true,
                    Some((best_mean, best_city)) => {
                        mean < best_mean || (mean == best_mean && city.name < best_city.name)
                    }
                };
                if better {
                    best = Some((mean, city));
                }
            }
            let (mean_distance_km, city) = best.expect("eligible city list is non-empty");
            EocAssignment {
                cluster,
                eoc: city.clone(),
                mean_distance_km,
            }
        })
        .collect())
}

fn unit_vector(p: GeoPoint) -> [f64; 3] {
    let lat = p.latitude.to_radians();
    let lon = p.longitude.to_radians();
    [lat.cos() * lon.cos(), lat.cos() * lon.sin(), lat.sin()]
}

fn from_unit_vector(v: [f64; 3]) -> GeoPoint {
    let horizontal = (v[0] * v[0] + v[1] * v[1]).sqrt();
    GeoPoint {
        latitude: v[2].atan2(horizontal).to_degrees(),
        longitude: v[1].atan2(v[0]).to_degrees(),
    }
}

fn slerp(a: [f64; 3], b: [f64; 3], fraction: f64) -> [f64; 3] {
    let dot = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0);
    let theta = dot.acos();
    let sin_theta = theta.sin();
    if sin_theta < 1e-12 {
        return b;
    }
    let wa = ((1.0 - fraction) * theta).sin() / sin_theta;
    let wb = (fraction * theta).sin() / sin_theta;
    [
        wa * a[0] + wb * b[0],
        wa * a[1] + wb * b[1],
        wa * a[2] + wb * b[2],
    ]
}

/// The point `fraction` of the way from `a` to `b` along the great
/// circle through them.
///
/// `fraction` 0 returns `a` exactly and 1 returns `b` exactly; values
/// outside [0, 1] are clamped. For an exactly antipodal pair the great
/// circle is ambiguous; the path is routed through an arbitrary but
/// deterministic waypoint perpendicular to `a`.
pub fn point_along(a: GeoPoint, b: GeoPoint, fraction: f64) -> GeoPoint {
    if fraction <= 0.0 {
        return a;
    }
    if fraction >= 1.0 {
        return b;
    }
    let va = unit_vector(a);
    let vb = unit_vector(b);
    let dot = va[0] * vb[0] + va[1] * vb[1] + va[2] * vb[2];
    if dot < -1.0 + 1e-12 {
        // Antipodal: pick a deterministic perpendicular waypoint and walk
        // the two quarter-arcs.
        let axis = if va[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let mut mid = [
            va[1] * axis[2] - va[2] * axis[1],
            va[2] * axis[0] - va[0] * axis[2],
            va[0] * axis[1] - va[1] * axis[0],
        ];
        let norm = (mid[0] * mid[0] + mid[1] * mid[1] + mid[2] * mid[2]).sqrt();
        mid = [mid[0] / norm, mid[1] / norm, mid[2] / norm];
        let v = if fraction <= 0.5 {
            slerp(va, mid, fraction * 2.0)
        } else {
            slerp(mid, vb, fraction * 2.0 - 1.0)
        };
        return from_unit_vector(v);
    }
    from_unit_vector(slerp(va, vb, fraction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;
    use proptest::prelude::*;

    fn hotspot(latitude: f64, longitude: f64) -> Hotspot {
        Hotspot {
            latitude,
            longitude,
            frp: 100.0,
            acq_date: NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(),
        }
    }

    fn city(name: &str, latitude: f64, longitude: f64, population: u64) -> City {
        City {
            name: name.to_string(),
            latitude,
            longitude,
            population,
        }
    }

    const MILDURA: GeoPoint = GeoPoint {
        latitude: -34.206,
        longitude: 142.136,
    };
    const HORSHAM: GeoPoint = GeoPoint {
        latitude: -36.716,
        longitude: 142.199,
    };

    #[test]
    fn haversine_is_zero_for_identical_points() {
        assert_eq!(haversine_km(MILDURA, MILDURA), 0.0);
    }

    #[test]
    fn haversine_matches_independent_references() {
        // Frozen values recomputed with an out-of-crate implementation of
        // the same formula at Earth radius 6371.0.
        assert!((haversine_km(MILDURA, HORSHAM) - 279.1575614072594).abs() < 1e-9);

        let melbourne = GeoPoint {
            latitude: -37.840,
            longitude: 144.946,
        };
        let ballarat = GeoPoint {
            latitude: -37.549,
            longitude: 143.850,
        };
        assert!((haversine_km(melbourne, ballarat) - 101.71645899995838).abs() < 1e-9);

        // One degree of longitude along the equator is R * pi / 180.
        let origin = GeoPoint {
            latitude: 0.0,
            longitude: 0.0,
        };
        let one_east = GeoPoint {
            latitude: 0.0,
            longitude: 1.0,
        };
        assert!((haversine_km(origin, one_east) - 111.19492664455873).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn haversine_is_symmetric_and_non_negative(
            lat_a in -85.0f64..85.0, lon_a in -170.0f64..170.0,
            lat_b in -85.0f64..85.0, lon_b in -170.0f64..170.0,
        ) {
            let a = GeoPoint { latitude: lat_a, longitude: lon_a };
            let b = GeoPoint { latitude: lat_b, longitude: lon_b };
            let ab = haversine_km(a, b);
            let ba = haversine_km(b, a);
            prop_assert!(ab >= 0.0);
            prop_assert!((ab - ba).abs() < 1e-9);
        }

        // Points are kept in one octant-sized region: near-antipodal
        // triples amplify rounding through asin far beyond the tolerance
        // and say nothing about regional planning geometry.
        #[test]
        fn haversine_satisfies_the_triangle_inequality(
            lat_a in -60.0f64..10.0, lon_a in 100.0f64..170.0,
            lat_b in -60.0f64..10.0, lon_b in 100.0f64..170.0,
            lat_c in -60.0f64..10.0, lon_c in 100.0f64..170.0,
        ) {
            let a = GeoPoint { latitude: lat_a, longitude: lon_a };
            let b = GeoPoint { latitude: lat_b, longitude: lon_b };
            let c = GeoPoint { latitude: lat_c, longitude: lon_c };
            prop_assert!(haversine_km(a, c) <= haversine_km(a, b) + haversine_km(b, c) + 1e-9);
        }
    }

    #[test]
    fn chained_detections_cluster_transitively() {
        // Three detections spaced ~15 km along the equator: each link is
        // inside a 20 km radius but the endpoints are ~30 km apart.
        let spots = vec![hotspot(0.0, 0.0), hotspot(0.0, 0.135), hotspot(0.0, 0.270)];
        let clusters = cluster_hotspots(spots.clone(), 20.0);
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].members.len(), 3);

        let clusters = cluster_hotspots(spots, 10.0);
        assert_eq!(clusters.len(), 3);
    }

    #[test]
    fn clusters_are_ordered_by_first_member_and_partition_the_input() {
        let spots = vec![
            hotspot(0.0, 0.0),    // cluster 0
            hotspot(-5.0, 10.0),  // cluster 1
            hotspot(0.0, 0.05),   // joins cluster 0
            hotspot(-5.0, 10.01), // joins cluster 1
        ];
        let clusters = cluster_hotspots(spots.clone(), 20.0);
        assert_eq!(clusters.len(), 2);
        assert_eq!(clusters[0].members[0], spots[0]);
        assert_eq!(clusters[0].members[1], spots[2]);
        assert_eq!(clusters[1].members[0], spots[1]);
        let total: usize = clusters.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn centroid_is_the_coordinate_mean() {
        let clusters = cluster_hotspots(vec![hotspot(0.0, 0.0), hotspot(0.1, 0.1)], 20.0);
        assert_eq!(clusters.len(), 1);
        assert!((clusters[0].centroid.latitude - 0.05).abs() < 1e-12);
        assert!((clusters[0].centroid.longitude - 0.05).abs() < 1e-12);
    }

    #[test]
    fn empty_input_yields_no_clusters() {
        assert!(cluster_hotspots(Vec::new(), 20.0).is_empty());
    }

    #[test]
    fn assignment_picks_the_closest_eligible_city() {
        let cities = vec![
            city("Far", 0.0, 10.0, 50_000),
            city("Near", 0.0, 1.0, 50_000),
            city("Huge but ineligible", 0.0, 0.1, 5_000),
        ];
        let clusters = cluster_hotspots(vec![hotspot(0.0, 0.0)], 20.0);
        let assignments = assign_eoc(clusters, &cities, 10_000).unwrap();
        assert_eq!(assignments[0].eoc.name, "Near");
    }

    #[test]
    fn exact_distance_ties_break_by_name() {
        // Both cities sit exactly one degree of longitude from the fire,
        // mirrored east/west, so the distances are bit-identical.
        let cities = vec![
            city("Zeta", 0.0, 1.0, 50_000),
            city("Alpha", 0.0, -1.0, 50_000),
        ];
        let clusters = cluster_hotspots(vec![hotspot(0.0, 0.0)], 20.0);
        let assignments = assign_eoc(clusters, &cities, 10_000).unwrap();
        assert_eq!(assignments[0].eoc.name, "Alpha");
    }

    #[test]
    fn hotspot_on_a_city_assigns_there_with_zero_distance() {
        let cities = vec![
            city("Mildura", -34.206, 142.136, 50_000),
            city("Horsham", -36.716, 142.199, 20_000),
        ];
        let clusters = cluster_hotspots(vec![hotspot(-34.206, 142.136)], 20.0);
        let assignments = assign_eoc(clusters, &cities, 10_000).unwrap();
        assert_eq!(assignments[0].eoc.name, "Mildura");
        assert_eq!(assignments[0].mean_distance_km, 0.0);
    }

    #[test]
    fn no_eligible_city_is_an_error_even_without_clusters() {
        let cities = vec![city("Tiny", 0.0, 0.0, 500)];
        let err = assign_eoc(Vec::new(), &cities, 10_000).unwrap_err();
        assert!(matches!(
            err,
            GeoError::NoEligibleCity {
                min_population: 10_000
            }
        ));
    }

    #[test]
    fn raising_the_floor_never_flips_surviving_assignments() {
        let cities = vec![
            city("A", 0.0, 1.0, 60_000),
            city("B", 0.5, 1.5, 25_000),
            city("C", -0.5, 0.5, 12_000),
        ];
        let spots = vec![hotspot(0.0, 0.9), hotspot(0.4, 1.4), hotspot(-0.4, 0.6)];
        let low = assign_eoc(cluster_hotspots(spots.clone(), 20.0), &cities, 10_000).unwrap();
        let high = assign_eoc(cluster_hotspots(spots, 20.0), &cities, 20_000).unwrap();
        for (a, b) in low.iter().zip(high.iter()) {
            if a.eoc.population >= 20_000 {
                assert_eq!(a.eoc.name, b.eoc.name);
            }
        }
    }

    #[test]
    fn point_along_hits_both_endpoints_exactly() {
        assert_eq!(point_along(MILDURA, HORSHAM, 0.0), MILDURA);
        assert_eq!(point_along(MILDURA, HORSHAM, 1.0), HORSHAM);
    }

    #[test]
    fn point_along_splits_distance_proportionally() {
        let total = haversine_km(MILDURA, HORSHAM);
        for k in 1..=9 {
            let fraction = k as f64 / 10.0;
            let p = point_along(MILDURA, HORSHAM, fraction);
            let from_a = haversine_km(MILDURA, p);
            assert!(
                (from_a - fraction * total).abs() < 1e-9,
                "fraction {fraction}: got {from_a}, want {}",
                fraction * total
            );
        }
    }

    #[test]
    fn point_along_stays_on_the_great_circle() {
        let va = unit_vector(MILDURA);
        let vb = unit_vector(HORSHAM);
        let normal = [
            va[1] * vb[2] - va[2] * vb[1],
            va[2] * vb[0] - va[0] * vb[2],
            va[0] * vb[1] - va[1] * vb[0],
        ];
        let p = unit_vector(point_along(MILDURA, HORSHAM, 0.37));
        let off_plane = normal[0] * p[0] + normal[1] * p[1] + normal[2] * p[2];
        assert!(off_plane.abs() < 1e-12);
    }

    #[test]
    fn point_along_handles_antipodes_without_nan() {
        let a = GeoPoint {
            latitude: 10.0,
            longitude: 20.0,
        };
        let b = GeoPoint {
            latitude: -10.0,
            longitude: -160.0,
        };
        let mid = point_along(a, b, 0.5);
        assert!(mid.latitude.is_finite() && mid.longitude.is_finite());
        // The full arc is half the circumference; asin near 1 is
        // ill-conditioned, so allow a metre-scale slack there.
        let half_circumference = EARTH_RADIUS_KM * std::f64::consts::PI;
        assert!((haversine_km(a, b) - half_circumference).abs() < 1e-3);
        // The quarter point sits a well-conditioned 45 degrees from `a`.
        let quarter = haversine_km(a, point_along(a, b, 0.25));
        assert!((quarter - half_circumference / 4.0).abs() < 1e-6);
    }
}
