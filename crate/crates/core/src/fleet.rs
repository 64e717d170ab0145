//! Drone capabilities, scan-pattern sizing, and fleet counts.
//!
//! A surveillance drone scans a fire by flying `m` concentric square
//! rings around a hover point: ring `i` has side `(4i - 2) * r`, where
//! `r` is the radius its radio serves on the ground. One full pass is
//! `8 m^2 r` kilometres of flight and observes a square of side `4 m r`
//! (the outer ring plus the strip `r` beyond it on each side), i.e.
//! `16 m^2 r^2` square kilometres. A plan picks the largest `m` whose
//! path fits in one battery charge.
//!
//! From a scan plan and a seasonal fire history this module derives four
//! counts: relay drones per incident, surveillance drones per incident,
//! and the two annual procurement totals after wear-out replacement.

use thiserror::Error;

/// Ground area one relay drone is budgeted to serve when sizing the
/// per-incident relay count; a 20 km x 20 km patch.
pub const RELAY_PATCH_AREA_KM2: f64 = 400.0;

/// Errors from fleet planning.
#[derive(Debug, Error)]
pub enum FleetError {
    /// A drone parameter is outside its meaningful range.
    #[error("invalid drone specification: {0}")]
    InvalidSpec(String),
    /// The receive radius is not a positive finite number.
    #[error("invalid receive radius: {0}")]
    InvalidRadius(String),
    /// Even a single scan ring is longer than one battery charge allows.
    #[error(
        "no scan pattern fits: one ring around a {receive_radius_km} km radius \
         needs {minimum_path_km} km of flight but a charge covers only \
         {path_limit_km} km"
    )]
    InfeasibleScan {
        receive_radius_km: f64,
        minimum_path_km: f64,
        path_limit_km: f64,
    },
    /// A fire history needs at least one fire.
    #[error("fire history is empty; at least one fire is required")]
    EmptyHistory,
    /// A fire history field is negative or not finite.
    #[error("invalid fire history: {0}")]
    InvalidHistory(String),
    /// Requested the relay-to-surveillance ratio when no surveillance
    /// drones are procured.
    #[error("procurement ratio is undefined: no surveillance drones are procured")]
    RatioUndefined,
}

/// Performance and cost parameters shared by every drone in the fleet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DroneSpec {
    /// Cruise speed, km/h.
    pub max_speed_kmh: f64,
    /// Flight time on one charge, hours.
    pub endurance_h: f64,
    /// Recharge time, hours.
    pub charge_h: f64,
    /// Repeater link range between relay drones, km.
    pub repeater_range_km: f64,
    /// Purchase price per drone, AUD.
    pub unit_cost_aud: f64,
}

impl Default for DroneSpec {
    fn default() -> Self {
        Self {
            max_speed_kmh: 72.0,
            endurance_h: 2.5,
            charge_h: 1.75,
            repeater_range_km: 20.0,
            unit_cost_aud: 10_000.0,
        }
    }
}

impl DroneSpec {
    /// Checks that every parameter is a positive finite number.
    pub fn validate(&self) -> Result<(), FleetError> {
        let positive = |value: f64, name: &str| {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(FleetError::InvalidSpec(format!(
                    "{name} must be positive, got {value}"
                )))
            }
        };
        positive(self.max_speed_kmh, "max speed")?;
        positive(self.endurance_h, "endurance")?;
        positive(self.charge_h, "charge time")?;
        positive(self.repeater_range_km, "repeater range")?;
        positive(self.unit_cost_aud, "unit cost")?;
        Ok(())
    }

    /// Distance one drone can fly on a single charge, km.
    pub fn path_limit_km(&self) -> f64 {
        self.max_speed_kmh * self.endurance_h
    }
}

/// Flight length of an `m`-ring scan around a radius-`r` hover point.
fn ring_path_km(rings: u64, receive_radius_km: f64) -> f64 {
    8.0 * (rings * rings) as f64 * receive_radius_km
}

/// A sized concentric-square scan pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPlan {
    /// Ground radius the drone's radio serves, km.
    pub receive_radius_km: f64,
    /// Number of concentric square rings flown per pass.
    pub rings: u32,
    /// Side length of each ring, innermost first, km.
    pub side_lengths_km: Vec<f64>,
    /// Area observed by one full pass, km^2.
    pub coverage_km2: f64,
    /// Flight length of one full pass, km.
    pub path_length_km: f64,
}

/// Sizes the largest scan pattern that fits in one battery charge.
///
/// The ring count `m` is the largest integer with
/// `8 m^2 r <= max_speed * endurance`. When even `m = 1` does not fit,
/// the scan is infeasible and an error reports both path lengths.
pub fn build_scan_plan(receive_radius_km: f64, spec: &DroneSpec) -> Result<ScanPlan, FleetError> {
    spec.validate()?;
    if !(receive_radius_km.is_finite() && receive_radius_km > 0.0) {
        return Err(FleetError::InvalidRadius(format!(
            "receive radius must be positive, got {receive_radius_km} km"
        )));
    }

    let limit = spec.path_limit_km();
    if ring_path_km(1, receive_radius_km) > limit {
        return Err(FleetError::InfeasibleScan {
            receive_radius_km,
            minimum_path_km: ring_path_km(1, receive_radius_km),
            path_limit_km: limit,
        });
    }

    // Start from the real root of 8 m^2 r = limit, then nudge in either
    // direction so rounding in sqrt can never leave m off by one.
    let mut rings = (limit / (8.0 * receive_radius_km)).sqrt().floor() as u64;
    rings = rings.max(1);
    while ring_path_km(rings + 1, receive_radius_km) <= limit {
        rings += 1;
    }
    while rings > 1 && ring_path_km(rings, receive_radius_km) > limit {
        rings -= 1;
    }

    // Build sides by accumulation: 2r and 4r are exact doublings, so
    // each ring's side is exactly the previous side plus 4r and adjacent
    // flight legs stay exactly 2r apart.
    let mut side_lengths_km = Vec::with_capacity(rings as usize);
    let mut side = 2.0 * receive_radius_km;
    for _ in 0..rings {
        side_lengths_km.push(side);
        side += 4.0 * receive_radius_km;
    }
    let outer_side = *side_lengths_km.last().expect("at least one ring");
    let observed_side = outer_side + 2.0 * receive_radius_km;

    Ok(ScanPlan {
        receive_radius_km,
        rings: rings as u32,
        side_lengths_km,
        coverage_km2: observed_side * observed_side,
        path_length_km: ring_path_km(rings, receive_radius_km),
    })
}

/// Rounds a non-negative count up to the next whole number.
fn ceil_count(x: f64) -> u64 {
    x.ceil() as u64
}

/// Number of surveillance drones that keep `area_km2` under observation
/// with at most `revisit_h` hours between passes.
///
/// Covering the area takes `area / coverage` passes of `endurance` hours
/// each, so `(endurance / revisit) * area / coverage` drones must be
/// airborne at once; doubling that keeps a fresh drone ready while its
/// partner recharges. Zero area needs zero drones.
///
/// # Panics
///
/// Panics if `area_km2` is negative or not finite, or if `revisit_h` is
/// not a positive finite number.
pub fn ssa_count(area_km2: f64, plan: &ScanPlan, spec: &DroneSpec, revisit_h: f64) -> u64 {
    assert!(
        area_km2.is_finite() && area_km2 >= 0.0,
        "area must be non-negative and finite"
    );
    assert!(
        revisit_h.is_finite() && revisit_h > 0.0,
        "revisit interval must be positive and finite"
    );
    ceil_count(2.0 * (spec.endurance_h / revisit_h) * area_km2 / plan.coverage_km2)
}

/// Number of relay drones that blanket `area_km2` with radio coverage:
/// one per started [`RELAY_PATCH_AREA_KM2`] patch, plus one spare.
///
/// # Panics
///
/// Panics if `area_km2` is negative or not finite.
pub fn repeater_count_area(area_km2: f64) -> u64 {
    assert!(
        area_km2.is_finite() && area_km2 >= 0.0,
        "area must be non-negative and finite"
    );
    ceil_count(area_km2 / RELAY_PATCH_AREA_KM2) + 1
}

/// Number of relay drones that bridge `distance_km` back to the EOC:
/// one per started repeater-range hop. Zero distance needs no bridge.
///
/// # Panics
///
/// Panics if `distance_km` is negative or not finite, or if the spec's
/// repeater range is not positive.
pub fn repeater_chain_count(distance_km: f64, spec: &DroneSpec) -> u64 {
    assert!(
        distance_km.is_finite() && distance_km >= 0.0,
        "distance must be non-negative and finite"
    );
    assert!(
        spec.repeater_range_km.is_finite() && spec.repeater_range_km > 0.0,
        "repeater range must be positive and finite"
    );
    ceil_count(distance_km / spec.repeater_range_km)
}

/// Drones committed to one incident.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncidentFleet {
    /// Relay drones blanketing the fire area.
    pub area_repeaters: u64,
    /// Relay drones bridging the fire back to the EOC.
    pub chain_repeaters: u64,
    /// Total airframes committed, counting one recharging partner per
    /// airborne drone.
    pub total_drones: u64,
}

/// Combines relay counts into an incident fleet; the total doubles the
/// airborne count so every station keeps a charged partner.
pub fn incident_fleet(area_repeaters: u64, chain_repeaters: u64) -> IncidentFleet {
    IncidentFleet {
        area_repeaters,
        chain_repeaters,
        total_drones: 2 * (area_repeaters + chain_repeaters),
    }
}

/// One fire from a seasonal history table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FireRecord {
    /// Burned area, km^2.
    pub area_km2: f64,
    /// Hours the fire burned.
    pub duration_h: f64,
    /// Distance from the fire to its control point, km.
    pub distance_km: f64,
}

/// Aggregate statistics of one fire season.
#[derive(Debug, Clone, PartialEq)]
pub struct FireHistory {
    total_area_km2: f64,
    fire_count: u64,
    mean_distance_km: f64,
    total_duration_h: f64,
}

impl FireHistory {
    /// Builds a history from season-level aggregates.
    pub fn new(
        total_area_km2: f64,
        fire_count: u64,
        mean_distance_km: f64,
        total_duration_h: f64,
    ) -> Result<Self, FleetError> {
        if fire_count == 0 {
            return Err(FleetError::EmptyHistory);
        }
        let non_negative = |value: f64, name: &str| {
            if value.is_finite() && value >= 0.0 {
                Ok(())
            } else {
                Err(FleetError::InvalidHistory(format!(
                    "{name} must be non-negative and finite, got {value}"
                )))
            }
        };
        non_negative(total_area_km2, "total area")?;
        non_negative(mean_distance_km, "mean distance")?;
        non_negative(total_duration_h, "total duration")?;
        Ok(Self {
            total_area_km2,
            fire_count,
            mean_distance_km,
            total_duration_h,
        })
    }

    /// Builds a history by aggregating per-fire records.
    pub fn from_records(records: &[FireRecord]) -> Result<Self, FleetError> {
        if records.is_empty() {
            return Err(FleetError::EmptyHistory);
        }
        for (i, record) in records.iter().enumerate() {
            let non_negative = |value: f64, name: &str| {
                if value.is_finite() && value >= 0.0 {
                    Ok(())
                } else {
                    Err(FleetError::InvalidHistory(format!(
                        "fire {i}: {name} must be non-negative and finite, got {value}"
                    )))
                }
            };
            non_negative(record.area_km2, "area")?;
            non_negative(record.duration_h, "duration")?;
            non_negative(record.distance_km, "distance")?;
        }
        let n = records.len() as f64;
        Ok(Self {
            total_area_km2: records.iter().map(|r| r.area_km2).sum(),
            fire_count: records.len() as u64,
            mean_distance_km: records.iter().map(|r| r.distance_km).sum::<f64>() / n,
            total_duration_h: records.iter().map(|r| r.duration_h).sum(),
        })
    }

    /// Total burned area over the season, km^2.
    pub fn total_area_km2(&self) -> f64 {
        self.total_area_km2
    }

    /// Number of fires in the season.
    pub fn fire_count(&self) -> u64 {
        self.fire_count
    }

    /// Mean burned area per fire, km^2.
    pub fn mean_area_km2(&self) -> f64 {
        self.total_area_km2 / self.fire_count as f64
    }

    /// Mean distance from a fire to its control point, km.
    pub fn mean_distance_km(&self) -> f64 {
        self.mean_distance_km
    }

    /// Total hours of fire activity over the season.
    pub fn total_duration_h(&self) -> f64 {
        self.total_duration_h
    }

    /// Mean hours a fire burned.
    pub fn mean_duration_h(&self) -> f64 {
        self.total_duration_h / self.fire_count as f64
    }
}

/// Seasonal procurement derived from a fire history.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetPlan {
    /// Mean burned area per fire, km^2.
    pub mean_area_km2: f64,
    /// Mean fire-to-control-point distance, km.
    pub mean_distance_km: f64,
    /// Mean hours a fire burned.
    pub mean_duration_h: f64,
    /// Relay drones committed to the mean fire (airborne + partners).
    pub qbar1: u64,
    /// Surveillance drones committed to the mean fire.
    pub qbar2: u64,
    /// Wear-out replacements per season: flight hours divided by the
    /// service cycle, rounded up.
    pub service_multiplier: u64,
    /// Relay drones procured for the season.
    pub q3: u64,
    /// Surveillance drones procured for the season.
    pub q4: u64,
    /// `q3 / q4`, or `None` when no surveillance drones are procured.
    pub ratio: Option<f64>,
}

/// Sizes a season's procurement from the mean fire.
///
/// The mean fire's relay fleet is `qbar1` (area blanket plus EOC chain,
/// doubled for recharge partners) and its surveillance fleet is `qbar2`.
/// Airframes wear out after `service_cycle_h` flight hours, so both
/// counts scale by the season's total fire hours divided by the cycle,
/// rounded up.
///
/// # Panics
///
/// Panics if `service_cycle_h` or `revisit_h` is not a positive finite
/// number.
pub fn annual_budget(
    history: &FireHistory,
    plan: &ScanPlan,
    spec: &DroneSpec,
    service_cycle_h: f64,
    revisit_h: f64,
) -> BudgetPlan {
    assert!(
        service_cycle_h.is_finite() && service_cycle_h > 0.0,
        "service cycle must be positive and finite"
    );

    let mean_area_km2 = history.mean_area_km2();
    let mean_distance_km = history.mean_distance_km();
    let qbar1 =
        2 * (repeater_count_area(mean_area_km2) + repeater_chain_count(mean_distance_km, spec));
    let qbar2 = ssa_count(mean_area_km2, plan, spec, revisit_h);
    let service_multiplier = ceil_count(history.total_duration_h() / service_cycle_h);
    let q3 = qbar1 * service_multiplier;
    let q4 = qbar2 * service_multiplier;
    BudgetPlan {
        mean_area_km2,
        mean_distance_km,
        mean_duration_h: history.mean_duration_h(),
        qbar1,
        qbar2,
        service_multiplier,
        q3,
        q4,
        ratio: if q4 == 0 {
            None
        } else {
            Some(q3 as f64 / q4 as f64)
        },
    }
}

/// Relay-to-surveillance procurement ratio `q3 / q4`.
///
/// Errors when `q4` is zero, where the ratio is undefined.
pub fn procurement_ratio(q3: u64, q4: u64) -> Result<f64, FleetError> {
    if q4 == 0 {
        return Err(FleetError::RatioUndefined);
    }
    Ok(q3 as f64 / q4 as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn default_plan_at(radius: f64) -> ScanPlan {
        build_scan_plan(radius, &DroneSpec::default()).unwrap()
    }

    // Ground radius for a 2 km radio range at a 0.5 km hover.
    const RADIUS: f64 = 1.9364916731037085;

    #[test]
    fn scan_plan_sizes_three_rings_for_the_default_drone() {
        let plan = default_plan_at(RADIUS);
        assert_eq!(plan.rings, 3);
        assert_eq!(plan.side_lengths_km.len(), 3);
        for (i, side) in plan.side_lengths_km.iter().enumerate() {
            let expected = (4 * (i + 1) - 2) as f64 * RADIUS;
            assert!((side - expected).abs() < 1e-12);
        }
        // One pass is 8 * 9 * r km of flight, inside the 180 km charge.
        assert!((plan.path_length_km - 139.42740046346898).abs() < 1e-9);
        assert!(plan.path_length_km <= 180.0);
        // The observed square has side 4 m r, so area 16 m^2 r^2.
        let oracle = 16.0 * 9.0 * RADIUS * RADIUS;
        assert!((plan.coverage_km2 - oracle).abs() < 1e-9);
        assert!((plan.coverage_km2 - 540.0).abs() < 1e-6);
    }

    #[test]
    fn ring_count_boundary_is_inclusive() {
        // 8 * 9 * 2.5 = 180 exactly: three rings still fit.
        let plan = default_plan_at(2.5);
        assert_eq!(plan.rings, 3);
        assert_eq!(plan.path_length_km, 180.0);

        // 8 * 1 * 22.5 = 180 exactly: a single ring still fits.
        let plan = default_plan_at(22.5);
        assert_eq!(plan.rings, 1);

        // Just past the single-ring boundary nothing fits.
        let err = build_scan_plan(22.500001, &DroneSpec::default()).unwrap_err();
        assert!(matches!(err, FleetError::InfeasibleScan { .. }));

        // A 30 km radius needs a 240 km single ring against a 180 km
        // charge, so the error carries both figures.
        match build_scan_plan(30.0, &DroneSpec::default()).unwrap_err() {
            FleetError::InfeasibleScan {
                receive_radius_km,
                minimum_path_km,
                path_limit_km,
            } => {
                assert_eq!(receive_radius_km, 30.0);
                assert_eq!(minimum_path_km, 240.0);
                assert_eq!(path_limit_km, 180.0);
            }
            other => panic!("wrong error: {other:?}"),
        }
    }

    #[test]
    fn scan_plan_rejects_bad_inputs() {
        assert!(build_scan_plan(0.0, &DroneSpec::default()).is_err());
        assert!(build_scan_plan(f64::NAN, &DroneSpec::default()).is_err());
        let bad_spec = DroneSpec {
            endurance_h: 0.0,
            ..DroneSpec::default()
        };
        assert!(matches!(
            build_scan_plan(1.0, &bad_spec),
            Err(FleetError::InvalidSpec(_))
        ));
    }

    #[test]
    fn surveillance_count_scales_with_area() {
        let plan = default_plan_at(RADIUS);
        let spec = DroneSpec::default();
        assert_eq!(ssa_count(0.0, &plan, &spec, 0.5), 0);
        // 10 * 135 / 540 = 2.5 passes-equivalent rounds up to 3 drones.
        assert_eq!(ssa_count(135.0, &plan, &spec, 0.5), 3);
        // Exactly one coverage area per revisit slice: 10 drones.
        assert_eq!(ssa_count(540.0, &plan, &spec, 0.5), 10);
    }

    #[test]
    fn relay_blanket_count_includes_the_spare() {
        assert_eq!(repeater_count_area(0.0), 1);
        assert_eq!(repeater_count_area(400.0), 2);
        assert_eq!(repeater_count_area(401.0), 3);
        assert_eq!(repeater_count_area(600.0), 3);
    }

    #[test]
    fn chain_count_is_hops_to_the_eoc() {
        let spec = DroneSpec::default();
        assert_eq!(repeater_chain_count(0.0, &spec), 0);
        assert_eq!(repeater_chain_count(20.0, &spec), 1);
        assert_eq!(repeater_chain_count(40.0, &spec), 2);
        assert_eq!(repeater_chain_count(50.5, &spec), 3);
    }

    #[test]
    fn incident_fleet_doubles_for_recharge_partners() {
        let fleet = incident_fleet(2, 3);
        assert_eq!(fleet.area_repeaters, 2);
        assert_eq!(fleet.chain_repeaters, 3);
        assert_eq!(fleet.total_drones, 10);
    }

    #[test]
    fn history_aggregates_records() {
        let records = vec![
            FireRecord {
                area_km2: 10.0,
                duration_h: 4.0,
                distance_km: 30.0,
            },
            FireRecord {
                area_km2: 20.0,
                duration_h: 6.0,
                distance_km: 50.0,
            },
        ];
        let history = FireHistory::from_records(&records).unwrap();
        assert_eq!(history.total_area_km2(), 30.0);
        assert_eq!(history.fire_count(), 2);
        assert_eq!(history.mean_area_km2(), 15.0);
        assert_eq!(history.mean_distance_km(), 40.0);
        assert_eq!(history.total_duration_h(), 10.0);
        assert_eq!(history.mean_duration_h(), 5.0);
    }

    #[test]
    fn history_rejects_empty_and_negative_inputs() {
        assert!(matches!(
            FireHistory::from_records(&[]),
            Err(FleetError::EmptyHistory)
        ));
        assert!(matches!(
            FireHistory::new(600.0, 0, 50.5, 6000.0),
            Err(FleetError::EmptyHistory)
        ));
        let bad = FireRecord {
            area_km2: -1.0,
            duration_h: 0.0,
            distance_km: 0.0,
        };
        assert!(matches!(
            FireHistory::from_records(&[bad]),
            Err(FleetError::InvalidHistory(_))
        ));
        assert!(FireHistory::new(f64::INFINITY, 1, 0.0, 0.0).is_err());
    }

    #[test]
    fn seasonal_budget_matches_the_worked_example() {
        // A 92-fire season burning 600 km^2 over 6000 fire-hours, with
        // fires a mean 50.5 km from their control points.
        let history = FireHistory::new(600.0, 92, 50.5, 6000.0).unwrap();
        let spec = DroneSpec::default();
        let plan = default_plan_at(RADIUS);
        let budget = annual_budget(&history, &plan, &spec, 200.0, 0.5);

        // Mean fire: blanket 1 + spare, chain ceil(50.5 / 20) = 3,
        // doubled -> 10 relays; surveillance rounds up to 1.
        assert_eq!(budget.qbar1, 10);
        assert_eq!(budget.qbar2, 1);
        // 6000 fire-hours wear out ceil(6000 / 200) = 30 fleets.
        assert_eq!(budget.service_multiplier, 30);
        assert_eq!(budget.q3, 300);
        assert_eq!(budget.q4, 30);
        assert_eq!(budget.ratio, Some(10.0));
        assert!((budget.mean_area_km2 - 600.0 / 92.0).abs() < 1e-12);
        assert!((budget.mean_duration_h - 6000.0 / 92.0).abs() < 1e-12);
    }

    #[test]
    fn a_single_instantaneous_fire_needs_no_procurement() {
        let history = FireHistory::new(0.0, 1, 0.0, 0.0).unwrap();
        let spec = DroneSpec::default();
        let plan = default_plan_at(RADIUS);
        let budget = annual_budget(&history, &plan, &spec, 200.0, 0.5);
        assert_eq!(budget.qbar1, 2); // the spare relay and its partner
        assert_eq!(budget.qbar2, 0);
        assert_eq!(budget.service_multiplier, 0);
        assert_eq!(budget.q3, 0);
        assert_eq!(budget.q4, 0);
        assert_eq!(budget.ratio, None);
    }

    #[test]
    fn procurement_ratio_divides_or_errors() {
        let ratio = procurement_ratio(180, 135).unwrap();
        assert!((ratio - 4.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            procurement_ratio(1, 0),
            Err(FleetError::RatioUndefined)
        ));
    }

    proptest! {
        // The chosen ring count is maximal: it fits, and one more ring
        // would not.
        #[test]
        fn ring_count_is_the_largest_that_fits(radius in 0.01f64..22.5) {
            let spec = DroneSpec::default();
            let plan = build_scan_plan(radius, &spec).unwrap();
            let m = plan.rings as u64;
            let limit = spec.path_limit_km();
            prop_assert!(ring_path_km(m, radius) <= limit);
            prop_assert!(ring_path_km(m + 1, radius) > limit);
            prop_assert_eq!(plan.side_lengths_km.len(), plan.rings as usize);
        }

        // Rings nest without gaps: the innermost side is exactly 2r and
        // each ring sits exactly 4r outside its neighbour, bit for bit.
        #[test]
        fn ring_sides_step_by_exactly_four_radii(radius in 0.01f64..22.5) {
            let plan = build_scan_plan(radius, &DroneSpec::default()).unwrap();
            prop_assert_eq!(plan.side_lengths_km[0], 2.0 * radius);
            for pair in plan.side_lengths_km.windows(2) {
                prop_assert_eq!(pair[1], pair[0] + 4.0 * radius);
            }
        }

        // More area never means fewer drones.
        #[test]
        fn counts_grow_with_area(a in 0.0f64..5000.0, b in 0.0f64..5000.0) {
            let (small, large) = if a <= b { (a, b) } else { (b, a) };
            let plan = default_plan_at(RADIUS);
            let spec = DroneSpec::default();
            prop_assert!(
                ssa_count(small, &plan, &spec, 0.5) <= ssa_count(large, &plan, &spec, 0.5)
            );
            prop_assert!(repeater_count_area(small) <= repeater_count_area(large));
        }

        // The per-incident relay fleet always has the spare pair.
        #[test]
        fn mean_incident_relays_are_even_and_at_least_two(
            area in 0.0f64..5000.0,
            distance in 0.0f64..300.0,
            duration in 0.0f64..20000.0,
        ) {
            let history = FireHistory::new(area, 10, distance, duration).unwrap();
            let plan = default_plan_at(RADIUS);
            let spec = DroneSpec::default();
            let budget = annual_budget(&history, &plan, &spec, 200.0, 0.5);
            prop_assert!(budget.qbar1 >= 2);
            prop_assert_eq!(budget.qbar1 % 2, 0);
        }

        // The seasonal totals scale with wear: twice the fire-hours buys
        // at least as many and at most twice as many relays, because the
        // fleet-replacement multiplier itself at most doubles.
        #[test]
        fn doubling_fire_hours_at_most_doubles_relays(
            area in 0.0f64..5000.0,
            distance in 0.0f64..300.0,
            duration in 0.0f64..10000.0,
        ) {
            let plan = default_plan_at(RADIUS);
            let spec = DroneSpec::default();
            let base = FireHistory::new(area, 10, distance, duration).unwrap();
            let twice = FireHistory::new(area, 10, distance, 2.0 * duration).unwrap();
            let q3_base = annual_budget(&base, &plan, &spec, 200.0, 0.5).q3;
            let q3_twice = annual_budget(&twice, &plan, &spec, 200.0, 0.5).q3;
            prop_assert!(q3_base <= q3_twice);
            prop_assert!(q3_twice <= 2 * q3_base);
        }
    }
}
