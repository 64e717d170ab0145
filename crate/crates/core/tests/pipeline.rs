//! End-to-end pipeline tests: raw input bytes in, emitted artifacts out,
//! crossing every module boundary the command-line tools cross.

use firefleet::deploy::{emit_geojson, plan_deployment};
use firefleet::firemask::{
    encode_mask_png, encode_rgb_png, grid_cover, in_range_mask, load_rgb_png, parse_geo_sidecar,
    parse_grid_csv, HsvThresholds, RgbImage,
};
use firefleet::fleet::{annual_budget, build_scan_plan, DroneSpec, FireHistory};
use firefleet::forecast::{hw_fit, hw_forecast, hw_init, hw_smooth, SeasonalSeries};
use firefleet::geo::GeoPoint;
use firefleet::ingest::{parse_fire_history, parse_positions, parse_series};
use firefleet::radio::receive_radius_km;

/// A 96x64 aerial frame at half a kilometre per pixel: one red burn
/// block, one yellow flame block, dark-green bush everywhere else.
fn synthetic_frame() -> RgbImage {
    let (width, height) = (96u32, 64u32);
    let mut pixels = vec![[10u8, 60, 20]; (width * height) as usize];
    for y in 0..height {
        for x in 0..width {
            let idx = (y * width + x) as usize;
            if (10..30).contains(&x) && (5..20).contains(&y) {
                pixels[idx] = [255, 0, 0];
            } else if (60..70).contains(&x) && (40..50).contains(&y) {
                pixels[idx] = [255, 255, 0];
            }
        }
    }
    RgbImage::new(width, height, pixels).unwrap()
}

#[test]
fn imagery_flows_to_a_deployment_plan() {
    let frame = synthetic_frame();

    // PNG encode/decode is lossless for 8-bit RGB.
    let png = encode_rgb_png(&frame).unwrap();
    let decoded = load_rgb_png(&png).unwrap();
    assert_eq!(decoded, frame);

    let geo =
        parse_geo_sidecar(r#"{"origin_lat": -37.0, "origin_lon": 146.0, "km_per_pixel": 0.5}"#)
            .unwrap();
    let mask = in_range_mask(&decoded, &HsvThresholds::default(), geo);

    // 20x15 red pixels plus 10x10 yellow pixels, quarter km^2 each.
    assert_eq!(mask.fire_pixel_count(), 400);
    assert!((mask.area_km2() - 100.0).abs() < 1e-12);

    // The mask's own PNG round-trips through the generic loader too.
    let mask_png = encode_mask_png(&mask).unwrap();
    assert_eq!(load_rgb_png(&mask_png).unwrap(), mask.to_rgb_image());

    // 48 km x 32 km of ground in 14.14 km cells: 3 rows by 4 columns.
    let cover = grid_cover(&mask);
    assert_eq!((cover.rows(), cover.cols()), (3, 4));
    let covered: Vec<(usize, usize)> = cover.covered_cells().collect();
    assert_eq!(covered, vec![(0, 0), (0, 1), (1, 2)]);

    // The CSV artifact reproduces the grid exactly.
    assert_eq!(parse_grid_csv(&cover.to_csv()).unwrap(), cover);

    let eoc = GeoPoint {
        latitude: -37.5,
        longitude: 145.2,
    };
    let teams = parse_positions("latitude,longitude\n-37.05,146.08\n-37.1,146.12\n").unwrap();
    let plan = plan_deployment(&cover, geo, Some(eoc), &teams, &DroneSpec::default());

    assert_eq!(plan.hover_points.len(), 3);
    assert_eq!(plan.overwatch_points.len(), 2);
    assert!(!plan.chain_points.is_empty());
    assert_eq!(plan.fleet.area_repeaters, 3);
    assert_eq!(plan.fleet.chain_repeaters, plan.chain_points.len() as u64);
    assert_eq!(
        plan.fleet.total_drones,
        2 * (3 + plan.chain_points.len() as u64)
    );

    // The GeoJSON carries every point once, tagged by role, in order.
    let geojson = emit_geojson(&plan);
    let doc: serde_json::Value = serde_json::from_str(&geojson).unwrap();
    assert_eq!(doc["type"], "FeatureCollection");
    let features = doc["features"].as_array().unwrap();
    let expected = plan.hover_points.len() + plan.chain_points.len() + 2 + 1;
    assert_eq!(features.len(), expected);
    let role_count = |role: &str| {
        features
            .iter()
            .filter(|f| f["properties"]["role"] == role)
            .count()
    };
    assert_eq!(role_count("hover"), 3);
    assert_eq!(role_count("chain"), plan.chain_points.len());
    assert_eq!(role_count("overwatch"), 2);
    assert_eq!(role_count("eoc"), 1);
    assert_eq!(
        features[0]["geometry"]["coordinates"],
        serde_json::json!([
            plan.hover_points[0].longitude,
            plan.hover_points[0].latitude
        ])
    );
}

#[test]
fn history_csv_flows_to_a_procurement_budget() {
    let records = parse_fire_history(
        "area_km2,duration_h,distance_km\n\
         150,180,40.5\n\
         250,240,60.5\n\
         200,180,50.5\n",
    )
    .unwrap();
    let history = FireHistory::from_records(&records).unwrap();
    assert_eq!(history.mean_area_km2(), 200.0);
    assert_eq!(history.mean_distance_km(), 50.5);
    assert_eq!(history.total_duration_h(), 600.0);

    let spec = DroneSpec::default();
    let radius = receive_radius_km(2.0, 0.5).unwrap();
    let plan = build_scan_plan(radius, &spec).unwrap();
    let budget = annual_budget(&history, &plan, &spec, 200.0, 0.5);

    // Mean fire: 2 area relays + 3 chain relays, doubled for recharge
    // partners; 4 scanners; 600 fire hours wear through 3 service
    // cycles of 200 h.
    assert_eq!(budget.qbar1, 10);
    assert_eq!(budget.qbar2, 4);
    assert_eq!(budget.service_multiplier, 3);
    assert_eq!(budget.q3, 30);
    assert_eq!(budget.q4, 12);
    assert_eq!(budget.ratio, Some(2.5));
    assert_eq!(budget.mean_duration_h, 200.0);
}

#[test]
fn count_series_flows_to_a_forecast() {
    let text = "period_label,count\n\
                2021-q1,12\n2021-q2,30\n2021-q3,24\n2021-q4,18\n\
                2022-q1,16\n2022-q2,34\n2022-q3,28\n2022-q4,22\n\
                2023-q1,20\n2023-q2,38\n2023-q3,32\n2023-q4,26\n";
    let rows = parse_series(text).unwrap();
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0].label, "2021-q1");

    let counts: Vec<f64> = rows.iter().map(|row| row.count).collect();
    let series = SeasonalSeries::new(counts, 4).unwrap();
    let fit = hw_fit(&series, 0.05).unwrap();
    assert!(fit.rmse.is_finite());

    // Four periods a year, steady growth year over year: every horizon
    // forecast is a positive, finite count.
    let init = hw_init(&series).unwrap();
    let smoothed = hw_smooth(&series, &fit.params, &init);
    let last = smoothed.states.last().unwrap();
    for k in 1..=4 {
        let ahead = hw_forecast(last, k);
        assert!(ahead.is_finite());
        assert!(ahead > 0.0, "horizon {k} forecast {ahead}");
    }
}
