#![no_main]

use firefleet::deploy::{emit_geojson, plan_deployment};
use firefleet::firemask::{parse_grid_csv, GeoTransform};
use firefleet::fleet::DroneSpec;
use firefleet::geo::GeoPoint;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Any accepted grid must plan and serialize without panicking.
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cover) = parse_grid_csv(text) else {
        return;
    };
    let geo = GeoTransform {
        origin: GeoPoint {
            latitude: -37.0,
            longitude: 146.0,
        },
        km_per_pixel: 1.0,
    };
    let eoc = GeoPoint {
        latitude: -37.5,
        longitude: 145.2,
    };
    let plan = plan_deployment(&cover, geo, Some(eoc), &[], &DroneSpec::default());
    let _ = emit_geojson(&plan);
});
