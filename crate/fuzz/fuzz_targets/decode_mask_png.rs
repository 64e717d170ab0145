#![no_main]

use firefleet::firemask::{grid_cover, in_range_mask, load_rgb_png, GeoTransform, HsvThresholds};
use firefleet::geo::GeoPoint;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // The decoder must reject, never panic on, arbitrary bytes, and any
    // accepted image must segment and grid without panicking.
    let Ok(image) = load_rgb_png(data) else {
        return;
    };
    let geo = GeoTransform {
        origin: GeoPoint {
            latitude: -37.0,
            longitude: 146.0,
        },
        km_per_pixel: 0.25,
    };
    let mask = in_range_mask(&image, &HsvThresholds::default(), geo);
    let cover = grid_cover(&mask);
    assert!(cover.covered_cell_count() <= (cover.rows() * cover.cols()) as u64);
});
