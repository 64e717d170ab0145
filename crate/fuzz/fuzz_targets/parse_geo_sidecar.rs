#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // The sidecar parser must reject, never panic on, arbitrary JSON.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = firefleet::firemask::parse_geo_sidecar(text);
    }
});
