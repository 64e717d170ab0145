#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // The configuration loader must reject, never panic on, arbitrary
    // documents; a parsed config is always internally consistent.
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(config) = firefleet::ingest::parse_config(text) {
            let _ = config.drone_spec().validate();
            let _ = config.hsv_thresholds().validate();
            let _ = config.link_geometry();
        }
    }
});
