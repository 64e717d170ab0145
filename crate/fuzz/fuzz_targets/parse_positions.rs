#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Table parsers must reject, never panic on, arbitrary text.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = firefleet::ingest::parse_positions(text);
    }
});
