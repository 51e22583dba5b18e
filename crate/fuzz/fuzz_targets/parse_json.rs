#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // The JSON parser must never panic, and accepted graphs must survive a
    // serialize/parse round trip unchanged.
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(graph) = freeway::io::parse_json(text) {
            let emitted = freeway::io::to_json(&graph);
            let reparsed = freeway::io::parse_json(&emitted).expect("emitted graphs re-parse");
            assert_eq!(reparsed, graph);
        }
    }
});
