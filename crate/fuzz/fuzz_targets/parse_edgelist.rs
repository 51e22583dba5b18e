#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if text.len() > 4096 {
            return;
        }
        if let Ok(graph) = freeway::io::parse_edgelist(text) {
            let emitted = freeway::io::to_edgelist(&graph);
            let reparsed = freeway::io::parse_edgelist(&emitted).expect("emitted graphs re-parse");
            let edges: Vec<_> = graph.edges().collect();
            assert_eq!(reparsed.edges().collect::<Vec<_>>(), edges);
        }
    }
});
