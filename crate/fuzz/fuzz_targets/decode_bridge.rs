#![no_main]

use libfuzzer_sys::fuzz_target;

// The structural decoder and the highway census take arbitrary graphs; on
// anything that is not a well-formed chain they must return diagnostic
// errors, never panic or loop.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let graph = match freeway::io::parse_json(text) {
        Ok(g) => g,
        Err(_) => match freeway::io::parse_edgelist(text) {
            Ok(g) if g.vertex_count() <= 512 => g,
            _ => return,
        },
    };
    if graph.vertex_count() > 512 {
        return;
    }
    let _ = freeway::search::highways(&graph);
    let _ = freeway::search::girth(&graph);
    for n in 1..=3 {
        let _ = freeway::codec::decode_bridge_bits(&graph, n);
        let _ = freeway::codec::fingerprint(&graph, n);
    }
});
