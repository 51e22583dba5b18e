//! CLI half of the determinism & formats criterion: every invocation in
//! the corpus is byte-reproducible, emitted graphs re-parse, and the exit
//! code contract holds (0 success/pass, 1 usage or input error, 2
//! verification failure, 3 not found / not decodable).

use std::path::Path;
use std::process::{Command, Output};

fn freeway(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freeway"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_twice_and_compare(args: &[&str]) -> Output {
    let first = freeway(args);
    let second = freeway(args);
    assert_eq!(
        first.stdout, second.stdout,
        "stdout differs across runs for {args:?}"
    );
    assert_eq!(
        first.stderr, second.stderr,
        "stderr differs across runs for {args:?}"
    );
    assert_eq!(first.status.code(), second.status.code());
    first
}

#[test]
fn criterion_9_cli_determinism_and_exit_codes() {
    let dir = tempfile::tempdir().expect("temp dir");
    let host = dir.path().join("dead_end_1.json");
    let out = freeway(&["gadget", "--kind", "dead-end", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&host, &out.stdout).unwrap();
    let host = host.to_str().unwrap();

    let chain = dir.path().join("chain.json");
    let chain_out = freeway(&["family", "--type", "bridge", "--n", "2", "--bits", "10"]);
    assert_eq!(chain_out.status.code(), Some(0));
    std::fs::write(&chain, &chain_out.stdout).unwrap();
    let chain = chain.to_str().unwrap();

    let mut failures: Vec<String> = Vec::new();
    fn expect(failures: &mut Vec<String>, args: &[&str], code: i32) -> Vec<u8> {
        let out = run_twice_and_compare(args);
        if out.status.code() != Some(code) {
            failures.push(format!(
                "{args:?}: exit {:?}, expected {code}; stderr: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        out.stdout
    }

    // Builders: byte-stable, self-consistent formats.
    let edgelist = expect(&mut failures, &["gadget", "--kind", "bridge", "--n", "2", "--format", "edgelist"],
        0,
    );
    let lines = String::from_utf8(edgelist.clone()).unwrap();
    if lines.lines().count() != 6 {
        failures.push(format!("bridge(2) edge list has {} lines", lines.lines().count()));
    }
    for args in [
        ["gadget", "--kind", "drive-through", "--n", "2"].as_slice(),
        ["gadget", "--kind", "tower", "--k", "2", "--levels", "3"].as_slice(),
        ["gadget", "--kind", "pentagon", "--k", "3", "--format", "dot"].as_slice(),
        ["gadget", "--kind", "cycle", "--m", "6", "--format", "edgelist"].as_slice(),
        ["gadget", "--kind", "dead-end", "--n", "2", "--seed", "7"].as_slice(),
        ["family", "--type", "girth", "--k", "2", "--levels", "4", "--bits", "01"].as_slice(),
    ] {
        expect(&mut failures, args, 0);
    }

    // Emitted graphs re-parse.
    for (format_flag, format) in [("json", "json"), ("edgelist", "edgelist")] {
        let emitted = expect(&mut failures, &["family", "--type", "bridge", "--n", "1", "--bits", "011", "--format", format_flag],
            0,
        );
        let text = String::from_utf8(emitted).unwrap();
        let parsed = match format {
            "json" => freeway::io::parse(&text, freeway::Format::Json),
            _ => freeway::io::parse(&text, freeway::Format::EdgeList),
        };
        if parsed.is_err() {
            failures.push(format!("emitted {format} graph does not re-parse"));
        }
    }

    // Searches and decoding, including the not-found contract.
    let found_free = expect(&mut failures, &["find", "--pattern", "bridge", "--n", "1", "--host", host], 3);
    if found_free != b"free\n" {
        failures.push(format!(
            "freeness output was {:?}",
            String::from_utf8_lossy(&found_free)
        ));
    }
    expect(&mut failures, &["find", "--pattern", "cycle", "--m", "3", "--host", chain], 0);
    expect(&mut failures, &["decode", "--host", chain, "--n", "2"], 0);
    expect(&mut failures, &["decode", "--host", host, "--n", "1"], 3);
    expect(&mut failures, &["fingerprint", "--host", chain, "--n", "2"], 0);
    expect(&mut failures, &["girth", "--host", host], 0);
    expect(&mut failures, &["girth", "--host", host, "--at-most", "3"], 0);
    expect(&mut failures, &["girth", "--host", chain, "--at-most", "300"], 0);
    expect(&mut failures, &["highways", "--host", chain], 0);

    // Verification verbs: pass and fail exit codes.
    expect(&mut failures, &["rigidity", "--gadget", "dead-end", "--n", "1"], 0);
    expect(&mut failures, &["rigidity", "--n", "1", "--host", host], 2);
    expect(&mut failures, &["demo", "--type", "bridge", "--n", "1", "--length", "2"], 0);
    expect(&mut failures, &["demo", "--type", "girth", "--k", "2", "--levels", "4", "--length", "2"],
        0,
    );
    expect(&mut failures, &["merge-demo", "--bits-a", "01", "--bits-b", "01"], 0);
    expect(&mut failures, &["merge-demo", "--bits-a", "0", "--bits-b", "1"], 0);

    // Usage and input errors.
    expect(&mut failures, &["gadget", "--kind", "bridge", "--n", "0"], 1);
    expect(&mut failures, &["gadget", "--kind", "bridge"], 1);
    expect(&mut failures, &["nonsense-verb"], 1);
    expect(&mut failures, &["find", "--pattern", "bridge", "--n", "1", "--host", "/nonexistent.json"], 1);
    expect(&mut failures, &["merge-demo", "--bits-a", "0", "--bits-b", "01"], 1);

    // Worker pools must not change report bytes.
    let serial = expect(&mut failures, &["demo", "--type", "bridge", "--n", "1", "--length", "3", "--jobs", "1"],
        0,
    );
    let parallel = expect(&mut failures, &["demo", "--type", "bridge", "--n", "1", "--length", "3", "--jobs", "4"],
        0,
    );
    if serial != parallel {
        failures.push("demo output depends on --jobs".into());
    }

    // File outputs are byte-stable too.
    let sidecar_a = dir.path().join("layout_a.json");
    let sidecar_b = dir.path().join("layout_b.json");
    for (out_path, layout_path) in [("ga.json", &sidecar_a), ("gb.json", &sidecar_b)] {
        let out_file = dir.path().join(out_path);
        let status = freeway(&[
            "family",
            "--type",
            "girth",
            "--k",
            "2",
            "--levels",
            "4",
            "--bits",
            "10",
            "--out",
            out_file.to_str().unwrap(),
            "--layout-out",
            layout_path.to_str().unwrap(),
        ]);
        assert_eq!(status.status.code(), Some(0));
    }
    if read(dir.path(), "ga.json") != read(dir.path(), "gb.json")
        || std::fs::read(&sidecar_a).unwrap() != std::fs::read(&sidecar_b).unwrap()
    {
        failures.push("family file outputs differ across runs".into());
    }
    let decode_via_layout = expect(&mut failures, &[
            "decode",
            "--type",
            "girth",
            "--host",
            dir.path().join("ga.json").to_str().unwrap(),
            "--layout",
            sidecar_a.to_str().unwrap(),
        ],
        0,
    );
    if decode_via_layout != b"10\n" {
        failures.push("girth decode via sidecar did not round-trip".into());
    }

    if failures.is_empty() {
        println!("ACCEPTANCE 9 CLI determinism & exit codes: PASS");
    } else {
        println!("ACCEPTANCE 9 CLI determinism & exit codes: FAIL");
        for f in &failures {
            println!("  - {f}");
        }
    }
    assert!(failures.is_empty(), "{failures:?}");
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap()
}
