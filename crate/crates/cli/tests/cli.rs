use std::io::Write;
use std::process::{Command, Output, Stdio};

fn unipos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unipos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn unipos_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_unipos"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

const TEMPORAL_RATE_355: &str =
    r#"{"neuron_count":3,"slot_count":24,"spikes":[[3,4,5,6,7],[12,13,14,15],[21,22,23]]}"#;

#[test]
fn encodes_worked_example() {
    let out = unipos(&[
        "encode",
        "--scheme",
        "unary-positional",
        "--n",
        "8",
        "--value",
        "355",
        "--format",
        "text",
    ]);
    assert_eq!(stdout(&out), "01111001 01111000 00000111_u8\n");
    let out = unipos(&[
        "encode",
        "--scheme",
        "temporal-rate",
        "--n",
        "8",
        "--value",
        "355",
    ]);
    assert_eq!(stdout(&out).trim(), TEMPORAL_RATE_355);
    let out = unipos(&["encode", "--scheme", "positional", "--value", "355"]);
    assert_eq!(stdout(&out), "101100011_2\n");
    let out = unipos(&[
        "encode",
        "--scheme",
        "rate-unary",
        "--value",
        "0",
        "--slot-cap",
        "8",
    ]);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"neuron_count":1,"slot_count":8,"spikes":[[]]}"#
    );
}

#[test]
fn value_accepts_base_suffix() {
    let out = unipos(&[
        "encode",
        "--scheme",
        "unary-positional",
        "--n",
        "8",
        "--value",
        "101100011_2",
    ]);
    assert_eq!(stdout(&out), "01111001 01111000 00000111_u8\n");
}

#[test]
fn decodes_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("raster.json");
    std::fs::write(&path, TEMPORAL_RATE_355).unwrap();
    let out = unipos(&[
        "decode",
        "--scheme",
        "temporal-rate",
        "--n",
        "8",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out), "355\n");

    let octal_355 = r#"{"neuron_count":3,"slot_count":3,"spikes":[[0],[1],[2]]}"#;
    let out = unipos_stdin(
        &["decode", "--scheme", "temporal", "--base", "8"],
        octal_355,
    );
    assert_eq!(stdout(&out), "73\n");

    let out = unipos_stdin(
        &["decode", "--scheme", "unary-positional"],
        "01111001 01111000 00000111_u8",
    );
    assert_eq!(stdout(&out), "355\n");
}

#[test]
fn order_mode_decodes_round_trip() {
    let out = unipos_stdin(
        &[
            "decode",
            "--scheme",
            "temporal-rate",
            "--n",
            "8",
            "--mode",
            "order",
        ],
        TEMPORAL_RATE_355,
    );
    assert_eq!(stdout(&out), "355\n");
}

#[test]
fn overfull_window_needs_lenient() {
    let overfull = r#"{"neuron_count":2,"slot_count":4,"spikes":[[0,1],[2,3]]}"#;
    let out = unipos_stdin(
        &["decode", "--scheme", "temporal-rate", "--n", "2"],
        overfull,
    );
    assert_eq!(out.status.code(), Some(2));
    let out = unipos_stdin(
        &[
            "decode",
            "--scheme",
            "temporal-rate",
            "--n",
            "2",
            "--lenient",
        ],
        overfull,
    );
    assert_eq!(stdout(&out), "3\n");
}

#[test]
fn exit_codes() {
    let out = unipos_stdin(&["decode", "--scheme", "temporal"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = unipos(&[
        "decode",
        "--scheme",
        "temporal",
        "--input",
        "/definitely/missing.json",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = unipos(&["encode", "--scheme", "bogus", "--value", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = unipos(&[
        "sweep",
        "--scheme",
        "unary-positional",
        "--n",
        "8",
        "--k",
        "2",
        "--values",
        "sample:5",
        "--errors",
        "digit-flip",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "sampling without a seed is refused"
    );
}

#[test]
fn converts_between_forms() {
    assert_eq!(
        stdout(&unipos(&["convert", "--value", "355", "--to-base", "8"])),
        "543_8\n"
    );
    assert_eq!(
        stdout(&unipos(&["convert", "--value", "543_8", "--to-n", "8"])),
        "01111001 01111000 00000111_u8\n"
    );
    assert_eq!(
        stdout(&unipos(&[
            "convert",
            "--value",
            "01111001 01111000 00000111_u8"
        ])),
        "355\n"
    );
}

#[test]
fn inject_reports_impact() {
    let out = unipos(&[
        "inject",
        "--scheme",
        "unary-positional",
        "--n",
        "8",
        "--value",
        "355",
        "--event",
        "flip:2:2",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["original_value"], "355");
    assert_eq!(report["perturbed_value"], "291");
    assert_eq!(report["impact"], "-64");

    let out = unipos_stdin(
        &[
            "inject",
            "--scheme",
            "temporal-rate",
            "--n",
            "8",
            "--event",
            "shift:0:7:-7",
        ],
        TEMPORAL_RATE_355,
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["impact"], "0");
}

#[test]
fn sweep_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = unipos(&[
        "sweep",
        "--scheme",
        "unary-positional",
        "--n",
        "8",
        "--k",
        "3",
        "--values",
        "exhaustive",
        "--errors",
        "digit-flip",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(stdout(&out).is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["max_abs_impact"], "64");
    assert_eq!(report["trials"], 512 * 24);
    assert_eq!(report["seed"], serde_json::Value::Null);
}

#[test]
fn bench_reports() {
    let table = stdout(&unipos(&[
        "bench", "table1", "--bases", "2,10", "--digits", "1..6",
    ]));
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "base,digits,unary_length");
    assert_eq!(lines.len(), 13);
    assert!(lines.contains(&"10,6,1000000"));

    let tradeoff = stdout(&unipos(&[
        "bench",
        "tradeoff",
        "--values",
        "355",
        "--schemes",
        "rate-unary,temporal-2,temporal-rate-8",
    ]));
    assert!(tradeoff.contains("rate-unary,355,355,1,true"));
    assert!(tradeoff.contains("temporal-rate-8:3,24,12,64,true"));

    let measured = stdout(&unipos(&[
        "bench",
        "measure",
        "--value",
        "355",
        "--scheme",
        "temporal-rate-8",
        "--format",
        "json",
    ]));
    let rows: serde_json::Value = serde_json::from_str(&measured).unwrap();
    assert_eq!(rows[0]["latency"], "24");
}

#[test]
fn compare_outcomes() {
    let run = |scheme: &str, values: &str| {
        stdout(&unipos(&[
            "compare", "--scheme", scheme, "--base", "8", "--values", values,
        ]))
        .trim()
        .to_string()
    };
    assert_eq!(run("temporal", "137,256"), "AMBIGUOUS");
    assert_eq!(run("temporal", "8,256"), "LESS");
    assert_eq!(run("temporal-rate", "217,256"), "LESS");
    assert_eq!(run("temporal-rate", "355,355"), "EQUAL");
}
