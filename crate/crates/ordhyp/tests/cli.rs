//! End-to-end tests of the `ordhyp` binary: construct/analyze round trips,
//! projection with the pigeonhole check, bound and table output, the verify
//! suite, and the exit-code contract (1 usage, 2 parse/validation, 3 math).

use std::path::Path;
use std::process::{Command, Output};

use ordhyp::bounds::REFERENCE_TABLE;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ordhyp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    bin().args(args).env(key, value).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out))
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}):\n{}", stdout(out)))
}

fn assert_code(out: &Output, expected: i32, context: &str) {
    assert_eq!(
        out.status.code(),
        Some(expected),
        "{context}: stdout {:?}, stderr {:?}",
        stdout(out),
        stderr(out)
    );
}

fn write_config(path: &Path, body: &str) {
    std::fs::write(path, body).expect("temp file is writable");
}

#[test]
fn construct_analyze_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().expect("temp dir");
    let a = dir.path().join("cube_a.json");
    let b = dir.path().join("cube_b.json");
    for path in [&a, &b] {
        let out = run(&["construct", "--family", "cube", "--out", path.to_str().unwrap()]);
        assert_code(&out, 0, "construct cube");
    }
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "two constructions of the same family must be byte-identical"
    );

    let report_file = dir.path().join("report.json");
    let to_file = run(&[
        "analyze",
        a.to_str().unwrap(),
        "--per-point",
        "--check-identities",
        "--out",
        report_file.to_str().unwrap(),
    ]);
    assert_code(&to_file, 0, "analyze cube to file");
    let to_stdout = run(&["analyze", a.to_str().unwrap(), "--per-point", "--check-identities"]);
    assert_code(&to_stdout, 0, "analyze cube to stdout");
    assert_eq!(
        std::fs::read_to_string(&report_file).unwrap(),
        stdout(&to_stdout),
        "file output and stdout output must be byte-identical"
    );

    let report = json(&to_stdout);
    assert_eq!(report["n"], 8);
    assert_eq!(report["d"], 3);
    assert_eq!(report["ordinary"], 8);
    assert_eq!(report["tau"]["3"], 8);
    assert_eq!(report["tau"]["4"], 12);
    assert_eq!(report["identities"]["trivcount"], true);
    assert_eq!(report["identities"]["bettercount"], true);
    assert_eq!(report["identities"]["ints"]["passed"], true);
    assert_eq!(report["per_point"], serde_json::json!([3, 3, 3, 3, 3, 3, 3, 3]));
    assert_eq!(report["backend"], "exact");
}

#[test]
fn analyze_output_is_thread_count_independent() {
    let dir = tempfile::tempdir().expect("temp dir");
    let cube = dir.path().join("cube.json");
    run(&["construct", "--family", "cube", "--out", cube.to_str().unwrap()]);
    let mut outputs = Vec::new();
    for threads in ["1", "2", "5"] {
        let out = run(&["analyze", cube.to_str().unwrap(), "--hyperplanes", "--threads", threads]);
        assert_code(&out, 0, "analyze with --threads");
        outputs.push(stdout(&out));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
}

#[test]
fn project_with_pigeonhole_check() {
    let dir = tempfile::tempdir().expect("temp dir");
    let cube = dir.path().join("cube.json");
    let planar = dir.path().join("planar.json");
    run(&["construct", "--family", "cube", "--out", cube.to_str().unwrap()]);
    let out = run(&[
        "project",
        cube.to_str().unwrap(),
        "--point",
        "0",
        "--check-pigeonhole",
        "--out",
        planar.to_str().unwrap(),
    ]);
    assert_code(&out, 0, "project cube from vertex 0");
    assert!(
        stderr(&out).contains("3·8 ≥ 8·3 (equality)"),
        "pigeonhole summary missing: {:?}",
        stderr(&out)
    );

    let analyzed = run(&["analyze", planar.to_str().unwrap()]);
    assert_code(&analyzed, 0, "analyze the projected set");
    let report = json(&analyzed);
    assert_eq!(report["n"], 7);
    assert_eq!(report["d"], 2);
    assert_eq!(report["ordinary"], 3);
}

#[test]
fn project_rejects_planar_input() {
    let dir = tempfile::tempdir().expect("temp dir");
    let planar = dir.path().join("planar.json");
    run(&["construct", "--family", "broken-fano", "--out", planar.to_str().unwrap()]);
    let out = run(&["project", planar.to_str().unwrap(), "--point", "0"]);
    assert_code(&out, 2, "projection needs d >= 3");
    assert!(stderr(&out).contains("dimension"), "stderr: {:?}", stderr(&out));
}

#[test]
fn analyze_rejects_duplicates_and_degeneracies() {
    let dir = tempfile::tempdir().expect("temp dir");

    let dup = dir.path().join("dup.json");
    write_config(
        &dup,
        r#"{"dim": 3, "label": "dup", "points": [["1","0","0","0"],["2","0","0","0"],
            ["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}"#,
    );
    let out = run(&["analyze", dup.to_str().unwrap()]);
    assert_code(&out, 2, "duplicate points are a parse error");
    assert!(stderr(&out).contains("duplicate"), "stderr: {:?}", stderr(&out));

    let degenerate = dir.path().join("degenerate.json");
    write_config(
        &degenerate,
        r#"{"dim": 3, "label": "collinear", "points": [["0","0","0","1"],["1","0","0","1"],
            ["2","0","0","1"],["0","1","0","1"],["0","0","1","1"],["1","1","1","1"]]}"#,
    );
    let rejected = run(&["analyze", degenerate.to_str().unwrap()]);
    assert_code(&rejected, 2, "degenerate input is rejected by default");

    let skipped = run(&["analyze", degenerate.to_str().unwrap(), "--skip-validation"]);
    assert_code(&skipped, 3, "identity failure after skipping validation");
    let report: serde_json::Value = serde_json::from_str(&stdout(&skipped)).expect("report JSON");
    assert_eq!(report["identities"]["trivcount"], false);
    assert_eq!(report["degenerate_subsets"], serde_json::json!([[0, 1, 2]]));
}

#[test]
fn float_and_comb_backends_analyze() {
    let dir = tempfile::tempdir().expect("temp dir");

    let x12 = dir.path().join("x12.json");
    let constructed = run(&[
        "construct",
        "--family",
        "polygon",
        "--n",
        "12",
        "--backend",
        "float",
        "--out",
        x12.to_str().unwrap(),
    ]);
    assert_code(&constructed, 0, "construct float polygon");
    let float_report = json(&run(&["analyze", x12.to_str().unwrap()]));
    assert_eq!(float_report["ordinary"], 6);
    assert_eq!(float_report["backend"], "float");

    let p11 = dir.path().join("p11.json");
    let constructed = run(&[
        "construct",
        "--family",
        "prism",
        "--n",
        "11",
        "--variant",
        "2",
        "--backend",
        "comb",
        "--out",
        p11.to_str().unwrap(),
    ]);
    assert_code(&constructed, 0, "construct comb prism");
    let comb_report = json(&run(&["analyze", p11.to_str().unwrap()]));
    assert_eq!(comb_report["ordinary"], 31);
    assert_eq!(comb_report["backend"], "comb");

    let per_point = run(&["analyze", p11.to_str().unwrap(), "--per-point"]);
    assert_code(&per_point, 2, "per-point needs coordinates");
}

#[test]
fn eps_flag_and_environment_variable() {
    let dir = tempfile::tempdir().expect("temp dir");
    let x12 = dir.path().join("x12.json");
    run(&[
        "construct",
        "--family",
        "polygon",
        "--n",
        "12",
        "--backend",
        "float",
        "--out",
        x12.to_str().unwrap(),
    ]);

    let via_env = run_env(&["analyze", x12.to_str().unwrap()], "ORDHYP_EPS", "1e-9");
    assert_code(&via_env, 0, "eps from the environment");
    assert_eq!(json(&via_env)["ordinary"], 6);

    let bad_env = run_env(&["analyze", x12.to_str().unwrap()], "ORDHYP_EPS", "banana");
    assert_code(&bad_env, 2, "unparseable ORDHYP_EPS");

    let flag_wins =
        run_env(&["analyze", x12.to_str().unwrap(), "--eps", "1e-7"], "ORDHYP_EPS", "banana");
    assert_code(&flag_wins, 0, "--eps overrides the environment");
    assert_eq!(json(&flag_wins)["ordinary"], 6);
}

#[test]
fn bound_command_emits_traces() {
    let lower = json(&run(&["bound", "--n", "8", "--d", "4"]));
    assert_eq!(lower["value"], 25);
    assert_eq!(lower["kind"], "lower");
    assert_eq!(lower["method"], "ip");
    assert_eq!(lower["trace"][0]["rule"], "ip-witness");
    assert_eq!(lower["trace"][0]["tau"]["5"], 9);

    let upper = json(&run(&["bound", "--n", "9", "--d", "5", "--kind", "upper"]));
    assert_eq!(upper["value"], 70);
    assert_eq!(upper["method"], "trivial");

    let chain = json(&run(&["bound", "--n", "13", "--d", "3", "--method", "project2"]));
    assert_eq!(chain["value"], 26);
    assert_eq!(chain["method"], "projection");

    let cs = json(&run(&["bound", "--n", "14", "--d", "2", "--method", "cs"]));
    assert_eq!(cs["value"], 7);
}

#[test]
fn bound_command_rejects_bad_combinations() {
    let upper_ip = run(&["bound", "--n", "8", "--d", "4", "--kind", "upper", "--method", "ip"]);
    assert_code(&upper_ip, 1, "upper bounds only support the best method");

    let cs_3space = run(&["bound", "--n", "10", "--d", "3", "--method", "cs"]);
    assert_code(&cs_3space, 2, "the planar bound needs d = 2");

    let out_of_range = run(&["bound", "--n", "3", "--d", "3"]);
    assert_code(&out_of_range, 2, "n must exceed d + 1");
}

#[test]
fn table_formats() {
    let md = run(&["table"]);
    assert_code(&md, 0, "markdown table");
    assert_eq!(stdout(&md), REFERENCE_TABLE);

    let csv = run(&["table", "--format", "csv"]);
    assert_code(&csv, 0, "csv table");
    let csv_text = stdout(&csv);
    assert!(csv_text.starts_with("n,d=2,d=3,d=4,d=5,d=6,d=7\n"));
    assert_eq!(csv_text.lines().count(), 11);

    let json_out = run(&["table", "--format", "json"]);
    assert_code(&json_out, 0, "json table");
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json_out)).expect("valid JSON");
    assert_eq!(parsed["columns"], serde_json::json!([2, 3, 4, 5, 6, 7]));
    assert_eq!(parsed["rows"].as_array().map(Vec::len), Some(10));
}

#[test]
fn verify_command() {
    let table_only = run(&["verify", "--only", "table"]);
    assert_code(&table_only, 0, "verify table");
    let text = stdout(&table_only);
    assert!(text.contains("ok   table"), "output: {text}");
    assert!(text.contains("reference:"), "output: {text}");
    assert!(text.contains("1 checks run, 0 failed"), "output: {text}");

    let with_properties = run(&["verify", "--only", "cube", "--properties", "--seed", "5"]);
    assert_code(&with_properties, 0, "verify with the property suite");
    assert!(stdout(&with_properties).contains("seed 5"));

    let unknown = run(&["verify", "--only", "nonsense"]);
    assert_code(&unknown, 2, "unknown check name");
    assert!(stderr(&unknown).contains("available:"));
}

#[test]
fn usage_errors_exit_one() {
    assert_code(&run(&[]), 1, "missing subcommand");
    assert_code(&run(&["bound", "--n", "8"]), 1, "missing required flag");
    assert_code(&run(&["analyze"]), 1, "missing input path");
    assert_code(&run(&["construct", "--family", "cube", "--n", "9"]), 1, "flag misuse");
    assert_code(&run(&["--help"]), 0, "help is not an error");
}
