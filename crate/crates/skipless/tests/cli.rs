//! End-to-end CLI checks: exit codes, witness output, format flags,
//! and the table-directory override.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_skipless")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn skipless")
}

fn run_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(bin()).args(args).env(key, value).output().expect("spawn skipless")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn build_construction_a_writes_expected_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("a2.json");
    let r = run(&["build", "--construction", "a", "--m", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&r), 0, "{}", stderr(&r));
    let dto: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(dto["m"], 2);
    assert_eq!(dto["k"], 3);
    assert_eq!(dto["patterns"].as_array().unwrap().len(), 3); // N = 6
    assert_eq!(dto["field_w"], 16);
}

#[test]
fn build_construction_c_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("c.json");
    let r = run(&[
        "build", "--construction", "c", "--m", "2", "--k", "6", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&r), 0);
    let dto: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // N = k + ceil(k/2) + 1 = 10, so 4 parity patterns.
    assert_eq!(dto["k"], 6);
    assert_eq!(dto["patterns"].as_array().unwrap().len(), 4);
}

#[test]
fn unsupported_order_is_a_domain_failure() {
    let r = run(&["build", "--construction", "sqs", "--v", "12"]);
    assert_eq!(code(&r), 1);
    assert!(stderr(&r).contains("order 12"), "{}", stderr(&r));
}

#[test]
fn out_of_range_parameters_are_usage_failures() {
    let r = run(&["build", "--construction", "a", "--m", "9"]);
    assert_eq!(code(&r), 2);
    let r = run(&["build", "--construction", "c", "--m", "2"]);
    assert_eq!(code(&r), 2, "missing --k");
    let r = run(&["verify", "--check", "mds", "/nonexistent/file.json"]);
    assert_eq!(code(&r), 2);
}

#[test]
fn verify_paths() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a.json");
    let sqs = tmp.path().join("sqs14.json");
    let baseline = tmp.path().join("bl.json");
    assert_eq!(code(&run(&["build", "--construction", "a", "--m", "2", "--out", a.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["build", "--construction", "sqs", "--v", "14", "--out", sqs.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["build", "--construction", "baseline", "--m", "2", "--out", baseline.to_str().unwrap()])), 0);

    let r = run(&["verify", "--check", "mds", a.to_str().unwrap()]);
    assert_eq!(code(&r), 0);
    assert!(stdout(&r).contains("mds: pass"));

    let r = run(&["verify", "--check", "sqs", sqs.to_str().unwrap()]);
    assert_eq!(code(&r), 0);
    assert!(stdout(&r).contains("sqs: pass"));

    let r = run(&["verify", "--check", "zero-skip", baseline.to_str().unwrap()]);
    assert_eq!(code(&r), 1);
    assert!(stderr(&r).contains("witness node 2 skip 4"), "{}", stderr(&r));

    let r = run(&["verify", "--check", "zero-skip", a.to_str().unwrap()]);
    assert_eq!(code(&r), 0);
}

#[test]
fn simulate_paths_and_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a.json");
    let fr = tmp.path().join("fr8.json");
    run(&["build", "--construction", "a", "--m", "2", "--out", a.to_str().unwrap()]);
    run(&["build", "--construction", "fr", "--v", "8", "--out", fr.to_str().unwrap()]);

    // Zero-skip repair of node 2 on the m=2 construction.
    let r = run(&["simulate", "--fail-node", "2", a.to_str().unwrap()]);
    assert_eq!(code(&r), 0, "{}", stderr(&r));
    let report: serde_json::Value = serde_json::from_str(&stdout(&r)).unwrap();
    assert_eq!(report["summary"]["total_skip"], 0);

    // Locality-two transfer on the 4x14 array code.
    let r = run(&["simulate", "--fail-node", "10", fr.to_str().unwrap()]);
    assert_eq!(code(&r), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&r)).unwrap();
    assert_eq!(report["summary"]["max_locality"], 2);
    assert_eq!(report["summary"]["total_skip"], 0);

    // Range check.
    let r = run(&["simulate", "--fail-node", "99", fr.to_str().unwrap()]);
    assert_eq!(code(&r), 2);

    // Parity columns have no repair scheme: domain failure.
    let r = run(&["simulate", "--fail-node", "4", a.to_str().unwrap()]);
    assert_eq!(code(&r), 1);
}

#[test]
fn sweep_paths() {
    // Zero-skip construction sweep: every row reads contiguously.
    let r = run(&["sweep", "--construction", "a", "--m", "3", "--format", "csv"]);
    assert_eq!(code(&r), 0);
    let text = stdout(&r);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[6], "0", "skip column in {line}");
        rows += 1;
    }
    assert_eq!(rows, 4 * 5); // 4 repairs, k+1 = 5 helpers each

    // Comparison table at m = 2.
    let r = run(&["sweep", "--compare", "--m", "2"]);
    assert_eq!(code(&r), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&r)).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows[0]["construction"], "baseline");
    assert_eq!(rows[0]["aggregate_skip"], 4);
    assert_eq!(rows[1]["construction"], "a");
    assert_eq!(rows[1]["aggregate_skip"], 0);

    // Design sweep with a worker pool: all 14 nodes locality two.
    let r = run(&["sweep", "--construction", "fr", "--v", "8", "--jobs", "4"]);
    assert_eq!(code(&r), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&r)).unwrap();
    assert_eq!(report["summary"]["rows"], 14);
    assert_eq!(report["summary"]["max_locality"], 2);
    assert_eq!(report["summary"]["max_skip"], 0);
}

#[test]
fn sweep_all_closure_orders_to_fifty_via_cli() {
    for v in [4u32, 8, 10, 14, 16, 20, 22, 26, 28, 32, 34, 38, 40, 44, 46] {
        let r = run(&["sweep", "--construction", "sqs", "--v", &v.to_string(), "--jobs", "2"]);
        assert_eq!(code(&r), 0, "v={v}: {}", stderr(&r));
        let report: serde_json::Value = serde_json::from_str(&stdout(&r)).unwrap();
        assert_eq!(report["summary"]["max_skip"], 0, "v={v}");
        if v > 4 {
            assert_eq!(report["summary"]["max_locality"], 2, "v={v}");
            assert!(report["skipped"].as_array().unwrap().is_empty());
        }
    }
}

#[test]
fn data_dir_override_is_honored() {
    let tmp = tempfile::tempdir().unwrap();
    // A valid override: copy the shipped assets.
    let assets = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for name in ["sqs14.json", "sqs26.json", "sqs34.json", "sqs38.json"] {
        std::fs::copy(assets.join(name), tmp.path().join(name)).unwrap();
    }
    let out = tmp.path().join("d26.json");
    let r = run_env(
        &["build", "--construction", "sqs", "--v", "26", "--out", out.to_str().unwrap()],
        "SKIPLESS_DATA_DIR",
        tmp.path(),
    );
    assert_eq!(code(&r), 0, "{}", stderr(&r));
    let dto: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(dto["v"], 26);

    // A missing directory is a usage error.
    let r = run_env(
        &["build", "--construction", "sqs", "--v", "26"],
        "SKIPLESS_DATA_DIR",
        &tmp.path().join("nope"),
    );
    assert_eq!(code(&r), 2);
}

#[test]
fn csv_and_json_formats_agree_on_totals() {
    let tmp = tempfile::tempdir().unwrap();
    let fr = tmp.path().join("fr22.json");
    run(&["build", "--construction", "fr", "--v", "22", "--out", fr.to_str().unwrap()]);
    let json = run(&["sweep", fr.to_str().unwrap()]);
    let csv = run(&["sweep", fr.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&json), 0);
    assert_eq!(code(&csv), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let csv_rows = stdout(&csv).lines().count() - 1; // header
    assert_eq!(report["rows"].as_array().unwrap().len(), csv_rows);
}
