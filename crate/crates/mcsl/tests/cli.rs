//! End-to-end tests of the command-line interface: payload shapes, exit
//! codes, output determinism, and the census cache.

use std::process::{Command, Output};

fn mcsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcsl"))
        .args(args)
        .env_remove("MCSL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn csl_command_reports_index_and_hnf() {
    let out = mcsl(&["csl", "--quat", "2,2,2,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["sigma"], 3);
    assert_eq!(v["hnf"].to_string(), "[[1,1,3],[0,2,2],[0,0,6]]");
    assert_eq!(v["ideal_hnf"][0].to_string(), "[1,1,1,3]");
}

#[test]
fn csl_command_accepts_half_and_paren_forms() {
    let a = mcsl(&["csl", "--quat", "1,1,1,0", "--half"]);
    let b = mcsl(&["csl", "--quat", "(1 1 1 0)"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn rot_command_identity() {
    let out = mcsl(&["rot", "--quat", "2,0,0,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["sigma"], 1);
    assert_eq!(
        v["matrix"].to_string(),
        r#"[["1","0","0"],["0","1","0"],["0","0","1"]]"#
    );
}

#[test]
fn rot_command_exact_rationals() {
    let out = mcsl(&["rot", "--quat", "2,2,2,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["sigma"], 3);
    assert_eq!(v["matrix"][0].to_string(), r#"["1/3","2/3","2/3"]"#);
}

#[test]
fn mcsl_command_decomposes() {
    let out = mcsl(&["mcsl", "--quats", "2,2,2,0;2,2,-2,0;2,4,0,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["sigma"], 45);
    assert_eq!(v["decomposition"][0]["p"], 3);
    assert_eq!(v["decomposition"][0]["alpha"], 2);
    assert_eq!(v["decomposition"][1]["p"], 5);
}

#[test]
fn gcld_and_lcrm_commands() {
    let out = mcsl(&["gcld", "--q1", "2,2,2,0", "--q2", "2,2,-2,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["norm"], 1);
    let out = mcsl(&["lcrm", "--q1", "2,2,2,0", "--q2", "2,2,-2,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["norm"], 9);
}

#[test]
fn census_f_rows_match_closed_form() {
    let out = mcsl(&["census", "f", "--max", "15"]);
    let v = stdout_json(&out);
    let rows: Vec<(i64, i64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["sigma"].as_i64().unwrap(), r["count"].as_i64().unwrap()))
        .collect();
    assert_eq!(
        rows,
        vec![
            (1, 1),
            (3, 4),
            (5, 6),
            (7, 8),
            (9, 12),
            (11, 12),
            (13, 14),
            (15, 24)
        ]
    );
    assert!(v.as_array().unwrap().iter().all(|r| r["match"] == true));
}

#[test]
fn census_csv_format() {
    let out = mcsl(&["census", "f", "--max", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "sigma,count,formula,match\n1,1,1,true\n3,4,4,true\n5,6,6,true\n"
    );
}

#[test]
fn census_f2_reports_anomaly_without_failing() {
    let out = mcsl(&[
        "census", "f2", "--prime", "3", "--power", "1", "--format", "csv",
    ]);
    assert!(out.status.success(), "anomalies are reported, not failures");
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "sigma,count,formula,match\n3,4,109/27,false\n");
}

#[test]
fn output_is_deterministic_across_runs_and_jobs() {
    let a = mcsl(&["census", "f", "--max", "31"]);
    let b = mcsl(&["census", "f", "--max", "31"]);
    let c = mcsl(&["census", "f", "--max", "31", "--jobs", "1"]);
    let d = mcsl(&["census", "f", "--max", "31", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(a.stdout, d.stdout);
}

#[test]
fn cache_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_mcsl"))
            .args(["census", "f", "--max", "21"])
            .env("MCSL_CACHE_DIR", dir.path())
            .output()
            .expect("binary runs")
    };
    let cold = run();
    assert!(cold.status.success());
    let cached = dir.path().join("f_max21_json");
    assert!(cached.exists(), "census payload is cached");
    let warm = run();
    assert_eq!(cold.stdout, warm.stdout, "cached and cold payloads agree");
    assert_eq!(std::fs::read(&cached).unwrap(), cold.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mcsl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mcsl(&["census", "f"]).status.code(), Some(2)); // missing --max
    assert_eq!(mcsl(&["csl", "--quat", "1,0,0"]).status.code(), Some(2));
    assert_eq!(mcsl(&["csl", "--quat", "1,0,0,0"]).status.code(), Some(2)); // mixed parity
    assert_eq!(mcsl(&["csl", "--quat", "2,2,0,0"]).status.code(), Some(2)); // even norm
    assert_eq!(mcsl(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(
        mcsl(&["census", "f2", "--prime", "4", "--power", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mcsl(&["census", "f2", "--prime", "3", "--power", "80"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mcsl(&["rot", "--quat", "2,2,2,0", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn help_exits_zero() {
    assert_eq!(mcsl(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_all_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = mcsl(&[
        "verify",
        "all",
        "--level",
        "desk",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["level"], "desk");
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);
    // one summary line per criterion on stderr
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(
        stderr.lines().filter(|l| l.starts_with("check")).count(),
        10
    );
    // the same report lands in --out
    let file = std::fs::read(&report_path).unwrap();
    assert_eq!(file, out.stdout);
}
