//! End-to-end tests of the command-line binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antichains"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[test]
fn hetero_basic() {
    let out = run(&["hetero", "5,5,10,10"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "210");

    let out = run(&["hetero", "10,10,10,100"]);
    assert_eq!(stdout(&out).trim(), "1000");

    let out = run(&["hetero", "--chain", "5", "--chain", "5", "--chain", "10", "--chain", "10"]);
    assert_eq!(stdout(&out).trim(), "210");
}

#[test]
fn hetero_both_methods_agree() {
    let out = run(&["hetero", "7", "--method=both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("formula=1"));
    assert!(text.contains("convolution=1"));
    assert!(text.contains("AGREE"));

    let out = run(&["hetero", "3,4,5", "--method=convolution"]);
    assert_eq!(stdout(&out).trim(), "11");
}

#[test]
fn hetero_usage_errors_exit_2() {
    for args in [
        &["hetero", "5,x"][..],
        &["hetero"][..],
        &["hetero", "5,5", "--chain", "3"][..],
        &["hetero", "5,0"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn homo_methods() {
    // exact value of Sander's formula; the published table prints a
    // float-corrupted 430438025018583040 for this entry
    let out = run(&["homo", "100", "10", "--method=sander"]);
    assert_eq!(stdout(&out).trim(), "430438025018576400");

    let out = run(&["homo", "5", "3", "--method=corollary"]);
    assert_eq!(stdout(&out).trim(), "19");

    let out = run(&["homo", "4", "2", "--method=theorem2"]);
    assert_eq!(stdout(&out).trim(), "4");

    let out = run(&["homo", "2", "4", "--method=all"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("AGREE"));
}

#[test]
fn homo_literal_eq5_flags_disagreement() {
    let out = run(&["homo", "2", "3", "--method=all", "--eq5=literal"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("sander=3"));
    assert!(text.contains("theorem2=1"));
    assert!(text.contains("DISAGREE"));
}

#[test]
fn homo_usage_errors() {
    let out = run(&["homo", "3", "7", "--method=corollary"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["homo", "1", "3", "--method=theorem2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gn_outputs() {
    let out = run(&["gn", "5", "--exact"]);
    assert_eq!(stdout(&out).trim(), "115/192");
    let out = run(&["gn", "2", "--exact"]);
    assert_eq!(stdout(&out).trim(), "1");
    let out = run(&["gn", "10", "--digits=17"]);
    assert_eq!(stdout(&out).trim(), "0.43041776895943563");
    // exact rendering; the published table prints 0.25104851499027436 here
    let out = run(&["gn", "30", "--digits=17"]);
    assert_eq!(stdout(&out).trim(), "0.25104851499056564");
    let out = run(&["gn", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn converge_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conv.csv");
    let out = run(&[
        "converge",
        "5",
        "--m-min-log2=1",
        "--m-max-log2=10",
        &format!("--out={}", path.display()),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,log2_m,ratio_decimal,g_decimal,deviation_decimal");
    assert_eq!(lines.len(), 11);
    let devs: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    let min = devs.iter().cloned().fold(f64::INFINITY, f64::min);
    assert_eq!(devs[devs.len() - 1], min, "last deviation must be smallest");
}

#[test]
fn converge_n2_ratios_are_one() {
    let out = run(&["converge", "2", "--m-max-log2=4"]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert!(fields[2].starts_with("1.000"));
        assert!(fields[4].starts_with("0.000"));
    }
}

#[test]
fn converge_n10_approaches_limit() {
    let out = run(&["converge", "10", "--m-max-log2=6", "--digits=6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let ratio: f64 = last.split(',').nth(2).unwrap().parse().unwrap();
    assert!((ratio - 0.430418).abs() < 0.05);
}

#[test]
fn check_corrected_fixture_passes() {
    let out = run(&["check", "--expected", fixture("table1_corrected.csv").to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("13/13 match"));

    let out = run(&["check", "--expected", fixture("table2_corrected.csv").to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("16/16 match"));
}

#[test]
fn check_published_fixtures_report_known_defects() {
    let out = run(&["check", "--expected", fixture("table1_published.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("11/13 match"), "{text}");
    assert!(text.contains("MISMATCH hetero(10,10,10,20)"));
    assert!(text.contains("MISMATCH homo(m=100,n=10)"));

    let out = run(&["check", "--expected", fixture("table2_published.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // fractions and the 16-digit n=7 decimal hold; the six other printed
    // decimals are float-contaminated
    assert!(stdout(&out).contains("6/12 match"), "{}", stdout(&out));
}

#[test]
fn check_corrupted_and_empty_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "hetero,\"5,5\",,5\nhetero,\"5,5,5\",,42\n").unwrap();
    let out = run(&["check", "--expected", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("1/2 match"));

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let out = run(&["check", "--expected", empty.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn verify_small_run_passes_with_json_report() {
    let out = run(&[
        "verify",
        "--max-product=100",
        "--max-n=4",
        "--max-m=6",
        "--random-shapes=3",
        "--seed=7",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["all_pass"], true);
    assert!(report["checks"].as_array().unwrap().len() >= 10);
    for check in report["checks"].as_array().unwrap() {
        for key in ["check_name", "params", "expected", "actual", "pass"] {
            assert!(check.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn stdout_is_deterministic() {
    let a = run(&["verify", "--max-product=60", "--max-n=3", "--max-m=4", "--random-shapes=2"]);
    let b = run(&["verify", "--max-product=60", "--max-n=3", "--max-m=4", "--random-shapes=2"]);
    assert_eq!(stdout(&a), stdout(&b));
}
