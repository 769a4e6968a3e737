use std::fs;
use std::path::PathBuf;

use assert_cmd::Command;
use tempfile::TempDir;

fn rdmmse() -> Command {
    Command::cargo_bin("rdmmse").unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = rdmmse().args(args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn curve_bss_rows() {
    let out = stdout_of(&["curve", "--preset", "bss", "--s-grid", "0,1.0986122886681098"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("s,D,R_nats,mmse"));
    assert_eq!(lines.next(), Some("0,0.5,0,0.25"));
    let r = rows(&out);
    assert_eq!(r.len(), 2);
    assert!((num(&r[1][0]) - 3f64.ln()).abs() < 1e-11);
    assert_eq!(r[1][1], "0.25");
    assert!((num(&r[1][2]) - 0.130812035941).abs() < 1e-11);
    assert_eq!(r[1][3], "0.1875");
}

#[test]
fn curve_methods_agree() {
    let grid = "0.05:20:15log";
    let legendre = rows(&stdout_of(&[
        "curve", "--preset", "bss", "--s-grid", grid, "--method", "legendre",
    ]));
    for method in ["integral", "tail"] {
        let other = rows(&stdout_of(&[
            "curve", "--preset", "bss", "--s-grid", grid, "--method", method,
        ]));
        assert_eq!(other.len(), legendre.len());
        for (a, b) in legendre.iter().zip(&other) {
            assert_eq!(a[0], b[0]);
            assert!((num(&a[1]) - num(&b[1])).abs() < 1e-6, "{method}: {a:?} {b:?}");
            assert!((num(&a[2]) - num(&b[2])).abs() < 1e-6, "{method}: {a:?} {b:?}");
        }
    }
}

#[test]
fn curve_is_deterministic_and_writes_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.csv");
    let args = ["curve", "--preset", "fig1", "--s-grid", "0:3:7", "--method", "integral"];
    rdmmse().args(args).arg("--out").arg(&out).assert().success().stdout("");
    let first = fs::read(&out).unwrap();
    rdmmse().args(args).arg("--out").arg(&out).assert().success();
    assert_eq!(first, fs::read(&out).unwrap());
    assert_eq!(String::from_utf8(first).unwrap(), stdout_of(&args));
}

#[test]
fn curve_from_problem_file() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "p.json",
        r#"{"source": {"pmf": [0.5, 0.5]}, "reproduction": {"pmf": [0.5, 0.5]}, "distortion": {"kind": "hamming"}}"#,
    );
    let from_file = stdout_of(&["curve", "--input", path.to_str().unwrap(), "--s-grid", "0:4:9"]);
    assert_eq!(from_file, stdout_of(&["curve", "--preset", "bss", "--s-grid", "0:4:9"]));
}

#[test]
fn input_errors_exit_2() {
    rdmmse()
        .args(["curve", "--preset", "bss", "--s-grid", ""])
        .assert()
        .code(2);
    rdmmse()
        .args(["curve", "--preset", "bss", "--s-grid", "1,0.5"])
        .assert()
        .code(2);
    rdmmse().args(["curve", "--preset", "nope"]).assert().code(2);
    rdmmse().args(["curve", "--s-grid", "1"]).assert().code(2);
    rdmmse()
        .args(["curve", "--input", "/nonexistent/p.json"])
        .assert()
        .code(2);

    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.json", "{\"source\": ");
    rdmmse()
        .args(["curve", "--input", broken.to_str().unwrap()])
        .assert()
        .code(2);
    let bad_rows = write(
        &dir,
        "w.json",
        r#"{"input_pmf": [0.5, 0.5], "channel": [[0.9, 0.2], [0.1, 0.9]]}"#,
    );
    rdmmse()
        .args(["capacity", "--input", bad_rows.to_str().unwrap()])
        .assert()
        .code(2);
    rdmmse().args(["bounds", "--preset", "bss"]).assert().code(2);
}

#[test]
fn numerical_failure_exits_3() {
    rdmmse()
        .args([
            "curve", "--preset", "gauss", "--method", "integral", "--s-grid", "1,2", "--tol", "1e-300",
        ])
        .assert()
        .code(3);
}

#[test]
fn bounds_fig1() {
    let out = stdout_of(&["bounds", "--d-grid", "1.8,1.9,2"]);
    assert!(out.starts_with("D,R_L,R_U,R_SLB,R_numeric\n"));
    let r = rows(&out);
    assert!((num(&r[0][1]) - 0.004925).abs() < 1e-9);
    assert!((num(&r[0][2]) - 0.0051036575).abs() < 1e-9);
    assert_eq!(r[0][3], "");
    assert_eq!(r[2][1..3], ["0".to_string(), "0".to_string()]);
    for row in &r {
        let (lo, hi, numeric) = (num(&row[1]), num(&row[2]), num(&row[4]));
        assert!(lo <= numeric && numeric <= hi, "{row:?}");
    }
}

#[test]
fn bounds_default_grid_and_validity() {
    let r = rows(&stdout_of(&["bounds", "--preset", "fig1"]));
    assert_eq!(r.len(), 31);
    assert_eq!(r[0][0], "1.25");
    assert_eq!(r[30][0], "2");
    // R_L holds down to D_0 - 2/√3, R_U only down to D_0 - 4/(3√3).
    let r = rows(&stdout_of(&["bounds", "--d-grid", "0.5,0.9"]));
    assert_eq!(r[0][1..3], ["".to_string(), "".to_string()]);
    assert!(!r[1][1].is_empty());
    assert_eq!(r[1][2], "");
    // The Shannon lower bound is positive only below D = 1 here.
    assert!((num(&r[1][3]) - 0.5 * (1.0f64 / 0.9).ln()).abs() < 1e-3);
}

#[test]
fn capacity_bsc_and_identity() {
    let dir = TempDir::new().unwrap();
    let bsc = write(
        &dir,
        "bsc.json",
        r#"{"input_pmf": [0.5, 0.5], "channel": [[0.9, 0.1], [0.1, 0.9]]}"#,
    );
    let out = stdout_of(&["capacity", "--input", bsc.to_str().unwrap()]);
    assert!(out.starts_with("s,mmse,partial_integral\n"));
    let footer: Vec<&str> = out.lines().last().unwrap().split(',').collect();
    assert_eq!((footer[0], footer[2]), ("C_p", "I_XY"));
    assert!((num(footer[1]) - 0.3680642).abs() < 1e-7);
    assert!((num(footer[1]) - num(footer[3])).abs() < 1e-9);
    let body: Vec<Vec<String>> = out
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with("C_p"))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(body.len(), 11);
    assert!((num(&body[10][2]) - num(footer[1])).abs() < 1e-9);

    let id = write(
        &dir,
        "id.json",
        r#"{"input_pmf": [0.5, 0.5], "channel": [[1, 0], [0, 1]]}"#,
    );
    let out = rdmmse()
        .args(["capacity", "--input", id.to_str().unwrap(), "--s-grid", "0,0.5,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).take(3).all(|l| l.split(',').nth(1) == Some("0")));
    assert!(text.ends_with("C_p,0.69314718056,I_XY,0.69314718056\n"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("boundary term"));
}

#[test]
fn verify_bss_and_perturbation() {
    let out = rdmmse().args(["verify", "--case", "bss"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);
    assert!(!text.contains("FAIL"));

    let out = rdmmse()
        .args(["verify", "--case", "bss", "--perturb-mmse", "1.01"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("FAIL bss/derivatives")));
}

#[test]
fn verify_full_suite_passes() {
    let out = rdmmse().arg("verify").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.trim_end().ends_with("0 failed"));
}
