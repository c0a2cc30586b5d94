use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use myller::numeric::Grid;
use myller::{presets, rigid_motion_distance};
use myller_cli::curve_file::{format_curve, read_curve};
use serde_json::Value;
use tempfile::TempDir;

fn myller(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_myller"))
        .args(args)
        .env_remove("MYLLER_FLOAT_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Closed-form helix with radius = pitch = 1 on `[0, 4]`: `K1 = K2 = 1/2`.
fn helix_file(dir: &TempDir, h: f64) -> PathBuf {
    let n = (4.0 / h).round() as usize + 1;
    let curve = presets::circular_helix(1.0, 1.0, Grid::new(0.0, h, n).unwrap()).unwrap();
    let path = dir.path().join("helix.csv");
    fs::write(&path, format_curve(&curve)).unwrap();
    path
}

fn preset_file(dir: &TempDir, preset: &str, name: &str) -> PathBuf {
    let path = dir.path().join(name);
    let out = myller(&["synthesize", "--preset", preset, "--out", path_str(&path)]);
    assert!(out.status.success(), "{}", stderr(&out));
    path
}

fn kind<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["kinds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|k| k["kind"] == name)
        .unwrap_or_else(|| panic!("{name} missing"))
}

#[test]
fn analyze_helix_recovers_curvatures() {
    let dir = TempDir::new().unwrap();
    let input = helix_file(&dir, 1e-3);
    let r = json(&myller(&["analyze", path_str(&input)]));
    for key in ["K1", "K2"] {
        let mean = r["frenet"][key]["mean"].as_f64().unwrap();
        assert!((mean - 0.5).abs() <= 1e-6, "{key}: {mean}");
    }
    let a1 = r["frenet"]["a1"]["mean"].as_f64().unwrap();
    assert!((a1 - 1.0).abs() <= 1e-9, "{a1}");
}

#[test]
fn analyze_writes_plot_files() {
    let dir = TempDir::new().unwrap();
    let input = helix_file(&dir, 1e-2);
    let plots = dir.path().join("plots");
    fs::create_dir(&plots).unwrap();
    let out = myller(&["analyze", path_str(&input), "--plot", path_str(&plots)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let k1 = fs::read_to_string(plots.join("K1.csv")).unwrap();
    assert!(k1.starts_with("s,value\n"));
    assert_eq!(k1.lines().count(), 402);
}

#[test]
fn too_few_rows_exit_one() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(helix_file(&dir, 1e-2)).unwrap();
    let short: Vec<&str> = text.lines().take(5).collect();
    let path = dir.path().join("short.csv");
    fs::write(&path, short.join("\n")).unwrap();
    let out = myller(&["analyze", path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("too few samples"), "{}", stderr(&out));
}

#[test]
fn shuffled_rows_name_the_row() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(helix_file(&dir, 1e-2)).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.swap(11, 12);
    let path = dir.path().join("shuffled.csv");
    fs::write(&path, lines.join("\n")).unwrap();
    let out = myller(&["classify", path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("line 13 (sample 11), field s: non-uniform grid"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn classify_slant() {
    let dir = TempDir::new().unwrap();
    let input = preset_file(&dir, "slant P=1 Q=0.25", "slant.csv");
    let r = json(&myller(&["classify", path_str(&input)]));
    assert_eq!(r["slant_helix"]["verdict"], "helix");
    assert_eq!(r["xi1_helix"]["verdict"], "not-helix");
    let sigma = r["sigma_mean"].as_f64().unwrap();
    assert!((sigma - 0.25).abs() <= 1e-4, "{sigma}");
}

#[test]
fn classify_circular_helix() {
    let dir = TempDir::new().unwrap();
    let input = helix_file(&dir, 1e-2);
    let r = json(&myller(&["classify", path_str(&input)]));
    assert_eq!(r["xi1_helix"]["verdict"], "helix");
    assert_eq!(r["slant_helix"]["verdict"], "helix");
    assert_eq!(r["darboux_helix"]["verdict"], "degenerate-general-helix");
}

#[test]
fn classify_non_helix() {
    let dir = TempDir::new().unwrap();
    let input = preset_file(&dir, "non-helix", "nh.csv");
    let r = json(&myller(&["classify", path_str(&input)]));
    for test in ["xi1_helix", "slant_helix", "darboux_helix"] {
        assert_eq!(r[test]["verdict"], "not-helix", "{test}");
    }
}

#[test]
fn synthesized_helix_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let out = preset_file(&dir, "circular K1=0.5 K2=0.5", "c.csv");
    let synth = read_curve(&out).unwrap();
    let exact = presets::circular_helix(1.0, 1.0, *synth.grid()).unwrap();
    let d = rigid_motion_distance(&synth, &exact).unwrap();
    assert!(d <= 1e-6, "{d:e}");
    let sidecar: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("c.csv.report.json")).unwrap()).unwrap();
    assert!(sidecar["round_trip"]["max"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn synthesize_spec_file_and_bad_versor() {
    let dir = TempDir::new().unwrap();
    let good = dir.path().join("good.toml");
    fs::write(
        &good,
        "[grid]\ns0 = 0.0\nh = 0.01\nn = 201\n\n[preset]\nname = \"slant\"\n",
    )
    .unwrap();
    let out = dir.path().join("g.csv");
    let res = myller(&["synthesize", path_str(&good), "--out", path_str(&out)]);
    assert!(res.status.success(), "{}", stderr(&res));
    assert_eq!(read_curve(&out).unwrap().grid().len(), 201);

    let bad = dir.path().join("bad.toml");
    let a = |v: &str| format!("[{v}, {v}, {v}, {v}, {v}]");
    fs::write(
        &bad,
        format!(
            "K1 = {}\nK2 = {}\na1 = [1.0, 1.0, 0.9486832980505138, 1.0, 1.0]\na2 = {}\na3 = {}\n[grid]\ns0 = 0.0\nh = 0.1\nn = 5\n",
            a("1.0"),
            a("0.0"),
            a("0.0"),
            a("0.0")
        ),
    )
    .unwrap();
    let res = myller(&[
        "synthesize",
        path_str(&bad),
        "--out",
        path_str(&dir.path().join("b.csv")),
    ]);
    assert_eq!(res.status.code(), Some(1));
    assert!(stderr(&res).contains("field a[2]"), "{}", stderr(&res));
}

#[test]
fn residuals_on_slant() {
    let dir = TempDir::new().unwrap();
    let input = preset_file(&dir, "slant", "slant.csv");
    let r = json(&myller(&["residuals", path_str(&input), "--tol", "1e-3"]));
    assert!(r["full_max_normalized"].as_f64().unwrap() <= 1e-8);
    assert_eq!(kind(&r, "Y_FULL")["status"], "degenerate");
    assert_eq!(kind(&r, "XI2_ALT_REDUCED")["agrees"], true);
    assert_eq!(r["all_agree"], true);
}

#[test]
fn residuals_on_helix_and_non_helix() {
    let dir = TempDir::new().unwrap();
    let input = helix_file(&dir, 1e-2);
    let r = json(&myller(&[
        "residuals",
        path_str(&input),
        "--kinds",
        "xi1-reduced,XI1_FRENET",
    ]));
    assert_eq!(r["kinds"].as_array().unwrap().len(), 2);
    let k = kind(&r, "XI1_REDUCED");
    assert_eq!(k["small"], true);
    assert_eq!(k["agrees"], true);

    let input = preset_file(&dir, "non-helix", "nh.csv");
    let r = json(&myller(&["residuals", path_str(&input), "--tol", "1e-3"]));
    for name in ["XI1_REDUCED", "XI3_REDUCED"] {
        let k = kind(&r, name);
        assert!(k["max_normalized"].as_f64().unwrap() >= 1e-2, "{name}");
        assert_eq!(k["agrees"], true, "{name}");
    }
    assert_eq!(r["all_agree"], true);
}

#[test]
fn float_format_controls_digits() {
    let dir = TempDir::new().unwrap();
    let input = helix_file(&dir, 1e-2);
    let out = Command::new(env!("CARGO_BIN_EXE_myller"))
        .args(["classify", path_str(&input)])
        .env("MYLLER_FLOAT_FORMAT", "5")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"tol\": 1.0000e-6"), "{text}");

    let out = Command::new(env!("CARGO_BIN_EXE_myller"))
        .args(["classify", path_str(&input)])
        .env("MYLLER_FLOAT_FORMAT", "%.3e")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let input = helix_file(&dir, 1e-2);
    assert_eq!(myller(&["classify", path_str(&input)]).status.code(), Some(0));
    assert_eq!(myller(&["classify", "/nonexistent/curve.csv"]).status.code(), Some(2));
    assert_eq!(myller(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        myller(&["residuals", path_str(&input), "--kinds", "XI4"]).status.code(),
        Some(2)
    );

    let garbled = dir.path().join("garbled.csv");
    fs::write(&garbled, "s,rx,ry\n1,2,3\n").unwrap();
    assert_eq!(myller(&["analyze", path_str(&garbled)]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let input = preset_file(&dir, "slant", "slant.csv");
    let a = myller(&["residuals", path_str(&input)]);
    let b = myller(&["residuals", path_str(&input)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
