use std::process::{Command, Output};

fn mfgm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfgm"))
        .args(args)
        .output()
        .expect("failed to launch mfgm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn validate_inside_and_outside() {
    let o = mfgm(&["validate", "--a", "0.5", "--b", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "OmegaPlus [-0.25, 0.5]\n");

    let o = mfgm(&["validate", "--a", "-1", "--b", "-1", "--exact"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "OmegaMinus [-1, 0]\nexact [-1, 3]\n");

    let o = mfgm(&["validate", "--a", "0.6", "--b", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("Outside"));
}

#[test]
fn rational_flags_hit_boundaries_exactly() {
    let o = mfgm(&["validate", "--a", "-1/16", "--b", "3"]);
    assert_eq!(code(&o), 0);
    let o = mfgm(&["validate", "--a", "9/52", "--b", "3", "--exact"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("exact [-0.0625, 0.17307692307692307]"));
}

#[test]
fn eval_outputs() {
    let o = mfgm(&["eval", "--a", "0.5", "--b", "1", "--u", "0.5", "--v", "0.5"]);
    assert_eq!(stdout(&o), "cdf=0.3203125\n");
    let o = mfgm(&[
        "eval",
        "--a",
        "1/2",
        "--b",
        "1",
        "--u",
        "0",
        "--v",
        "0.5",
        "--density",
        "--conditional",
    ]);
    assert_eq!(stdout(&o), "cdf=0 pdf=1.125 conditional_cdf=0.6875\n");
    let o = mfgm(&["eval", "--a", "0.5", "--b", "1", "--u", "1.5", "--v", "0.5"]);
    assert_eq!(code(&o), 1);
    assert!(!o.stderr.is_empty());
}

#[test]
fn dep_methods() {
    let o = mfgm(&["dep", "--a", "0.5", "--b", "1", "--closed"]);
    assert_eq!(stdout(&o), "rho=0.375 tau=0.25\n");
    let o = mfgm(&["dep", "--a", "0.5", "--b", "1"]);
    assert_eq!(stdout(&o), "rho=0.375 tau=0.25\n");

    let o = mfgm(&[
        "dep", "--a", "0.5", "--b", "1", "--quad", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v[0]["rho"].as_f64().unwrap() - 0.375).abs() < 1e-12);
    assert!((v[0]["tau"].as_f64().unwrap() - 0.25).abs() < 1e-12);

    let o = mfgm(&[
        "dep", "--a", "0.5", "--b", "1", "--mc", "20000", "--seed", "7",
    ]);
    assert_eq!(code(&o), 0);
    let again = mfgm(&[
        "dep", "--a", "0.5", "--b", "1", "--mc", "20000", "--seed", "7",
    ]);
    assert_eq!(o.stdout, again.stdout);

    let o = mfgm(&["dep", "--a", "0.7", "--b", "1", "--mc", "100"]);
    assert_eq!(code(&o), 1);
    let o = mfgm(&["dep", "--a", "0.5", "--b", "1", "--closed", "--quad"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn sample_csv_is_deterministic() {
    let dir = tempdir();
    let path = dir.join("pairs.csv");
    let path_s = path.to_str().unwrap();
    let o = mfgm(&[
        "sample", "--a", "0.5", "--b", "1", "-n", "500", "--seed", "11", "--out", path_s,
    ]);
    assert_eq!(code(&o), 0);
    let file = std::fs::read(&path).unwrap();
    let piped = mfgm(&[
        "sample", "--a", "0.5", "--b", "1", "-n", "500", "--seed", "11",
    ]);
    assert_eq!(file, piped.stdout);
    let text = String::from_utf8(file).unwrap();
    assert!(text.starts_with("u,v\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 501);
    for line in text.lines().skip(1) {
        let (u, v) = line.split_once(',').unwrap();
        let (u, v): (f64, f64) = (u.parse().unwrap(), v.parse().unwrap());
        assert!((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v));
    }

    let o = mfgm(&["sample", "--a", "0.5", "--b", "1", "-n", "0", "--seed", "1"]);
    assert_eq!(stdout(&o), "u,v\n");
    let o = mfgm(&[
        "sample", "--a", "0.5", "--b", "1", "-n", "3", "--seed", "1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    let o = mfgm(&["sample", "--a", "2", "--b", "1", "-n", "3", "--seed", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn scan_grid() {
    let o = mfgm(&[
        "scan", "--a-min", "-1/4", "--a-max", "1/2", "--b-min", "0", "--b-max", "1", "--steps", "4",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,b,in_omega,rho,tau");
    assert_eq!(lines.len(), 17);
    assert_eq!(*lines.last().unwrap(), "0.5,1,OmegaPlus,0.375,0.25");
    assert!(lines[1].starts_with("-0.25,0,OmegaPlus,"));

    let o = mfgm(&[
        "scan", "--a-min", "0", "--a-max", "1", "--b-min", "0", "--b-max", "1", "--steps", "2",
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[3]["in_omega"], "Outside");

    let o = mfgm(&[
        "scan", "--a-min", "1", "--a-max", "0", "--b-min", "0", "--b-max", "1", "--steps", "2",
    ]);
    assert_eq!(code(&o), 64);
}

#[test]
fn certify_exit_codes() {
    let o = mfgm(&["certify", "--a", "0.5", "--b", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("passed grid=200"));

    let o = mfgm(&["certify", "--a", "0.6", "--b", "1"]);
    assert_eq!(code(&o), 2);
    let text = stdout(&o);
    assert!(text.starts_with("failed"));
    assert!(text.contains("DensitySign magnitude=0.19999999999999996 at (u,v)=(0,1)"));

    let o = mfgm(&[
        "certify", "--a", "-0.3", "--b", "-1", "--grid", "50", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["passed"], true);
    assert_eq!(v[0]["grid_n"], 50);

    let o = mfgm(&["certify", "--a", "0.5", "--b", "1", "--grid", "2"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&mfgm(&[])), 64);
    assert_eq!(code(&mfgm(&["validate", "--a", "0.5"])), 64);
    assert_eq!(code(&mfgm(&["validate", "--a", "half", "--b", "1"])), 64);
    assert_eq!(code(&mfgm(&["validate", "--a", "1/0", "--b", "1"])), 64);
    assert_eq!(code(&mfgm(&["frobnicate"])), 64);
    assert_eq!(code(&mfgm(&["--help"])), 0);
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("mfgm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
