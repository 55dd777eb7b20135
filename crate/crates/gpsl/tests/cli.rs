use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gpsl(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpsl"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("GPSL_CONFIG")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

fn functional_value(args: &[&str]) -> f64 {
    let dir = tempfile::tempdir().unwrap();
    let o = gpsl(args, dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    csv_rows(&dir.path().join("functional.csv"))[0][1].parse().unwrap()
}

#[test]
fn functional_examples() {
    let d = functional_value(&["functional", "--kind", "dirichlet", "--g", "gaussian:1.0"]);
    assert!((d - 0.375).abs() < 1e-12);
    let b = functional_value(&["functional", "--kind", "irg", "--g", "ball:1.0"]);
    assert!((b - 3.3719110708995).abs() < 1e-10);
    let i0 = functional_value(&["functional", "--kind", "i0", "--gc", "gaussian:1.0", "--gg", "gaussian:1.0"]);
    let closed = functional_value(&[
        "functional", "--kind", "i0", "--gc", "gaussian:1.0", "--gg", "gaussian:1.0", "--method", "closed",
    ]);
    assert!((i0 - 0.01712).abs() / 0.01712 < 1e-3, "{i0}");
    assert!(((i0 - closed) / closed).abs() < 1e-8);
    let tp = functional_value(&["functional", "--kind", "two-particle", "--g", "gaussian:1", "--m2", "10", "--d", "1"]);
    assert!((tp - 0.4136).abs() < 5e-4);
}

#[test]
fn tabulated_profile_spec() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("g.csv");
    let mut s = String::from("r_m,g_per_m3\n");
    for i in 0..=400 {
        let r = i as f64 * 0.02;
        s.push_str(&format!("{r},{}\n", (-r * r / 2.0).exp() / (2.0 * std::f64::consts::PI).powf(1.5)));
    }
    // the table must close at zero, otherwise the edge counts as a jump
    s.push_str("8.02,0\n");
    std::fs::write(&table, s).unwrap();
    let spec = format!("table:{}", table.display());
    let v = functional_value(&["functional", "--kind", "dirichlet", "--g", &spec]);
    assert!((v - 0.375).abs() < 2e-3, "{v}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&gpsl(&["functional", "--kind", "dirichlet", "--g", "nope:1"], p)), 2);
    assert_eq!(code(&gpsl(&["functional", "--kind", "dirichlet"], p)), 2);
    assert_eq!(code(&gpsl(&["functional", "--kind", "dirichlet", "--g", "ball:1"], p)), 3);
    assert_eq!(code(&gpsl(&["frobnicate"], p)), 2);
    assert_eq!(code(&gpsl(&["figures", "ratio-curve", "--grid", "1:2"], p)), 2);
    assert_eq!(code(&gpsl(&["constants", "--config", "/nonexistent/gpsl.json"], p)), 2);
    let bad = p.join("bad.json");
    std::fs::write(&bad, r#"{"G": 1}"#).unwrap();
    assert_eq!(code(&gpsl(&["constants", "--config", bad.to_str().unwrap()], p)), 2);
    assert_eq!(code(&gpsl(&["verify", "scaling"], p)), 0);
}

#[test]
fn constants_dump_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let o = gpsl(&["constants", "--dump"], dir.path());
    let snap: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(snap["sigma_sb"].as_f64(), Some(5.6e-8));

    // G doubled quadruples the feedback lower bound
    let cfg = dir.path().join("g.json");
    std::fs::write(&cfg, r#"{"g": 1.33486e-10}"#).unwrap();
    let lower = |extra: &[&str], env: Option<&Path>| -> f64 {
        let out = tempfile::tempdir().unwrap();
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_gpsl"));
        cmd.args(["figures", "exclusion-stars", "--grid", "-7:-7:1"]).args(extra).arg("--out").arg(out.path());
        cmd.env_remove("GPSL_CONFIG");
        if let Some(e) = env {
            cmd.env("GPSL_CONFIG", e);
        }
        let o = cmd.output().unwrap();
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        csv_rows(&out.path().join("exclusion-psr-j2144-3933-rg.csv"))[0][3].parse().unwrap()
    };
    let base = lower(&[], None);
    let flagged = lower(&["--config", cfg.to_str().unwrap()], None);
    let via_env = lower(&[], Some(&cfg));
    assert!((flagged / base - 4.0).abs() < 1e-9);
    assert_eq!(flagged, via_env);
    // the flag wins over the environment
    let missing = dir.path().join("missing.json");
    let wins = lower(&["--config", cfg.to_str().unwrap()], Some(&missing));
    assert_eq!(wins, flagged);
}

#[test]
fn figures_are_deterministic_with_units_and_json_mirror() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["figures", "exclusion-stars", "--grid", "-10:-4:13", "--gnuplot-stub"];
    assert_eq!(code(&gpsl(&args, a.path())), 0);
    assert_eq!(code(&gpsl(&args, b.path())), 0);
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.iter().any(|n| n.to_str().unwrap().ends_with(".gp")));
    for n in &names {
        assert_eq!(std::fs::read(a.path().join(n)).unwrap(), std::fs::read(b.path().join(n)).unwrap());
    }
    let csv_path = a.path().join("exclusion-psr-j1840-1419-rc.csv");
    let header = std::fs::read_to_string(&csv_path).unwrap().lines().next().unwrap().to_string();
    assert!(header.split(',').all(|h| h.contains('[') && h.ends_with(']')), "{header}");
    let json: Value = serde_json::from_slice(&std::fs::read(a.path().join("exclusion-psr-j1840-1419-rc.json")).unwrap()).unwrap();
    for (i, row) in csv_rows(&csv_path).iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            assert_eq!(json["rows"][i][j].as_f64().unwrap(), cell.parse::<f64>().unwrap());
        }
    }
    // every output is listed with its digest
    let manifest: Value = serde_json::from_slice(&std::fs::read(a.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), names.len() - 1);
}

#[test]
fn excluded_cells_and_overlay_merge() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let catalog = p.join("stars.json");
    std::fs::write(
        &catalog,
        r#"[{"name": "dim", "radius_m": 1e4, "mass_kg": 2e30, "temperature_K": 1e5, "radiation_power_w": 1e-3}]"#,
    )
    .unwrap();
    let out = p.join("a");
    let o = gpsl(&["figures", "exclusion-stars", "--catalog", catalog.to_str().unwrap(), "--grid", "-8:-6:3"], &out);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&out.join("exclusion-dim-rc.csv"));
    assert!(rows.iter().all(|r| r[1] == "EXCLUDED" && r[2] == "EXCLUDED"));

    let overlay = p.join("overlay.csv");
    std::fs::write(&overlay, "# r_C_m,lambda_upper_hz,label\n1e-10,1e-3,tight\n1e-4,1e-3,tight\n").unwrap();
    let out = p.join("b");
    let o = gpsl(&["figures", "exclusion-merged", "--overlay", overlay.to_str().unwrap(), "--grid", "-9:-5:5"], &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&out.join("exclusion-merged.csv"));
    assert!(rows.iter().all(|r| r[3] == "tight"));

    std::fs::write(&overlay, "1e-10,1,tight\n1e-9,abc,tight\n").unwrap();
    let o = gpsl(&["figures", "exclusion-merged", "--overlay", overlay.to_str().unwrap()], &p.join("c"));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed overlay"));
}

#[test]
fn replay_reproduces_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    assert_eq!(
        code(&gpsl(&["verify", "optimality-perturbation", "--seed", "3", "--count", "4"], &first)),
        0
    );
    let manifest = first.join("manifest.json");
    let again = dir.path().join("again");
    assert_eq!(code(&gpsl(&["replay", manifest.to_str().unwrap()], &again)), 0);
    assert_eq!(std::fs::read(&manifest).unwrap(), std::fs::read(again.join("manifest.json")).unwrap());

    let mut m: Value = serde_json::from_slice(&std::fs::read(&manifest).unwrap()).unwrap();
    m["output_digest"] = Value::from("00");
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, serde_json::to_vec(&m).unwrap()).unwrap();
    assert_eq!(code(&gpsl(&["replay", tampered.to_str().unwrap()], &dir.path().join("t"))), 1);
}

#[test]
fn figure_anchors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&gpsl(&["figures", "radius-curve"], &p.join("r"))), 0);
    let rows = csv_rows(&p.join("r/radius-curve.csv"));
    let first: f64 = rows[0][2].parse().unwrap();
    let last: f64 = rows[rows.len() - 1][2].parse().unwrap();
    assert!((first - 5f64.sqrt()).abs() < 1e-2 && (last - 3f64.sqrt()).abs() < 1e-2);
    assert_eq!(code(&gpsl(&["figures", "ratio-curve", "--grid", "1:1:1"], &p.join("q"))), 0);
    let v: f64 = csv_rows(&p.join("q/ratio-curve.csv"))[0][2].parse().unwrap();
    assert!((v - 62.41).abs() < 0.05);
    for f in ["profile-compare", "macro-profile-compare"] {
        assert_eq!(code(&gpsl(&["figures", f, "--rg", "1,2"], &p.join(f))), 0);
        let rows = csv_rows(&p.join(f).join(format!("{f}.csv")));
        assert_eq!(rows[0].len(), 4);
    }
}
