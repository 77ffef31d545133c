use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn tadpole(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tadpole"))
        .args(args)
        .env_remove("TADPOLE_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn out_dir(dir: &TempDir) -> String {
    dir.path().to_str().unwrap().to_string()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn header_value<'a>(csv: &'a str, key: &str) -> Option<&'a str> {
    let prefix = format!("# {key}: ");
    csv.lines().find_map(|l| l.strip_prefix(prefix.as_str()))
}

#[test]
fn solve_reports_the_solution_record() {
    for args in [["solve", "--u0", "0.8"], ["solve", "--omega", "-1"]] {
        let out = tadpole(&[&args[..], &["--format", "json"]].concat());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        for key in ["E", "U_plus", "a", "eps", "omega", "mu"] {
            assert!(v["data"][key].is_number(), "{key} missing");
        }
        assert_eq!(v["data"]["within_bounds"], Value::Bool(true));
        assert_eq!(v["meta"]["command"], "solve");
    }
    let v: Value = serde_json::from_slice(&tadpole(&["solve", "--omega", "-1", "--format", "json"]).stdout).unwrap();
    assert!((v["data"]["omega"].as_f64().unwrap() + 1.0).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_2() {
    let out = tadpole(&["solve", "--omega", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("omega must be negative"));

    assert_eq!(tadpole(&["solve", "--u0", "1.5"]).status.code(), Some(2));
    assert_eq!(tadpole(&["solve", "--u0", "0.5", "--omega", "-1"]).status.code(), Some(2));
    assert_eq!(tadpole(&["solve"]).status.code(), Some(2));
    assert_eq!(tadpole(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(tadpole(&["solve", "--u0", "0.5", "--grid-n", "1"]).status.code(), Some(2));
    assert_eq!(tadpole(&["solve", "--u0", "0.5", "--quad-tol", "-1"]).status.code(), Some(2));
    assert_eq!(tadpole(&["profile", "--omega", "0.5"]).status.code(), Some(2));
    assert_eq!(tadpole(&["solve", "--u0", "0.5", "--config", "/nonexistent/cfg"]).status.code(), Some(3));
}

#[test]
fn mass_curve_files_and_determinism() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for d in [&a, &b] {
        let out = tadpole(&["mass-curve", "--output-dir", &out_dir(d)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let csv = fs::read_to_string(a.path().join("mass_curve.csv")).unwrap();
    assert_eq!(csv, fs::read_to_string(b.path().join("mass_curve.csv")).unwrap());
    assert_eq!(
        fs::read(a.path().join("mass_curve.svg")).unwrap(),
        fs::read(b.path().join("mass_curve.svg")).unwrap()
    );

    assert!(header_value(&csv, "config_hash").is_some_and(|h| h.len() == 64));
    assert_eq!(header_value(&csv, "quad_tol"), Some("1e-10"));
    assert!(csv.lines().any(|l| l == "omega,mu,dmu_sign"));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 400);
    let mu = |r: &Vec<String>| r[1].parse::<f64>().unwrap();
    assert_eq!(rows[0][0], "-10000.0");
    assert_eq!(rows[399][0], "-1e-6");
    assert!((mu(&rows[0]) - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
    assert!((mu(&rows[399]) - std::f64::consts::FRAC_PI_4).abs() < 1e-3);
    let signs: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(signs.windows(2).filter(|w| w[0] != w[1]).count(), 1);
    assert_eq!((signs[0], signs[399]), ("1", "-1"));

    let svg = fs::read_to_string(a.path().join("mass_curve.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("stroke-dasharray").count(), 2);
}

#[test]
fn critical_schema() {
    let d = TempDir::new().unwrap();
    let out = tadpole(&["critical", "--format", "json", "--output-dir", &out_dir(&d)]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(d.path().join("critical.json")).unwrap()).unwrap();
    let data = &v["data"];
    for key in ["U1", "omega1", "omega0", "mu_max"] {
        assert!(data[key].is_number(), "{key} missing");
    }
    assert!(data["mu_omega0_minus_half_pi"].as_f64().unwrap().abs() <= 1e-8);
    assert!(data["dual_method_agreement"].as_f64().unwrap() <= 1e-6);
    let (w1, w0) = (data["omega1"].as_f64().unwrap(), data["omega0"].as_f64().unwrap());
    assert!(w1 < w0 && w0 < 0.0);
    assert_eq!(v["meta"]["quad_tol"].as_f64(), Some(1e-10));
}

#[test]
fn profile_columns_and_vertex_data() {
    let d = TempDir::new().unwrap();
    let out = tadpole(&["profile", "--omega", "-1", "--n", "100", "--output-dir", &out_dir(&d)]);
    assert!(out.status.success());
    let csv = fs::read_to_string(d.path().join("profile.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "edge,x,value,derivative"));
    assert_eq!(header_value(&csv, "monotone"), Some("true"));
    let ratio: f64 = header_value(&csv, "vertex_derivative_ratio").unwrap().parse().unwrap();
    assert!((ratio - 0.5).abs() < 1e-10);
    for key in ["vertex_continuity_defect", "kirchhoff_defect", "symmetry_defect"] {
        let v: f64 = header_value(&csv, key).unwrap().parse().unwrap();
        assert!(v <= 1e-8, "{key} = {v}");
    }
    let rows = data_rows(&csv);
    let ring: Vec<f64> = rows.iter().filter(|r| r[0] == "ring").map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(ring.len(), 101);
    for i in 0..ring.len() / 2 {
        assert!((ring[i] - ring[ring.len() - 1 - i]).abs() < 1e-12);
    }
    assert!(d.path().join("phase.svg").exists());
    assert!(d.path().join("profile.svg").exists());
}

#[test]
fn spectrum_and_asymptotics_tables() {
    let d = TempDir::new().unwrap();
    let dir = out_dir(&d);
    assert!(tadpole(&["spectrum", "--grid-n", "64", "--output-dir", &dir]).status.success());
    let csv = fs::read_to_string(d.path().join("spectrum.csv")).unwrap();
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 64);
    for r in &rows {
        assert!((r[5].parse::<f64>().unwrap() - 1.0).abs() <= 1e-12);
    }
    assert_eq!(header_value(&csv, "no_negative_eigenvalues"), Some("true"));

    assert!(tadpole(&["asymptotics", "--grid-n", "24", "--output-dir", &dir]).status.success());
    let csv = fs::read_to_string(d.path().join("asymptotics.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "omega,mu_solver,mu_small,mu_large,rel_small,rel_large"));
    assert_eq!(data_rows(&csv).len(), 24);
}

#[test]
fn verify_passes_by_default() {
    let d = TempDir::new().unwrap();
    let out = tadpole(&["verify", "--format", "json", "--output-dir", &out_dir(&d)]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    let v: Value = serde_json::from_str(&fs::read_to_string(d.path().join("verify.json")).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(v["meta"]["failed"], 0);
    assert_eq!(rows.len() as u64, v["meta"]["total"].as_u64().unwrap());
    for r in rows {
        let id = r["id"].as_str().unwrap();
        assert!(stdout.contains(id), "{id} missing from report");
        assert_eq!(r["pass"], Value::Bool(true), "{id}");
    }
}

#[test]
fn coarse_quadrature_fails_verification() {
    let d = TempDir::new().unwrap();
    let out = tadpole(&["verify", "--quad-tol", "1e-1", "--output-dir", &out_dir(&d)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    let csv = fs::read_to_string(d.path().join("verify.csv")).unwrap();
    assert_eq!(header_value(&csv, "quad_tol"), Some("0.1"));
    assert_ne!(header_value(&csv, "failed"), Some("0"));
}

#[test]
fn config_precedence_and_env_fallback() {
    let d = TempDir::new().unwrap();
    let cfg = d.path().join("run.cfg");
    let file_dir = d.path().join("from_file");
    fs::write(
        &cfg,
        format!("# coarse run\ngrid_n = 30\nquad_tol = 1e-9\noutput_dir = {}\n", file_dir.display()),
    )
    .unwrap();
    let cfg_s = cfg.to_str().unwrap();

    let out = tadpole(&["mass-curve", "--config", cfg_s, "--quad-tol", "1e-11"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(file_dir.join("mass_curve.csv")).unwrap();
    assert_eq!(header_value(&csv, "grid_n"), Some("30"));
    assert_eq!(header_value(&csv, "quad_tol"), Some("1e-11"));
    assert_eq!(data_rows(&csv).len(), 30);

    let env_dir = d.path().join("from_env");
    let out = Command::new(env!("CARGO_BIN_EXE_tadpole"))
        .args(["spectrum", "--grid-n", "8"])
        .env("TADPOLE_OUTPUT_DIR", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(Path::new(&env_dir.join("spectrum.csv")).exists());

    let flag_dir = d.path().join("from_flag");
    let out = Command::new(env!("CARGO_BIN_EXE_tadpole"))
        .args(["spectrum", "--grid-n", "8", "--output-dir", flag_dir.to_str().unwrap()])
        .env("TADPOLE_OUTPUT_DIR", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(flag_dir.join("spectrum.csv").exists());
}
