use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use paritybus_cli::registry::BUNDLED;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_paritybus"))
}

fn run_into(config: &str, out: &Path) -> Output {
    bin().args(["run", config, "--out"]).arg(out).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const STEADY: &str = r#"
name = "mini"
kind = "steady"
[system]
omega_p = 0.8
g_p = 0.3
n_fock = 4
qubits = [{ omega_q = 0.2, g = 0.01 }, { omega_q = 0.2, g = 0.01 }]
[sweep]
parameter = "g_p"
values = [0.1, 0.2, 0.3]
[rates]
gamma_pump = 0.01
gamma_out = 0.1
gamma_x = 0.01
gamma_z = 0.01
gamma_cav = 0.01
"#;

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let p = dir.join("config.toml");
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn every_bundled_config_runs() {
    let tmp = tempfile::tempdir().unwrap();
    for (name, _) in BUNDLED {
        let o = run_into(name, tmp.path());
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        let csv = fs::read_to_string(tmp.path().join(format!("{name}.csv"))).unwrap();
        assert!(!csv.contains('\r'));
        assert!(csv.lines().count() > 1, "{name}: empty table");
        assert!(tmp.path().join(format!("{name}.manifest.toml")).is_file());
    }
}

#[test]
fn fig2a_and_fig6_have_the_documented_columns() {
    let tmp = tempfile::tempdir().unwrap();
    for (name, header) in [("fig2a", "t,n2_full,n2_eff"), ("fig6", "g_p,n2_ss")] {
        assert!(run_into(name, tmp.path()).status.success());
        let csv = fs::read_to_string(tmp.path().join(format!("{name}.csv"))).unwrap();
        assert_eq!(csv.lines().next(), Some(header));
    }
}

#[test]
fn malformed_config_exits_2_without_output() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), &STEADY.replace("gamma_out = 0.1", "gamma_out = ["));
    let out = tmp.path().join("out");
    let o = run_into(cfg.to_str().unwrap(), &out);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn unknown_field_is_named() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), &STEADY.replace("gamma_cav", "gamma_cavity"));
    let o = run_into(cfg.to_str().unwrap(), &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("gamma_cavity"), "{}", stderr(&o));
}

#[test]
fn physics_error_exits_3_and_names_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), &STEADY.replace("n_fock = 4", "n_fock = 2"));
    let out = tmp.path().join("out");
    let o = run_into(cfg.to_str().unwrap(), &out);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("n_fock"));
    assert!(!out.exists());
}

#[test]
fn identical_configs_give_identical_bytes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), STEADY);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert!(run_into(cfg.to_str().unwrap(), &a).status.success());
    let o = bin()
        .env("PARITYBUS_THREADS", "1")
        .args(["run", cfg.to_str().unwrap(), "--out"])
        .arg(&b)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(fs::read(a.join("mini.csv")).unwrap(), fs::read(b.join("mini.csv")).unwrap());
}

#[test]
fn manifest_records_resolved_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run_into("fig2a", tmp.path()).status.success());
    let m: toml::Value = fs::read_to_string(tmp.path().join("fig2a.manifest.toml")).unwrap().parse().unwrap();
    let r = &m["resolved"];
    assert_eq!(r["system"]["omega_cav"].as_float(), Some(1.0));
    assert_eq!(r["effective_levels"].as_integer(), Some(6));
    assert_eq!(r["dynamics"]["initial"].as_str(), Some("0:eg"));
    assert!(m["tolerances"]["validity_ratio"].as_float().is_some());
    assert!(m["derived"]["two_j_eff"].as_float().is_some());
}

#[test]
fn list_shows_every_bundled_config() {
    let o = bin().arg("list").output().unwrap();
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), BUNDLED.len());
    assert!(BUNDLED.len() >= 13);
    for line in text.lines() {
        assert!(line.contains("Fig. "), "{line}");
    }
}

#[test]
fn check_reports_deltas() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), STEADY);
    let o = bin().args(["check", cfg.to_str().unwrap()]).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let line = text.lines().find(|l| l.contains("n2_ss")).unwrap();
    let delta: f64 = line.split_whitespace().last().unwrap().parse().unwrap();
    assert!(delta < 1e-3, "{line}");
}

#[test]
fn bad_thread_count_exits_2() {
    let o = bin().env("PARITYBUS_THREADS", "many").arg("list").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_experiment_exits_2() {
    let o = bin().args(["run", "fig99"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
