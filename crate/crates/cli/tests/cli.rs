//! End-to-end checks of the `bdris` binary surface.

use std::fs;
use std::process::Command;

fn bdris() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bdris"))
}

#[test]
fn run_emits_csv_and_svg_for_a_sweep_preset() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.conf");
    fs::write(&cfg, "sweep_points = 41\n").unwrap();
    let out = bdris()
        .args(["run", "strength-ss", "--out"])
        .arg(dir.path())
        .arg("--config")
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let csv = fs::read_to_string(dir.path().join("strength-ss.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], bdris_cli::report::SWEEP_CSV_HEADER);
    // two schemes, 41 points each
    assert_eq!(lines.len(), 1 + 2 * 41);
    assert!(lines[1].starts_with("reciprocal,true,true,"));
    assert!(lines[42].starts_with("non-reciprocal,true,true,"));

    let svg = fs::read_to_string(dir.path().join("strength-ss.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<rect x=").count(), 2);
}

#[test]
fn beam_preset_writes_a_four_panel_svg() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.conf");
    fs::write(&cfg, "sweep_points = 91\n").unwrap();
    let out = bdris()
        .args(["run", "beams-noss", "--format", "svg", "--out"])
        .arg(dir.path())
        .arg("--config")
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let svg = fs::read_to_string(dir.path().join("beams-noss.svg")).unwrap();
    assert_eq!(svg.matches("<rect x=").count(), 4, "expected four panels");
    assert!(!dir.path().join("beams-noss.csv").exists());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.conf");
    fs::write(&cfg, "sweep_points = 21\n").unwrap();
    for sub in ["a", "b"] {
        let out = bdris()
            .args(["run", "rates-noss", "--format", "csv", "--out"])
            .arg(dir.path().join(sub))
            .arg("--config")
            .arg(&cfg)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let a = fs::read(dir.path().join("a/rates-noss.csv")).unwrap();
    let b = fs::read(dir.path().join("b/rates-noss.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn unknown_preset_fails_with_category() {
    let out = bdris().args(["run", "nonsense"]).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error[preset.unknown]"), "stderr: {stderr}");
}

#[test]
fn invalid_config_fails_with_category() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "phi_bi = 9.0\n").unwrap();
    let out = bdris()
        .args(["run", "strength-ss", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error[config.validate]"), "stderr: {stderr}");
}

#[test]
fn oracle_subcommand_reports_determinism() {
    let run = || {
        let out = bdris()
            .args(["oracle", "model-consistency", "--seed", "9", "--trials", "10"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run();
    assert_eq!(a, run());
    assert!(a.contains("best value:"));
    assert!(a.contains("trials:      10"));
}

#[test]
fn preset_listing_names_every_preset() {
    let out = bdris().args(["run", "help"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    for p in bdris_cli::Preset::ALL {
        assert!(stdout.contains(p.name()), "missing {}", p.name());
    }
}
