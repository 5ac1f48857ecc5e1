//! End-to-end checks of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slitwave"))
}

#[test]
fn negative_wavelength_is_rejected_with_a_diagnostic() {
    let out = bin().args(["--lambda", "-1"]).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("wavelength must be positive"),
        "stderr: {stderr}"
    );
}

#[test]
fn unknown_scenario_is_rejected() {
    let out = bin().args(["--scenario", "fig99"]).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("unknown scenario 'fig99'"),
        "stderr: {stderr}"
    );
}

#[test]
fn csv_has_the_documented_columns_and_row_count() {
    let out = bin()
        .args(["--scenario", "fig4a", "--samples", "21"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.trim_end().lines().collect();
    assert_eq!(
        lines[0],
        "beta_rad,sin_beta,screen_y_m,intensity_quantum,intensity_classical"
    );
    assert_eq!(lines.len(), 22);
    // 12 significant digits, scientific notation.
    assert!(lines[1].starts_with("-1.00000000000e-2,"));
}

#[test]
fn quantum_only_run_drops_the_classical_column() {
    let out = bin()
        .args(["--scenario", "fig8", "--samples", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("beta_rad,sin_beta,screen_y_m,intensity_quantum\n"));
}

#[test]
fn two_sample_scan_yields_two_rows() {
    let out = bin()
        .args(["--samples", "2", "--model", "classical"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim_end().lines().count(), 3);
}

#[test]
fn scenario_overrides_are_logged() {
    let out = bin()
        .args([
            "--scenario",
            "fig4a",
            "--slit-width",
            "1e-4",
            "--samples",
            "5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("overriding scenario parameter"),
        "stderr: {stderr}"
    );
    assert!(stderr.contains("slit-width"), "stderr: {stderr}");
}

#[test]
fn fig4d_json_reports_three_secondary_maxima_per_gap() {
    let out = bin()
        .args(["--scenario", "fig4d", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["analysis"]["quantum"]["secondary_maxima_per_gap"], 3);
    assert_eq!(v["analysis"]["classical"]["secondary_maxima_per_gap"], 3);
    assert_eq!(v["parameters"]["n_slits"], 5);
    let rms = v["analysis"]["agreement"]["rms"].as_f64().unwrap();
    assert!(rms < 0.05);
}

#[test]
fn fig8_peak_vanishes_relative_to_fig5() {
    let peak = |name: &str| -> f64 {
        let out = bin()
            .args(["--scenario", name, "--format", "json", "--samples", "201"])
            .output()
            .unwrap();
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["analysis"]["quantum"]["peak_intensity"].as_f64().unwrap()
    };
    let ratio = peak("fig8") / peak("fig5");
    assert!(ratio < 1e-30, "ratio {ratio:.3e}");
}

#[test]
fn config_file_applies_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "# demo\nsamples = 7\nmodel = classical\n").unwrap();

    let out = bin()
        .args(["--config", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim_end().lines().count(), 8);
    assert!(stdout.starts_with("beta_rad,sin_beta,screen_y_m,intensity_classical\n"));

    // The flag wins over the file.
    let out = bin()
        .args(["--config", config.to_str().unwrap(), "--samples", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim_end().lines().count(), 4);
}

#[test]
fn output_is_identical_across_thread_counts() {
    let run = |threads: &str| -> Vec<u8> {
        let out = bin()
            .env("SLITWAVE_THREADS", threads)
            .args(["--scenario", "fig5", "--samples", "401"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn unwritable_output_path_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "--samples",
            "2",
            "--output",
            dir.path().to_str().unwrap(), // a directory, not a file
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn malformed_numbers_are_usage_errors() {
    let out = bin().args(["--lambda", "abc"]).output().unwrap();
    assert!(!out.status.success());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn normalized_output_peaks_at_one() {
    let out = bin()
        .args([
            "--scenario",
            "fig5",
            "--model",
            "classical",
            "--normalize",
            "peak",
            "--samples",
            "101",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let max: f64 = stdout
        .trim_end()
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert_eq!(max, 1.0);
}
