//! End-to-end tests of the command-line surface: exit codes, exact headers,
//! config/flag precedence, and byte-identical reruns.

use std::path::Path;
use std::process::{Command, Output};

fn starxy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starxy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn coupling_sweep_header_and_spot_value() {
    let out = starxy(&[
        "coupling-sweep",
        "--n",
        "3",
        "--omega-r-ghz",
        "5",
        "--omega-a-ghz",
        "5",
        "--f-ghz",
        "0.1",
        "--precision",
        "7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega_a_ghz,f_ghz,delta_ghz,j_n_ghz"));
    assert_eq!(
        lines.next(),
        Some("5.0000000,0.1000000,0.0000000,-0.0577350")
    );
}

#[test]
fn sweep_row_order_is_f_major() {
    let out = starxy(&[
        "coupling-sweep",
        "--n",
        "2",
        "--omega-r-ghz",
        "5",
        "--omega-a-ghz",
        "5:6:2",
        "--f-ghz",
        "0.1:0.2:2",
        "--precision",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    // f outer, omega_a inner.
    assert!(rows[0].starts_with("5.000,0.100"));
    assert!(rows[1].starts_with("6.000,0.100"));
    assert!(rows[2].starts_with("5.000,0.200"));
    assert!(rows[3].starts_with("6.000,0.200"));
}

#[test]
fn resonant_sweep_row_follows_the_coupling_bound() {
    // On the delta = 0 row, |J_3| must equal f / sqrt(3) column by column.
    let out = starxy(&[
        "coupling-sweep",
        "--n",
        "3",
        "--omega-r-ghz",
        "5",
        "--omega-a-ghz",
        "5",
        "--f-ghz",
        "0.03:0.3:10",
    ]);
    assert!(out.status.success());
    for row in stdout(&out).lines().skip(1) {
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        let (f, j) = (cells[1], cells[3]);
        assert!((j.abs() - f / 3.0_f64.sqrt()).abs() < 1e-9, "f={f}: J={j}");
    }
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = [
        "coupling-sweep",
        "--n",
        "3",
        "--omega-r-ghz",
        "5",
        "--omega-a-ghz",
        "5:7:11",
        "--f-ghz",
        "0:0.3:7",
    ];
    let a = starxy(&args);
    let b = starxy(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_drives_a_run_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.json");
    std::fs::write(
        &cfg_path,
        r#"{
            "command": "coupling-sweep",
            "n": 3,
            "omega_r_ghz": 5.0,
            "omega_a_ghz": 5.0,
            "f_ghz": 0.2,
            "precision": 7
        }"#,
    )
    .unwrap();

    // Config-only invocation: command comes from the file.
    let from_config = starxy(&["--config", cfg_path.to_str().unwrap()]);
    assert!(from_config.status.success());
    let text = stdout(&from_config);
    assert!(text.contains("-0.1154701"), "{text}");

    // Explicit flag overrides the file value.
    let overridden = starxy(&[
        "coupling-sweep",
        "--config",
        cfg_path.to_str().unwrap(),
        "--f-ghz",
        "0.1",
    ]);
    assert!(overridden.status.success());
    assert!(stdout(&overridden).contains("-0.0577350"));

    // A conflicting subcommand is a validation error.
    let mismatch = starxy(&["tune", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(
        starxy(&[
            "spectrum",
            "--lattice-kind",
            "garbage",
            "--omega-a-ghz",
            "6",
            "--f-ghz",
            "0.1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        starxy(&[
            "spectrum",
            "--lattice-kind",
            "chain",
            "--omega-a-ghz",
            "6",
            "--f-ghz",
            "0.1"
        ])
        .status
        .code(),
        Some(2),
        "missing n_sites"
    );
    assert_eq!(
        starxy(&[
            "bands",
            "--lattice-kind",
            "chain",
            "--n-sites",
            "6",
            "--boundary",
            "open",
            "--omega-a-ghz",
            "6",
            "--f-ghz",
            "0.1",
            "--output",
            "/tmp/starxy-bands-open.csv",
        ])
        .status
        .code(),
        Some(2),
        "open boundary has no Bloch form"
    );
}

#[test]
fn tune_out_of_range_exits_4_with_interval_payload() {
    let out = starxy(&[
        "tune",
        "--n",
        "3",
        "--omega-r-ghz",
        "9",
        "--f-ghz",
        "0.1",
        "--target-j-ghz",
        "-0.08",
        "--ej-max-ghz",
        "50",
        "--ec-ghz",
        "0.25",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let lo = payload["achievable_j_ghz"]["lo"].as_f64().unwrap();
    let hi = payload["achievable_j_ghz"]["hi"].as_f64().unwrap();
    assert!((lo - (-0.1 / 3.0_f64.sqrt())).abs() < 1e-6);
    assert!(hi < 0.0 && hi > lo);
}

#[test]
fn spectrum_header_and_json_format() {
    let out = starxy(&[
        "spectrum",
        "--lattice-kind",
        "chain",
        "--n-sites",
        "4",
        "--omega-a-ghz",
        "6",
        "--f-ghz",
        "0.1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("index,energy_ghz\n"));

    let json_out = starxy(&[
        "spectrum",
        "--lattice-kind",
        "chain",
        "--n-sites",
        "4",
        "--omega-a-ghz",
        "6",
        "--f-ghz",
        "0.1",
        "--format",
        "json",
    ]);
    assert!(json_out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);
    assert!(rows[0]["energy_ghz"].is_f64());
}

#[test]
fn dynamics_headers() {
    let solo = starxy(&[
        "dynamics",
        "--lattice-kind",
        "chain",
        "--n-sites",
        "2",
        "--omega-a-ghz",
        "6",
        "--f-ghz",
        "0.1",
        "--times-ns",
        "0:10:3",
    ]);
    assert!(solo.status.success());
    assert!(stdout(&solo).starts_with("time_ns,pop_0,pop_1,norm\n"));

    let compare = starxy(&[
        "dynamics",
        "--lattice-kind",
        "chain",
        "--n-sites",
        "3",
        "--boundary",
        "periodic",
        "--omega-a-ghz",
        "7",
        "--f-ghz",
        "0.1",
        "--compare",
        "--times-ns",
        "0:10:3",
    ]);
    assert!(compare.status.success());
    assert!(stdout(&compare).starts_with("time_ns,pop_0,pop_1,pop_2,norm,deviation\n"));

    let on_ancilla = starxy(&[
        "dynamics",
        "--lattice-kind",
        "chain",
        "--n-sites",
        "3",
        "--omega-a-ghz",
        "7",
        "--f-ghz",
        "0.1",
        "--compare",
        "--psi0-site",
        "4",
        "--times-ns",
        "0:10:3",
    ]);
    assert_eq!(on_ancilla.status.code(), Some(2));
}

#[test]
fn bands_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bands.csv");
    let out = starxy(&[
        "bands",
        "--lattice-kind",
        "kagome",
        "--l1",
        "2",
        "--l2",
        "2",
        "--boundary",
        "periodic",
        "--omega-a-ghz",
        "6",
        "--f-ghz",
        "0.1",
        "--k1-count",
        "4",
        "--k2-count",
        "4",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("kx,ky,band,energy_ghz\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 4 * 3);

    let sidecar: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("bands.summary.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(sidecar["n_bands"], 3);
    assert_eq!(sidecar["flat_band"]["band"], 2);
}

#[test]
fn transmon_block_supplies_ancilla_frequency() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.json");
    // At flux 0 this transmon sits at 10 GHz; with omega_r = 9 GHz the star
    // detuning is 1 GHz.
    std::fs::write(
        &cfg_path,
        r#"{
            "command": "star-verify",
            "n": 2,
            "omega_r_ghz": 9.0,
            "f_ghz": 0.1,
            "transmon": {"ej_max_ghz": 50.0, "ec_ghz": 0.25, "flux_over_phi0": 0.0}
        }"#,
    )
    .unwrap();
    let out = starxy(&["--config", cfg_path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((report["omega_a_ghz"].as_f64().unwrap() - 10.0).abs() < 1e-9);
    assert_eq!(report["passed"], true);
}

#[test]
fn output_path_is_respected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = starxy(&[
        "coupling-sweep",
        "--omega-a-ghz",
        "5.5",
        "--f-ghz",
        "0.1",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert!(Path::new(&path).exists());
}
