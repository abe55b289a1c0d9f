//! Black-box tests of the installed binary: one spot check per
//! subcommand plus the exit-code and output-format contracts.

use std::path::Path;
use std::process::{Command, Output};

use zenodwell_cli::records::ResultRecord;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zenodwell"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_records(args: &[&str]) -> Vec<ResultRecord> {
    let out = run(args);
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON records")
}

fn record<'a>(records: &'a [ResultRecord], name: &str) -> &'a ResultRecord {
    records
        .iter()
        .find(|r| r.name == name)
        .unwrap_or_else(|| panic!("no record named {name}"))
}

#[test]
fn dwell_tanh_form() {
    let recs = json_records(&["dwell", "--gamma", "1", "--tm", "2", "--form", "derived-tanh", "--json"]);
    let r = record(&recs, "dwell_time");
    assert!((r.value - 0.761594156).abs() < 1e-9);
    assert_eq!(r.unit, "s");
}

#[test]
fn dwell_coth_form_is_default() {
    let recs = json_records(&["dwell", "--gamma", "1", "--tm", "2", "--json"]);
    let r = record(&recs, "dwell_time");
    assert!((r.value - 1.313035285).abs() < 1e-9);
}

#[test]
fn dwell_all_forms_with_duality() {
    let recs = json_records(&["dwell", "--gamma", "1", "--tm", "2", "--all", "--json"]);
    assert!((record(&recs, "dwell_time_paper_coth").value - 1.313035285).abs() < 1e-9);
    assert!((record(&recs, "dwell_time_derived_tanh").value - 0.761594156).abs() < 1e-9);
    assert!((record(&recs, "dwell_time_numeric").value - 0.761594156).abs() < 1e-9);
    assert!((record(&recs, "duality_check").value - 1.0).abs() < 1e-12);
}

#[test]
fn dwell_from_energy_triple() {
    // Gaps of hbar give gamma = 1/s.
    let recs = json_records(&[
        "dwell",
        "--hi",
        "1.054571817e-34J",
        "--hf",
        "0J",
        "--h0",
        "0J",
        "--tm",
        "2",
        "--form",
        "derived-tanh",
        "--json",
    ]);
    assert!((record(&recs, "dwell_time").value - 0.761594156).abs() < 1e-6);
}

#[test]
fn zeno_forms() {
    let recs = json_records(&["zeno", "--delta-h", "1.054571817e-34J", "--json"]);
    assert!((record(&recs, "zeno_time").value - 1.0).abs() < 1e-12);

    let recs = json_records(&["zeno", "--tau-l", "4", "--tau-m", "1", "--json"]);
    assert!((record(&recs, "zeno_time").value - 2.0).abs() < 1e-12);

    let recs = json_records(&["zeno", "--epsilon0", "0.5K", "--json"]);
    let tz = record(&recs, "zeno_time").value;
    assert!((tz - 2.1604184207540624e-11).abs() < 1e-22);
    let ps = record(&recs, "zeno_time_ps").value;
    assert!((ps - 21.604184207540624).abs() < 1e-9);
    assert_eq!(record(&recs, "zeno_time_ps").unit, "ps");
}

#[test]
fn doublewell_defaults_and_curve() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("well.csv");
    let recs = json_records(&[
        "doublewell",
        "--curve",
        curve.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(record(&recs, "xi1").value, 3.0);
    assert_eq!(record(&recs, "xi2").value, 7.5);
    assert_eq!(record(&recs, "epsilon0_over_v0").value, -210.9375);
    assert!((record(&recs, "k0").value - 3.362435).abs() < 1e-6);
    assert!((record(&recs, "bias_coefficient").value - 0.00795).abs() < 1e-5);
    assert_eq!(record(&recs, "tunneling_allowed").value, 1.0);

    let text = std::fs::read_to_string(&curve).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "xi,V_over_V0");
    assert_eq!(text.lines().count(), 502);
    // The sampled curve reaches the barrier top (~108) and the deep
    // minimum (~-210.9375) to within the grid resolution.
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    assert!((max - 108.0).abs() < 0.1, "barrier top {max}");
    assert!((min + 210.9375).abs() < 0.1, "second minimum {min}");
}

#[test]
fn doublewell_absolute_energies_from_si_scales() {
    // m = hbar^2/2, omega0 = 2/hbar, a = 1: beta^2 = 1 and V0 = 1 J.
    let recs = json_records(&[
        "doublewell",
        "--m",
        "5.560608586053407e-69",
        "--omega0",
        "1.8965043136554824e34",
        "--a",
        "1",
        "--json",
    ]);
    let v0 = record(&recs, "v0").value;
    assert!((v0 - 1.0).abs() < 1e-9, "v0 = {v0}");
    assert!((record(&recs, "epsilon0").value + 210.9375).abs() < 1e-6);
    assert!((record(&recs, "h").value + 209.26).abs() < 0.01);
    assert!(recs.iter().any(|r| r.name == "zeno_time_switching"));
}

#[test]
fn survival_worked_pair() {
    let recs = json_records(&["survival", "--tau-z", "1", "--tau-m", "0.01", "--T", "1", "--json"]);
    assert!((record(&recs, "survival_pulsed").value - 0.990049).abs() < 5e-7);
    assert!((record(&recs, "survival_exponential").value - 0.990050).abs() < 5e-7);

    let recs = json_records(&["survival", "--tau-z", "1", "--tau-m", "0", "--T", "1", "--json"]);
    assert_eq!(record(&recs, "survival_pulsed").value, 1.0);
    assert_eq!(record(&recs, "survival_exponential").value, 1.0);
}

#[test]
fn bathsim_trivial_model_stays_put() {
    let recs = json_records(&[
        "bathsim", "--N", "1", "--coupling", "0J", "--dE", "1e-26J", "--t-end", "1e-11s",
        "--dt", "1e-13s", "--json",
    ]);
    assert_eq!(record(&recs, "final_survival").value, 1.0);
}

#[test]
fn bathsim_zeno_ordering_with_pulses() {
    let base = [
        "bathsim", "--N", "16", "--coupling", "1e-25J", "--dE", "1e-26J",
        "--t-end", "1.49e-10s", "--dt", "1.8e-12s", "--json",
    ];
    let single = json_records(&base);
    let p1 = record(&single, "final_survival").value;

    let mut with_pulses = base.to_vec();
    with_pulses.extend(["--pulses", "16"]);
    let pulsed = json_records(&with_pulses);
    let p16 = record(&pulsed, "survival_repeated").value;
    assert!(
        p16 >= p1,
        "measurement must not speed decay: {p16} vs {p1}"
    );
}

#[test]
fn bathsim_rejects_coarse_steps_with_suggestion() {
    let out = run(&[
        "bathsim", "--N", "16", "--coupling", "1e-25J", "--dE", "1e-26J", "--t-end", "1e-10s",
        "--dt", "1e-10s",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("use dt <="), "stderr: {msg}");
}

#[test]
fn sweep_beta2_drives_k0_toward_harmonic_floor() {
    let out = run(&[
        "sweep", "--command", "doublewell", "--sweep", "beta2=0.1:10:7:log",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut k0_column = Vec::new();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == "k0").unwrap();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        k0_column.push(cells[idx].parse::<f64>().unwrap());
    }
    assert_eq!(k0_column.len(), 7);
    let floor = 0.5 * 45.0_f64.sqrt();
    for pair in k0_column.windows(2) {
        assert!(pair[0] > pair[1], "k0 must decrease with beta^2");
    }
    assert!(k0_column.last().unwrap() > &floor);
}

#[test]
fn sweep_single_point_matches_direct_run() {
    let out = run(&["sweep", "--command", "dwell", "--sweep", "gamma=1:1:1", "--tm", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let last = text.lines().last().unwrap();
    let value: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    let direct = json_records(&["dwell", "--gamma", "1", "--tm", "2", "--json"]);
    assert_eq!(value, record(&direct, "dwell_time").value);
}

#[test]
fn sweep_unknown_parameter_is_usage_error() {
    let out = run(&["sweep", "--command", "dwell", "--sweep", "bogus=1:2:5", "--tm", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_monotone_dwell_columns() {
    let out = run(&[
        "sweep", "--command", "dwell", "--sweep", "gamma=0.001:10:20:log", "--tm", "2", "--all",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let tanh_idx = header
        .iter()
        .position(|h| *h == "dwell_time_derived_tanh")
        .unwrap();
    let coth_idx = header
        .iter()
        .position(|h| *h == "dwell_time_paper_coth")
        .unwrap();
    let mut prev_tanh = f64::INFINITY;
    let mut prev_coth = f64::INFINITY;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let tanh: f64 = cells[tanh_idx].parse().unwrap();
        let coth: f64 = cells[coth_idx].parse().unwrap();
        // Increasing gamma at fixed tau shrinks both forms.
        assert!(tanh < prev_tanh);
        assert!(coth < prev_coth);
        prev_tanh = tanh;
        prev_coth = coth;
    }
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# defaults\ngamma = 1\ntm = 2\nform = derived-tanh\n").unwrap();

    let recs = json_records(&["dwell", "--config", cfg.to_str().unwrap(), "--json"]);
    assert!((record(&recs, "dwell_time").value - 0.761594156).abs() < 1e-9);

    // Explicit flag overrides the file.
    let recs = json_records(&[
        "dwell", "--config", cfg.to_str().unwrap(), "--form", "paper-coth", "--json",
    ]);
    assert!((record(&recs, "dwell_time").value - 1.313035285).abs() < 1e-9);
}

#[test]
fn records_csv_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = run(&["zeno", "--epsilon0", "0.5K", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("name,value,unit,formula_ref\n"));
    assert!(text.contains("zeno_time,2.160418420754062e-11,s,"));
}

#[test]
fn help_exits_zero() {
    for args in [&["--help"][..], &["dwell", "--help"][..], &["sweep", "--help"][..]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0));
    }
}

#[test]
fn unknown_flag_exits_two() {
    let out = run(&["dwell", "--gamma", "1", "--tm", "2", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_unit_suffix_exits_two() {
    let out = run(&["dwell", "--gamma", "1", "--tm", "2J"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("s or ps"), "stderr: {msg}");
}

#[test]
fn trajectory_csv_has_contracted_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = run(&[
        "bathsim", "--N", "4", "--coupling", "1e-25J", "--dE", "1e-26J", "--t-end", "1e-12s",
        "--dt", "1e-13s", "--traj", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("t_seconds,re_a0,im_a0,p_survival,bath_norm\n"));
    assert_eq!(text.lines().count(), 12); // header + 11 samples
}

fn assert_deterministic(args: &[&str], path_a: &Path, path_b: &Path) {
    let a = std::fs::read(path_a).unwrap();
    assert!(!a.is_empty());
    let out = run(args);
    assert!(out.status.success());
    let b = std::fs::read(path_b).unwrap();
    assert_eq!(a, b, "outputs differ across identical runs");
}

#[test]
fn curve_csv_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("c1.csv");
    let p2 = dir.path().join("c2.csv");
    let out = run(&["doublewell", "--curve", p1.to_str().unwrap()]);
    assert!(out.status.success());
    assert_deterministic(
        &["doublewell", "--curve", p2.to_str().unwrap()],
        &p1,
        &p2,
    );
}
