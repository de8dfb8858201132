//! End-to-end tests of the `synthbench` binary: exit codes, report schemas,
//! and file round-trips.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use synthbench_cli::documents::{EvaluateDocument, SweepDocument, SWEEP_CSV_HEADER};

const SMALL_POOL: &str = "LDA,GaussianNB,DecisionTree";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_synthbench"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn gen_demo(dir: &Path, name: &str, n: usize) -> PathBuf {
    let path = dir.join(name);
    let out = run(
        &[
            "gen",
            "--out",
            path.to_str().unwrap(),
            "--n",
            &n.to_string(),
            "--d",
            "3",
            "--separation",
            "2",
            "--seed",
            "5",
        ],
        dir,
    );
    assert!(out.status.success(), "gen failed: {}", stderr_str(&out));
    path
}

#[test]
fn gen_writes_header_plus_n_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("demo.csv");
    let out = run(
        &[
            "gen", "--out",
            path.to_str().unwrap(),
            "--n", "100", "--d", "3", "--seed", "1",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 101);
    assert!(lines.iter().all(|l| l.split(',').count() == 4));
    assert_eq!(lines[0], "x1,x2,x3,label");
}

#[test]
fn gen_round_trips_through_load_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 80);
    let loaded = synthbench::data::load_csv(&path, "label").unwrap();
    let original = synthbench::data::gen_gaussian_mixture(80, 3, 2.0, 5).unwrap();
    assert_eq!(loaded, original);
}

#[test]
fn gen_flip_zero_is_identical_except_filename() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("real.csv");
    let out = run(
        &[
            "gen", "--out",
            path.to_str().unwrap(),
            "--n", "50", "--d", "2", "--seed", "2", "--flip", "0",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let real = fs::read(&path).unwrap();
    let flipped = fs::read(dir.path().join("real_flipped.csv")).unwrap();
    assert_eq!(real, flipped);
}

#[test]
fn gen_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["gen", "--out", "x.csv", "--n", "2", "--d", "3"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn evaluate_identity_reports_sra_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 240);
    let out = run(
        &[
            "evaluate",
            "--real",
            path.to_str().unwrap(),
            "--synthetic",
            path.to_str().unwrap(),
            "--models",
            SMALL_POOL,
            "--seed",
            "7",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let doc: EvaluateDocument = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc.sra, 1.0);
    assert_eq!(doc.tstr, doc.trtr);
    assert_eq!(doc.algorithms.len(), 3);
    for a in &doc.algorithms {
        assert_eq!(a.r, a.s);
    }
    assert_eq!(doc.manifest.command, "evaluate");
    assert_eq!(doc.manifest.master_seed, 7);
    assert!(doc.manifest.input_digests["real"].starts_with("sha256:"));
    assert_eq!(doc.manifest.model_pool.len(), 3);
}

#[test]
fn evaluate_report_round_trips_and_reruns_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 240);
    let args = [
        "evaluate",
        "--real",
        path.to_str().unwrap(),
        "--synthetic",
        path.to_str().unwrap(),
        "--models",
        SMALL_POOL,
        "--seed",
        "11",
    ];
    let first = run(&args, dir.path());
    let second = run(&args, dir.path());
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "reports must be byte-identical");

    // Schema round-trip: parse (rejecting unknown fields) and re-serialize.
    let text = stdout_str(&first);
    let doc: EvaluateDocument = serde_json::from_str(&text).unwrap();
    let rendered = serde_json::to_string_pretty(&doc).unwrap();
    assert_eq!(text.trim_end(), rendered);
}

#[test]
fn evaluate_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 240);
    let report_path = dir.path().join("report.json");
    let out = run(
        &[
            "evaluate",
            "--real",
            path.to_str().unwrap(),
            "--synthetic",
            path.to_str().unwrap(),
            "--models",
            SMALL_POOL,
            "--output",
            report_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).is_empty());
    let doc: EvaluateDocument =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(doc.manifest.flags["output"], report_path.to_str().unwrap());
}

#[test]
fn evaluate_rejects_a_pool_of_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 60);
    let out = run(
        &[
            "evaluate",
            "--real",
            path.to_str().unwrap(),
            "--synthetic",
            path.to_str().unwrap(),
            "--models",
            "LogisticRegression",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_str(&out).contains("pool must contain >= 2 models"),
        "stderr: {}",
        stderr_str(&out)
    );
    assert!(stdout_str(&out).is_empty(), "diagnostics must not reach stdout");
}

#[test]
fn evaluate_names_a_missing_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 60);
    let out = run(
        &[
            "evaluate",
            "--real",
            "missing.csv",
            "--synthetic",
            path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("missing.csv"));
}

#[test]
fn evaluate_flags_degenerate_data_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // One lone positive example: the stratified split cannot produce
    // two-class halves.
    let path = dir.path().join("degenerate.csv");
    let mut text = String::from("a,label\n");
    text.push_str("9.0,1\n");
    for i in 0..20 {
        text.push_str(&format!("{i}.0,0\n"));
    }
    fs::write(&path, text).unwrap();
    let good = dir.path().join("good.csv");
    let out = run(
        &[
            "gen", "--out",
            good.to_str().unwrap(),
            "--n", "60", "--d", "1", "--seed", "5",
        ],
        dir.path(),
    );
    assert!(out.status.success());

    let out = run(
        &[
            "evaluate",
            "--real",
            path.to_str().unwrap(),
            "--synthetic",
            good.to_str().unwrap(),
            "--models",
            SMALL_POOL,
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr_str(&out));
    assert!(stderr_str(&out).contains("real"));
}

#[test]
fn evaluate_rejects_unknown_model_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 60);
    let out = run(
        &[
            "evaluate",
            "--real",
            path.to_str().unwrap(),
            "--synthetic",
            path.to_str().unwrap(),
            "--models",
            "LDA,Nonsense",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_str(&out);
    assert!(err.contains("Nonsense") && err.contains("LogisticRegression"));
}

#[test]
fn sweep_single_point_csv_has_exact_header_and_identity_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 240);
    let out = run(
        &[
            "sweep",
            "--real",
            path.to_str().unwrap(),
            "--p-grid",
            "0",
            "--reps",
            "1",
            "--format",
            "csv",
            "--models",
            SMALL_POOL,
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# manifest: "));
    assert_eq!(lines[1], SWEEP_CSV_HEADER);
    assert_eq!(lines.len(), 3);
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(cells[0], "0");
    assert_eq!(cells[1], "1");
    assert_eq!(cells[2], "1"); // sra_mean
    assert_eq!(cells[3], "0"); // sra_std

    // The embedded manifest is itself valid JSON.
    let manifest_json = lines[0].strip_prefix("# manifest: ").unwrap();
    let manifest: synthbench_cli::manifest::RunManifest =
        serde_json::from_str(manifest_json).unwrap();
    assert_eq!(manifest.command, "sweep");
}

#[test]
fn sweep_default_grid_emits_seven_rows_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 160);
    let out = run(
        &[
            "sweep",
            "--real",
            path.to_str().unwrap(),
            "--reps",
            "1",
            "--models",
            "LDA,GaussianNB",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let doc: SweepDocument = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc.rows.len(), 7);
    let ps: Vec<f64> = doc.rows.iter().map(|r| r.p).collect();
    assert_eq!(ps, vec![0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3]);
}

#[test]
fn sweep_rejects_p_outside_noise_regime() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 60);
    for grid in ["0,0.6", "0.5", "-0.1"] {
        let out = run(
            &[
                "sweep",
                "--real",
                path.to_str().unwrap(),
                "--p-grid",
                grid,
                "--reps",
                "1",
            ],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(2), "grid {grid}");
    }
}

#[test]
fn simulate_identity_reaches_full_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_demo(dir.path(), "demo.csv", 240);
    let args = [
        "simulate",
        "--real",
        path.to_str().unwrap(),
        "--synthetic",
        path.to_str().unwrap(),
        "--models",
        SMALL_POOL,
        "--steps",
        "10",
        "--runs",
        "40",
        "--seed",
        "3",
    ];
    let out = run(&args, dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let doc: synthbench_cli::documents::SimulateDocument =
        serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc.final_choice_agreement, 1.0);
    assert_eq!(doc.runs, 40);
    assert_eq!(doc.per_run.len(), 40);

    // Deterministic under fixed seeds.
    let again = run(&args, dir.path());
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn unknown_flags_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["evaluate", "--nope"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
