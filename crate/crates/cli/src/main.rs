//! `synthbench` — benchmark a synthetic dataset's usefulness for algorithm
//! selection.
//!
//! Subcommands: `evaluate` (SRA/TSTR report for a real/synthetic pair),
//! `sweep` (label-flip noise sweep), `gen` (demo dataset generator), and
//! `simulate` (champion/challenger selection walk). All reports are
//! machine-readable, embed a run manifest, and reproduce byte-for-byte under
//! the same flags.
//!
//! Exit codes: 0 success; 2 bad flags or unreadable input; 3 degenerate data
//! (single-class split, undefined AUROC). Diagnostics go to stderr, never
//! into a report.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use synthbench::data;
use synthbench::experiment::{self, EvalConfig};
use synthbench::seeds;
use synthbench::ModelSpec;

use synthbench_cli::documents::{EvaluateDocument, SimulateDocument, SweepDocument};
use synthbench_cli::manifest::{DerivedSeeds, RunManifest};
use synthbench_cli::Failure;

#[derive(Parser)]
#[command(
    name = "synthbench",
    version,
    about = "Measure how well a synthetic dataset preserves classifier rankings (SRA) and transfer performance (TSTR)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a synthetic dataset against the real one (JSON report).
    Evaluate(EvaluateArgs),
    /// Sweep label-flip noise probabilities and aggregate SRA/TSTR per p.
    Sweep(SweepArgs),
    /// Generate a Gaussian-mixture demo dataset (optionally a label-flipped copy).
    Gen(GenArgs),
    /// Simulate sequential champion/challenger algorithm selection.
    Simulate(SimulateArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Label column name in the input CSVs.
    #[arg(long = "label-col", default_value = "label")]
    label_col: String,
    /// Model pool: "all" or a comma-separated list of kind names.
    #[arg(long, default_value = "all")]
    models: String,
    /// Train fraction of the stratified split.
    #[arg(long, default_value_t = 0.8)]
    split: f64,
    /// Master seed; every stream in the run derives from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Performance differences of at most this magnitude count as ties.
    #[arg(long = "tie-epsilon", default_value_t = 0.0)]
    tie_epsilon: f64,
    /// Worker threads for model training; 0 uses every core. Never affects
    /// results.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Real dataset (CSV).
    #[arg(long)]
    real: PathBuf,
    /// Synthetic dataset (CSV).
    #[arg(long)]
    synthetic: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Real dataset (CSV).
    #[arg(long)]
    real: PathBuf,
    /// Comma-separated flip probabilities in [0, 0.5).
    #[arg(long = "p-grid", default_value = "0,0.05,0.1,0.15,0.2,0.25,0.3")]
    p_grid: String,
    /// Independent flip repetitions per p.
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct GenArgs {
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Number of rows.
    #[arg(long)]
    n: usize,
    /// Number of features.
    #[arg(long)]
    d: usize,
    /// Class-mean separation along the diagonal direction.
    #[arg(long, default_value_t = 3.0)]
    separation: f64,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write a label-flipped copy (probability P) next to --out.
    #[arg(long)]
    flip: Option<f64>,
    /// Label column name to write.
    #[arg(long = "label-col", default_value = "label")]
    label_col: String,
}

#[derive(Args)]
struct SimulateArgs {
    /// Real dataset (CSV).
    #[arg(long)]
    real: PathBuf,
    /// Synthetic dataset (CSV).
    #[arg(long)]
    synthetic: PathBuf,
    /// Challenger comparisons per run.
    #[arg(long, default_value_t = 20)]
    steps: usize,
    /// Independent selection runs.
    #[arg(long, default_value_t = 200)]
    runs: usize,
    #[command(flatten)]
    common: CommonArgs,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    if let Err(failure) = outcome {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::internal(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    let mut text = content.trim_end_matches('\n').to_string();
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_pretty_json<T: serde::Serialize>(doc: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(doc)
        .map_err(|e| Failure::internal(format!("cannot serialize report: {e}")))
}

fn build_config(common: &CommonArgs) -> Result<EvalConfig, Failure> {
    let pool = ModelSpec::parse_pool(&common.models)?;
    Ok(EvalConfig {
        split_ratio: common.split,
        master_seed: common.seed,
        model_pool: pool,
        tie_epsilon: common.tie_epsilon,
    })
}

fn common_flags(manifest: RunManifest, common: &CommonArgs) -> RunManifest {
    let manifest = manifest
        .flag("label-col", &common.label_col)
        .flag("models", &common.models)
        .flag("split", common.split)
        .flag("seed", common.seed)
        .flag("tie-epsilon", common.tie_epsilon)
        .flag("workers", common.workers);
    match &common.output {
        Some(path) => manifest.flag("output", path.display()),
        None => manifest.flag("output", "stdout"),
    }
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), Failure> {
    let cfg = build_config(&args.common)?;
    let real = data::load_csv(&args.real, &args.common.label_col)?;
    let synthetic = data::load_csv(&args.synthetic, &args.common.label_col)?;

    let report = with_workers(args.common.workers, || {
        experiment::evaluate(&real, &synthetic, &cfg)
    })??;

    let manifest = common_flags(RunManifest::new("evaluate", cfg.master_seed), &args.common)
        .flag("real", args.real.display())
        .flag("synthetic", args.synthetic.display())
        .digest("real", &args.real)?
        .digest("synthetic", &args.synthetic)?
        .pool(&cfg.model_pool)?;
    let manifest = RunManifest {
        derived_seeds: Some(DerivedSeeds {
            split_seed: report.seeds.split_seed,
            model_seeds: report.seeds.model_seeds.iter().cloned().collect(),
        }),
        ..manifest
    };

    let doc = EvaluateDocument::from_report(manifest, &report);
    emit(&args.common.output, &to_pretty_json(&doc)?)
}

fn parse_p_grid(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|cell| {
            let cell = cell.trim();
            cell.parse::<f64>()
                .map_err(|_| Failure::usage(format!("cannot parse p value {cell:?}")))
        })
        .collect()
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let cfg = build_config(&args.common)?;
    let p_grid = parse_p_grid(&args.p_grid)?;
    let real = data::load_csv(&args.real, &args.common.label_col)?;

    let sweep = with_workers(args.common.workers, || {
        experiment::noise_sweep(&real, &p_grid, args.reps, &cfg)
    })??;

    let manifest = common_flags(RunManifest::new("sweep", cfg.master_seed), &args.common)
        .flag("real", args.real.display())
        .flag("p-grid", &args.p_grid)
        .flag("reps", args.reps)
        .flag("format", &args.format)
        .digest("real", &args.real)?
        .pool(&cfg.model_pool)?;

    let doc = SweepDocument::from_result(manifest, &sweep);
    let rendered = match args.format.as_str() {
        "csv" => doc
            .to_csv()
            .map_err(|e| Failure::internal(format!("cannot serialize manifest: {e}")))?,
        _ => to_pretty_json(&doc)?,
    };
    emit(&args.common.output, &rendered)
}

/// `data.csv` -> `data_flipped.csv` (sibling of --out).
fn flipped_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "synthetic".to_string());
    let name = match out.extension() {
        Some(ext) => format!("{stem}_flipped.{}", ext.to_string_lossy()),
        None => format!("{stem}_flipped"),
    };
    out.with_file_name(name)
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let ds = data::gen_gaussian_mixture(args.n, args.d, args.separation, args.seed)?;
    data::write_csv(&ds, &args.out, &args.label_col)?;
    eprintln!("wrote {}", args.out.display());

    if let Some(p) = args.flip {
        let flip_seed = seeds::derive_seed(args.seed, "flip", 0);
        let flipped = data::flip_labels(&ds, p, flip_seed)?;
        let path = flipped_path(&args.out);
        data::write_csv(&flipped, &path, &args.label_col)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Failure> {
    let cfg = build_config(&args.common)?;
    let real = data::load_csv(&args.real, &args.common.label_col)?;
    let synthetic = data::load_csv(&args.synthetic, &args.common.label_col)?;

    let report = with_workers(args.common.workers, || {
        experiment::simulate_selection(&real, &synthetic, &cfg, args.steps, args.runs)
    })??;

    let manifest = common_flags(RunManifest::new("simulate", cfg.master_seed), &args.common)
        .flag("real", args.real.display())
        .flag("synthetic", args.synthetic.display())
        .flag("steps", args.steps)
        .flag("runs", args.runs)
        .digest("real", &args.real)?
        .digest("synthetic", &args.synthetic)?
        .pool(&cfg.model_pool)?;

    let doc = SimulateDocument::from_report(manifest, &report);
    emit(&args.common.output, &to_pretty_json(&doc)?)
}
