//! Experiment orchestration: the full real-vs-synthetic evaluation pipeline,
//! the label-flip noise sweep, and the champion/challenger selection
//! simulation.
//!
//! Seed discipline: every consumer derives its stream from
//! (master_seed, role tag, index). The split seed is shared between the real
//! and synthetic datasets, and each model's training seed depends only on its
//! name, so a synthetic dataset that equals the real one reproduces the real
//! results exactly, and the execution schedule can never leak into a report.

use rand::Rng;
use rayon::prelude::*;

use crate::data::{self, Dataset};
use crate::error::ExperimentError;
use crate::metrics::{self, ConcordanceReport, PerformanceVector};
use crate::models::{self, ModelSpec};
use crate::seeds;

/// The p values behind the default noise sweep.
pub const DEFAULT_P_GRID: [f64; 7] = [0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30];

/// Evaluation settings: split ratio, master seed, the algorithm pool, and
/// the tie tolerance used by the ranking comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    pub split_ratio: f64,
    pub master_seed: u64,
    pub model_pool: Vec<ModelSpec>,
    pub tie_epsilon: f64,
}

impl EvalConfig {
    /// Config with the conventional 0.8 split and exact tie comparison.
    pub fn new(master_seed: u64, model_pool: Vec<ModelSpec>) -> EvalConfig {
        EvalConfig {
            split_ratio: 0.8,
            master_seed,
            model_pool,
            tie_epsilon: 0.0,
        }
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        if self.model_pool.len() < 2 {
            return Err(ExperimentError::PoolTooSmall);
        }
        for (i, spec) in self.model_pool.iter().enumerate() {
            if self.model_pool[..i].iter().any(|s| s.name == spec.name) {
                return Err(ExperimentError::DuplicatePoolName {
                    name: spec.name.clone(),
                });
            }
        }
        if !(self.split_ratio > 0.0 && self.split_ratio < 1.0) {
            return Err(ExperimentError::BadConfig {
                reason: format!("split_ratio {} outside (0, 1)", self.split_ratio),
            });
        }
        if !self.tie_epsilon.is_finite() || self.tie_epsilon < 0.0 {
            return Err(ExperimentError::BadConfig {
                reason: format!("tie_epsilon {} must be finite and >= 0", self.tie_epsilon),
            });
        }
        Ok(())
    }
}

/// One pool entry's outcomes: AUROC on real (R), on synthetic (S), and of
/// the synthetic-trained model on the real test set (tstr).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmResult {
    pub name: String,
    pub r: f64,
    pub s: f64,
    pub tstr: f64,
}

/// Seeds derived for one evaluation, echoed for provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedEcho {
    pub split_seed: u64,
    pub model_seeds: Vec<(String, u64)>,
}

/// The full outcome of one real-vs-synthetic evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingReport {
    pub per_algorithm: Vec<AlgorithmResult>,
    pub sra: f64,
    pub tstr: f64,
    pub trtr: f64,
    pub concordance: ConcordanceReport,
    pub config: EvalConfig,
    pub seeds: SeedEcho,
}

impl RankingReport {
    pub fn r_vector(&self) -> PerformanceVector {
        PerformanceVector::new(
            self.per_algorithm.iter().map(|a| a.name.clone()).collect(),
            self.per_algorithm.iter().map(|a| a.r).collect(),
        )
        .expect("report vectors are valid by construction")
    }

    pub fn s_vector(&self) -> PerformanceVector {
        PerformanceVector::new(
            self.per_algorithm.iter().map(|a| a.name.clone()).collect(),
            self.per_algorithm.iter().map(|a| a.s).collect(),
        )
        .expect("report vectors are valid by construction")
    }
}

/// Run the whole pipeline once.
///
/// Splits both datasets with a shared derived seed, trains every pool entry
/// on the real and the synthetic training halves (same per-name seed), and
/// assembles R, S, tstr values plus the SRA/TSTR/TRTR aggregates. Model
/// training is parallelized; results are gathered in pool order, so the
/// report is bit-identical for any worker count.
pub fn evaluate(
    real: &Dataset,
    synthetic: &Dataset,
    cfg: &EvalConfig,
) -> Result<RankingReport, ExperimentError> {
    cfg.validate()?;
    if real.n_features() != synthetic.n_features() {
        return Err(ExperimentError::DimensionMismatch {
            real: real.n_features(),
            synthetic: synthetic.n_features(),
        });
    }

    let split_seed = seeds::derive_seed(cfg.master_seed, "split", 0);
    let data_err = |dataset: &str| {
        let dataset = dataset.to_string();
        move |source| ExperimentError::Data { dataset, source }
    };
    let real_split = data::split(real, cfg.split_ratio, split_seed).map_err(data_err("real"))?;
    let synth_split =
        data::split(synthetic, cfg.split_ratio, split_seed).map_err(data_err("synthetic"))?;

    let results: Vec<AlgorithmResult> = cfg
        .model_pool
        .par_iter()
        .map(|spec| -> Result<AlgorithmResult, ExperimentError> {
            let seed = models::model_seed(cfg.master_seed, &spec.name);
            let model_err = |dataset: &str, source| ExperimentError::Model {
                dataset: dataset.to_string(),
                model: spec.name.clone(),
                source,
            };
            let metric_err = |dataset: &str, source| ExperimentError::Metrics {
                dataset: dataset.to_string(),
                model: spec.name.clone(),
                source,
            };

            let real_model =
                models::train(spec, &real_split.train, seed).map_err(|e| model_err("real", e))?;
            let real_scores = models::score(&real_model, &real_split.test)
                .map_err(|e| model_err("real", e))?;
            let r = metrics::auroc(real_scores.as_slice(), real_split.test.labels())
                .map_err(|e| metric_err("real", e))?;

            let synth_model = models::train(spec, &synth_split.train, seed)
                .map_err(|e| model_err("synthetic", e))?;
            let synth_scores = models::score(&synth_model, &synth_split.test)
                .map_err(|e| model_err("synthetic", e))?;
            let s = metrics::auroc(synth_scores.as_slice(), synth_split.test.labels())
                .map_err(|e| metric_err("synthetic", e))?;

            // TSTR scores the synthetic-trained model against the REAL
            // test half, not the synthetic one.
            let transfer_scores = models::score(&synth_model, &real_split.test)
                .map_err(|e| model_err("synthetic", e))?;
            let tstr = metrics::auroc(transfer_scores.as_slice(), real_split.test.labels())
                .map_err(|e| metric_err("real", e))?;

            Ok(AlgorithmResult {
                name: spec.name.clone(),
                r,
                s,
                tstr,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let names: Vec<String> = results.iter().map(|a| a.name.clone()).collect();
    let r_vec = PerformanceVector::new(names.clone(), results.iter().map(|a| a.r).collect())?;
    let s_vec = PerformanceVector::new(names.clone(), results.iter().map(|a| a.s).collect())?;
    let tstr_vec = PerformanceVector::new(names, results.iter().map(|a| a.tstr).collect())?;

    let concordance = metrics::sra_with_epsilon(&r_vec, &s_vec, cfg.tie_epsilon)?;
    let tstr = metrics::mean_performance(&tstr_vec)?;
    let trtr = metrics::mean_performance(&r_vec)?;

    let model_seeds = cfg
        .model_pool
        .iter()
        .map(|spec| (spec.name.clone(), models::model_seed(cfg.master_seed, &spec.name)))
        .collect();

    Ok(RankingReport {
        per_algorithm: results,
        sra: concordance.sra,
        tstr,
        trtr,
        concordance,
        config: cfg.clone(),
        seeds: SeedEcho {
            split_seed,
            model_seeds,
        },
    })
}

/// Aggregates for one point of the noise sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub p: f64,
    pub repetitions: usize,
    pub sra_mean: f64,
    pub sra_std: f64,
    pub tstr_mean: f64,
    pub tstr_std: f64,
    pub trtr_mean: f64,
}

/// Noise-sweep outcome, aligned with its p grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub p_grid: Vec<f64>,
    pub per_p: Vec<SweepPoint>,
}

fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    // Population convention: a single repetition has spread 0, not NaN.
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Sweep the label-flip probability over `p_grid`, running `repetitions`
/// independent flips per point.
///
/// Cell (p index i, repetition r) flips with the stream derived from
/// (master, "flip/i", r), so extending the grid or the repetition count
/// never changes existing cells. The real split is re-derived identically
/// every time: the real test half is fixed across the whole sweep.
pub fn noise_sweep(
    real: &Dataset,
    p_grid: &[f64],
    repetitions: usize,
    cfg: &EvalConfig,
) -> Result<SweepResult, ExperimentError> {
    if p_grid.is_empty() {
        return Err(ExperimentError::EmptyPGrid);
    }
    for &p in p_grid {
        if !(0.0..0.5).contains(&p) {
            return Err(ExperimentError::POutOfRange { p });
        }
    }
    if repetitions == 0 {
        return Err(ExperimentError::NoRepetitions);
    }

    let mut per_p = Vec::with_capacity(p_grid.len());
    for (p_index, &p) in p_grid.iter().enumerate() {
        let mut sras = Vec::with_capacity(repetitions);
        let mut tstrs = Vec::with_capacity(repetitions);
        let mut trtrs = Vec::with_capacity(repetitions);
        for rep in 0..repetitions {
            let flip_seed =
                seeds::derive_seed(cfg.master_seed, &format!("flip/{p_index}"), rep as u64);
            let synthetic =
                data::flip_labels(real, p, flip_seed).map_err(|source| ExperimentError::Data {
                    dataset: "synthetic".to_string(),
                    source,
                })?;
            let report = evaluate(real, &synthetic, cfg)?;
            sras.push(report.sra);
            tstrs.push(report.tstr);
            trtrs.push(report.trtr);
        }
        let (sra_mean, sra_std) = mean_and_std(&sras);
        let (tstr_mean, tstr_std) = mean_and_std(&tstrs);
        let (trtr_mean, _) = mean_and_std(&trtrs);
        per_p.push(SweepPoint {
            p,
            repetitions,
            sra_mean,
            sra_std,
            tstr_mean,
            tstr_std,
            trtr_mean,
        });
    }

    Ok(SweepResult {
        p_grid: p_grid.to_vec(),
        per_p,
    })
}

/// Final champions of one selection run.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionTrace {
    pub champion_synth: String,
    pub champion_real: String,
}

/// Outcome of the champion/challenger simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionReport {
    pub runs: usize,
    pub steps_per_run: usize,
    pub final_choice_agreement: f64,
    pub per_run: Vec<SelectionTrace>,
}

/// Simulate iterative algorithm development: per run, a researcher starts
/// from a random champion and greets `steps` random challengers, keeping
/// whichever looks strictly better. One walk consults the synthetic
/// performances (S), a shadow walk consults the real ones (R) over the same
/// challenger sequence; agreement is the fraction of runs whose final
/// champions coincide.
pub fn simulate_selection(
    real: &Dataset,
    synthetic: &Dataset,
    cfg: &EvalConfig,
    steps: usize,
    runs: usize,
) -> Result<SelectionReport, ExperimentError> {
    let report = evaluate(real, synthetic, cfg)?;
    selection_walk(
        &report.r_vector(),
        &report.s_vector(),
        steps,
        runs,
        cfg.master_seed,
    )
}

/// The walk itself, over explicit R/S vectors.
///
/// Run r draws from the stream derived from (seed, "selection", r): one
/// initial champion index, then `steps` challenger indices, all uniform over
/// the pool. A challenger replaces the champion only if strictly better.
pub fn selection_walk(
    r: &PerformanceVector,
    s: &PerformanceVector,
    steps: usize,
    runs: usize,
    seed: u64,
) -> Result<SelectionReport, ExperimentError> {
    if steps == 0 || runs == 0 {
        return Err(ExperimentError::BadSelectionParams);
    }
    if r.names() != s.names() || r.len() < 2 {
        return Err(ExperimentError::BadConfig {
            reason: "selection walk needs matching performance vectors with >= 2 entries"
                .to_string(),
        });
    }

    let k = r.len();
    let mut per_run = Vec::with_capacity(runs);
    let mut matches = 0usize;
    for run in 0..runs {
        let mut rng = seeds::rng_for(seed, "selection", run as u64);
        let start = rng.gen_range(0..k);
        let mut champ_synth = start;
        let mut champ_real = start;
        for _ in 0..steps {
            let challenger = rng.gen_range(0..k);
            if s.values()[challenger] > s.values()[champ_synth] {
                champ_synth = challenger;
            }
            if r.values()[challenger] > r.values()[champ_real] {
                champ_real = challenger;
            }
        }
        if champ_synth == champ_real {
            matches += 1;
        }
        per_run.push(SelectionTrace {
            champion_synth: s.names()[champ_synth].clone(),
            champion_real: r.names()[champ_real].clone(),
        });
    }

    Ok(SelectionReport {
        runs,
        steps_per_run: steps,
        final_choice_agreement: matches as f64 / runs as f64,
        per_run,
    })
}
