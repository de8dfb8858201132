//! Benchmark harness for synthetic tabular data in algorithm-selection settings.
//!
//! The central question this crate answers: if researchers rank a pool of
//! classifiers on a synthetic dataset, do they end up with the same ranking
//! they would have obtained on the real data? Two headline numbers quantify
//! this:
//!
//! - **SRA** (Synthetic Ranking Agreement): the fraction of ordered algorithm
//!   pairs whose performance ordering on the synthetic data matches their
//!   ordering on the real data.
//! - **TSTR** (Train on Synthetic, Test on Real): the mean AUROC of models
//!   trained on the synthetic training split and evaluated on the real test
//!   split.
//!
//! The crate ships a pool of twelve self-contained binary classifiers, a
//! deterministic data layer (CSV ingestion, stratified splits, label-flip
//! noise, a Gaussian-mixture demo generator), the ranking metrics, and an
//! experiment driver that runs the full pipeline, a label-noise sweep, and a
//! champion/challenger selection simulation.
//!
//! Everything is a pure function of its inputs and an explicit 64-bit seed;
//! repeated runs are bit-identical regardless of thread count.

pub mod data;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod models;
pub mod seeds;

pub use data::{Dataset, SplitPair, StandardizationStats};
pub use error::{DataError, ExperimentError, MetricsError, ModelError};
pub use experiment::{EvalConfig, RankingReport, SelectionReport, SweepResult};
pub use metrics::{ConcordanceReport, PerformanceVector};
pub use models::{ModelKind, ModelSpec, ScoreVector, TrainedModel};
