//! The prediction-algorithm pool: twelve self-contained binary classifiers
//! behind one train/score interface.
//!
//! Every trainer is deterministic in (spec, data, seed) and returns an
//! immutable [`TrainedModel`]. Scores are finite reals where higher means
//! "more likely label 1"; AUROC is rank-based, so each kind is free to score
//! on whatever monotone scale is natural (logits, margins, vote sums, leaf
//! fractions).

mod boosting;
mod ensemble;
mod linear;
mod mlp;
mod naive_bayes;
pub(crate) mod tree;

use serde::Serialize;

use crate::data::{Dataset, StandardizationStats};
use crate::error::ModelError;
use crate::seeds;
use tree::TreeParams;

/// The algorithm families in the pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModelKind {
    LogisticRegression,
    RandomForest,
    #[serde(rename = "GaussianNB")]
    GaussianNb,
    #[serde(rename = "BernoulliNB")]
    BernoulliNb,
    #[serde(rename = "LinearSVM")]
    LinearSvm,
    DecisionTree,
    #[serde(rename = "LDA")]
    Lda,
    AdaBoost,
    Bagging,
    #[serde(rename = "GBM")]
    Gbm,
    #[serde(rename = "MLP")]
    Mlp,
    NewtonBoostedTrees,
}

impl ModelKind {
    pub const ALL: [ModelKind; 12] = [
        ModelKind::LogisticRegression,
        ModelKind::RandomForest,
        ModelKind::GaussianNb,
        ModelKind::BernoulliNb,
        ModelKind::LinearSvm,
        ModelKind::DecisionTree,
        ModelKind::Lda,
        ModelKind::AdaBoost,
        ModelKind::Bagging,
        ModelKind::Gbm,
        ModelKind::Mlp,
        ModelKind::NewtonBoostedTrees,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::LogisticRegression => "LogisticRegression",
            ModelKind::RandomForest => "RandomForest",
            ModelKind::GaussianNb => "GaussianNB",
            ModelKind::BernoulliNb => "BernoulliNB",
            ModelKind::LinearSvm => "LinearSVM",
            ModelKind::DecisionTree => "DecisionTree",
            ModelKind::Lda => "LDA",
            ModelKind::AdaBoost => "AdaBoost",
            ModelKind::Bagging => "Bagging",
            ModelKind::Gbm => "GBM",
            ModelKind::Mlp => "MLP",
            ModelKind::NewtonBoostedTrees => "NewtonBoostedTrees",
        }
    }

    pub fn parse(name: &str) -> Result<ModelKind, ModelError> {
        ModelKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == name)
            .ok_or_else(|| ModelError::UnknownKind {
                name: name.to_string(),
                valid: ModelKind::ALL
                    .iter()
                    .map(|k| k.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    /// Kinds whose trainers standardize inputs with train-set statistics.
    fn is_scale_sensitive(&self) -> bool {
        matches!(
            self,
            ModelKind::LogisticRegression | ModelKind::LinearSvm | ModelKind::Lda | ModelKind::Mlp
        )
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogisticParams {
    pub l2: f64,
    pub learning_rate: f64,
    pub epochs: usize,
}

impl Default for LogisticParams {
    fn default() -> Self {
        LogisticParams {
            l2: 1e-4,
            learning_rate: 0.1,
            epochs: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 100,
            max_depth: 8,
            min_leaf: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianNbParams {
    pub var_smoothing: f64,
}

impl Default for GaussianNbParams {
    fn default() -> Self {
        GaussianNbParams { var_smoothing: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernoulliNbParams {
    pub alpha: f64,
}

impl Default for BernoulliNbParams {
    fn default() -> Self {
        BernoulliNbParams { alpha: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SvmParams {
    pub l2: f64,
    pub passes: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            l2: 1e-4,
            passes: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartParams {
    pub max_depth: usize,
    pub min_leaf: usize,
}

impl Default for CartParams {
    fn default() -> Self {
        CartParams {
            max_depth: 8,
            min_leaf: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LdaParams {
    pub ridge: f64,
}

impl Default for LdaParams {
    fn default() -> Self {
        LdaParams { ridge: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdaBoostParams {
    pub n_stumps: usize,
}

impl Default for AdaBoostParams {
    fn default() -> Self {
        AdaBoostParams { n_stumps: 50 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaggingParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
}

impl Default for BaggingParams {
    fn default() -> Self {
        BaggingParams {
            n_trees: 50,
            max_depth: 8,
            min_leaf: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GbmParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
    pub shrinkage: f64,
}

impl Default for GbmParams {
    fn default() -> Self {
        GbmParams {
            n_trees: 100,
            max_depth: 3,
            min_leaf: 5,
            shrinkage: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MlpParams {
    pub hidden: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch: usize,
    /// Standardized inputs are clamped to [-clamp, clamp] at train and
    /// score time to guard against saturation.
    pub clamp: f64,
}

impl Default for MlpParams {
    fn default() -> Self {
        MlpParams {
            hidden: 32,
            learning_rate: 0.01,
            epochs: 200,
            batch: 32,
            clamp: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
    pub lambda: f64,
    pub shrinkage: f64,
}

impl Default for NewtonParams {
    fn default() -> Self {
        NewtonParams {
            n_trees: 100,
            max_depth: 3,
            min_leaf: 1,
            lambda: 1.0,
            shrinkage: 0.1,
        }
    }
}

/// A kind plus its hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum ModelConfig {
    LogisticRegression(LogisticParams),
    RandomForest(ForestParams),
    #[serde(rename = "GaussianNB")]
    GaussianNb(GaussianNbParams),
    #[serde(rename = "BernoulliNB")]
    BernoulliNb(BernoulliNbParams),
    #[serde(rename = "LinearSVM")]
    LinearSvm(SvmParams),
    DecisionTree(CartParams),
    #[serde(rename = "LDA")]
    Lda(LdaParams),
    AdaBoost(AdaBoostParams),
    Bagging(BaggingParams),
    #[serde(rename = "GBM")]
    Gbm(GbmParams),
    #[serde(rename = "MLP")]
    Mlp(MlpParams),
    NewtonBoostedTrees(NewtonParams),
}

impl ModelConfig {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelConfig::LogisticRegression(_) => ModelKind::LogisticRegression,
            ModelConfig::RandomForest(_) => ModelKind::RandomForest,
            ModelConfig::GaussianNb(_) => ModelKind::GaussianNb,
            ModelConfig::BernoulliNb(_) => ModelKind::BernoulliNb,
            ModelConfig::LinearSvm(_) => ModelKind::LinearSvm,
            ModelConfig::DecisionTree(_) => ModelKind::DecisionTree,
            ModelConfig::Lda(_) => ModelKind::Lda,
            ModelConfig::AdaBoost(_) => ModelKind::AdaBoost,
            ModelConfig::Bagging(_) => ModelKind::Bagging,
            ModelConfig::Gbm(_) => ModelKind::Gbm,
            ModelConfig::Mlp(_) => ModelKind::Mlp,
            ModelConfig::NewtonBoostedTrees(_) => ModelKind::NewtonBoostedTrees,
        }
    }

    pub fn defaults_for(kind: ModelKind) -> ModelConfig {
        match kind {
            ModelKind::LogisticRegression => {
                ModelConfig::LogisticRegression(LogisticParams::default())
            }
            ModelKind::RandomForest => ModelConfig::RandomForest(ForestParams::default()),
            ModelKind::GaussianNb => ModelConfig::GaussianNb(GaussianNbParams::default()),
            ModelKind::BernoulliNb => ModelConfig::BernoulliNb(BernoulliNbParams::default()),
            ModelKind::LinearSvm => ModelConfig::LinearSvm(SvmParams::default()),
            ModelKind::DecisionTree => ModelConfig::DecisionTree(CartParams::default()),
            ModelKind::Lda => ModelConfig::Lda(LdaParams::default()),
            ModelKind::AdaBoost => ModelConfig::AdaBoost(AdaBoostParams::default()),
            ModelKind::Bagging => ModelConfig::Bagging(BaggingParams::default()),
            ModelKind::Gbm => ModelConfig::Gbm(GbmParams::default()),
            ModelKind::Mlp => ModelConfig::Mlp(MlpParams::default()),
            ModelKind::NewtonBoostedTrees => {
                ModelConfig::NewtonBoostedTrees(NewtonParams::default())
            }
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let fail = |reason: String| {
            Err(ModelError::BadHyperparameter {
                kind: self.kind().as_str().to_string(),
                reason,
            })
        };
        let positive = |value: f64, what: &str| -> Result<(), ModelError> {
            if value > 0.0 && value.is_finite() {
                Ok(())
            } else {
                fail(format!("{what} must be positive, got {value}"))
            }
        };
        let non_negative = |value: f64, what: &str| -> Result<(), ModelError> {
            if value >= 0.0 && value.is_finite() {
                Ok(())
            } else {
                fail(format!("{what} must be >= 0, got {value}"))
            }
        };
        let at_least_one = |value: usize, what: &str| -> Result<(), ModelError> {
            if value >= 1 {
                Ok(())
            } else {
                fail(format!("{what} must be >= 1"))
            }
        };

        match self {
            ModelConfig::LogisticRegression(p) => {
                non_negative(p.l2, "l2")?;
                positive(p.learning_rate, "learning_rate")?;
                at_least_one(p.epochs, "epochs")
            }
            ModelConfig::RandomForest(p) => {
                at_least_one(p.n_trees, "n_trees")?;
                at_least_one(p.max_depth, "max_depth")?;
                at_least_one(p.min_leaf, "min_leaf")
            }
            ModelConfig::GaussianNb(p) => positive(p.var_smoothing, "var_smoothing"),
            ModelConfig::BernoulliNb(p) => positive(p.alpha, "alpha"),
            ModelConfig::LinearSvm(p) => {
                positive(p.l2, "l2")?;
                at_least_one(p.passes, "passes")
            }
            ModelConfig::DecisionTree(p) => {
                at_least_one(p.max_depth, "max_depth")?;
                at_least_one(p.min_leaf, "min_leaf")
            }
            ModelConfig::Lda(p) => non_negative(p.ridge, "ridge"),
            ModelConfig::AdaBoost(p) => at_least_one(p.n_stumps, "n_stumps"),
            ModelConfig::Bagging(p) => {
                at_least_one(p.n_trees, "n_trees")?;
                at_least_one(p.max_depth, "max_depth")?;
                at_least_one(p.min_leaf, "min_leaf")
            }
            ModelConfig::Gbm(p) => {
                at_least_one(p.n_trees, "n_trees")?;
                at_least_one(p.max_depth, "max_depth")?;
                at_least_one(p.min_leaf, "min_leaf")?;
                positive(p.shrinkage, "shrinkage")
            }
            ModelConfig::Mlp(p) => {
                at_least_one(p.hidden, "hidden")?;
                positive(p.learning_rate, "learning_rate")?;
                at_least_one(p.epochs, "epochs")?;
                at_least_one(p.batch, "batch")?;
                positive(p.clamp, "clamp")
            }
            ModelConfig::NewtonBoostedTrees(p) => {
                at_least_one(p.n_trees, "n_trees")?;
                at_least_one(p.max_depth, "max_depth")?;
                at_least_one(p.min_leaf, "min_leaf")?;
                non_negative(p.lambda, "lambda")?;
                positive(p.shrinkage, "shrinkage")
            }
        }
    }
}

/// One entry of the algorithm pool: a display name plus a configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSpec {
    pub name: String,
    #[serde(flatten)]
    pub config: ModelConfig,
}

impl ModelSpec {
    /// A spec with default hyperparameters, named after its kind.
    pub fn with_defaults(kind: ModelKind) -> ModelSpec {
        ModelSpec {
            name: kind.as_str().to_string(),
            config: ModelConfig::defaults_for(kind),
        }
    }

    pub fn named(name: impl Into<String>, config: ModelConfig) -> ModelSpec {
        ModelSpec {
            name: name.into(),
            config,
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.config.kind()
    }

    /// All twelve kinds with their default hyperparameters.
    pub fn default_pool() -> Vec<ModelSpec> {
        ModelKind::ALL.iter().map(|&k| Self::with_defaults(k)).collect()
    }

    /// Parse a pool selection string: `all` or a comma-separated list of
    /// kind names.
    pub fn parse_pool(selection: &str) -> Result<Vec<ModelSpec>, ModelError> {
        let trimmed = selection.trim();
        if trimmed.is_empty() {
            return Err(ModelError::EmptyPool);
        }
        if trimmed == "all" {
            return Ok(Self::default_pool());
        }
        trimmed
            .split(',')
            .map(|name| ModelKind::parse(name.trim()).map(Self::with_defaults))
            .collect()
    }
}

/// Finite per-row scores aligned with a test set.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    scores: Vec<f64>,
}

impl ScoreVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

#[derive(Debug, Clone)]
enum Fitted {
    Linear(linear::LinearModel),
    GaussianNb(naive_bayes::GaussianNbModel),
    BernoulliNb(naive_bayes::BernoulliNbModel),
    Tree(tree::Tree),
    Bagged(ensemble::BaggedTrees),
    AdaBoost(ensemble::AdaBoostModel),
    Boosted(boosting::BoostedTrees),
    Mlp(mlp::MlpModel),
}

/// An immutable fitted scorer: spec echo, bound preprocessing, and the
/// kind-specific parameters.
#[derive(Debug, Clone)]
pub struct TrainedModel {
    spec: ModelSpec,
    n_features: usize,
    preprocessing: Option<StandardizationStats>,
    input_clamp: Option<f64>,
    fitted: Fitted,
}

impl TrainedModel {
    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    /// Standardization statistics bound at training time, if any.
    pub fn preprocessing(&self) -> Option<&StandardizationStats> {
        self.preprocessing.as_ref()
    }

    fn score_prepared_row(&self, row: &[f64]) -> f64 {
        match &self.fitted {
            Fitted::Linear(m) => m.score_row(row),
            Fitted::GaussianNb(m) => m.score_row(row),
            Fitted::BernoulliNb(m) => m.score_row(row),
            Fitted::Tree(t) => t.predict_row(row),
            Fitted::Bagged(m) => m.score_row(row),
            Fitted::AdaBoost(m) => m.score_row(row),
            Fitted::Boosted(m) => m.score_row(row),
            Fitted::Mlp(m) => m.score_row(row),
        }
    }
}

fn clamp_features(ds: &Dataset, limit: f64) -> Dataset {
    let clamped: Vec<f64> = ds
        .features_flat()
        .iter()
        .map(|&v| v.clamp(-limit, limit))
        .collect();
    Dataset::from_flat_unchecked(
        clamped,
        ds.labels().to_vec(),
        ds.feature_names().to_vec(),
        ds.n_rows(),
        ds.n_features(),
    )
}

/// Train a model. Deterministic in (spec, train_set, seed); kinds that need
/// randomness derive their own streams from `seed`.
pub fn train(spec: &ModelSpec, train_set: &Dataset, seed: u64) -> Result<TrainedModel, ModelError> {
    spec.config.validate()?;
    let (zeros, ones) = train_set.class_indices();
    if zeros.is_empty() || ones.is_empty() {
        return Err(ModelError::SingleClassTrainingSet {
            kind: spec.kind().as_str().to_string(),
        });
    }

    let kind = spec.kind();
    let mut preprocessing = None;
    let mut input_clamp = None;
    let mut owned; // standardized/clamped copy, when one is needed
    let work: &Dataset = if kind.is_scale_sensitive() {
        let stats = StandardizationStats::fit(train_set);
        owned = stats.apply(train_set);
        if let ModelConfig::Mlp(p) = &spec.config {
            owned = clamp_features(&owned, p.clamp);
            input_clamp = Some(p.clamp);
        }
        preprocessing = Some(stats);
        &owned
    } else {
        train_set
    };

    let fitted = match &spec.config {
        ModelConfig::LogisticRegression(p) => Fitted::Linear(linear::fit_logistic(
            work,
            p.l2,
            p.learning_rate,
            p.epochs,
        )?),
        ModelConfig::RandomForest(p) => Fitted::Bagged(ensemble::fit_bagged_trees(
            work,
            p.n_trees,
            TreeParams {
                max_depth: p.max_depth,
                min_leaf: p.min_leaf,
            },
            Some(ensemble::forest_feature_budget(work.n_features())),
            seed,
        )?),
        ModelConfig::GaussianNb(p) => {
            Fitted::GaussianNb(naive_bayes::fit_gaussian_nb(work, p.var_smoothing)?)
        }
        ModelConfig::BernoulliNb(p) => {
            Fitted::BernoulliNb(naive_bayes::fit_bernoulli_nb(work, p.alpha)?)
        }
        ModelConfig::LinearSvm(p) => {
            Fitted::Linear(linear::fit_linear_svm(work, p.l2, p.passes, seed)?)
        }
        ModelConfig::DecisionTree(p) => {
            let criterion = tree::GiniCriterion {
                labels: work.labels(),
                weights: None,
            };
            Fitted::Tree(tree::grow_tree(
                work,
                (0..work.n_rows()).collect(),
                &criterion,
                TreeParams {
                    max_depth: p.max_depth,
                    min_leaf: p.min_leaf,
                },
                None,
                None,
            ))
        }
        ModelConfig::Lda(p) => Fitted::Linear(linear::fit_lda(work, p.ridge)?),
        ModelConfig::AdaBoost(p) => Fitted::AdaBoost(ensemble::fit_adaboost(work, p.n_stumps)?),
        ModelConfig::Bagging(p) => Fitted::Bagged(ensemble::fit_bagged_trees(
            work,
            p.n_trees,
            TreeParams {
                max_depth: p.max_depth,
                min_leaf: p.min_leaf,
            },
            None,
            seed,
        )?),
        ModelConfig::Gbm(p) => Fitted::Boosted(boosting::fit_gbm(
            work,
            p.n_trees,
            TreeParams {
                max_depth: p.max_depth,
                min_leaf: p.min_leaf,
            },
            p.shrinkage,
        )?),
        ModelConfig::Mlp(p) => Fitted::Mlp(mlp::fit_mlp(
            work,
            p.hidden,
            p.learning_rate,
            p.epochs,
            p.batch,
            seed,
        )?),
        ModelConfig::NewtonBoostedTrees(p) => Fitted::Boosted(boosting::fit_newton_boosted(
            work,
            p.n_trees,
            TreeParams {
                max_depth: p.max_depth,
                min_leaf: p.min_leaf,
            },
            p.lambda,
            p.shrinkage,
        )?),
    };

    Ok(TrainedModel {
        spec: spec.clone(),
        n_features: train_set.n_features(),
        preprocessing,
        input_clamp,
        fitted,
    })
}

/// Score every row of `data` with a trained model.
pub fn score(model: &TrainedModel, data: &Dataset) -> Result<ScoreVector, ModelError> {
    if data.n_features() != model.n_features {
        return Err(ModelError::ScoreDimensionMismatch {
            expected: model.n_features,
            got: data.n_features(),
        });
    }
    let mut buffer = Vec::with_capacity(model.n_features);
    let mut scores = Vec::with_capacity(data.n_rows());
    for i in 0..data.n_rows() {
        let raw = data.row(i);
        let value = match &model.preprocessing {
            Some(stats) => {
                stats.apply_row(raw, &mut buffer);
                if let Some(limit) = model.input_clamp {
                    for v in buffer.iter_mut() {
                        *v = v.clamp(-limit, limit);
                    }
                }
                model.score_prepared_row(&buffer)
            }
            None => model.score_prepared_row(raw),
        };
        if !value.is_finite() {
            return Err(ModelError::NumericalFailure {
                kind: model.spec.kind().as_str().to_string(),
                quantity: "score".to_string(),
                iteration: i,
            });
        }
        scores.push(value);
    }
    Ok(ScoreVector { scores })
}

/// Per-model training seed, independent of pool order: (master, model name).
pub fn model_seed(master_seed: u64, model_name: &str) -> u64 {
    seeds::derive_seed(master_seed, &format!("train/{model_name}"), 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo(n: usize, d: usize, separation: f64, seed: u64) -> Dataset {
        crate::data::gen_gaussian_mixture(n, d, separation, seed).unwrap()
    }

    fn train_auroc(spec: &ModelSpec, ds: &Dataset, seed: u64) -> f64 {
        let model = train(spec, ds, seed).unwrap();
        let scores = score(&model, ds).unwrap();
        crate::metrics::auroc(scores.as_slice(), ds.labels()).unwrap()
    }

    #[test]
    fn gaussian_nb_orders_separable_points() {
        let ds = Dataset::new(
            vec![vec![-1.0], vec![-1.0], vec![-1.0], vec![1.0], vec![1.0], vec![1.0]],
            vec![0, 0, 0, 1, 1, 1],
            vec!["x".into()],
        )
        .unwrap();
        let model = train(&ModelSpec::with_defaults(ModelKind::GaussianNb), &ds, 0).unwrap();
        let probe = Dataset::new(
            vec![vec![1.0], vec![-1.0]],
            vec![1, 0],
            vec!["x".into()],
        )
        .unwrap();
        let scores = score(&model, &probe).unwrap();
        assert!(scores.as_slice()[0] > scores.as_slice()[1]);
    }

    #[test]
    fn logistic_ranks_a_separable_set_perfectly() {
        // 20 points, two clusters with margin well over 1.
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..10 {
            rows.push(vec![-2.0 - 0.1 * i as f64, 1.0 + 0.05 * i as f64]);
            labels.push(0);
            rows.push(vec![2.0 + 0.1 * i as f64, -1.0 - 0.05 * i as f64]);
            labels.push(1);
        }
        let ds = Dataset::new(rows, labels, vec!["x".into(), "y".into()]).unwrap();
        let spec = ModelSpec::with_defaults(ModelKind::LogisticRegression);
        assert_eq!(train_auroc(&spec, &ds, 0), 1.0);

        // Every class-1 score above every class-0 score.
        let model = train(&spec, &ds, 0).unwrap();
        let scores = score(&model, &ds).unwrap();
        let min_pos = scores
            .as_slice()
            .iter()
            .zip(ds.labels())
            .filter(|(_, &y)| y == 1)
            .map(|(s, _)| *s)
            .fold(f64::INFINITY, f64::min);
        let max_neg = scores
            .as_slice()
            .iter()
            .zip(ds.labels())
            .filter(|(_, &y)| y == 0)
            .map(|(s, _)| *s)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(min_pos > max_neg);
    }

    #[test]
    fn decision_tree_depth_gates_xor() {
        let xor = Dataset::new(
            vec![
                vec![0.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
            ],
            vec![0, 1, 1, 0],
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        let stump = ModelSpec::named(
            "stump",
            ModelConfig::DecisionTree(CartParams {
                max_depth: 1,
                min_leaf: 1,
            }),
        );
        assert!(train_auroc(&stump, &xor, 0) <= 0.75);

        let two_level = ModelSpec::named(
            "two-level",
            ModelConfig::DecisionTree(CartParams {
                max_depth: 2,
                min_leaf: 1,
            }),
        );
        assert_eq!(train_auroc(&two_level, &xor, 0), 1.0);
    }

    #[test]
    fn every_kind_trains_and_scores_deterministically() {
        let ds = demo(120, 3, 3.0, 41);
        let probe = demo(40, 3, 3.0, 42);
        for spec in ModelSpec::default_pool() {
            let seed = model_seed(7, &spec.name);
            let a = train(&spec, &ds, seed).unwrap();
            let b = train(&spec, &ds, seed).unwrap();
            let sa = score(&a, &probe).unwrap();
            let sb = score(&b, &probe).unwrap();
            assert_eq!(sa, sb, "{} is not deterministic", spec.name);
            // Scoring twice with the same model is also bitwise stable.
            assert_eq!(sa, score(&a, &probe).unwrap(), "{}", spec.name);
        }
    }

    #[test]
    fn label_inversion_flips_auroc_for_symmetric_kinds() {
        let train_set = demo(300, 4, 2.5, 8);
        let test_set = demo(150, 4, 2.5, 9);
        for kind in [
            ModelKind::LogisticRegression,
            ModelKind::Lda,
            ModelKind::GaussianNb,
            ModelKind::LinearSvm,
        ] {
            let spec = ModelSpec::with_defaults(kind);
            let seed = model_seed(3, &spec.name);

            let model = train(&spec, &train_set, seed).unwrap();
            let auroc = crate::metrics::auroc(
                score(&model, &test_set).unwrap().as_slice(),
                test_set.labels(),
            )
            .unwrap();

            let inverted_labels: Vec<u8> = train_set.labels().iter().map(|&y| 1 - y).collect();
            let inverted = Dataset::new(
                (0..train_set.n_rows()).map(|i| train_set.row(i).to_vec()).collect(),
                inverted_labels,
                train_set.feature_names().to_vec(),
            )
            .unwrap();
            let model_inv = train(&spec, &inverted, seed).unwrap();
            let auroc_inv = crate::metrics::auroc(
                score(&model_inv, &test_set).unwrap().as_slice(),
                test_set.labels(),
            )
            .unwrap();

            assert!(
                (auroc + auroc_inv - 1.0).abs() < 1e-9,
                "{kind}: {auroc} + {auroc_inv} != 1"
            );
        }
    }

    #[test]
    fn one_tree_bagging_equals_a_decision_tree_on_its_bootstrap_sample() {
        let ds = demo(50, 3, 2.0, 6);
        let probe = demo(30, 3, 2.0, 7);
        let seed = 91;

        let bagging = ModelSpec::named(
            "bagging-1",
            ModelConfig::Bagging(BaggingParams {
                n_trees: 1,
                max_depth: 8,
                min_leaf: 5,
            }),
        );
        let ensemble_scores = score(&train(&bagging, &ds, seed).unwrap(), &probe).unwrap();

        // Reconstruct the one bootstrap sample the ensemble drew and train
        // a plain tree on it.
        let mut rng = crate::seeds::rng_for(seed, "tree", 0);
        let indices = tree::bootstrap_indices(&mut rng, ds.n_rows());
        let sample = ds.subset(&indices);
        let single = ModelSpec::named(
            "single",
            ModelConfig::DecisionTree(CartParams {
                max_depth: 8,
                min_leaf: 5,
            }),
        );
        let tree_scores = score(&train(&single, &sample, 0).unwrap(), &probe).unwrap();

        assert_eq!(ensemble_scores, tree_scores);
    }

    #[test]
    fn mlp_scores_stay_finite_on_extreme_inputs() {
        let ds = demo(200, 3, 3.0, 11);
        let spec = ModelSpec::with_defaults(ModelKind::Mlp);
        let model = train(&spec, &ds, 1).unwrap();
        let extreme = Dataset::new(
            vec![
                vec![1e6, -1e6, 1e6],
                vec![-1e6, 1e6, -1e6],
                vec![0.0, 0.0, 0.0],
            ],
            vec![0, 1, 0],
            vec!["x1".into(), "x2".into(), "x3".into()],
        )
        .unwrap();
        let scores = score(&model, &extreme).unwrap();
        assert!(scores.as_slice().iter().all(|s| s.is_finite()));
    }

    #[test]
    fn training_rejects_single_class_sets() {
        let ds = Dataset::new(
            vec![vec![0.0], vec![1.0]],
            vec![1, 1],
            vec!["x".into()],
        )
        .unwrap();
        let err = train(&ModelSpec::with_defaults(ModelKind::DecisionTree), &ds, 0).unwrap_err();
        assert!(matches!(err, ModelError::SingleClassTrainingSet { .. }));
        assert!(err.is_degenerate());
    }

    #[test]
    fn scoring_rejects_dimension_mismatch() {
        let ds = demo(50, 3, 2.0, 2);
        let model = train(&ModelSpec::with_defaults(ModelKind::Lda), &ds, 0).unwrap();
        let other = demo(10, 2, 2.0, 3);
        assert!(matches!(
            score(&model, &other),
            Err(ModelError::ScoreDimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn hyperparameter_validation_catches_nonsense() {
        let bad = ModelSpec::named(
            "bad",
            ModelConfig::Gbm(GbmParams {
                n_trees: 0,
                ..GbmParams::default()
            }),
        );
        let ds = demo(20, 2, 1.0, 0);
        assert!(matches!(
            train(&bad, &ds, 0),
            Err(ModelError::BadHyperparameter { .. })
        ));

        let bad_rate = ModelSpec::named(
            "bad-rate",
            ModelConfig::LogisticRegression(LogisticParams {
                learning_rate: 0.0,
                ..LogisticParams::default()
            }),
        );
        assert!(matches!(
            train(&bad_rate, &ds, 0),
            Err(ModelError::BadHyperparameter { .. })
        ));
    }

    #[test]
    fn pool_parsing() {
        let all = ModelSpec::parse_pool("all").unwrap();
        assert_eq!(all.len(), 12);
        let names: Vec<&str> = all.iter().map(|s| s.name.as_str()).collect();
        assert!(names.contains(&"LogisticRegression"));
        assert!(names.contains(&"NewtonBoostedTrees"));

        let some = ModelSpec::parse_pool("LDA, GBM").unwrap();
        assert_eq!(some.len(), 2);
        assert_eq!(some[0].kind(), ModelKind::Lda);

        let err = ModelSpec::parse_pool("LDA,Nope").unwrap_err();
        match &err {
            ModelError::UnknownKind { name, valid } => {
                assert_eq!(name, "Nope");
                assert!(valid.contains("LogisticRegression"));
            }
            other => panic!("unexpected {other:?}"),
        }

        assert!(matches!(
            ModelSpec::parse_pool("  "),
            Err(ModelError::EmptyPool)
        ));
    }
}
