//! Error types for the data, model, metric, and experiment layers.
//!
//! Degenerate-data conditions (a class with too few examples, a single-class
//! test half, undefined AUROC) are distinguished from configuration or input
//! errors so front ends can map them to a dedicated exit code.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("{path}: no label column named {name:?} in header")]
    MissingLabelColumn { path: String, name: String },
    #[error("{path}: label column {name:?} appears more than once in header")]
    DuplicateLabelColumn { path: String, name: String },
    #[error("{path}: duplicate feature name {name:?} in header")]
    DuplicateFeatureName { path: String, name: String },
    #[error("{path}, line {line}: expected {expected} columns, found {found}")]
    ColumnCount {
        path: String,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("{path}, line {line}, column {column:?}: cannot parse {value:?} as a finite number")]
    BadCell {
        path: String,
        line: usize,
        column: String,
        value: String,
    },
    #[error("{path}, line {line}: label value {value:?} is not 0 or 1")]
    BadLabel {
        path: String,
        line: usize,
        value: String,
    },
    #[error("{path}: no data rows after the header")]
    EmptyBody { path: String },
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("dataset must have at least one feature")]
    NoFeatures,
    #[error("feature matrix row {row} has {found} values, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("non-finite feature value at row {row}, column {column}")]
    NonFiniteFeature { row: usize, column: usize },
    #[error("label at row {row} is {value}, must be 0 or 1")]
    LabelOutOfRange { row: usize, value: u8 },
    #[error("expected {expected} feature names, got {got}")]
    FeatureNameCount { expected: usize, got: usize },
    #[error("split ratio {ratio} is outside (0, 1)")]
    BadSplitRatio { ratio: f64 },
    #[error("class {class} has {count} examples; stratified splitting needs at least 2")]
    ClassTooSmall { class: u8, count: usize },
    #[error("ratio {ratio} leaves class {class} with an empty train or test half")]
    DegenerateSplit { ratio: f64, class: u8 },
    #[error("flip probability {p} is outside [0, 1]")]
    BadFlipProbability { p: f64 },
    #[error("feature dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("generator needs n >= 4, got {n}")]
    GeneratorTooSmall { n: usize },
    #[error("generator needs d >= 1")]
    GeneratorNoFeatures,
    #[error("generator separation must be finite and >= 0, got {separation}")]
    BadSeparation { separation: f64 },
}

impl DataError {
    /// True for conditions caused by degenerate data rather than bad input.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            DataError::ClassTooSmall { .. } | DataError::DegenerateSplit { .. }
        )
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("{kind}: training set contains a single class")]
    SingleClassTrainingSet { kind: String },
    #[error("{kind}: invalid hyperparameter: {reason}")]
    BadHyperparameter { kind: String, reason: String },
    #[error("{kind}: non-finite {quantity} at iteration {iteration}")]
    NumericalFailure {
        kind: String,
        quantity: String,
        iteration: usize,
    },
    #[error("scoring expects {expected} features, got {got}")]
    ScoreDimensionMismatch { expected: usize, got: usize },
    #[error("unknown model kind {name:?}; valid kinds: {valid}")]
    UnknownKind { name: String, valid: String },
    #[error("model pool selection is empty")]
    EmptyPool,
}

impl ModelError {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, ModelError::SingleClassTrainingSet { .. })
    }
}

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("AUROC is undefined: labels contain a single class")]
    SingleClassLabels,
    #[error("scores and labels differ in length: {scores} vs {labels}")]
    LengthMismatch { scores: usize, labels: usize },
    #[error("non-finite score at index {index}")]
    NonFiniteScore { index: usize },
    #[error("non-finite performance value for {name:?}")]
    NonFiniteValue { name: String },
    #[error("duplicate algorithm name {name:?}")]
    DuplicateName { name: String },
    #[error("performance vectors disagree: {reason}")]
    NameMismatch { reason: String },
    #[error("ranking needs at least 2 algorithms, got {k}")]
    TooFewAlgorithms { k: usize },
    #[error("mean of an empty performance vector")]
    EmptyVector,
    #[error("Kendall tau is undefined with tied values ({name:?} has ties)")]
    TiesPresent { name: String },
    #[error("names and values differ in length: {names} vs {values}")]
    NameValueMismatch { names: usize, values: usize },
    #[error("tie epsilon must be finite and >= 0, got {epsilon}")]
    BadTieEpsilon { epsilon: f64 },
}

impl MetricsError {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, MetricsError::SingleClassLabels)
    }
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("{dataset} dataset: {source}")]
    Data {
        dataset: String,
        #[source]
        source: DataError,
    },
    #[error("{dataset} dataset, model {model:?}: {source}")]
    Model {
        dataset: String,
        model: String,
        #[source]
        source: ModelError,
    },
    #[error("{dataset} dataset, model {model:?}: {source}")]
    Metrics {
        dataset: String,
        model: String,
        #[source]
        source: MetricsError,
    },
    #[error("ranking: {0}")]
    Ranking(#[from] MetricsError),
    #[error("model pool must contain >= 2 models")]
    PoolTooSmall,
    #[error("duplicate model name {name:?} in pool")]
    DuplicatePoolName { name: String },
    #[error("real and synthetic feature dimensions differ: {real} vs {synthetic}")]
    DimensionMismatch { real: usize, synthetic: usize },
    #[error("p grid is empty")]
    EmptyPGrid,
    #[error("p = {p} is outside the noise regime [0, 0.5)")]
    POutOfRange { p: f64 },
    #[error("repetitions must be >= 1")]
    NoRepetitions,
    #[error("selection simulation needs steps >= 1 and runs >= 1")]
    BadSelectionParams,
    #[error("invalid config: {reason}")]
    BadConfig { reason: String },
}

impl ExperimentError {
    /// True when the failure is a property of the data (degenerate split,
    /// undefined AUROC, single-class training set) rather than of the inputs
    /// or configuration.
    pub fn is_degenerate(&self) -> bool {
        match self {
            ExperimentError::Data { source, .. } => source.is_degenerate(),
            ExperimentError::Model { source, .. } => source.is_degenerate(),
            ExperimentError::Metrics { source, .. } => source.is_degenerate(),
            ExperimentError::Ranking(source) => source.is_degenerate(),
            _ => false,
        }
    }
}
