//! Dataset representation, deterministic splitting, standardization, and
//! dataset generators.
//!
//! A [`Dataset`] is an n x d matrix of finite reals with binary labels. All
//! operations here are pure functions of their inputs and an explicit seed;
//! none mutate their arguments.

mod csv;
mod generate;

pub use csv::{load_csv, write_csv};
pub use generate::gen_gaussian_mixture;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::DataError;
use crate::seeds;

/// A tabular binary-classification dataset: row-major features plus 0/1
/// labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Vec<f64>,
    labels: Vec<u8>,
    feature_names: Vec<String>,
    n_rows: usize,
    n_features: usize,
}

impl Dataset {
    /// Build a dataset from row-major features, validating every invariant:
    /// n >= 1, d >= 1, all feature values finite, labels in {0, 1}, and
    /// exactly d distinct feature names.
    pub fn new(
        features: Vec<Vec<f64>>,
        labels: Vec<u8>,
        feature_names: Vec<String>,
    ) -> Result<Self, DataError> {
        if features.is_empty() || labels.is_empty() {
            return Err(DataError::EmptyDataset);
        }
        let n_rows = features.len();
        if labels.len() != n_rows {
            return Err(DataError::RaggedRow {
                row: 0,
                found: labels.len(),
                expected: n_rows,
            });
        }
        let n_features = features[0].len();
        if n_features == 0 {
            return Err(DataError::NoFeatures);
        }
        if feature_names.len() != n_features {
            return Err(DataError::FeatureNameCount {
                expected: n_features,
                got: feature_names.len(),
            });
        }
        for (j, name) in feature_names.iter().enumerate() {
            if feature_names[..j].contains(name) {
                return Err(DataError::DuplicateFeatureName {
                    path: "<memory>".to_string(),
                    name: name.clone(),
                });
            }
        }
        let mut flat = Vec::with_capacity(n_rows * n_features);
        for (i, row) in features.iter().enumerate() {
            if row.len() != n_features {
                return Err(DataError::RaggedRow {
                    row: i,
                    found: row.len(),
                    expected: n_features,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(DataError::NonFiniteFeature { row: i, column: j });
                }
                flat.push(v);
            }
        }
        for (i, &y) in labels.iter().enumerate() {
            if y > 1 {
                return Err(DataError::LabelOutOfRange { row: i, value: y });
            }
        }
        Ok(Dataset {
            features: flat,
            labels,
            feature_names,
            n_rows,
            n_features,
        })
    }

    /// Internal constructor from pre-validated flat storage.
    pub(crate) fn from_flat_unchecked(
        features: Vec<f64>,
        labels: Vec<u8>,
        feature_names: Vec<String>,
        n_rows: usize,
        n_features: usize,
    ) -> Self {
        debug_assert_eq!(features.len(), n_rows * n_features);
        debug_assert_eq!(labels.len(), n_rows);
        Dataset {
            features,
            labels,
            feature_names,
            n_rows,
            n_features,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    /// Row-major flat view of the feature matrix.
    pub fn features_flat(&self) -> &[f64] {
        &self.features
    }

    /// All values of feature column `j`, in row order.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n_rows).map(|i| self.row(i)[j]).collect()
    }

    /// Row indices of each class, ascending: (class-0 indices, class-1 indices).
    pub fn class_indices(&self) -> (Vec<usize>, Vec<usize>) {
        let mut zeros = Vec::new();
        let mut ones = Vec::new();
        for (i, &y) in self.labels.iter().enumerate() {
            if y == 0 {
                zeros.push(i);
            } else {
                ones.push(i);
            }
        }
        (zeros, ones)
    }

    /// New dataset containing the given rows, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let mut features = Vec::with_capacity(indices.len() * self.n_features);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Dataset::from_flat_unchecked(
            features,
            labels,
            self.feature_names.clone(),
            indices.len(),
            self.n_features,
        )
    }

    /// Same features, different labels.
    pub(crate) fn with_labels(&self, labels: Vec<u8>) -> Dataset {
        debug_assert_eq!(labels.len(), self.n_rows);
        Dataset {
            features: self.features.clone(),
            labels,
            feature_names: self.feature_names.clone(),
            n_rows: self.n_rows,
            n_features: self.n_features,
        }
    }
}

/// A stratified train/test split together with the parameters that produced
/// it.
#[derive(Debug, Clone)]
pub struct SplitPair {
    pub train: Dataset,
    pub test: Dataset,
    pub seed: u64,
    pub ratio: f64,
}

/// Per-column means and standard deviations computed from a training set.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizationStats {
    pub means: Vec<f64>,
    pub stddevs: Vec<f64>,
}

impl StandardizationStats {
    /// Compute train-set column means and population standard deviations.
    /// Zero-variance columns get a stddev of 1 so centering maps them to 0.
    pub fn fit(train: &Dataset) -> StandardizationStats {
        let n = train.n_rows() as f64;
        let d = train.n_features();
        let mut means = vec![0.0; d];
        for i in 0..train.n_rows() {
            for (j, &v) in train.row(i).iter().enumerate() {
                means[j] += v;
            }
        }
        for m in means.iter_mut() {
            *m /= n;
        }
        let mut vars = vec![0.0; d];
        for i in 0..train.n_rows() {
            for (j, &v) in train.row(i).iter().enumerate() {
                let c = v - means[j];
                vars[j] += c * c;
            }
        }
        let stddevs = vars
            .iter()
            .map(|&v| {
                let s = (v / n).sqrt();
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        StandardizationStats { means, stddevs }
    }

    /// Apply `(x - mean) / stddev` per column; labels are untouched.
    pub fn apply(&self, ds: &Dataset) -> Dataset {
        let d = ds.n_features();
        debug_assert_eq!(self.means.len(), d);
        let mut features = Vec::with_capacity(ds.n_rows() * d);
        for i in 0..ds.n_rows() {
            for (j, &v) in ds.row(i).iter().enumerate() {
                features.push((v - self.means[j]) / self.stddevs[j]);
            }
        }
        Dataset::from_flat_unchecked(
            features,
            ds.labels.clone(),
            ds.feature_names.clone(),
            ds.n_rows,
            d,
        )
    }

    /// Apply to a bare feature row (used at scoring time).
    pub fn apply_row(&self, row: &[f64], out: &mut Vec<f64>) {
        out.clear();
        for (j, &v) in row.iter().enumerate() {
            out.push((v - self.means[j]) / self.stddevs[j]);
        }
    }
}

/// Number of rows a class of size `n` contributes to the train half.
///
/// Mathematically ceil(ratio * n); products within 1e-9 of an integer are
/// snapped to it first so decimal ratios like 0.8 behave exactly.
fn train_count(ratio: f64, n: usize) -> usize {
    let t = ratio * n as f64;
    let nearest = t.round();
    if (t - nearest).abs() < 1e-9 {
        nearest as usize
    } else {
        t.ceil() as usize
    }
}

/// Stratified train/test split, deterministic in `seed`.
///
/// Per-class row indices are shuffled by a ChaCha8 stream seeded from `seed`;
/// the first ceil(ratio * n_class) of each class go to the train half. Row
/// order within each half follows the original dataset.
pub fn split(ds: &Dataset, ratio: f64, seed: u64) -> Result<SplitPair, DataError> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(DataError::BadSplitRatio { ratio });
    }
    let (zeros, ones) = ds.class_indices();
    for (class, idx) in [(0u8, &zeros), (1u8, &ones)] {
        if idx.len() < 2 {
            return Err(DataError::ClassTooSmall {
                class,
                count: idx.len(),
            });
        }
    }

    let mut rng = seeds::rng_from_seed(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for (class, idx) in [(0u8, zeros), (1u8, ones)] {
        let k = train_count(ratio, idx.len());
        if k == 0 || k >= idx.len() {
            return Err(DataError::DegenerateSplit { ratio, class });
        }
        let mut shuffled = idx;
        shuffled.shuffle(&mut rng);
        train_idx.extend_from_slice(&shuffled[..k]);
        test_idx.extend_from_slice(&shuffled[k..]);
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();

    Ok(SplitPair {
        train: ds.subset(&train_idx),
        test: ds.subset(&test_idx),
        seed,
        ratio,
    })
}

/// Standardize train and test with statistics computed from the train set
/// only.
pub fn standardize(
    train: &Dataset,
    test: &Dataset,
) -> Result<(Dataset, Dataset, StandardizationStats), DataError> {
    if train.n_features() != test.n_features() {
        return Err(DataError::DimensionMismatch {
            left: train.n_features(),
            right: test.n_features(),
        });
    }
    let stats = StandardizationStats::fit(train);
    Ok((stats.apply(train), stats.apply(test), stats))
}

/// Copy the dataset, independently inverting each label with probability `p`.
///
/// Features are carried over untouched. The interesting regime is
/// p in [0, 0.5) — at 0.5 the labels become independent of the features —
/// but any p in [0, 1] is accepted.
pub fn flip_labels(ds: &Dataset, p: f64, seed: u64) -> Result<Dataset, DataError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(DataError::BadFlipProbability { p });
    }
    let mut rng = seeds::rng_from_seed(seed);
    let labels = ds
        .labels()
        .iter()
        .map(|&y| {
            let u: f64 = rng.gen();
            if u < p {
                1 - y
            } else {
                y
            }
        })
        .collect();
    Ok(ds.with_labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toy(n0: usize, n1: usize) -> Dataset {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n0 {
            rows.push(vec![i as f64, -(i as f64)]);
            labels.push(0);
        }
        for i in 0..n1 {
            rows.push(vec![100.0 + i as f64, i as f64]);
            labels.push(1);
        }
        Dataset::new(rows, labels, vec!["a".into(), "b".into()]).unwrap()
    }

    #[test]
    fn new_rejects_invalid_inputs() {
        assert!(matches!(
            Dataset::new(vec![], vec![], vec![]),
            Err(DataError::EmptyDataset)
        ));
        assert!(matches!(
            Dataset::new(vec![vec![1.0]], vec![2], vec!["a".into()]),
            Err(DataError::LabelOutOfRange { row: 0, value: 2 })
        ));
        assert!(matches!(
            Dataset::new(vec![vec![f64::NAN]], vec![0], vec!["a".into()]),
            Err(DataError::NonFiniteFeature { row: 0, column: 0 })
        ));
        assert!(matches!(
            Dataset::new(
                vec![vec![1.0, 2.0]],
                vec![0],
                vec!["a".into(), "a".into()]
            ),
            Err(DataError::DuplicateFeatureName { .. })
        ));
        assert!(matches!(
            Dataset::new(vec![vec![1.0], vec![1.0, 2.0]], vec![0, 1], vec!["a".into()]),
            Err(DataError::RaggedRow { row: 1, .. })
        ));
    }

    #[test]
    fn split_counts_match_stratified_arithmetic() {
        // 5 per class at ratio 0.8: 4 per class train, 1 per class test.
        let ds = toy(5, 5);
        let pair = split(&ds, 0.8, 11).unwrap();
        assert_eq!(pair.train.n_rows(), 8);
        assert_eq!(pair.test.n_rows(), 2);
        let count = |d: &Dataset, c: u8| d.labels().iter().filter(|&&y| y == c).count();
        assert_eq!(count(&pair.train, 0), 4);
        assert_eq!(count(&pair.train, 1), 4);
        assert_eq!(count(&pair.test, 0), 1);
        assert_eq!(count(&pair.test, 1), 1);
    }

    #[test]
    fn split_is_deterministic() {
        let ds = toy(20, 30);
        let a = split(&ds, 0.7, 99).unwrap();
        let b = split(&ds, 0.7, 99).unwrap();
        assert_eq!(a.train, b.train);
        assert_eq!(a.test, b.test);
        let c = split(&ds, 0.7, 100).unwrap();
        assert!(a.train != c.train || a.test != c.test);
    }

    #[test]
    fn split_preserves_class_ratio_on_balanced_data() {
        // 500 per class at ratio 0.8: exactly 400 of each class in train.
        let ds = toy(500, 500);
        let pair = split(&ds, 0.8, 3).unwrap();
        let train_ones = pair.train.labels().iter().filter(|&&y| y == 1).count();
        assert_eq!(pair.train.n_rows(), 800);
        assert_eq!(train_ones, 400);
    }

    #[test]
    fn split_rejects_tiny_classes_and_bad_ratios() {
        let ds = toy(1, 5);
        assert!(matches!(
            split(&ds, 0.8, 0),
            Err(DataError::ClassTooSmall { class: 0, count: 1 })
        ));
        let ds = toy(5, 5);
        assert!(matches!(
            split(&ds, 0.0, 0),
            Err(DataError::BadSplitRatio { .. })
        ));
        assert!(matches!(
            split(&ds, 1.0, 0),
            Err(DataError::BadSplitRatio { .. })
        ));
        // ceil(0.9 * 2) = 2 would empty the class-0 test half.
        let ds = toy(2, 10);
        assert!(matches!(
            split(&ds, 0.9, 0),
            Err(DataError::DegenerateSplit { class: 0, .. })
        ));
    }

    #[test]
    fn standardize_matches_hand_computation() {
        let train = Dataset::new(
            vec![vec![1.0], vec![3.0]],
            vec![0, 1],
            vec!["a".into()],
        )
        .unwrap();
        let test = Dataset::new(vec![vec![2.0]], vec![0], vec!["a".into()]).unwrap();
        let (tr, _, stats) = standardize(&train, &test).unwrap();
        assert_eq!(stats.means, vec![2.0]);
        // Population stddev of [1, 3] is 1.
        assert_eq!(stats.stddevs, vec![1.0]);
        let mean: f64 = (0..tr.n_rows()).map(|i| tr.row(i)[0]).sum::<f64>() / 2.0;
        assert!(mean.abs() < 1e-12);
    }

    #[test]
    fn standardize_clamps_constant_columns() {
        let train = Dataset::new(
            vec![vec![5.0], vec![5.0], vec![5.0]],
            vec![0, 1, 0],
            vec!["a".into()],
        )
        .unwrap();
        let test = Dataset::new(vec![vec![5.0]], vec![1], vec!["a".into()]).unwrap();
        let (tr, te, stats) = standardize(&train, &test).unwrap();
        assert_eq!(stats.stddevs, vec![1.0]);
        assert!((0..3).all(|i| tr.row(i)[0] == 0.0));
        assert_eq!(te.row(0)[0], 0.0);
    }

    #[test]
    fn standardize_test_uses_train_stats() {
        // Train [0, 2]: mean 1, population stddev 1, so test value 4 maps to 3.
        let train = Dataset::new(
            vec![vec![0.0], vec![2.0]],
            vec![0, 1],
            vec!["a".into()],
        )
        .unwrap();
        let test = Dataset::new(vec![vec![4.0]], vec![0], vec!["a".into()]).unwrap();
        let (_, te, _) = standardize(&train, &test).unwrap();
        assert!((te.row(0)[0] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn restandardizing_standardized_train_centers_to_zero() {
        let ds = gen_gaussian_mixture(200, 4, 2.0, 5).unwrap();
        let (tr, te, _) = standardize(&ds, &ds).unwrap();
        let (tr2, _, _) = standardize(&tr, &te).unwrap();
        let stats2 = StandardizationStats::fit(&tr2);
        assert!(stats2.means.iter().all(|m| m.abs() < 1e-9));
    }

    #[test]
    fn flip_identity_and_inversion() {
        let ds = toy(10, 10);
        let same = flip_labels(&ds, 0.0, 42).unwrap();
        assert_eq!(same, ds);
        let flipped = flip_labels(&ds, 1.0, 42).unwrap();
        assert!(flipped
            .labels()
            .iter()
            .zip(ds.labels())
            .all(|(&a, &b)| a == 1 - b));
        assert_eq!(flipped.features_flat(), ds.features_flat());
    }

    #[test]
    fn flip_is_involution_at_p_one() {
        let ds = toy(7, 13);
        let twice = flip_labels(&flip_labels(&ds, 1.0, 1).unwrap(), 1.0, 2).unwrap();
        assert_eq!(twice, ds);
    }

    #[test]
    fn flip_fraction_concentrates() {
        // Binomial concentration: |fraction - 0.2| <= 3 sqrt(0.2*0.8/10000).
        let ds = gen_gaussian_mixture(10_000, 2, 1.0, 9).unwrap();
        let flipped = flip_labels(&ds, 0.2, 77).unwrap();
        let changed = flipped
            .labels()
            .iter()
            .zip(ds.labels())
            .filter(|(a, b)| a != b)
            .count();
        let fraction = changed as f64 / 10_000.0;
        let bound = 3.0 * (0.2 * 0.8 / 10_000.0_f64).sqrt();
        assert!(
            (fraction - 0.2).abs() <= bound,
            "fraction {fraction} outside 0.2 +/- {bound}"
        );
    }

    #[test]
    fn flip_rejects_bad_probability() {
        let ds = toy(3, 3);
        assert!(matches!(
            flip_labels(&ds, -0.1, 0),
            Err(DataError::BadFlipProbability { .. })
        ));
        assert!(matches!(
            flip_labels(&ds, 1.5, 0),
            Err(DataError::BadFlipProbability { .. })
        ));
    }

    proptest! {
        #[test]
        fn split_is_a_partition(n0 in 2usize..40, n1 in 2usize..40, seed in 0u64..1000) {
            let ds = toy(n0, n1);
            prop_assume!(train_count(0.7, n0) < n0 && train_count(0.7, n1) < n1);
            let pair = split(&ds, 0.7, seed).unwrap();
            prop_assert_eq!(pair.train.n_rows() + pair.test.n_rows(), ds.n_rows());
            // Every source row appears exactly once across the two halves.
            let mut seen: Vec<Vec<f64>> = Vec::new();
            for d in [&pair.train, &pair.test] {
                for i in 0..d.n_rows() {
                    seen.push(d.row(i).to_vec());
                }
            }
            seen.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut src: Vec<Vec<f64>> = (0..ds.n_rows()).map(|i| ds.row(i).to_vec()).collect();
            src.sort_by(|a, b| a.partial_cmp(b).unwrap());
            prop_assert_eq!(seen, src);
        }

        #[test]
        fn flip_never_touches_features(p in 0.0f64..=1.0, seed in 0u64..500) {
            let ds = toy(5, 5);
            let flipped = flip_labels(&ds, p, seed).unwrap();
            prop_assert_eq!(flipped.features_flat(), ds.features_flat());
            prop_assert_eq!(flipped.feature_names(), ds.feature_names());
        }
    }
}
