//! Bootstrap ensembles (random forest, bagging) and boosted stumps
//! (discrete AdaBoost).

use crate::data::Dataset;
use crate::error::ModelError;
use crate::models::tree::{bootstrap_indices, grow_tree, GiniCriterion, Tree, TreeParams};
use crate::seeds;

/// Trees averaged by leaf positive fraction.
#[derive(Debug, Clone)]
pub(crate) struct BaggedTrees {
    pub trees: Vec<Tree>,
}

impl BaggedTrees {
    pub fn score_row(&self, row: &[f64]) -> f64 {
        self.trees.iter().map(|t| t.predict_row(row)).sum::<f64>() / self.trees.len() as f64
    }
}

/// Fit `n_trees` Gini trees on bootstrap samples. Each tree owns the stream
/// derived from (seed, "tree", index), so tree order never matters.
/// `features_per_split` limits the features scanned per split (random
/// forest); None scans all (plain bagging).
pub(crate) fn fit_bagged_trees(
    ds: &Dataset,
    n_trees: usize,
    params: TreeParams,
    features_per_split: Option<usize>,
    seed: u64,
) -> Result<BaggedTrees, ModelError> {
    let n = ds.n_rows();
    let criterion = GiniCriterion {
        labels: ds.labels(),
        weights: None,
    };
    let trees = (0..n_trees)
        .map(|t| {
            let mut rng = seeds::rng_for(seed, "tree", t as u64);
            let indices = bootstrap_indices(&mut rng, n);
            grow_tree(
                ds,
                indices,
                &criterion,
                params,
                features_per_split,
                Some(&mut rng),
            )
        })
        .collect();
    Ok(BaggedTrees { trees })
}

/// Per-split feature budget for the random forest: ceil(sqrt(d)).
pub(crate) fn forest_feature_budget(d: usize) -> usize {
    (d as f64).sqrt().ceil() as usize
}

/// Discrete AdaBoost over depth-1 stumps: weighted vote sum of +/-1 leaf
/// majorities.
#[derive(Debug, Clone)]
pub(crate) struct AdaBoostModel {
    pub stumps: Vec<Tree>,
    pub alphas: Vec<f64>,
}

impl AdaBoostModel {
    pub fn score_row(&self, row: &[f64]) -> f64 {
        self.stumps
            .iter()
            .zip(&self.alphas)
            .map(|(stump, alpha)| alpha * vote(stump.predict_row(row)))
            .sum()
    }
}

/// Leaf positive fraction to a +/-1 vote.
fn vote(leaf_fraction: f64) -> f64 {
    if leaf_fraction > 0.5 {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn fit_adaboost(ds: &Dataset, n_stumps: usize) -> Result<AdaBoostModel, ModelError> {
    let n = ds.n_rows();
    let all_rows: Vec<usize> = (0..n).collect();
    let mut sample_weights = vec![1.0 / n as f64; n];
    let mut stumps = Vec::new();
    let mut alphas = Vec::new();

    for _ in 0..n_stumps {
        let criterion = GiniCriterion {
            labels: ds.labels(),
            weights: Some(&sample_weights),
        };
        let stump = grow_tree(
            ds,
            all_rows.clone(),
            &criterion,
            TreeParams {
                max_depth: 1,
                min_leaf: 1,
            },
            None,
            None,
        );

        let misclassified: Vec<bool> = (0..n)
            .map(|i| {
                let predicted_pos = vote(stump.predict_row(ds.row(i))) > 0.0;
                predicted_pos != (ds.labels()[i] == 1)
            })
            .collect();
        let total: f64 = sample_weights.iter().sum();
        let err: f64 = sample_weights
            .iter()
            .zip(&misclassified)
            .filter(|(_, &m)| m)
            .map(|(w, _)| w)
            .sum::<f64>()
            / total;

        if err >= 0.5 {
            // No better than weighted chance; adding it cannot help.
            break;
        }
        let clamped = err.max(1e-12);
        let alpha = ((1.0 - clamped) / clamped).ln();
        stumps.push(stump);
        alphas.push(alpha);
        if err <= 0.0 {
            break;
        }

        for (w, &m) in sample_weights.iter_mut().zip(&misclassified) {
            if m {
                *w *= alpha.exp();
            }
        }
        let sum: f64 = sample_weights.iter().sum();
        for w in sample_weights.iter_mut() {
            *w /= sum;
        }
    }

    Ok(AdaBoostModel { stumps, alphas })
}
