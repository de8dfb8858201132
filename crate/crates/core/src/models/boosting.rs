//! Stagewise boosting of the logistic loss: first-order (regression trees on
//! gradient residuals) and second-order (Newton leaf weights).

use crate::data::Dataset;
use crate::error::ModelError;
use crate::models::linear::sigmoid;
use crate::models::tree::{grow_tree, MseCriterion, NewtonCriterion, Tree, TreeParams};

/// An additive tree model on the logit scale: base + shrinkage * sum(trees).
#[derive(Debug, Clone)]
pub(crate) struct BoostedTrees {
    pub base: f64,
    pub shrinkage: f64,
    pub trees: Vec<Tree>,
}

impl BoostedTrees {
    pub fn score_row(&self, row: &[f64]) -> f64 {
        self.base
            + self.shrinkage
                * self
                    .trees
                    .iter()
                    .map(|t| t.predict_row(row))
                    .sum::<f64>()
    }
}

fn base_log_odds(ds: &Dataset) -> f64 {
    let pos = ds.labels().iter().filter(|&&y| y == 1).count() as f64;
    let rate = pos / ds.n_rows() as f64;
    (rate / (1.0 - rate)).ln()
}

/// Gradient boosting: each round fits a squared-error tree to the residuals
/// y - sigmoid(F) and steps by `shrinkage`.
pub(crate) fn fit_gbm(
    ds: &Dataset,
    n_trees: usize,
    params: TreeParams,
    shrinkage: f64,
) -> Result<BoostedTrees, ModelError> {
    let n = ds.n_rows();
    let all_rows: Vec<usize> = (0..n).collect();
    let base = base_log_odds(ds);
    let mut logits = vec![base; n];
    let mut trees = Vec::with_capacity(n_trees);

    for round in 0..n_trees {
        let residuals: Vec<f64> = (0..n)
            .map(|i| ds.labels()[i] as f64 - sigmoid(logits[i]))
            .collect();
        let criterion = MseCriterion {
            targets: &residuals,
        };
        let tree = grow_tree(ds, all_rows.clone(), &criterion, params, None, None);
        for (i, logit) in logits.iter_mut().enumerate() {
            *logit += shrinkage * tree.predict_row(ds.row(i));
        }
        if logits.iter().any(|f| !f.is_finite()) {
            return Err(ModelError::NumericalFailure {
                kind: "GBM".to_string(),
                quantity: "logits".to_string(),
                iteration: round,
            });
        }
        trees.push(tree);
    }
    Ok(BoostedTrees {
        base,
        shrinkage,
        trees,
    })
}

/// Second-order boosting: trees grown on (g, h) = (p - y, p(1 - p)) with
/// leaf weights -sum(g)/(sum(h) + lambda).
pub(crate) fn fit_newton_boosted(
    ds: &Dataset,
    n_trees: usize,
    params: TreeParams,
    lambda: f64,
    shrinkage: f64,
) -> Result<BoostedTrees, ModelError> {
    let n = ds.n_rows();
    let all_rows: Vec<usize> = (0..n).collect();
    let base = base_log_odds(ds);
    let mut logits = vec![base; n];
    let mut trees = Vec::with_capacity(n_trees);

    for round in 0..n_trees {
        let mut grad = Vec::with_capacity(n);
        let mut hess = Vec::with_capacity(n);
        for (&logit, &y) in logits.iter().zip(ds.labels()) {
            let p = sigmoid(logit);
            grad.push(p - y as f64);
            hess.push(p * (1.0 - p));
        }
        let criterion = NewtonCriterion {
            grad: &grad,
            hess: &hess,
            lambda,
        };
        let tree = grow_tree(ds, all_rows.clone(), &criterion, params, None, None);
        for (i, logit) in logits.iter_mut().enumerate() {
            *logit += shrinkage * tree.predict_row(ds.row(i));
        }
        if logits.iter().any(|f| !f.is_finite()) {
            return Err(ModelError::NumericalFailure {
                kind: "NewtonBoostedTrees".to_string(),
                quantity: "logits".to_string(),
                iteration: round,
            });
        }
        trees.push(tree);
    }
    Ok(BoostedTrees {
        base,
        shrinkage,
        trees,
    })
}
