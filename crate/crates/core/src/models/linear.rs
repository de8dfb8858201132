//! Linear scorers: logistic regression, a hinge-loss linear SVM, and LDA.
//! All three run on standardized features bound by the caller.

use rand::seq::SliceRandom;

use crate::data::Dataset;
use crate::error::ModelError;
use crate::seeds;

/// Numerically stable logistic function; sigmoid(-z) == 1 - sigmoid(z) up to
/// rounding, which keeps label-inversion symmetry tight.
pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Stable binary cross-entropy of a logit against a 0/1 label:
/// softplus(z) - y*z.
pub(crate) fn logit_bce(z: f64, y: f64) -> f64 {
    let softplus = z.max(0.0) + (-z.abs()).exp().ln_1p();
    softplus - y * z
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone)]
pub(crate) struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearModel {
    pub fn score_row(&self, row: &[f64]) -> f64 {
        dot(&self.weights, row) + self.bias
    }
}

/// Full-batch gradient descent on L2-regularized logistic loss.
pub(crate) fn fit_logistic(
    ds: &Dataset,
    l2: f64,
    learning_rate: f64,
    epochs: usize,
) -> Result<LinearModel, ModelError> {
    let n = ds.n_rows();
    let d = ds.n_features();
    let inv_n = 1.0 / n as f64;
    let mut weights = vec![0.0; d];
    let mut bias = 0.0;

    for epoch in 0..epochs {
        let mut grad_w = vec![0.0; d];
        let mut grad_b = 0.0;
        let mut loss = 0.0;
        for i in 0..n {
            let row = ds.row(i);
            let y = ds.labels()[i] as f64;
            let z = dot(&weights, row) + bias;
            let err = sigmoid(z) - y;
            for (g, &x) in grad_w.iter_mut().zip(row) {
                *g += err * x;
            }
            grad_b += err;
            loss += logit_bce(z, y);
        }
        if !loss.is_finite() {
            return Err(ModelError::NumericalFailure {
                kind: "LogisticRegression".to_string(),
                quantity: "loss".to_string(),
                iteration: epoch,
            });
        }
        for (w, g) in weights.iter_mut().zip(&grad_w) {
            *w -= learning_rate * (g * inv_n + l2 * *w);
        }
        bias -= learning_rate * grad_b * inv_n;
    }
    Ok(LinearModel { weights, bias })
}

/// Pegasos-style SGD on the hinge loss with step 1/(l2 * t). The bias is
/// carried as a constant regularized feature so it decays with the weights.
pub(crate) fn fit_linear_svm(
    ds: &Dataset,
    l2: f64,
    passes: usize,
    seed: u64,
) -> Result<LinearModel, ModelError> {
    let n = ds.n_rows();
    let d = ds.n_features();
    let mut rng = seeds::rng_from_seed(seed);
    let mut weights = vec![0.0; d];
    let mut bias = 0.0;
    let mut order: Vec<usize> = (0..n).collect();

    let mut t = 1u64;
    for pass in 0..passes {
        order.shuffle(&mut rng);
        for &i in &order {
            let row = ds.row(i);
            let y = if ds.labels()[i] == 1 { 1.0 } else { -1.0 };
            let step = 1.0 / (l2 * t as f64);
            let margin = y * (dot(&weights, row) + bias);
            let decay = 1.0 - step * l2;
            for w in weights.iter_mut() {
                *w *= decay;
            }
            bias *= decay;
            if margin < 1.0 {
                for (w, &x) in weights.iter_mut().zip(row) {
                    *w += step * y * x;
                }
                bias += step * y;
            }
            t += 1;
        }
        if !bias.is_finite() || weights.iter().any(|w| !w.is_finite()) {
            return Err(ModelError::NumericalFailure {
                kind: "LinearSVM".to_string(),
                quantity: "weights".to_string(),
                iteration: pass,
            });
        }
    }
    Ok(LinearModel { weights, bias })
}

/// Linear discriminant analysis: pooled within-class covariance with a ridge
/// on the diagonal, scored by the discriminant difference.
pub(crate) fn fit_lda(ds: &Dataset, ridge: f64) -> Result<LinearModel, ModelError> {
    let d = ds.n_features();
    let (zeros, ones) = ds.class_indices();
    let n = ds.n_rows() as f64;

    let class_mean = |idx: &[usize]| {
        let mut mean = vec![0.0; d];
        for &i in idx {
            for (m, &x) in mean.iter_mut().zip(ds.row(i)) {
                *m += x;
            }
        }
        for m in mean.iter_mut() {
            *m /= idx.len() as f64;
        }
        mean
    };
    let mean0 = class_mean(&zeros);
    let mean1 = class_mean(&ones);

    // Pooled within-class covariance, unbiased (n - 2 classes).
    let mut cov = vec![0.0; d * d];
    for (idx, mean) in [(&zeros, &mean0), (&ones, &mean1)] {
        for &i in idx.iter() {
            let row = ds.row(i);
            for a in 0..d {
                let ca = row[a] - mean[a];
                for b in a..d {
                    cov[a * d + b] += ca * (row[b] - mean[b]);
                }
            }
        }
    }
    let denom = (n - 2.0).max(1.0);
    for a in 0..d {
        for b in a..d {
            cov[a * d + b] /= denom;
            cov[b * d + a] = cov[a * d + b];
        }
        cov[a * d + a] += ridge;
    }

    let diff: Vec<f64> = mean1.iter().zip(&mean0).map(|(a, b)| a - b).collect();
    let weights = cholesky_solve(&cov, &diff, d).ok_or(ModelError::NumericalFailure {
        kind: "LDA".to_string(),
        quantity: "covariance factorization".to_string(),
        iteration: 0,
    })?;

    let mid: Vec<f64> = mean1.iter().zip(&mean0).map(|(a, b)| (a + b) / 2.0).collect();
    let prior = (ones.len() as f64 / zeros.len() as f64).ln();
    let bias = prior - dot(&weights, &mid);
    Ok(LinearModel { weights, bias })
}

/// Solve `a x = b` for symmetric positive definite `a` (row-major d x d)
/// via Cholesky. Returns None if the matrix is not positive definite.
pub(crate) fn cholesky_solve(a: &[f64], b: &[f64], d: usize) -> Option<Vec<f64>> {
    // Lower-triangular factor L with a = L L^T.
    let mut l = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..=i {
            let mut sum = a[i * d + j];
            for k in 0..j {
                sum -= l[i * d + k] * l[j * d + k];
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return None;
                }
                l[i * d + i] = sum.sqrt();
            } else {
                l[i * d + j] = sum / l[j * d + j];
            }
        }
    }
    // Forward substitution: L y = b.
    let mut y = vec![0.0; d];
    for i in 0..d {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[i * d + k] * y[k];
        }
        y[i] = sum / l[i * d + i];
    }
    // Back substitution: L^T x = y.
    let mut x = vec![0.0; d];
    for i in (0..d).rev() {
        let mut sum = y[i];
        for k in (i + 1)..d {
            sum -= l[k * d + i] * x[k];
        }
        x[i] = sum / l[i * d + i];
    }
    Some(x)
}
