//! A one-hidden-layer perceptron: ReLU hidden units, sigmoid output,
//! cross-entropy loss, plain mini-batch SGD.
//!
//! The caller standardizes and clamps inputs; this module assumes rows are
//! already in the clamped standardized range.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::data::Dataset;
use crate::error::ModelError;
use crate::models::linear::{logit_bce, sigmoid};
use crate::seeds;

#[derive(Debug, Clone)]
pub(crate) struct MlpModel {
    pub hidden: usize,
    /// hidden x d, row-major.
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

impl MlpModel {
    /// Output logit for one row.
    pub fn score_row(&self, row: &[f64]) -> f64 {
        let d = row.len();
        let mut z = self.b2;
        for h in 0..self.hidden {
            let mut a = self.b1[h];
            for (j, &x) in row.iter().enumerate() {
                a += self.w1[h * d + j] * x;
            }
            if a > 0.0 {
                z += self.w2[h] * a;
            }
        }
        z
    }
}

pub(crate) fn fit_mlp(
    ds: &Dataset,
    hidden: usize,
    learning_rate: f64,
    epochs: usize,
    batch: usize,
    seed: u64,
) -> Result<MlpModel, ModelError> {
    let n = ds.n_rows();
    let d = ds.n_features();
    let mut rng = seeds::rng_from_seed(seed);

    // Scaled-uniform init by fan-in; biases start at zero.
    let limit1 = 1.0 / (d as f64).sqrt();
    let mut w1: Vec<f64> = (0..hidden * d)
        .map(|_| rng.gen_range(-limit1..limit1))
        .collect();
    let mut b1 = vec![0.0; hidden];
    let limit2 = 1.0 / (hidden as f64).sqrt();
    let mut w2: Vec<f64> = (0..hidden).map(|_| rng.gen_range(-limit2..limit2)).collect();
    let mut b2 = 0.0;

    let mut order: Vec<usize> = (0..n).collect();
    let mut activations = vec![0.0; hidden];

    for epoch in 0..epochs {
        order.shuffle(&mut rng);
        let mut loss = 0.0;
        for chunk in order.chunks(batch) {
            let scale = 1.0 / chunk.len() as f64;
            let mut gw1 = vec![0.0; hidden * d];
            let mut gb1 = vec![0.0; hidden];
            let mut gw2 = vec![0.0; hidden];
            let mut gb2 = 0.0;

            for &i in chunk {
                let row = ds.row(i);
                let y = ds.labels()[i] as f64;
                let mut z = b2;
                for h in 0..hidden {
                    let mut a = b1[h];
                    for (j, &x) in row.iter().enumerate() {
                        a += w1[h * d + j] * x;
                    }
                    let a = a.max(0.0);
                    activations[h] = a;
                    z += w2[h] * a;
                }
                loss += logit_bce(z, y);

                let dz = (sigmoid(z) - y) * scale;
                gb2 += dz;
                for h in 0..hidden {
                    let a = activations[h];
                    gw2[h] += dz * a;
                    if a > 0.0 {
                        let da = dz * w2[h];
                        gb1[h] += da;
                        for (j, &x) in row.iter().enumerate() {
                            gw1[h * d + j] += da * x;
                        }
                    }
                }
            }

            for (w, g) in w1.iter_mut().zip(&gw1) {
                *w -= learning_rate * g;
            }
            for (w, g) in b1.iter_mut().zip(&gb1) {
                *w -= learning_rate * g;
            }
            for (w, g) in w2.iter_mut().zip(&gw2) {
                *w -= learning_rate * g;
            }
            b2 -= learning_rate * gb2;
        }
        if !loss.is_finite() {
            return Err(ModelError::NumericalFailure {
                kind: "MLP".to_string(),
                quantity: "loss".to_string(),
                iteration: epoch,
            });
        }
    }

    Ok(MlpModel {
        hidden,
        w1,
        b1,
        w2,
        b2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mlp_fits_a_linearly_separable_set() {
        let ds = crate::data::gen_gaussian_mixture(400, 2, 4.0, 12).unwrap();
        let (std_ds, _, _) = crate::data::standardize(&ds, &ds).unwrap();
        let model = fit_mlp(&std_ds, 32, 0.01, 200, 32, 99).unwrap();
        let scores: Vec<f64> = (0..std_ds.n_rows())
            .map(|i| model.score_row(std_ds.row(i)))
            .collect();
        let a = crate::metrics::auroc(&scores, std_ds.labels()).unwrap();
        assert!(a > 0.95, "MLP train AUROC {a}");
    }

    #[test]
    fn mlp_training_is_deterministic() {
        let ds = crate::data::gen_gaussian_mixture(100, 3, 2.0, 4).unwrap();
        let a = fit_mlp(&ds, 8, 0.01, 20, 32, 7).unwrap();
        let b = fit_mlp(&ds, 8, 0.01, 20, 32, 7).unwrap();
        assert_eq!(a.w1, b.w1);
        assert_eq!(a.w2, b.w2);
        assert_eq!(a.b1, b.b1);
        assert_eq!(a.b2, b.b2);
    }
}
