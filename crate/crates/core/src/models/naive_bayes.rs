//! Naive Bayes scorers: per-feature Gaussians and median-binarized
//! Bernoulli counts. Scores are class-1 minus class-0 log joints.

use crate::data::Dataset;
use crate::error::ModelError;

#[derive(Debug, Clone)]
pub(crate) struct GaussianNbModel {
    pub log_prior_diff: f64,
    pub mean0: Vec<f64>,
    pub mean1: Vec<f64>,
    pub var0: Vec<f64>,
    pub var1: Vec<f64>,
}

impl GaussianNbModel {
    pub fn score_row(&self, row: &[f64]) -> f64 {
        let mut score = self.log_prior_diff;
        for (j, &x) in row.iter().enumerate() {
            score += log_normal_pdf(x, self.mean1[j], self.var1[j])
                - log_normal_pdf(x, self.mean0[j], self.var0[j]);
        }
        score
    }
}

fn log_normal_pdf(x: f64, mean: f64, var: f64) -> f64 {
    let centered = x - mean;
    -0.5 * ((2.0 * std::f64::consts::PI * var).ln() + centered * centered / var)
}

/// Per-class per-feature Gaussians; every variance gets a smoothing floor of
/// `var_smoothing` times the largest full-train feature variance.
pub(crate) fn fit_gaussian_nb(
    ds: &Dataset,
    var_smoothing: f64,
) -> Result<GaussianNbModel, ModelError> {
    let d = ds.n_features();
    let (zeros, ones) = ds.class_indices();

    // Smoothing scale from the pooled training variance.
    let n = ds.n_rows() as f64;
    let mut max_var = 0.0f64;
    for j in 0..d {
        let col = ds.column(j);
        let mean = col.iter().sum::<f64>() / n;
        let var = col.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        max_var = max_var.max(var);
    }
    let smoothing = if max_var > 0.0 {
        var_smoothing * max_var
    } else {
        var_smoothing
    };

    let moments = |idx: &[usize]| {
        let m = idx.len() as f64;
        let mut mean = vec![0.0; d];
        for &i in idx {
            for (s, &x) in mean.iter_mut().zip(ds.row(i)) {
                *s += x;
            }
        }
        for s in mean.iter_mut() {
            *s /= m;
        }
        let mut var = vec![0.0; d];
        for &i in idx {
            for ((v, &x), mu) in var.iter_mut().zip(ds.row(i)).zip(&mean) {
                let c = x - mu;
                *v += c * c;
            }
        }
        for v in var.iter_mut() {
            *v = *v / m + smoothing;
        }
        (mean, var)
    };
    let (mean0, var0) = moments(&zeros);
    let (mean1, var1) = moments(&ones);

    Ok(GaussianNbModel {
        log_prior_diff: (ones.len() as f64 / zeros.len() as f64).ln(),
        mean0,
        mean1,
        var0,
        var1,
    })
}

#[derive(Debug, Clone)]
pub(crate) struct BernoulliNbModel {
    pub log_prior_diff: f64,
    pub medians: Vec<f64>,
    /// log(theta) and log(1 - theta) per class, per feature.
    pub log_on0: Vec<f64>,
    pub log_off0: Vec<f64>,
    pub log_on1: Vec<f64>,
    pub log_off1: Vec<f64>,
}

impl BernoulliNbModel {
    pub fn score_row(&self, row: &[f64]) -> f64 {
        let mut score = self.log_prior_diff;
        for (j, &x) in row.iter().enumerate() {
            if x > self.medians[j] {
                score += self.log_on1[j] - self.log_on0[j];
            } else {
                score += self.log_off1[j] - self.log_off0[j];
            }
        }
        score
    }
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite features"));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Features binarized at their training median, Laplace-smoothed counts.
pub(crate) fn fit_bernoulli_nb(ds: &Dataset, alpha: f64) -> Result<BernoulliNbModel, ModelError> {
    let d = ds.n_features();
    let (zeros, ones) = ds.class_indices();
    let medians: Vec<f64> = (0..d).map(|j| median(ds.column(j))).collect();

    let rates = |idx: &[usize]| {
        let m = idx.len() as f64;
        let mut log_on = Vec::with_capacity(d);
        let mut log_off = Vec::with_capacity(d);
        for (j, med) in medians.iter().enumerate() {
            let on = idx.iter().filter(|&&i| ds.row(i)[j] > *med).count() as f64;
            let theta = (on + alpha) / (m + 2.0 * alpha);
            log_on.push(theta.ln());
            log_off.push((1.0 - theta).ln());
        }
        (log_on, log_off)
    };
    let (log_on0, log_off0) = rates(&zeros);
    let (log_on1, log_off1) = rates(&ones);

    Ok(BernoulliNbModel {
        log_prior_diff: (ones.len() as f64 / zeros.len() as f64).ln(),
        medians,
        log_on0,
        log_off0,
        log_on1,
        log_off1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_nb_orders_separable_means() {
        // Class 0 at x = -1, class 1 at x = +1.
        let ds = Dataset::new(
            vec![vec![-1.0], vec![-1.0], vec![1.0], vec![1.0]],
            vec![0, 0, 1, 1],
            vec!["x".into()],
        )
        .unwrap();
        let model = fit_gaussian_nb(&ds, 1e-9).unwrap();
        let plus = model.score_row(&[1.0]);
        let minus = model.score_row(&[-1.0]);
        assert!(plus.is_finite() && minus.is_finite());
        assert!(plus > minus, "score(+1)={plus} score(-1)={minus}");
    }

    #[test]
    fn gaussian_nb_prior_shows_up_in_scores() {
        let ds = Dataset::new(
            vec![vec![0.0], vec![0.1], vec![-0.1], vec![0.05]],
            vec![0, 1, 1, 1],
            vec!["x".into()],
        )
        .unwrap();
        let model = fit_gaussian_nb(&ds, 1e-9).unwrap();
        assert!((model.log_prior_diff - 3.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn bernoulli_nb_uses_median_threshold() {
        let ds = Dataset::new(
            vec![vec![0.0], vec![1.0], vec![10.0], vec![11.0]],
            vec![0, 0, 1, 1],
            vec!["x".into()],
        )
        .unwrap();
        let model = fit_bernoulli_nb(&ds, 1.0).unwrap();
        assert_eq!(model.medians, vec![5.5]);
        assert!(model.score_row(&[10.0]) > model.score_row(&[0.0]));
    }

    #[test]
    fn bernoulli_nb_is_finite_with_one_sided_bits() {
        // All class-1 rows above the median, all class-0 rows below:
        // Laplace smoothing keeps every log finite.
        let ds = Dataset::new(
            vec![vec![0.0], vec![1.0], vec![10.0], vec![11.0]],
            vec![0, 0, 1, 1],
            vec!["x".into()],
        )
        .unwrap();
        let model = fit_bernoulli_nb(&ds, 1.0).unwrap();
        for x in [-100.0, 0.0, 5.5, 100.0] {
            assert!(model.score_row(&[x]).is_finite());
        }
    }
}
