//! Demo dataset generator: a two-class Gaussian mixture with tunable
//! separation.

use rand::seq::SliceRandom;

use crate::data::Dataset;
use crate::error::DataError;
use crate::seeds::{self, sample_standard_normal};

/// Strength of the per-class covariance mixing applied when separation > 0.
const MIX_STRENGTH: f64 = 0.3;

/// Generate a balanced two-class Gaussian mixture, deterministic in `seed`.
///
/// Class c is centered at +/-(separation / 2) along the unit diagonal
/// direction. When separation > 0, samples are additionally mixed by a
/// per-class full-rank matrix `I + 0.3 * G_c / sqrt(d)` (G_c has standard
/// normal entries), so the class covariances differ and classifiers of
/// different flexibility reach different AUROCs. At separation = 0 the mixing
/// is skipped and both classes are drawn from the same standard normal: the
/// classes are identical in distribution and every classifier sits at chance.
pub fn gen_gaussian_mixture(
    n: usize,
    d: usize,
    separation: f64,
    seed: u64,
) -> Result<Dataset, DataError> {
    if n < 4 {
        return Err(DataError::GeneratorTooSmall { n });
    }
    if d == 0 {
        return Err(DataError::GeneratorNoFeatures);
    }
    if !separation.is_finite() || separation < 0.0 {
        return Err(DataError::BadSeparation { separation });
    }

    let mut rng = seeds::rng_from_seed(seed);

    let mixers: Option<[Vec<f64>; 2]> = if separation > 0.0 {
        let scale = MIX_STRENGTH / (d as f64).sqrt();
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut m = vec![0.0; d * d];
            for (idx, entry) in m.iter_mut().enumerate() {
                let (r, c) = (idx / d, idx % d);
                let noise = scale * sample_standard_normal(rng);
                *entry = if r == c { 1.0 + noise } else { noise };
            }
            m
        };
        Some([draw(&mut rng), draw(&mut rng)])
    } else {
        None
    };

    let offset = separation / (2.0 * (d as f64).sqrt());
    let n0 = n / 2;
    let mut labels: Vec<u8> = Vec::with_capacity(n);
    labels.extend(std::iter::repeat_n(0, n0));
    labels.extend(std::iter::repeat_n(1, n - n0));

    let mut features = Vec::with_capacity(n * d);
    let mut z = vec![0.0; d];
    for &y in &labels {
        for zj in z.iter_mut() {
            *zj = sample_standard_normal(&mut rng);
        }
        let mean = if y == 0 { -offset } else { offset };
        match &mixers {
            Some(ms) => {
                let m = &ms[y as usize];
                for r in 0..d {
                    let mut v = mean;
                    for (c, &zc) in z.iter().enumerate() {
                        v += m[r * d + c] * zc;
                    }
                    features.push(v);
                }
            }
            None => {
                for &zj in &z {
                    features.push(mean + zj);
                }
            }
        }
    }

    // Shuffle row order so the file does not look class-sorted.
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut shuffled_features = Vec::with_capacity(n * d);
    let mut shuffled_labels = Vec::with_capacity(n);
    for &i in &order {
        shuffled_features.extend_from_slice(&features[i * d..(i + 1) * d]);
        shuffled_labels.push(labels[i]);
    }

    let feature_names = (1..=d).map(|j| format!("x{j}")).collect();
    Ok(Dataset::from_flat_unchecked(
        shuffled_features,
        shuffled_labels,
        feature_names,
        n,
        d,
    ))
}
