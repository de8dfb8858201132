//! Ranking metrics: AUROC, Synthetic Ranking Agreement, and the TSTR/TRTR
//! means.
//!
//! SRA treats an algorithm pool of size k as k(k-1) ordered pairs and counts
//! the fraction whose performance ordering on the synthetic data strictly
//! agrees with the ordering on the real data:
//!
//! ```text
//! SRA = 1/(k(k-1)) * sum over i, sum over j != i of
//!       indicator((R_i - R_j)(S_i - S_j) > 0)
//! ```
//!
//! The indicator is strict, so a pair tied in either vector contributes 0; it
//! is counted separately as tied rather than discordant so callers can tell
//! "wrong order" from "no order".

use crate::error::MetricsError;

/// Named per-algorithm performance values (AUROC, in [0, 1]).
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceVector {
    names: Vec<String>,
    values: Vec<f64>,
}

impl PerformanceVector {
    /// Build a vector of finite values with unique names.
    pub fn new(names: Vec<String>, values: Vec<f64>) -> Result<Self, MetricsError> {
        if names.len() != values.len() {
            return Err(MetricsError::NameValueMismatch {
                names: names.len(),
                values: values.len(),
            });
        }
        for (j, name) in names.iter().enumerate() {
            if names[..j].contains(name) {
                return Err(MetricsError::DuplicateName { name: name.clone() });
            }
        }
        for (name, &v) in names.iter().zip(values.iter()) {
            if !v.is_finite() {
                return Err(MetricsError::NonFiniteValue { name: name.clone() });
            }
        }
        Ok(PerformanceVector { names, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// One algorithm pair whose ordering on synthetic data contradicts its
/// ordering on real data.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscordantPair {
    pub name_i: String,
    pub name_j: String,
    pub r_i: f64,
    pub r_j: f64,
    pub s_i: f64,
    pub s_j: f64,
}

/// SRA plus the pair-level breakdown behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcordanceReport {
    pub sra: f64,
    pub concordant_pairs: usize,
    pub tied_pairs: usize,
    pub discordant: Vec<DiscordantPair>,
}

impl ConcordanceReport {
    pub fn discordant_pairs(&self) -> usize {
        self.discordant.len()
    }
}

/// AUROC via the Mann-Whitney rank-sum with midranks for tied scores:
/// `(sum of positive ranks - n_pos(n_pos+1)/2) / (n_pos * n_neg)`.
///
/// Equals the probability that a random positive outscores a random
/// negative, ties counted half. Errors if the labels contain a single class,
/// the distinguished degenerate-data condition.
pub fn auroc(scores: &[f64], labels: &[u8]) -> Result<f64, MetricsError> {
    if scores.len() != labels.len() {
        return Err(MetricsError::LengthMismatch {
            scores: scores.len(),
            labels: labels.len(),
        });
    }
    if let Some(index) = scores.iter().position(|v| !v.is_finite()) {
        return Err(MetricsError::NonFiniteScore { index });
    }
    let n = scores.len();
    let n_pos = labels.iter().filter(|&&y| y == 1).count();
    let n_neg = n - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(MetricsError::SingleClassLabels);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("finite scores"));

    // Midranks: every member of a tie group gets the group's average rank.
    let mut rank_sum_pos = 0.0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // 1-based ranks start+1 ..= end average to (start + end + 1) / 2.
        let midrank = (start + end + 1) as f64 / 2.0;
        for &idx in &order[start..end] {
            if labels[idx] == 1 {
                rank_sum_pos += midrank;
            }
        }
        start = end;
    }

    let n_pos_f = n_pos as f64;
    let n_neg_f = n_neg as f64;
    Ok((rank_sum_pos - n_pos_f * (n_pos_f + 1.0) / 2.0) / (n_pos_f * n_neg_f))
}

fn check_aligned(r: &PerformanceVector, s: &PerformanceVector) -> Result<(), MetricsError> {
    if r.names != s.names {
        return Err(MetricsError::NameMismatch {
            reason: format!("{:?} vs {:?}", r.names, s.names),
        });
    }
    if r.len() < 2 {
        return Err(MetricsError::TooFewAlgorithms { k: r.len() });
    }
    Ok(())
}

/// Synthetic Ranking Agreement with exact tie comparison.
pub fn sra(r: &PerformanceVector, s: &PerformanceVector) -> Result<ConcordanceReport, MetricsError> {
    sra_with_epsilon(r, s, 0.0)
}

/// SRA with a tie tolerance: performance differences of magnitude <= epsilon
/// count as ties. Epsilon 0 is the exact strict indicator.
pub fn sra_with_epsilon(
    r: &PerformanceVector,
    s: &PerformanceVector,
    epsilon: f64,
) -> Result<ConcordanceReport, MetricsError> {
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(MetricsError::BadTieEpsilon { epsilon });
    }
    check_aligned(r, s)?;
    let k = r.len();
    let rv = r.values();
    let sv = s.values();

    let mut concordant = 0usize;
    let mut tied = 0usize;
    let mut discordant = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let dr = rv[i] - rv[j];
            let ds = sv[i] - sv[j];
            if dr.abs() <= epsilon || ds.abs() <= epsilon {
                tied += 1;
            } else if dr * ds > 0.0 {
                concordant += 1;
            } else {
                discordant.push(DiscordantPair {
                    name_i: r.names[i].clone(),
                    name_j: r.names[j].clone(),
                    r_i: rv[i],
                    r_j: rv[j],
                    s_i: sv[i],
                    s_j: sv[j],
                });
            }
        }
    }

    // Each unordered pair stands for two ordered pairs in the definition, so
    // the ordered-pair fraction reduces to 2c / (k(k-1)).
    let sra = 2.0 * concordant as f64 / (k * (k - 1)) as f64;
    Ok(ConcordanceReport {
        sra,
        concordant_pairs: concordant,
        tied_pairs: tied,
        discordant,
    })
}

/// Mean of a performance vector; the TSTR aggregate when the values are
/// AUROCs of synthetic-trained models on the real test set, and TRTR when
/// they are the real-trained values.
pub fn mean_performance(v: &PerformanceVector) -> Result<f64, MetricsError> {
    if v.is_empty() {
        return Err(MetricsError::EmptyVector);
    }
    Ok(v.values().iter().sum::<f64>() / v.len() as f64)
}

/// Kendall's tau for tie-free vectors: (concordant - discordant) / (k(k-1)/2).
///
/// Ties are an error; this is the testing oracle for [`sra`], which satisfies
/// `sra = (tau + 1) / 2` exactly on tie-free inputs.
pub fn kendall_tau(r: &PerformanceVector, s: &PerformanceVector) -> Result<f64, MetricsError> {
    check_aligned(r, s)?;
    for (v, name) in [(r, "R"), (s, "S")] {
        let vals = v.values();
        for i in 0..vals.len() {
            for j in (i + 1)..vals.len() {
                if vals[i] == vals[j] {
                    return Err(MetricsError::TiesPresent {
                        name: name.to_string(),
                    });
                }
            }
        }
    }
    let k = r.len();
    let rv = r.values();
    let sv = s.values();
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    for i in 0..k {
        for j in (i + 1)..k {
            if (rv[i] - rv[j]) * (sv[i] - sv[j]) > 0.0 {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    Ok((concordant - discordant) as f64 / (k * (k - 1) / 2) as f64)
}
