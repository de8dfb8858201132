//! Serialized report schemas. Stable keys, no timestamps, no extra fields:
//! re-running the same command reproduces each document byte for byte.

use serde::{Deserialize, Serialize};

use synthbench::experiment::{RankingReport, SelectionReport, SweepResult};

use crate::manifest::RunManifest;

/// `evaluate` output:
/// `{ manifest, algorithms: [{name, R, S, tstr}], sra, tstr, trtr,
///    concordance: {concordant, tied, discordant: [[ni, nj, Ri, Rj, Si, Sj]]} }`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EvaluateDocument {
    pub manifest: RunManifest,
    pub algorithms: Vec<AlgorithmRow>,
    pub sra: f64,
    pub tstr: f64,
    pub trtr: f64,
    pub concordance: ConcordanceSection,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmRow {
    pub name: String,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub tstr: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConcordanceSection {
    pub concordant: usize,
    pub tied: usize,
    pub discordant: Vec<DiscordantRow>,
}

/// `[name_i, name_j, R_i, R_j, S_i, S_j]`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DiscordantRow(pub String, pub String, pub f64, pub f64, pub f64, pub f64);

impl EvaluateDocument {
    pub fn from_report(manifest: RunManifest, report: &RankingReport) -> EvaluateDocument {
        EvaluateDocument {
            manifest,
            algorithms: report
                .per_algorithm
                .iter()
                .map(|a| AlgorithmRow {
                    name: a.name.clone(),
                    r: a.r,
                    s: a.s,
                    tstr: a.tstr,
                })
                .collect(),
            sra: report.sra,
            tstr: report.tstr,
            trtr: report.trtr,
            concordance: ConcordanceSection {
                concordant: report.concordance.concordant_pairs,
                tied: report.concordance.tied_pairs,
                discordant: report
                    .concordance
                    .discordant
                    .iter()
                    .map(|p| {
                        DiscordantRow(
                            p.name_i.clone(),
                            p.name_j.clone(),
                            p.r_i,
                            p.r_j,
                            p.s_i,
                            p.s_j,
                        )
                    })
                    .collect(),
            },
        }
    }
}

/// `sweep --format json` output.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepDocument {
    pub manifest: RunManifest,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepRow {
    pub p: f64,
    pub reps: usize,
    pub sra_mean: f64,
    pub sra_std: f64,
    pub tstr_mean: f64,
    pub tstr_std: f64,
    pub trtr_mean: f64,
}

/// Exactly this header, in this order.
pub const SWEEP_CSV_HEADER: &str = "p,reps,sra_mean,sra_std,tstr_mean,tstr_std,trtr_mean";

impl SweepDocument {
    pub fn from_result(manifest: RunManifest, sweep: &SweepResult) -> SweepDocument {
        SweepDocument {
            manifest,
            rows: sweep
                .per_p
                .iter()
                .map(|point| SweepRow {
                    p: point.p,
                    reps: point.repetitions,
                    sra_mean: point.sra_mean,
                    sra_std: point.sra_std,
                    tstr_mean: point.tstr_mean,
                    tstr_std: point.tstr_std,
                    trtr_mean: point.trtr_mean,
                })
                .collect(),
        }
    }

    /// CSV rendering: the manifest rides along as `#` comment lines so the
    /// header row stays exactly [`SWEEP_CSV_HEADER`].
    pub fn to_csv(&self) -> Result<String, serde_json::Error> {
        let mut out = String::new();
        out.push_str("# manifest: ");
        out.push_str(&serde_json::to_string(&self.manifest)?);
        out.push('\n');
        out.push_str(SWEEP_CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.p,
                row.reps,
                row.sra_mean,
                row.sra_std,
                row.tstr_mean,
                row.tstr_std,
                row.trtr_mean
            ));
        }
        Ok(out)
    }
}

/// `simulate` output.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SimulateDocument {
    pub manifest: RunManifest,
    pub runs: usize,
    pub steps_per_run: usize,
    pub final_choice_agreement: f64,
    pub per_run: Vec<SelectionRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SelectionRow {
    pub champion_synth: String,
    pub champion_real: String,
}

impl SimulateDocument {
    pub fn from_report(manifest: RunManifest, report: &SelectionReport) -> SimulateDocument {
        SimulateDocument {
            manifest,
            runs: report.runs,
            steps_per_run: report.steps_per_run,
            final_choice_agreement: report.final_choice_agreement,
            per_run: report
                .per_run
                .iter()
                .map(|t| SelectionRow {
                    champion_synth: t.champion_synth.clone(),
                    champion_real: t.champion_real.clone(),
                })
                .collect(),
        }
    }
}
