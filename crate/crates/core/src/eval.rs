//! Corpus-level separation: ROC AUC between clean and perturbed scores.

use serde::{Deserialize, Serialize};

/// Mann–Whitney estimate of `P(perturbed > clean)`, ties counted 1/2.
///
/// Scores are ranked jointly with tied groups sharing their average rank;
/// the rank sum of the perturbed group gives `U`. Returns `None` when either
/// group is empty.
pub fn auc_mann_whitney(clean: &[f64], perturbed: &[f64]) -> Option<f64> {
    if clean.is_empty() || perturbed.is_empty() {
        return None;
    }
    let mut all: Vec<(f64, bool)> = clean
        .iter()
        .map(|&s| (s, false))
        .chain(perturbed.iter().map(|&s| (s, true)))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j < all.len() && all[j].0 == all[i].0 {
            j += 1;
        }
        // ranks i+1 ..= j share their mean
        let mean_rank = (i + 1 + j) as f64 / 2.0;
        let hits = all[i..j].iter().filter(|(_, p)| *p).count();
        rank_sum += mean_rank * hits as f64;
        i = j;
    }
    let np = perturbed.len() as f64;
    let u = rank_sum - np * (np + 1.0) / 2.0;
    Some(u / (np * clean.len() as f64))
}

/// ROC points `(fpr, tpr)` sweeping the threshold from `+∞` down through
/// every distinct score.
pub fn roc_curve(clean: &[f64], perturbed: &[f64]) -> Vec<(f64, f64)> {
    let mut thresholds: Vec<f64> = clean.iter().chain(perturbed).copied().collect();
    thresholds.sort_by(|a, b| b.total_cmp(a));
    thresholds.dedup();
    let mut points = vec![(0.0, 0.0)];
    for t in thresholds {
        points.push(rates_at_or_above(clean, perturbed, t));
    }
    points
}

fn rates_at_or_above(clean: &[f64], perturbed: &[f64], t: f64) -> (f64, f64) {
    let frac = |xs: &[f64]| xs.iter().filter(|&&s| s >= t).count() as f64 / xs.len() as f64;
    (frac(clean), frac(perturbed))
}

/// Trapezoidal area under [`roc_curve`].
pub fn auc_trapezoid(clean: &[f64], perturbed: &[f64]) -> Option<f64> {
    if clean.is_empty() || perturbed.is_empty() {
        return None;
    }
    let pts = roc_curve(clean, perturbed);
    Some(
        pts.windows(2)
            .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
            .sum(),
    )
}

/// False- and true-positive rates of the rule `T > τ`.
pub fn rates_at(clean: &[f64], perturbed: &[f64], tau: f64) -> (f64, f64) {
    let frac = |xs: &[f64]| {
        if xs.is_empty() {
            0.0
        } else {
            xs.iter().filter(|&&s| s > tau).count() as f64 / xs.len() as f64
        }
    };
    (frac(clean), frac(perturbed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Clean,
    Perturbed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredImage {
    pub label: Label,
    pub file: String,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSummary {
    pub k: usize,
    pub auc: f64,
    pub tau: Option<f64>,
    pub fpr: Option<f64>,
    pub tpr: Option<f64>,
    pub scores: Vec<ScoredImage>,
}

impl EvalSummary {
    /// Builds the summary from labelled scores. Both groups must be
    /// non-empty.
    pub fn from_scores(k: usize, scores: Vec<ScoredImage>, tau: Option<f64>) -> Option<Self> {
        let pick = |l: Label| -> Vec<f64> {
            scores
                .iter()
                .filter(|s| s.label == l)
                .map(|s| s.t)
                .collect()
        };
        let (clean, perturbed) = (pick(Label::Clean), pick(Label::Perturbed));
        let auc = auc_mann_whitney(&clean, &perturbed)?;
        let rates = tau.map(|t| rates_at(&clean, &perturbed, t));
        Some(EvalSummary {
            k,
            auc,
            tau,
            fpr: rates.map(|r| r.0),
            tpr: rates.map(|r| r.1),
            scores,
        })
    }
}
