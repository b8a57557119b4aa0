use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mimetic::Order;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Clean,
    Adversarial,
    Unthresholded,
}

/// Flags `T > τ` as adversarial; a tie is clean.
pub fn classify(t: f64, tau: f64) -> Verdict {
    if t > tau {
        Verdict::Adversarial
    } else {
        Verdict::Clean
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConfig {
    pub order: Order,
    pub threshold: Option<f64>,
}

impl DetectorConfig {
    pub fn new(order: Order, threshold: Option<f64>) -> Result<Self> {
        if let Some(tau) = threshold {
            if !(tau.is_finite() && tau > 0.0) {
                return Err(Error::InvalidThreshold(tau));
            }
        }
        Ok(DetectorConfig { order, threshold })
    }
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            order: Order::K2,
            threshold: None,
        }
    }
}

/// Per-image result. Serializes as
/// `{"k","e_h1","e_l2","t","tau","verdict"}` with `tau` null when no
/// threshold was applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorReport {
    pub k: usize,
    pub e_h1: f64,
    pub e_l2: f64,
    pub t: f64,
    pub tau: Option<f64>,
    pub verdict: Verdict,
}

impl DetectorReport {
    pub(crate) fn unthresholded(order: Order, e_h1: f64, e_l2: f64) -> Self {
        DetectorReport {
            k: order.get(),
            e_h1,
            e_l2,
            t: e_h1 / e_l2,
            tau: None,
            verdict: Verdict::Unthresholded,
        }
    }

    pub fn with_threshold(mut self, tau: f64) -> Self {
        self.tau = Some(tau);
        self.verdict = classify(self.t, tau);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
