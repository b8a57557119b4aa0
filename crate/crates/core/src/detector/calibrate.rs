use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mimetic::Order;

pub const MIN_CALIBRATION_SAMPLES: usize = 20;

/// A threshold fixed from clean-image statistics. Persisted as
/// `{"k","alpha","tau","n","ts":[...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub k: usize,
    pub alpha: f64,
    pub tau: f64,
    pub n: usize,
    pub ts: Vec<f64>,
}

/// 1-based rank of the conservative upper `(1 - α)` empirical quantile:
/// `⌈(1 - α)(N + 1)⌉` clamped to `[1, N]`.
fn quantile_rank(n: usize, alpha: f64) -> usize {
    // the slack keeps products like 0.8 · 10 from ceiling to 9
    let r = ((1.0 - alpha) * (n + 1) as f64 - 1e-9).ceil();
    (r.max(1.0) as usize).min(n)
}

/// Sets `τ` to the order statistic of rank `⌈(1 - α)(N + 1)⌉` of the clean
/// scores. At most a fraction `α` of the calibration set lies above it.
pub fn calibrate(order: Order, clean_ts: &[f64], alpha: f64) -> Result<Calibration> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if clean_ts.len() < MIN_CALIBRATION_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_CALIBRATION_SAMPLES,
            actual: clean_ts.len(),
        });
    }
    if let Some(&bad) = clean_ts.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Error::InvalidThreshold(bad));
    }
    let mut sorted = clean_ts.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = quantile_rank(sorted.len(), alpha);
    Ok(Calibration {
        k: order.get(),
        alpha,
        tau: sorted[rank - 1],
        n: clean_ts.len(),
        ts: clean_ts.to_vec(),
    })
}

impl Calibration {
    pub fn order(&self) -> Result<Order> {
        Order::new(self.k)
    }

    /// Re-derives `τ` from the stored scores and checks it matches.
    pub fn validate(&self) -> Result<()> {
        let again = calibrate(self.order()?, &self.ts, self.alpha)?;
        if again.tau != self.tau || self.n != self.ts.len() {
            return Err(Error::InvalidThreshold(self.tau));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("calibration serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cal: Calibration = serde_json::from_str(text)?;
        cal.validate()?;
        Ok(cal)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|e| Error::from(e).at(path))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).at(path))?;
        Calibration::from_json(&text).map_err(|e| e.at(path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hundred_samples() {
        let ts: Vec<f64> = (1..=100).rev().map(f64::from).collect();
        let cal = calibrate(Order::K2, &ts, 0.05).unwrap();
        assert_eq!(cal.tau, 96.0);
        assert_eq!(cal.n, 100);
    }

    #[test]
    fn constant_samples() {
        let ts = vec![0.3; 25];
        for alpha in [0.01, 0.2, 0.5, 0.99] {
            assert_eq!(calibrate(Order::K2, &ts, alpha).unwrap().tau, 0.3);
        }
    }

    #[test]
    fn rank_formula_small() {
        assert_eq!(quantile_rank(5, 0.5), 3);
        assert_eq!(quantile_rank(100, 0.05), 96);
        assert_eq!(quantile_rank(9, 0.2), 8);
        assert_eq!(quantile_rank(20, 0.001), 20);
        assert_eq!(quantile_rank(20, 0.999), 1);
    }

    #[test]
    fn preconditions() {
        let ts = vec![1.0; 20];
        assert!(matches!(
            calibrate(Order::K2, &ts, 0.0),
            Err(Error::InvalidAlpha(_))
        ));
        assert!(matches!(
            calibrate(Order::K2, &ts, 1.0),
            Err(Error::InvalidAlpha(_))
        ));
        assert!(matches!(
            calibrate(Order::K2, &ts[..5], 0.1),
            Err(Error::TooFewSamples { actual: 5, .. })
        ));
        let mut bad = ts.clone();
        bad[3] = -1.0;
        assert!(calibrate(Order::K2, &bad, 0.1).is_err());
    }

    #[test]
    fn json_round_trip_and_tamper_check() {
        let ts: Vec<f64> = (1..=30).map(|i| i as f64 / 100.0).collect();
        let cal = calibrate(Order::K6, &ts, 0.1).unwrap();
        let text = cal.to_json();
        assert!(text.starts_with("{\"k\":6,\"alpha\":0.1,\"tau\":"));
        assert_eq!(Calibration::from_json(&text).unwrap(), cal);

        let mut forged = cal.clone();
        forged.tau = 0.01;
        assert!(Calibration::from_json(&forged.to_json()).is_err());
    }

    proptest! {
        #[test]
        fn empirical_fpr_at_most_alpha(
            ts in prop::collection::vec(1e-4f64..10.0, 20..200),
            alpha in 0.01f64..0.99,
        ) {
            let cal = calibrate(Order::K2, &ts, alpha).unwrap();
            let above = ts.iter().filter(|&&t| t > cal.tau).count();
            prop_assert!(above as f64 <= alpha * ts.len() as f64 + 1e-9);
            prop_assert!(ts.contains(&cal.tau));
        }
    }
}
