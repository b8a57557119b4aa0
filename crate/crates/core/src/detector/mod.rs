//! The gradient-energy ratio `T`, threshold calibration, verdicts and
//! cell-centered gradient-magnitude maps.

mod cache;
mod calibrate;
mod energy;
mod gradmap;
mod report;

pub use cache::{MimeticPair, OperatorCache};
pub use calibrate::{calibrate, Calibration, MIN_CALIBRATION_SAMPLES};
pub use energy::{
    gradient_energy, gradient_energy_of_field, gradient_energy_with, pixel_energy, statistic_t,
    statistic_t_with,
};
pub use gradmap::{gradient_magnitude_map, gradient_magnitude_map_with, GradientMap};
pub use report::{classify, DetectorConfig, DetectorReport, Verdict};

use rayon::prelude::*;

use crate::error::Result;
use crate::imaging::Image;

/// A configured detector with its own operator cache.
#[derive(Debug, Default)]
pub struct Detector {
    config: DetectorConfig,
    cache: OperatorCache,
}

impl Detector {
    pub fn new(config: DetectorConfig) -> Self {
        Detector {
            config,
            cache: OperatorCache::new(),
        }
    }

    pub fn config(&self) -> &DetectorConfig {
        &self.config
    }

    pub fn cache(&self) -> &OperatorCache {
        &self.cache
    }

    pub fn evaluate(&self, img: &Image) -> Result<DetectorReport> {
        let ops = self
            .cache
            .get(self.config.order, img.height(), img.width())?;
        let report = statistic_t_with(&ops, img)?;
        Ok(match self.config.threshold {
            Some(tau) => report.with_threshold(tau),
            None => report,
        })
    }

    /// Evaluates images in parallel; reports come back in input order.
    pub fn evaluate_batch(&self, images: &[Image]) -> Vec<Result<DetectorReport>> {
        images.par_iter().map(|img| self.evaluate(img)).collect()
    }
}
