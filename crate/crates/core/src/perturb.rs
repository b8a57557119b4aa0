//! The two perturbation families: pixel-wise sign noise with the spatial
//! signature of ℓ∞ gradient-sign attacks, and an equal-amplitude smooth
//! sinusoid used as a control.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::imaging::Image;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationKind {
    SignNoise { seed: u64 },
    SmoothControl,
}

/// Additive field `δ` (row-major, `height × width`) with `max |δ| ≤ ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    height: usize,
    width: usize,
    delta: Vec<f64>,
    eps: f64,
    kind: PerturbationKind,
}

fn check_budget(eps: f64) -> Result<()> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::InvalidBudget(eps));
    }
    Ok(())
}

/// `δ = ε · sign(η)`, `η` i.i.d. standard normal drawn row-major from a
/// ChaCha20 stream seeded with `seed`. `sign(0)` counts as `+1`.
pub fn sign_noise(height: usize, width: usize, eps: f64, seed: u64) -> Result<Perturbation> {
    check_budget(eps)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let delta = (0..height * width)
        .map(|_| {
            let eta: f64 = StandardNormal.sample(&mut rng);
            if eta >= 0.0 {
                eps
            } else {
                -eps
            }
        })
        .collect();
    Ok(Perturbation {
        height,
        width,
        delta,
        eps,
        kind: PerturbationKind::SignNoise { seed },
    })
}

/// `δ(row j, col i) = ε · sin(4π i / W) · sin(4π j / H)`, zero-based.
pub fn smooth_control(height: usize, width: usize, eps: f64) -> Result<Perturbation> {
    check_budget(eps)?;
    let sx: Vec<f64> = (0..width)
        .map(|i| (4.0 * PI * i as f64 / width as f64).sin())
        .collect();
    let delta = (0..height)
        .flat_map(|j| {
            let sy = (4.0 * PI * j as f64 / height as f64).sin();
            sx.iter().map(move |s| eps * s * sy)
        })
        .collect();
    Ok(Perturbation {
        height,
        width,
        delta,
        eps,
        kind: PerturbationKind::SmoothControl,
    })
}

impl Perturbation {
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn kind(&self) -> PerturbationKind {
        self.kind
    }

    pub fn linf(&self) -> f64 {
        self.delta.iter().fold(0.0, |m, d| m.max(d.abs()))
    }

    /// Maps `[-ε, ε]` affinely onto `[0, 1]` for display; `ε = 0` gives a
    /// flat mid-gray.
    pub fn to_image(&self) -> Image {
        let data = self
            .delta
            .iter()
            .map(|d| {
                if self.eps > 0.0 {
                    (0.5 * (d / self.eps + 1.0)).clamp(0.0, 1.0)
                } else {
                    0.5
                }
            })
            .collect();
        Image::new(self.height, self.width, data).expect("display map in range")
    }
}

/// `min(1, max(0, x + δ))` per pixel.
pub fn apply_and_clip(img: &Image, p: &Perturbation) -> Result<Image> {
    if (img.height(), img.width()) != (p.height, p.width) {
        return Err(Error::ShapeMismatch {
            expected_h: img.height(),
            expected_w: img.width(),
            actual_h: p.height,
            actual_w: p.width,
        });
    }
    let data = img
        .data()
        .iter()
        .zip(&p.delta)
        .map(|(x, d)| (x + d).clamp(0.0, 1.0))
        .collect();
    Image::new(img.height(), img.width(), data)
}
