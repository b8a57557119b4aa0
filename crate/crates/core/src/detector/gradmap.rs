use super::cache::{MimeticPair, OperatorCache};
use crate::error::{Error, Result};
use crate::imaging::{pad_and_vectorize, Image};
use crate::mimetic::Order;

/// Cell-centered gradient magnitude, one value per pixel, unnormalized.
const ROUNDOFF_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]

pub struct GradientMap {
    height: usize,
    width: usize,
    magnitude: Vec<f64>,
}

impl GradientMap {
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn magnitude(&self) -> &[f64] {
        &self.magnitude
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.magnitude[row * self.width + col]
    }

    pub fn max(&self) -> f64 {
        self.magnitude.iter().copied().fold(0.0, f64::max)
    }

    /// Scale used by [`GradientMap::to_image`]: the largest magnitude, or 0
    /// when every magnitude is at rounding level (below 1e-12).
    pub fn display_scale(&self) -> f64 {
        let m = self.max();
        if m > ROUNDOFF_FLOOR {
            m
        } else {
            0.0
        }
    }

    pub fn mean(&self) -> f64 {
        self.magnitude.iter().sum::<f64>() / self.magnitude.len() as f64
    }

    /// Magnitudes divided by [`GradientMap::display_scale`]; a map at
    /// rounding level renders as zero.
    pub fn to_image(&self) -> Image {
        let scale = self.display_scale();
        let data = if scale > 0.0 {
            self.magnitude.iter().map(|v| v / scale).collect()
        } else {
            vec![0.0; self.magnitude.len()]
        };
        Image::new(self.height, self.width, data).expect("normalized map")
    }

    /// Per-pixel `self - base`.
    pub fn excess_over(&self, base: &GradientMap) -> Result<Vec<f64>> {
        if (self.height, self.width) != (base.height, base.width) {
            return Err(Error::ShapeMismatch {
                expected_h: base.height,
                expected_w: base.width,
                actual_h: self.height,
                actual_w: self.width,
            });
        }
        Ok(self
            .magnitude
            .iter()
            .zip(&base.magnitude)
            .map(|(a, b)| a - b)
            .collect())
    }
}

/// Averages the two x-faces and the two y-faces bounding each cell and
/// returns `sqrt(gx² + gy²)` per cell.
pub fn gradient_magnitude_map_with(ops: &MimeticPair, img: &Image) -> Result<GradientMap> {
    let (h, w) = (ops.gradient.height(), ops.gradient.width());
    if (img.height(), img.width()) != (h, w) {
        return Err(Error::ShapeMismatch {
            expected_h: h,
            expected_w: w,
            actual_h: img.height(),
            actual_w: img.width(),
        });
    }
    let faces = ops.gradient.apply(&pad_and_vectorize(img))?;
    let (gx, gy) = faces.face_blocks().expect("2D face layout");
    let mut magnitude = Vec::with_capacity(h * w);
    for j in 0..h {
        for i in 0..w {
            let x = 0.5 * (gx[i + j * (w + 1)] + gx[i + 1 + j * (w + 1)]);
            let y = 0.5 * (gy[i + j * w] + gy[i + (j + 1) * w]);
            magnitude.push(x.hypot(y));
        }
    }
    Ok(GradientMap {
        height: h,
        width: w,
        magnitude,
    })
}

pub fn gradient_magnitude_map(img: &Image, order: Order) -> Result<GradientMap> {
    let ops = OperatorCache::global().get(order, img.height(), img.width())?;
    gradient_magnitude_map_with(&ops, img)
}
