use super::cache::{MimeticPair, OperatorCache};
use super::report::DetectorReport;
use crate::error::{Error, Result};
use crate::imaging::{pad_and_vectorize, Image};
use crate::mimetic::{FieldVector, Order};

/// `(G u)ᵀ P (G u)` for an extended field already laid out for `ops`.
pub fn gradient_energy_of_field(ops: &MimeticPair, field: &FieldVector) -> Result<f64> {
    let g = ops.gradient.apply(field)?;
    Ok(ops.weights.quadratic_form(g.values()))
}

fn check_shape(ops: &MimeticPair, img: &Image) -> Result<()> {
    let (h, w) = (ops.gradient.height(), ops.gradient.width());
    if (img.height(), img.width()) != (h, w) {
        return Err(Error::ShapeMismatch {
            expected_h: h,
            expected_w: w,
            actual_h: img.height(),
            actual_w: img.width(),
        });
    }
    Ok(())
}

pub fn gradient_energy_with(ops: &MimeticPair, img: &Image) -> Result<f64> {
    check_shape(ops, img)?;
    gradient_energy_of_field(ops, &pad_and_vectorize(img))
}

/// Weighted mimetic gradient energy of the replicate-padded image.
pub fn gradient_energy(img: &Image, order: Order) -> Result<f64> {
    let ops = OperatorCache::global().get(order, img.height(), img.width())?;
    gradient_energy_with(&ops, img)
}

/// Plain sum of squared pixels, ghost cells excluded. Zero means the ratio
/// is undefined.
pub fn pixel_energy(img: &Image) -> f64 {
    img.data().iter().map(|v| v * v).sum()
}

pub fn statistic_t_with(ops: &MimeticPair, img: &Image) -> Result<DetectorReport> {
    let e_l2 = pixel_energy(img);
    if e_l2 == 0.0 {
        return Err(Error::ZeroImage);
    }
    let e_h1 = gradient_energy_with(ops, img)?;
    Ok(DetectorReport::unthresholded(
        ops.gradient.order(),
        e_h1,
        e_l2,
    ))
}

pub fn statistic_t(img: &Image, order: Order) -> Result<DetectorReport> {
    let ops = OperatorCache::global().get(order, img.height(), img.width())?;
    statistic_t_with(&ops, img)
}
