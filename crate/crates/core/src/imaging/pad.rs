use super::image::Image;
use crate::mimetic::{FieldVector, Layout};

/// Adds one replicated ghost layer around the image and flattens it
/// x-fastest: entry `i + j·(W + 2)` holds extended column `i` of extended
/// row `j`.
pub fn pad_and_vectorize(img: &Image) -> FieldVector {
    let (h, w) = (img.height(), img.width());
    let mut values = Vec::with_capacity((h + 2) * (w + 2));
    for j in 0..h + 2 {
        let row = img.row(j.saturating_sub(1).min(h - 1));
        values.push(row[0]);
        values.extend_from_slice(row);
        values.push(row[w - 1]);
    }
    FieldVector::new(values, Layout::ExtendedCenters2D { m: w, n: h })
        .expect("padded length matches layout")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let (a, b, c, d) = (0.1, 0.2, 0.3, 0.4);
        let img = Image::new(2, 2, vec![a, b, c, d]).unwrap();
        let u = pad_and_vectorize(&img);
        let v = u.values();
        assert_eq!(&v[0..4], &[a, a, b, b]);
        assert_eq!(&v[4..8], &[a, a, b, b]);
        assert_eq!(&v[8..12], &[c, c, d, d]);
        assert_eq!(&v[12..16], &[c, c, d, d]);
    }

    #[test]
    fn constant_and_shape() {
        let img = Image::filled(128, 128, 0.3);
        let u = pad_and_vectorize(&img);
        assert_eq!(u.len(), 130 * 130);
        assert!(u.values().iter().all(|&v| v == 0.3));
    }
}
