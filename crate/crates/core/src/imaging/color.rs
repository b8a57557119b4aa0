use super::image::{Image, Raster};
use crate::error::{Error, Result};

/// Luma coefficients for R, G, B.
pub const LUMA: [f64; 3] = [0.2989, 0.5870, 0.1140];

pub fn to_grayscale(raster: &Raster) -> Result<Image> {
    if raster.channels() != 3 {
        return Err(Error::ChannelCount(raster.channels()));
    }
    let data = raster
        .pixels()
        .map(|p| (LUMA[0] * p[0] + LUMA[1] * p[1] + LUMA[2] * p[2]).min(1.0))
        .collect();
    Image::new(raster.height(), raster.width(), data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray_of(rgb: [f64; 3]) -> f64 {
        let r = Raster::new(1, 1, 3, rgb.to_vec()).unwrap();
        to_grayscale(&r).unwrap().data()[0]
    }

    #[test]
    fn luma_examples() {
        assert!((gray_of([1.0, 1.0, 1.0]) - 0.9999).abs() < 1e-15);
        assert_eq!(gray_of([0.0, 0.0, 0.0]), 0.0);
        assert!((gray_of([1.0, 0.0, 0.0]) - 0.2989).abs() < 1e-15);
    }

    #[test]
    fn wrong_channel_count() {
        let r = Raster::new(1, 1, 4, vec![0.0; 4]).unwrap();
        assert!(matches!(to_grayscale(&r), Err(Error::ChannelCount(4))));
    }
}
