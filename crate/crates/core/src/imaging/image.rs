use crate::error::{Error, Result};

/// Single-channel raster, row-major, `height` rows of `width` samples.
///
/// Images built with [`Image::new`] hold samples in `[0, 1]`.
/// [`Image::unnormalized`] lifts that restriction for callers that feed
/// rescaled data to the detector, whose statistic is scale-invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    height: usize,
    width: usize,
    data: Vec<f64>,
}

impl Image {
    pub fn new(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        let img = Image::unnormalized(height, width, data)?;
        if let Some((index, &value)) = img
            .data
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::SampleOutOfRange { index, value });
        }
        Ok(img)
    }

    pub fn unnormalized(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::InvalidSize { height, width });
        }
        if data.len() != height * width {
            return Err(Error::DimensionMismatch {
                expected: height * width,
                actual: data.len(),
            });
        }
        if let Some((index, &value)) = data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::SampleOutOfRange { index, value });
        }
        Ok(Image {
            height,
            width,
            data,
        })
    }

    /// Builds an image from `f(row, col)`, clamping samples into `[0, 1]`.
    pub fn from_fn(height: usize, width: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..height)
            .flat_map(|r| (0..width).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c).clamp(0.0, 1.0))
            .collect();
        Image {
            height,
            width,
            data,
        }
    }

    pub fn filled(height: usize, width: usize, value: f64) -> Self {
        Image::from_fn(height, width, |_, _| value)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.width..(row + 1) * self.width]
    }

    /// `alpha · self`, unnormalized.
    pub fn scaled(&self, alpha: f64) -> Image {
        Image {
            height: self.height,
            width: self.width,
            data: self.data.iter().map(|v| alpha * v).collect(),
        }
    }

    pub fn same_shape(&self, other: &Image) -> Result<()> {
        if self.height != other.height || self.width != other.width {
            return Err(Error::ShapeMismatch {
                expected_h: self.height,
                expected_w: self.width,
                actual_h: other.height,
                actual_w: other.width,
            });
        }
        Ok(())
    }
}

/// Multi-channel raster, row-major with interleaved channels, samples in
/// `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<f64>,
}

/// The usual color case of [`Raster`].
pub type RgbImage = Raster;

impl Raster {
    pub fn new(height: usize, width: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 || channels == 0 {
            return Err(Error::InvalidSize { height, width });
        }
        if data.len() != height * width * channels {
            return Err(Error::DimensionMismatch {
                expected: height * width * channels,
                actual: data.len(),
            });
        }
        if let Some((index, &value)) = data
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::SampleOutOfRange { index, value });
        }
        Ok(Raster {
            height,
            width,
            channels,
            data,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn pixels(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.channels)
    }
}
