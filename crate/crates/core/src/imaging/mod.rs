//! Grayscale rasters: decoding, color conversion, resampling and the
//! replicate-padded extended field consumed by the 2D gradient.

mod color;
mod image;
mod pad;
mod pgm;
mod png;
mod resize;

use std::path::Path;

pub use self::color::{to_grayscale, LUMA};
pub use self::image::{Image, Raster, RgbImage};
pub use self::pad::pad_and_vectorize;
pub use self::pgm::{decode_pgm, encode_pgm};
pub use self::png::decode_png;
pub use self::resize::resize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Png,
    Pgm,
}

impl Format {
    /// Detects the format from the leading magic bytes.
    pub fn sniff(bytes: &[u8]) -> Option<Format> {
        if bytes.starts_with(b"\x89PNG\r\n\x1a\n") {
            Some(Format::Png)
        } else if bytes.starts_with(b"P5") {
            Some(Format::Pgm)
        } else {
            None
        }
    }
}

/// A decoded file: either already single-channel or a color raster.
#[derive(Debug, Clone, PartialEq)]
pub enum Decoded {
    Gray(Image),
    Color(Raster),
}

impl Decoded {
    pub fn into_grayscale(self) -> Result<Image> {
        match self {
            Decoded::Gray(img) => Ok(img),
            Decoded::Color(raster) => to_grayscale(&raster),
        }
    }
}

/// Decodes PNG or binary PGM bytes; samples are normalized by the format's
/// maximum value. Without a hint the format is sniffed from the magic bytes.
pub fn decode_image(bytes: &[u8], hint: Option<Format>) -> Result<Decoded> {
    match hint.or_else(|| Format::sniff(bytes)) {
        Some(Format::Png) => decode_png(bytes),
        Some(Format::Pgm) => decode_pgm(bytes).map(Decoded::Gray),
        None => Err(Error::UnknownFormat),
    }
}

/// Reads an image file and converts it to grayscale if needed.
pub fn load_grayscale(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::from(e).at(path))?;
    decode_image(&bytes, None)
        .and_then(Decoded::into_grayscale)
        .map_err(|e| e.at(path))
}

/// Writes an image as 8-bit binary PGM.
pub fn save_pgm(img: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_pgm(img)).map_err(|e| Error::from(e).at(path))
}

/// True for file names this crate knows how to decode.
pub fn is_image_path(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| matches!(e.to_ascii_lowercase().as_str(), "png" | "pgm"))
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sniffing() {
        assert_eq!(Format::sniff(b"P5 1 1 255\n\x00"), Some(Format::Pgm));
        assert_eq!(Format::sniff(b"\x89PNG\r\n\x1a\nrest"), Some(Format::Png));
        assert_eq!(Format::sniff(b"GIF89a"), None);
        assert!(matches!(
            decode_image(b"GIF89a", None),
            Err(Error::UnknownFormat)
        ));
    }
}
