use std::io::Cursor;

use super::image::{Image, Raster};
use super::Decoded;
use crate::error::{Error, Result};

/// Decodes a PNG. Palette and low-bit-depth images are expanded; alpha is
/// dropped.
pub fn decode_png(bytes: &[u8]) -> Result<Decoded> {
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(png_error)?;
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::Png("image too large".into()))?;
    let mut buf = vec![0u8; size];
    let frame = reader.next_frame(&mut buf).map_err(png_error)?;
    let (color, depth) = reader.output_color_type();

    let (height, width) = (frame.height as usize, frame.width as usize);
    let channels = color.samples();
    let samples: Vec<f64> = match depth {
        png::BitDepth::Eight => buf[..frame.buffer_size()]
            .iter()
            .map(|&b| b as f64 / 255.0)
            .collect(),
        png::BitDepth::Sixteen => buf[..frame.buffer_size()]
            .chunks_exact(2)
            .map(|p| u16::from_be_bytes([p[0], p[1]]) as f64 / 65535.0)
            .collect(),
        other => return Err(Error::UnsupportedBitDepth(other as u32)),
    };
    let keep = match color {
        png::ColorType::Grayscale | png::ColorType::GrayscaleAlpha => 1,
        png::ColorType::Rgb | png::ColorType::Rgba => 3,
        png::ColorType::Indexed => return Err(Error::Png("palette was not expanded".into())),
    };
    let data: Vec<f64> = samples
        .chunks_exact(channels)
        .flat_map(|px| px[..keep].iter().copied())
        .collect();
    if keep == 1 {
        Image::new(height, width, data).map(Decoded::Gray)
    } else {
        Raster::new(height, width, keep, data).map(Decoded::Color)
    }
}

fn png_error(e: png::DecodingError) -> Error {
    match e {
        png::DecodingError::IoError(io) if io.kind() == std::io::ErrorKind::UnexpectedEof => {
            Error::Png(format!("truncated stream: {io}"))
        }
        other => Error::Png(other.to_string()),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn encode(
        width: u32,
        height: u32,
        color: png::ColorType,
        depth: png::BitDepth,
        data: &[u8],
    ) -> Vec<u8> {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, width, height);
            enc.set_color(color);
            enc.set_depth(depth);
            let mut w = enc.write_header().unwrap();
            w.write_image_data(data).unwrap();
        }
        out
    }

    #[test]
    fn gray_shape() {
        let bytes = encode(
            128,
            128,
            png::ColorType::Grayscale,
            png::BitDepth::Eight,
            &[7u8; 128 * 128],
        );
        match decode_png(&bytes).unwrap() {
            Decoded::Gray(img) => {
                assert_eq!((img.height(), img.width()), (128, 128));
                assert!((img.data()[0] - 7.0 / 255.0).abs() < 1e-15);
            }
            other => panic!("expected gray, got {other:?}"),
        }
    }

    #[test]
    fn rgba_drops_alpha() {
        let bytes = encode(
            1,
            1,
            png::ColorType::Rgba,
            png::BitDepth::Eight,
            &[255, 0, 51, 9],
        );
        match decode_png(&bytes).unwrap() {
            Decoded::Color(r) => {
                assert_eq!(r.channels(), 3);
                assert_eq!(r.data(), &[1.0, 0.0, 0.2]);
            }
            other => panic!("expected color, got {other:?}"),
        }
    }

    #[test]
    fn sixteen_bit_gray() {
        let bytes = encode(
            2,
            1,
            png::ColorType::Grayscale,
            png::BitDepth::Sixteen,
            &[0xff, 0xff, 0, 0],
        );
        let img = decode_png(&bytes).unwrap().into_grayscale().unwrap();
        assert_eq!(img.data(), &[1.0, 0.0]);
    }

    #[test]
    fn truncated_png_errors() {
        let bytes = encode(
            16,
            16,
            png::ColorType::Grayscale,
            png::BitDepth::Eight,
            &[1u8; 256],
        );
        let err = decode_png(&bytes[..bytes.len() / 2]).unwrap_err();
        assert!(matches!(err, Error::Png(_)));
    }
}
