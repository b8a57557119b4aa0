//! Binary PGM (`P5`), 8- or 16-bit. 16-bit samples are big-endian.

use super::image::Image;
use crate::error::{Error, Result};

struct Header {
    width: usize,
    height: usize,
    maxval: u32,
    data_offset: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header> {
    if !bytes.starts_with(b"P5") {
        return Err(Error::MalformedHeader("missing P5 magic".into()));
    }
    let mut pos = 2;
    let mut fields = [0u64; 3];
    for (slot, name) in fields.iter_mut().zip(["width", "height", "maxval"]) {
        // whitespace and comments
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(Error::MalformedHeader(format!("expected {name}")));
        }
        let text = std::str::from_utf8(&bytes[start..pos]).expect("ascii digits");
        *slot = text
            .parse()
            .map_err(|_| Error::MalformedHeader(format!("{name} out of range")))?;
    }
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => {
            return Err(Error::MalformedHeader(
                "expected single whitespace after maxval".into(),
            ))
        }
    }
    let [width, height, maxval] = fields;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "empty image {width}x{height}"
        )));
    }
    if maxval == 0 {
        return Err(Error::MalformedHeader("maxval must be positive".into()));
    }
    if maxval > 65535 {
        return Err(Error::UnsupportedBitDepth(
            maxval.min(u32::MAX as u64) as u32
        ));
    }
    Ok(Header {
        width: width as usize,
        height: height as usize,
        maxval: maxval as u32,
        data_offset: pos,
    })
}

pub fn decode_pgm(bytes: &[u8]) -> Result<Image> {
    let header = parse_header(bytes)?;
    let count = header.width * header.height;
    let sample_bytes = if header.maxval > 255 { 2 } else { 1 };
    let payload = &bytes[header.data_offset..];
    let expected = count * sample_bytes;
    if payload.len() < expected {
        return Err(Error::TruncatedPayload {
            expected,
            actual: payload.len(),
        });
    }
    let max = header.maxval as f64;
    let data: Vec<f64> = if sample_bytes == 1 {
        payload[..count].iter().map(|&b| b as f64 / max).collect()
    } else {
        payload[..expected]
            .chunks_exact(2)
            .map(|p| u16::from_be_bytes([p[0], p[1]]) as f64 / max)
            .collect()
    };
    // Samples above maxval are invalid PGM.
    Image::new(header.height, header.width, data).map_err(|e| match e {
        Error::SampleOutOfRange { index, .. } => {
            Error::MalformedHeader(format!("sample {index} exceeds maxval"))
        }
        other => other,
    })
}

/// 8-bit `P5`, samples quantized by `round(v · 255)`.
pub fn encode_pgm(img: &Image) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend(
        img.data()
            .iter()
            .map(|&v| (v.clamp(0.0, 1.0) * 255.0).round() as u8),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_pixel() {
        let img = decode_pgm(b"P5\n1 1\n255\n\xff").unwrap();
        assert_eq!((img.height(), img.width()), (1, 1));
        assert_eq!(img.data(), &[1.0]);

        let img = decode_pgm(b"P5 1 1 255 \x10").unwrap();
        assert!((img.data()[0] - 16.0 / 255.0).abs() < 1e-15);
    }

    #[test]
    fn comments_and_sixteen_bit() {
        let mut bytes = b"P5\n# made by hand\n2 1\n# depth\n65535\n".to_vec();
        bytes.extend_from_slice(&[0xff, 0xff, 0x80, 0x00]);
        let img = decode_pgm(&bytes).unwrap();
        assert_eq!(img.data()[0], 1.0);
        assert!((img.data()[1] - 32768.0 / 65535.0).abs() < 1e-15);
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(
            decode_pgm(b"P6\n1 1\n255\n\0"),
            Err(Error::MalformedHeader(_))
        ));
        assert!(matches!(
            decode_pgm(b"P5\n1\n255\n\0"),
            Err(Error::MalformedHeader(_))
        ));
        assert!(matches!(
            decode_pgm(b"P5\n2 2\n255\n\0\0"),
            Err(Error::TruncatedPayload {
                expected: 4,
                actual: 2
            })
        ));
        assert!(matches!(
            decode_pgm(b"P5\n1 1\n70000\n\0\0"),
            Err(Error::UnsupportedBitDepth(70000))
        ));
        assert!(matches!(
            decode_pgm(b"P5\n1 1\n0\n\0"),
            Err(Error::MalformedHeader(_))
        ));
    }

    #[test]
    fn sample_above_maxval_is_rejected() {
        assert!(matches!(
            decode_pgm(b"P5\n1 1\n100\n\xc8"),
            Err(Error::MalformedHeader(_))
        ));
    }

    proptest! {
        #[test]
        fn eight_bit_round_trip(h in 1usize..8, w in 1usize..8, seed in any::<u64>()) {
            let data: Vec<f64> = (0..h * w)
                .map(|i| ((seed.wrapping_mul(6364136223846793005).wrapping_add((i as u64).wrapping_mul(1442695040888963407)) >> 56) as f64) / 255.0)
                .collect();
            let img = Image::new(h, w, data).unwrap();
            let back = decode_pgm(&encode_pgm(&img)).unwrap();
            prop_assert_eq!(back, img);
        }
    }
}
