//! Separable bicubic resampling (Keys kernel, a = -0.5) with the kernel
//! stretched by the inverse scale when shrinking, so downscaling low-passes
//! before it decimates. Output pixel `x` (1-based) samples the input at
//! `x / s + (1 - 1 / s) / 2`; out-of-range taps reflect symmetrically.

use super::image::Image;
use crate::error::{Error, Result};

fn cubic(x: f64) -> f64 {
    let a = x.abs();
    if a <= 1.0 {
        (1.5 * a - 2.5) * a * a + 1.0
    } else if a <= 2.0 {
        ((-0.5 * a + 2.5) * a - 4.0) * a + 2.0
    } else {
        0.0
    }
}

/// Taps for one output sample: `(input index, weight)`, weights sum to 1.
type Taps = Vec<(usize, f64)>;

fn contributions(in_len: usize, out_len: usize) -> Vec<Taps> {
    let scale = out_len as f64 / in_len as f64;
    let (kscale, width) = if scale < 1.0 {
        (scale, 4.0 / scale)
    } else {
        (1.0, 4.0)
    };
    let span = width.ceil() as usize + 2;
    let period = 2 * in_len as isize;

    (1..=out_len)
        .map(|x| {
            let u = x as f64 / scale + 0.5 * (1.0 - 1.0 / scale);
            let left = (u - width / 2.0).floor() as isize;
            let mut taps: Taps = Vec::with_capacity(span);
            let mut total = 0.0;
            for t in 0..span as isize {
                let idx = left + t;
                let w = kscale * cubic(kscale * (u - idx as f64));
                if w == 0.0 {
                    continue;
                }
                // symmetric reflection of the 1-based index into [1, in_len]
                let r = (idx - 1).rem_euclid(period);
                let src = if r < in_len as isize {
                    r
                } else {
                    period - 1 - r
                } as usize;
                total += w;
                match taps.iter_mut().find(|(i, _)| *i == src) {
                    Some(tap) => tap.1 += w,
                    None => taps.push((src, w)),
                }
            }
            for tap in &mut taps {
                tap.1 /= total;
            }
            taps
        })
        .collect()
}

/// Resizes to `out_height × out_width`, clamping the result into `[0, 1]`.
pub fn resize(img: &Image, out_height: usize, out_width: usize) -> Result<Image> {
    if out_height < 2 || out_width < 2 {
        return Err(Error::InvalidSize {
            height: out_height,
            width: out_width,
        });
    }
    let (h, w) = (img.height(), img.width());
    if (h, w) == (out_height, out_width) {
        return Ok(img.clone());
    }

    let cols = contributions(w, out_width);
    let mut tmp = vec![0.0; h * out_width];
    for r in 0..h {
        let src = img.row(r);
        for (c, taps) in cols.iter().enumerate() {
            tmp[r * out_width + c] = taps.iter().map(|&(i, wt)| wt * src[i]).sum();
        }
    }

    let rows = contributions(h, out_height);
    let mut out = vec![0.0; out_height * out_width];
    for (r, taps) in rows.iter().enumerate() {
        for c in 0..out_width {
            let v: f64 = taps
                .iter()
                .map(|&(i, wt)| wt * tmp[i * out_width + c])
                .sum();
            out[r * out_width + c] = v.clamp(0.0, 1.0);
        }
    }
    Image::new(out_height, out_width, out)
}
