//! End-to-end pipelines behind the command-line tool: the order sweep on a
//! single image, directory calibration, corpus evaluation and gradient-map
//! export.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detector::{
    calibrate, gradient_magnitude_map_with, statistic_t_with, Calibration, OperatorCache,
};
use crate::error::{Error, Result};
use crate::eval::{EvalSummary, Label, ScoredImage};
use crate::imaging::{is_image_path, load_grayscale, resize, save_pgm, Image};
use crate::mimetic::Order;
use crate::perturb::{apply_and_clip, sign_noise, smooth_control};

/// Side length the sweep resamples its input to.
pub const SWEEP_SIZE: usize = 128;
/// 16/255: the canonical ℓ∞ budget at 8-bit depth.
pub const DEFAULT_EPS: f64 = 16.0 / 255.0;
pub const DEFAULT_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

/// One order of the sweep. `t_adv_*` aggregate over seeds; `t_adv_std` is
/// the sample standard deviation (0 for a single seed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub k: usize,
    pub t_clean: f64,
    pub t_adv_mean: f64,
    pub t_adv_std: f64,
    pub t_low: f64,
    pub ratio_adv: f64,
    pub ratio_low: f64,
    pub seeds: Vec<u64>,
    pub t_adv: Vec<f64>,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    // offsets from the first sample keep identical inputs exact
    let mean = xs[0] + xs.iter().map(|x| x - xs[0]).sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Resamples `img` to 128×128, then scores the clean image, the
/// sign-noised image for each seed and the smooth control (both clipped to
/// `[0, 1]`) at every order.
pub fn reproduce_table1(img: &Image, eps: f64, seeds: &[u64]) -> Result<Vec<Table1Row>> {
    if seeds.is_empty() {
        return Err(Error::TooFewSamples { min: 1, actual: 0 });
    }
    let clean = resize(img, SWEEP_SIZE, SWEEP_SIZE)?;
    let (h, w) = (clean.height(), clean.width());
    let adversarial: Vec<Image> = seeds
        .iter()
        .map(|&s| apply_and_clip(&clean, &sign_noise(h, w, eps, s)?))
        .collect::<Result<_>>()?;
    let low = apply_and_clip(&clean, &smooth_control(h, w, eps)?)?;

    let cache = OperatorCache::global();
    Order::ALL
        .par_iter()
        .map(|&order| {
            let ops = cache.get(order, h, w)?;
            let t = |x: &Image| statistic_t_with(&ops, x).map(|r| r.t);
            let t_clean = t(&clean)?;
            let t_adv: Vec<f64> = adversarial.iter().map(t).collect::<Result<_>>()?;
            let t_low = t(&low)?;
            let (t_adv_mean, t_adv_std) = mean_std(&t_adv);
            Ok(Table1Row {
                k: order.get(),
                t_clean,
                t_adv_mean,
                t_adv_std,
                t_low,
                ratio_adv: t_adv_mean / t_clean,
                ratio_low: t_low / t_clean,
                seeds: seeds.to_vec(),
                t_adv,
            })
        })
        .collect()
}

pub const TABLE1_CSV_HEADER: &str = "k,t_clean,t_adv_mean,t_adv_std,t_low,ratio_adv,ratio_low";

fn sig6(x: f64) -> String {
    format!("{x:.5e}")
}

/// CSV with six significant digits per value.
pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from(TABLE1_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let cols = [
            r.k.to_string(),
            sig6(r.t_clean),
            sig6(r.t_adv_mean),
            sig6(r.t_adv_std),
            sig6(r.t_low),
            sig6(r.ratio_adv),
            sig6(r.ratio_low),
        ];
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    out
}

/// Full-precision JSON array of rows.
pub fn table1_json(rows: &[Table1Row]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize") + "\n"
}

/// Decodable image files directly inside `dir`, sorted by file name.
pub fn image_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::from(e).at(dir))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::from(e).at(dir))?.path();
        if path.is_file() && is_image_path(&path) {
            files.push(path);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

fn score_files(files: &[PathBuf], order: Order) -> Result<Vec<f64>> {
    let cache = OperatorCache::global();
    files
        .par_iter()
        .map(|path| {
            let img = load_grayscale(path)?;
            let ops = cache
                .get(order, img.height(), img.width())
                .map_err(|e| e.at(path))?;
            statistic_t_with(&ops, &img)
                .map(|r| r.t)
                .map_err(|e| e.at(path))
        })
        .collect()
}

/// Scores every image in `dir` and calibrates a threshold from them.
pub fn calibrate_dir(dir: &Path, order: Order, alpha: f64) -> Result<Calibration> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let files = image_files(dir)?;
    if files.len() < crate::detector::MIN_CALIBRATION_SAMPLES {
        return Err(Error::TooFewSamples {
            min: crate::detector::MIN_CALIBRATION_SAMPLES,
            actual: files.len(),
        });
    }
    let ts = score_files(&files, order)?;
    calibrate(order, &ts, alpha)
}

fn labelled(dir: &Path, label: Label, order: Order) -> Result<Vec<ScoredImage>> {
    let files = image_files(dir)?;
    if files.is_empty() {
        return Err(Error::EmptyDirectory(dir.to_path_buf()));
    }
    let ts = score_files(&files, order)?;
    Ok(files
        .iter()
        .zip(ts)
        .map(|(p, t)| ScoredImage {
            label,
            file: p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            t,
        })
        .collect())
}

/// AUC of clean versus perturbed directories, plus error rates at `tau`
/// when given.
pub fn evaluate_dirs(
    clean_dir: &Path,
    perturbed_dir: &Path,
    order: Order,
    tau: Option<f64>,
) -> Result<EvalSummary> {
    let mut scores = labelled(clean_dir, Label::Clean, order)?;
    scores.extend(labelled(perturbed_dir, Label::Perturbed, order)?);
    Ok(EvalSummary::from_scores(order.get(), scores, tau).expect("both groups non-empty"))
}

/// Scales needed to undo the display normalization of the exported maps:
/// `|G x| = v · clean_scale`, `excess = excess_min + v · (excess_max - excess_min)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradmapSidecar {
    pub k: usize,
    pub eps: f64,
    pub seed: u64,
    pub clean_scale: f64,
    pub adv_scale: f64,
    pub excess_min: f64,
    pub excess_max: f64,
    pub excess_mean: f64,
    pub files: Vec<String>,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

/// Writes `<prefix>_clean.pgm`, `<prefix>_adv.pgm` and `<prefix>_excess.pgm`
/// with a `<prefix>.json` sidecar. The adversarial image is `img` plus
/// seeded sign noise, clipped.
pub fn write_gradmaps(
    img: &Image,
    order: Order,
    eps: f64,
    seed: u64,
    prefix: &Path,
) -> Result<GradmapSidecar> {
    let ops = OperatorCache::global().get(order, img.height(), img.width())?;
    let adv = apply_and_clip(img, &sign_noise(img.height(), img.width(), eps, seed)?)?;
    let clean_map = gradient_magnitude_map_with(&ops, img)?;
    let adv_map = gradient_magnitude_map_with(&ops, &adv)?;
    let excess = adv_map.excess_over(&clean_map)?;

    let lo = excess.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = excess.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let excess_img = Image::new(
        img.height(),
        img.width(),
        excess
            .iter()
            .map(|v| if span > 0.0 { (v - lo) / span } else { 0.0 })
            .collect(),
    )?;

    let names = ["_clean.pgm", "_adv.pgm", "_excess.pgm"].map(|s| with_suffix(prefix, s));
    save_pgm(&clean_map.to_image(), &names[0])?;
    save_pgm(&adv_map.to_image(), &names[1])?;
    save_pgm(&excess_img, &names[2])?;

    let sidecar = GradmapSidecar {
        k: order.get(),
        eps,
        seed,
        clean_scale: clean_map.display_scale(),
        adv_scale: adv_map.display_scale(),
        excess_min: lo,
        excess_max: hi,
        excess_mean: excess.iter().sum::<f64>() / excess.len() as f64,
        files: names.iter().map(|p| p.display().to_string()).collect(),
    };
    let json_path = with_suffix(prefix, ".json");
    std::fs::write(
        &json_path,
        serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n",
    )
    .map_err(|e| Error::from(e).at(&json_path))?;
    Ok(sidecar)
}

/// Deterministic piecewise-smooth test scene: a shaded background with a
/// few hard-edged, smoothly shaded objects. Samples stay inside
/// `[0.1, 0.9]`, so ±16/255 perturbations rarely clip.
pub fn synthetic_scene(height: usize, width: usize) -> Image {
    let (hf, wf) = (height as f64, width as f64);
    Image::from_fn(height, width, |r, c| {
        let y = (r as f64 + 0.5) / hf;
        let x = (c as f64 + 0.5) / wf;
        let mut v = 0.30 + 0.20 * x + 0.08 * (PI * y).sin();

        let d1 = ((x - 0.34).powi(2) + (y - 0.38).powi(2)).sqrt();
        if d1 < 0.19 {
            v = 0.72 - 0.5 * d1 * d1 + 0.04 * (3.0 * PI * x).cos();
        }
        let e = ((x - 0.70) / 0.20).powi(2) + ((y - 0.68) / 0.13).powi(2);
        if e < 1.0 {
            v = 0.22 + 0.06 * e + 0.03 * (2.0 * PI * y).sin();
        }
        if (0.58..0.86).contains(&x) && (0.12..0.36).contains(&y) {
            v = 0.55 + 0.15 * (y - 0.12) / 0.24;
        }
        v.clamp(0.1, 0.9)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let rows = vec![Table1Row {
            k: 2,
            t_clean: 0.0437,
            t_adv_mean: 0.155,
            t_adv_std: 0.0,
            t_low: 0.0434,
            ratio_adv: 0.155 / 0.0437,
            ratio_low: 0.0434 / 0.0437,
            seeds: vec![1],
            t_adv: vec![0.155],
        }];
        let csv = table1_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), TABLE1_CSV_HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "2,4.37000e-2,1.55000e-1,0.00000e0,4.34000e-2,3.54691e0,9.93135e-1"
        );
    }

    #[test]
    fn mean_and_sample_std() {
        assert_eq!(mean_std(&[2.0]), (2.0, 0.0));
        let (m, s) = mean_std(&[1.0, 2.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((s - 1.0).abs() < 1e-15);
        let x = 0.1 + 0.2;
        assert_eq!(mean_std(&[x; 5]), (x, 0.0));
    }

    #[test]
    fn empty_seed_list() {
        let img = synthetic_scene(64, 64);
        assert!(reproduce_table1(&img, DEFAULT_EPS, &[]).is_err());
    }

    #[test]
    fn scene_range() {
        let img = synthetic_scene(128, 128);
        assert!(img.data().iter().all(|v| (0.1..=0.9).contains(v)));
    }
}
