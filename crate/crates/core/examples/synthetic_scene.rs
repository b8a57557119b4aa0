//! Writes the deterministic piecewise-smooth test scene as an 8-bit PGM.
//!
//! `cargo run --example synthetic_scene -- out.pgm [size]`

use mimetic_detect::experiments::synthetic_scene;
use mimetic_detect::imaging::save_pgm;

fn main() -> mimetic_detect::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = args.next().unwrap_or_else(|| "synthetic_128.pgm".into());
    let size = args.next().and_then(|s| s.parse().ok()).unwrap_or(128);
    save_pgm(&synthetic_scene(size, size), &out)
}
