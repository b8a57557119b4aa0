use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mimetic_detect::experiments::{
    calibrate_dir, evaluate_dirs, reproduce_table1, table1_csv, table1_json, write_gradmaps,
    DEFAULT_SEEDS,
};
use mimetic_detect::imaging::load_grayscale;
use mimetic_detect::{build_grad_2d, Calibration, Detector, DetectorConfig, Error, Order, Verdict};

#[derive(Parser)]
#[command(
    name = "mimetic-detect",
    version,
    about = "Mimetic gradient-energy adversarial detector"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score one image and print a JSON report. Exit 0 clean, 2 adversarial, 1 error.
    Detect {
        #[arg(long)]
        image: PathBuf,
        #[arg(long, default_value = "2", value_parser = parse_order)]
        order: Order,
        /// Calibration file produced by `calibrate`
        #[arg(long, conflicts_with = "tau")]
        calibration: Option<PathBuf>,
        /// Explicit threshold
        #[arg(long)]
        tau: Option<f64>,
    },
    /// Calibrate a threshold from a directory of clean images.
    Calibrate {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, default_value = "2", value_parser = parse_order)]
        order: Order,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep all orders on one image: clean, sign noise and smooth control.
    #[command(name = "reproduce-table1")]
    ReproduceTable1 {
        #[arg(long)]
        image: PathBuf,
        /// Budget, as a decimal or a fraction such as 16/255
        #[arg(long, default_value = "16/255", value_parser = parse_eps)]
        eps: f64,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SEEDS)]
        seeds: Vec<u64>,
        /// CSV destination; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write full-precision JSON here
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Export clean, adversarial and excess gradient-magnitude maps as PGM.
    Gradmap {
        #[arg(long)]
        image: PathBuf,
        #[arg(long, default_value = "2", value_parser = parse_order)]
        order: Order,
        #[arg(long)]
        out_prefix: PathBuf,
        #[arg(long, default_value = "16/255", value_parser = parse_eps)]
        eps: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// ROC AUC of clean versus perturbed directories.
    Eval {
        #[arg(long)]
        clean: PathBuf,
        #[arg(long)]
        adv: PathBuf,
        #[arg(long, default_value = "2", value_parser = parse_order)]
        order: Order,
        #[arg(long, conflicts_with = "calibration")]
        tau: Option<f64>,
        #[arg(long)]
        calibration: Option<PathBuf>,
    },
    /// Print the 2D gradient operator as `row col value` lines.
    #[command(name = "dump-operator")]
    DumpOperator {
        #[arg(long, default_value = "2", value_parser = parse_order)]
        order: Order,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_order(s: &str) -> Result<Order, String> {
    let k: usize = s.parse().map_err(|e| format!("{e}"))?;
    Order::try_from(k).map_err(|e| e.to_string())
}

fn parse_eps(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|e| format!("{e}"))?;
            let d: f64 = d.trim().parse().map_err(|e| format!("{e}"))?;
            n / d
        }
        None => s.trim().parse().map_err(|e| format!("{e}"))?,
    };
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("budget must be finite and non-negative, got {s}"))
    }
}

fn threshold(
    order: Order,
    tau: Option<f64>,
    calibration: Option<&PathBuf>,
) -> Result<Option<f64>, Error> {
    match calibration {
        Some(path) => {
            let cal = Calibration::load(path)?;
            if cal.k != order.get() {
                return Err(Error::OrderMismatch {
                    calibrated: cal.k,
                    requested: order.get(),
                }
                .at(path));
            }
            Ok(Some(cal.tau))
        }
        None => Ok(tau),
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::from(e).at(p)),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Detect {
            image,
            order,
            calibration,
            tau,
        } => {
            let tau = threshold(order, tau, calibration.as_ref())?;
            let detector = Detector::new(DetectorConfig::new(order, tau)?);
            let report = detector.evaluate(&load_grayscale(&image)?)?;
            println!("{}", report.to_json());
            Ok(match report.verdict {
                Verdict::Adversarial => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Calibrate {
            dir,
            order,
            alpha,
            out,
        } => {
            let cal = calibrate_dir(&dir, order, alpha)?;
            cal.save(&out)?;
            println!("tau={} n={}", cal.tau, cal.n);
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproduceTable1 {
            image,
            eps,
            seeds,
            out,
            json,
        } => {
            let rows = reproduce_table1(&load_grayscale(&image)?, eps, &seeds)?;
            write_out(out.as_ref(), &table1_csv(&rows))?;
            if let Some(path) = json {
                write_out(Some(&path), &table1_json(&rows))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gradmap {
            image,
            order,
            out_prefix,
            eps,
            seed,
        } => {
            let sidecar = write_gradmaps(&load_grayscale(&image)?, order, eps, seed, &out_prefix)?;
            println!("{}", serde_json::to_string_pretty(&sidecar)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval {
            clean,
            adv,
            order,
            tau,
            calibration,
        } => {
            let tau = threshold(order, tau, calibration.as_ref())?;
            let summary = evaluate_dirs(&clean, &adv, order, tau)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::DumpOperator {
            order,
            width,
            height,
            out,
        } => {
            let g = build_grad_2d(order, width, height)?;
            match out {
                Some(p) => {
                    let f = File::create(&p).map_err(|e| Error::from(e).at(&p))?;
                    g.matrix().write_coo(BufWriter::new(f))?;
                }
                None => g.matrix().write_coo(BufWriter::new(io::stdout().lock()))?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_fraction() {
        assert_eq!(parse_eps("16/255").unwrap(), 16.0 / 255.0);
        assert_eq!(parse_eps("0").unwrap(), 0.0);
        assert!(parse_eps("-1").is_err());
        assert!(parse_eps("1/0").is_err());
    }

    #[test]
    fn order_values() {
        assert!(parse_order("6").is_ok());
        assert!(parse_order("3").is_err());
    }
}
