//! Figure ids and the data behind each figure.

use std::fs;
use std::path::PathBuf;

use serde_json::json;

use nongauss_core::dense_coding::{mi_scan, SignalAlphabet};
use nongauss_core::gaussian;
use nongauss_core::sweep::{self, linspace, SweepResult};
use nongauss_core::{ExperimentConfig, Scheme};

use crate::args::{Format, ReproArgs};
use crate::commands::{render, wigner_csv, wigner_table};
use crate::error::CliError;
use crate::output::{metadata, write_output};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Quantity {
    /// Homodyne density at phase 0 against the unsubtracted state.
    Pdf { lambda: f64 },
    /// Marginal of the Bell-measurement density in `x_A - x_B`.
    BellMarginal { lambda: f64 },
    Variance,
    Wigner { lambda: f64 },
    MeanPhoton,
    MutualInformation { alpha: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FigureSpec {
    pub id: &'static str,
    pub scheme: Scheme,
    pub practical: bool,
    pub quantity: Quantity,
    pub columns: &'static [&'static str],
}

const PDF: &[&str] = &["x", "value_ng", "value_ref"];
const VARIANCE: &[&str] = &["lambda", "value_ng", "value_ref", "gain_db"];
const WIGNER: &[&str] = &["x", "p", "w"];
const PHOTONS: &[&str] = &["lambda", "value_ng", "value_ref"];
const MI: &[&str] = &["lambda", "value_ng", "value_ref", "gain_bits"];

const fn fig(id: &'static str, scheme: Scheme, practical: bool, quantity: Quantity, columns: &'static [&'static str]) -> FigureSpec {
    FigureSpec {
        id,
        scheme,
        practical,
        quantity,
        columns,
    }
}

use Quantity::*;
use Scheme::{SingleMode as S, TwoMode as D};

pub const FIGURES: [FigureSpec; 15] = [
    fig("fig2", S, false, Pdf { lambda: 0.4 }, PDF),
    fig("fig3", S, false, Variance, VARIANCE),
    fig("fig5", S, false, Wigner { lambda: 0.4 }, WIGNER),
    fig("fig6", S, false, Wigner { lambda: 0.8 }, WIGNER),
    fig("fig7", D, false, BellMarginal { lambda: 0.4 }, PDF),
    fig("fig8", S, false, MeanPhoton, PHOTONS),
    fig("fig9", D, false, Variance, VARIANCE),
    fig("fig10", D, false, MutualInformation { alpha: 1.5 }, MI),
    fig("fig11", D, false, MutualInformation { alpha: 0.7 }, MI),
    fig("fig12", S, true, Pdf { lambda: 0.4 }, PDF),
    fig("fig13", S, true, Variance, VARIANCE),
    fig("fig14", S, true, Wigner { lambda: 0.4 }, WIGNER),
    fig("fig15", S, true, Wigner { lambda: 0.8 }, WIGNER),
    fig("fig16", D, true, MutualInformation { alpha: 1.5 }, MI),
    fig("fig17", D, true, MutualInformation { alpha: 0.7 }, MI),
];

pub fn lookup(id: &str) -> Option<&'static FigureSpec> {
    FIGURES.iter().find(|f| f.id == id)
}

pub fn lambda_grid() -> Vec<f64> {
    linspace(0.01, 0.99, 99)
}

pub fn phase_space_grid() -> Vec<f64> {
    linspace(-4.0, 4.0, 161)
}

impl FigureSpec {
    pub fn config(&self, lambda: f64) -> Result<ExperimentConfig, CliError> {
        let cfg = if self.practical {
            ExperimentConfig::practical_defaults(lambda, self.scheme)?
        } else {
            ExperimentConfig::ideal(lambda, nongauss_core::config::DEFAULT_TAP_TRANSMITTANCE, self.scheme)?
        };
        Ok(cfg)
    }

    /// Sweep data, or `None` for Wigner tables.
    pub fn sweep(&self) -> Result<Option<SweepResult>, CliError> {
        let grid = lambda_grid();
        let sweep = match self.quantity {
            Pdf { lambda } | BellMarginal { lambda } => {
                let cfg = self.config(lambda)?;
                let mixture = gaussian::homodyne_mixture(&cfg, 0.0)?;
                let mixture = if mixture.is_two_dimensional() { mixture.marginal_x() } else { mixture };
                let xs = phase_space_grid();
                let ng = xs.iter().map(|&x| mixture.value(x, 0.0)).collect();
                let reference = xs.iter().map(|&x| gaussian::reference_pdf(&cfg, x)).collect();
                SweepResult::new("x", xs, ng)?.with_reference(reference)?
            }
            Variance => sweep::variance_scan(&self.config(grid[0])?, &grid, 0.0)?,
            MeanPhoton => sweep::mean_photon_scan(&self.config(grid[0])?, &grid, gaussian::mean_photon_single)?,
            MutualInformation { alpha } => mi_scan(&self.config(grid[0])?, &grid, &SignalAlphabet::new(alpha)?)?,
            Wigner { .. } => return Ok(None),
        };
        Ok(Some(sweep))
    }

    fn metadata_extra(&self) -> serde_json::Value {
        match self.quantity {
            MutualInformation { alpha } => json!({ "figure": self.id, "alpha": alpha }),
            _ => json!({ "figure": self.id }),
        }
    }
}

/// Writes `<outdir>/<id>.csv` (or `.json`); Wigner tables are always CSV.
pub fn run_repro(args: &ReproArgs) -> Result<(), CliError> {
    let spec = lookup(&args.figure).ok_or_else(|| {
        let ids: Vec<&str> = FIGURES.iter().map(|f| f.id).collect();
        CliError::Usage(format!("unknown figure `{}`; known: {}", args.figure, ids.join(", ")))
    })?;
    let format = args.format.unwrap_or_default();
    let (contents, ext) = match spec.sweep()? {
        Some(sweep) => {
            let lambda = match spec.quantity {
                Pdf { lambda } | BellMarginal { lambda } => lambda,
                _ => sweep.grid[0],
            };
            let meta = metadata("figure", &spec.config(lambda)?, spec.metadata_extra(), args.stamp);
            let ext = if format == Format::Json { "json" } else { "csv" };
            (render(&sweep.with_metadata(meta), format), ext)
        }
        None => {
            let Wigner { lambda } = spec.quantity else {
                unreachable!("only Wigner figures have no sweep")
            };
            let xs = phase_space_grid();
            let mixture = gaussian::wigner_mixture(&spec.config(lambda)?)?;
            (wigner_csv(&xs, &wigner_table(&mixture, &xs)), "csv")
        }
    };
    fs::create_dir_all(&args.outdir).map_err(|e| CliError::Io(format!("{}: {e}", args.outdir.display())))?;
    let path: PathBuf = args.outdir.join(format!("{}.{ext}", spec.id));
    write_output(Some(&path), &contents)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_ids_and_columns() {
        let ids: Vec<&str> = FIGURES.iter().map(|f| f.id).collect();
        let expected = [2, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17].map(|n| format!("fig{n}"));
        assert_eq!(ids, expected);
        for f in &FIGURES {
            if let Some(s) = f.sweep().unwrap() {
                assert_eq!(s.header(), f.columns, "{}", f.id);
                s.validate().unwrap();
            } else {
                assert_eq!(f.columns, WIGNER);
            }
        }
        assert!(lookup("fig99").is_none());
    }
}
