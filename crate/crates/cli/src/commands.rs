use rayon::prelude::*;
use serde_json::json;

use nongauss_core::dense_coding::{mi_scan, SignalAlphabet};
use nongauss_core::fock::{oracle_report, FockCutoff};
use nongauss_core::gaussian::{self, SignedGaussianMixture};
use nongauss_core::sweep::{self, format_number, SweepResult};
use nongauss_core::{ExperimentConfig, Scheme};

use crate::args::{Format, Kind, OracleArgs, ScanArgs, WignerArgs};
use crate::error::CliError;
use crate::output::{metadata, write_output};
use crate::settings::{parse_grid, Settings};

pub const DEFAULT_LAMBDA_GRID: &str = "0.01:0.95:95";
pub const DEFAULT_WIGNER_GRID: &str = "-4:4:161";
/// Largest lambda `oracle-check` accepts without `--allow-heavy`.
pub const HEAVY_LAMBDA: f64 = 0.6;

pub fn render(sweep: &SweepResult, format: Format) -> String {
    match format {
        Format::Csv => sweep.to_csv_string(),
        Format::Json => sweep.to_json_string() + "\n",
    }
}

pub fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Variance => "variance",
        Kind::Mi => "mi",
        Kind::Pdet => "pdet",
        Kind::MeanPhoton => "mean-photon",
    }
}

/// Sweep of one quantity over `grid` with the scheme, phase and alphabet of
/// `settings`.
pub fn scan_sweep(kind: Kind, template: &ExperimentConfig, grid: &[f64], s: &Settings) -> Result<SweepResult, CliError> {
    let sweep = match kind {
        Kind::Variance => sweep::variance_scan(template, grid, s.phase)?,
        Kind::Mi => mi_scan(template, grid, &SignalAlphabet::new(s.alpha)?)?,
        Kind::Pdet => sweep::pdet_scan(template, grid)?,
        Kind::MeanPhoton => sweep::mean_photon_scan(template, grid, gaussian::mean_photon_single)?,
    };
    Ok(sweep)
}

pub fn run_scan(args: &ScanArgs) -> Result<(), CliError> {
    let s = Settings::from_args(&args.physics)?;
    let (default_scheme, required) = match args.kind {
        Kind::Mi => (Scheme::TwoMode, Some(Scheme::TwoMode)),
        Kind::MeanPhoton => (Scheme::SingleMode, Some(Scheme::SingleMode)),
        _ => (Scheme::SingleMode, None),
    };
    let scheme = s.scheme_or(default_scheme);
    if required.is_some_and(|r| r != scheme) {
        return Err(CliError::Usage(format!(
            "--kind {} needs --scheme {}",
            kind_name(args.kind),
            if scheme == Scheme::SingleMode { "two" } else { "single" }
        )));
    }
    let grid = s.lambda_grid(DEFAULT_LAMBDA_GRID)?;
    let template = s.config(grid[0], scheme)?;
    let mut extra = json!({ "phase": s.phase });
    if args.kind == Kind::Mi {
        extra = json!({ "alpha": s.alpha });
    }
    let sweep = scan_sweep(args.kind, &template, &grid, &s)?.with_metadata(metadata(
        kind_name(args.kind),
        &template,
        extra,
        args.output.stamp,
    ));
    write_output(args.output.out.as_deref(), &render(&sweep, args.output.format.unwrap_or_default()))
}

/// `x,p,w` rows over `xs x xs`, `x` varying slowest.
pub fn wigner_table(mixture: &SignedGaussianMixture, xs: &[f64]) -> Vec<f64> {
    xs.par_iter()
        .flat_map_iter(|&x| xs.iter().map(move |&p| mixture.value(x, p)))
        .collect()
}

pub fn wigner_csv(xs: &[f64], values: &[f64]) -> String {
    let mut out = String::from("x,p,w\n");
    for (i, &x) in xs.iter().enumerate() {
        for (j, &p) in xs.iter().enumerate() {
            let w = values[i * xs.len() + j];
            out.push_str(&format!("{},{},{}\n", format_number(x), format_number(p), format_number(w)));
        }
    }
    out
}

/// Trapezoid-rule integral over the tabulated square.
pub fn trapezoid_2d(xs: &[f64], values: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let weight = |i: usize| {
        let left = if i > 0 { xs[i] - xs[i - 1] } else { 0.0 };
        let right = if i + 1 < n { xs[i + 1] - xs[i] } else { 0.0 };
        0.5 * (left + right)
    };
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            sum += weight(i) * weight(j) * values[i * n + j];
        }
    }
    sum
}

pub fn run_wigner(args: &WignerArgs) -> Result<(), CliError> {
    let s = Settings::from_args(&args.physics)?;
    if s.scheme_or(Scheme::SingleMode) != Scheme::SingleMode {
        return Err(CliError::Usage("the Wigner function is tabulated for --scheme single".into()));
    }
    let grid_spec = args.grid.clone().or(s.grid.clone());
    let xs = parse_grid(grid_spec.as_deref().unwrap_or(DEFAULT_WIGNER_GRID), "grid")?;
    let cfg = s.config(s.lambda_value()?, Scheme::SingleMode)?;
    let mixture = gaussian::wigner_mixture(&cfg)?;
    let values = wigner_table(&mixture, &xs);
    if args.verify {
        let deviation = trapezoid_2d(&xs, &values) - 1.0;
        eprintln!("wigner integral deviation: {deviation:e}");
    }
    write_output(args.out.as_deref(), &wigner_csv(&xs, &values))
}

pub fn run_oracle_check(args: &OracleArgs) -> Result<(), CliError> {
    let s = Settings::from_args(&args.physics)?;
    let lambda = s.lambda_value()?;
    if lambda > HEAVY_LAMBDA && !args.allow_heavy {
        return Err(CliError::Usage(format!(
            "lambda = {lambda} > {HEAVY_LAMBDA} needs a large Fock space; pass --allow-heavy"
        )));
    }
    let cutoff = match args.cutoff.or(s.cutoff) {
        Some(n) => {
            FockCutoff::new(n, lambda, Scheme::SingleMode)?;
            FockCutoff::new(n, lambda, Scheme::TwoMode)?
        }
        None => [Scheme::SingleMode, Scheme::TwoMode]
            .map(|sc| FockCutoff::automatic(lambda, sc))
            .into_iter()
            .max_by_key(|c| c.n_max())
            .expect("two schemes"),
    };
    let cfg = s.config(lambda, s.scheme_or(Scheme::SingleMode))?;
    let report = oracle_report(&cfg, &cutoff, &SignalAlphabet::new(s.alpha)?)?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    write_output(args.out.as_deref(), &text)?;
    let failures = report.failures();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("outside tolerance: {}", failures.join(", "))))
    }
}
