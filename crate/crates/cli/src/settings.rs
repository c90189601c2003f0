//! Flag, config-file and default resolution.

use std::fs;
use std::path::Path;

use nongauss_core::config::{
    DEFAULT_TAP_TRANSMITTANCE, PRACTICAL_DARK_MEAN, PRACTICAL_EFFICIENCY, PRACTICAL_PATH_TRANSMITTANCE,
};
use nongauss_core::sweep::linspace;
use nongauss_core::{ExperimentConfig, Scheme};

use crate::args::{PhysicsArgs, SchemeArg};
use crate::error::CliError;

pub const DEFAULT_ALPHA: f64 = 1.5;
pub const MAX_LAMBDA: f64 = 0.99;

/// One source of settings; `None` defers to the next source.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Layer {
    pub lambda: Option<String>,
    pub t: Option<f64>,
    pub tl: Option<f64>,
    pub eta: Option<f64>,
    pub nu: Option<f64>,
    pub alpha: Option<f64>,
    pub phase: Option<f64>,
    pub scheme: Option<SchemeArg>,
    pub ideal: bool,
    pub cutoff: Option<usize>,
    pub grid: Option<String>,
}

impl Layer {
    pub fn from_flags(a: &PhysicsArgs) -> Self {
        Self {
            lambda: a.lambda.clone(),
            t: a.t,
            tl: a.tl,
            eta: a.eta,
            nu: a.nu,
            alpha: a.alpha,
            phase: a.phase,
            scheme: a.scheme,
            ideal: a.ideal,
            cutoff: None,
            grid: None,
        }
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut layer = Self::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| CliError::Usage(format!("config line {}: {what}", no + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            let num = || value.parse::<f64>().map_err(|_| bad(&format!("`{value}` is not a number")));
            match key {
                "lambda" => layer.lambda = Some(value.to_string()),
                "T" => layer.t = Some(num()?),
                "TL" => layer.tl = Some(num()?),
                "eta" => layer.eta = Some(num()?),
                "nu" => layer.nu = Some(num()?),
                "alpha" => layer.alpha = Some(num()?),
                "phase" => layer.phase = Some(num()?),
                "scheme" => {
                    layer.scheme = Some(match value {
                        "single" => SchemeArg::Single,
                        "two" => SchemeArg::Two,
                        _ => return Err(bad("scheme must be single or two")),
                    })
                }
                "ideal" => {
                    layer.ideal = value.parse().map_err(|_| bad("ideal must be true or false"))?;
                }
                "cutoff" => layer.cutoff = Some(value.parse().map_err(|_| bad("cutoff must be an integer"))?),
                "grid" => layer.grid = Some(value.to_string()),
                _ => return Err(bad(&format!("unknown key `{key}`"))),
            }
        }
        Ok(layer)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Replaces the imperfection settings by the ideal ones, rejecting
    /// explicit values given alongside `ideal` in the same source.
    fn expand_ideal(mut self, source: &str) -> Result<Self, CliError> {
        if self.ideal {
            if self.tl.is_some() || self.eta.is_some() || self.nu.is_some() {
                return Err(CliError::Usage(format!(
                    "{source}: ideal cannot be combined with TL, eta or nu"
                )));
            }
            self.tl = Some(1.0);
            self.eta = Some(1.0);
            self.nu = Some(0.0);
        }
        Ok(self)
    }

    /// `self` where set, otherwise `lower`.
    fn over(self, lower: Self) -> Self {
        Self {
            lambda: self.lambda.or(lower.lambda),
            t: self.t.or(lower.t),
            tl: self.tl.or(lower.tl),
            eta: self.eta.or(lower.eta),
            nu: self.nu.or(lower.nu),
            alpha: self.alpha.or(lower.alpha),
            phase: self.phase.or(lower.phase),
            scheme: self.scheme.or(lower.scheme),
            ideal: self.ideal || lower.ideal,
            cutoff: self.cutoff.or(lower.cutoff),
            grid: self.grid.or(lower.grid),
        }
    }
}

/// Fully resolved parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub lambda: Option<String>,
    pub t: f64,
    pub tl: f64,
    pub eta: f64,
    pub nu: f64,
    pub alpha: f64,
    pub phase: f64,
    pub scheme: Option<Scheme>,
    pub cutoff: Option<usize>,
    pub grid: Option<String>,
}

impl Settings {
    /// Flags over the optional config file over the defaults.
    pub fn resolve(flags: Layer, file: Option<Layer>) -> Result<Self, CliError> {
        let flags = flags.expand_ideal("flags")?;
        let file = file.unwrap_or_default().expand_ideal("config file")?;
        let l = flags.over(file);
        let s = Self {
            lambda: l.lambda,
            t: l.t.unwrap_or(DEFAULT_TAP_TRANSMITTANCE),
            tl: l.tl.unwrap_or(PRACTICAL_PATH_TRANSMITTANCE),
            eta: l.eta.unwrap_or(PRACTICAL_EFFICIENCY),
            nu: l.nu.unwrap_or(PRACTICAL_DARK_MEAN),
            alpha: l.alpha.unwrap_or(DEFAULT_ALPHA),
            phase: l.phase.unwrap_or(0.0),
            scheme: l.scheme.map(|s| match s {
                SchemeArg::Single => Scheme::SingleMode,
                SchemeArg::Two => Scheme::TwoMode,
            }),
            cutoff: l.cutoff,
            grid: l.grid,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_args(args: &PhysicsArgs) -> Result<Self, CliError> {
        let file = args.config.as_deref().map(Layer::load).transpose()?;
        Self::resolve(Layer::from_flags(args), file)
    }

    fn validate(&self) -> Result<(), CliError> {
        let check = |name: &str, v: f64, ok: bool, range: &str| {
            if v.is_finite() && ok {
                Ok(())
            } else {
                Err(CliError::Usage(format!("{name} = {v} outside {range}")))
            }
        };
        check("T", self.t, self.t > 0.0 && self.t < 1.0, "(0, 1)")?;
        check("TL", self.tl, self.tl > 0.0 && self.tl <= 1.0, "(0, 1]")?;
        check("eta", self.eta, self.eta > 0.0 && self.eta <= 1.0, "(0, 1]")?;
        check("nu", self.nu, self.nu >= 0.0, "[0, inf)")?;
        check("alpha", self.alpha, self.alpha >= 0.0, "[0, inf)")?;
        check("phase", self.phase, true, "finite values")?;
        Ok(())
    }

    pub fn scheme_or(&self, default: Scheme) -> Scheme {
        self.scheme.unwrap_or(default)
    }

    /// Configuration template at squeezing `lambda`.
    pub fn config(&self, lambda: f64, scheme: Scheme) -> Result<ExperimentConfig, CliError> {
        Ok(ExperimentConfig::practical(
            lambda, self.t, self.tl, self.eta, self.nu, scheme,
        )?)
    }

    /// The lambda grid, `default` when unset.
    pub fn lambda_grid(&self, default: &str) -> Result<Vec<f64>, CliError> {
        let grid = parse_grid_or_value(self.lambda.as_deref().unwrap_or(default), "lambda")?;
        check_lambdas(&grid)?;
        Ok(grid)
    }

    /// A single lambda value.
    pub fn lambda_value(&self) -> Result<f64, CliError> {
        let text = self
            .lambda
            .as_deref()
            .ok_or_else(|| CliError::Usage("--lambda is required".into()))?;
        let grid = parse_grid_or_value(text, "lambda")?;
        if grid.len() != 1 {
            return Err(CliError::Usage("--lambda must be a single value here".into()));
        }
        check_lambdas(&grid)?;
        Ok(grid[0])
    }
}

fn check_lambdas(grid: &[f64]) -> Result<(), CliError> {
    match grid.iter().find(|l| !(0.0..=MAX_LAMBDA).contains(*l)) {
        Some(l) => Err(CliError::Usage(format!("lambda = {l} outside [0, {MAX_LAMBDA}]"))),
        None => Ok(()),
    }
}

/// `min:max:points` as an evenly spaced grid.
pub fn parse_grid(text: &str, name: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("--{name} `{text}`: expected min:max:points"));
    let parts: Vec<&str> = text.split(':').collect();
    let [min, max, points] = parts[..] else {
        return Err(bad());
    };
    let min: f64 = min.trim().parse().map_err(|_| bad())?;
    let max: f64 = max.trim().parse().map_err(|_| bad())?;
    let points: usize = points.trim().parse().map_err(|_| bad())?;
    if !min.is_finite() || !max.is_finite() || points == 0 || (points > 1 && min >= max) {
        return Err(CliError::Usage(format!(
            "--{name} `{text}`: need finite min < max and at least one point"
        )));
    }
    Ok(linspace(min, max, points))
}

fn parse_grid_or_value(text: &str, name: &str) -> Result<Vec<f64>, CliError> {
    if text.contains(':') {
        parse_grid(text, name)
    } else {
        let v: f64 = text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("--{name} `{text}` is not a number")))?;
        Ok(vec![v])
    }
}
