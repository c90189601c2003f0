//! Parameter sweeps and their CSV / JSON serialization.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{ExperimentConfig, Scheme};
use crate::error::{Error, Result};
use crate::gaussian;

/// An extra column derived from the two value columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedColumn {
    pub name: String,
    pub values: Vec<f64>,
}

/// Values of a quantity over a strictly increasing parameter grid, with an
/// optional reference curve and one derived column.
///
/// CSV output carries the data columns only. JSON output additionally
/// carries `metadata` (configuration, engine version).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub parameter: String,
    pub grid: Vec<f64>,
    pub value_ng: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_ref: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived: Option<DerivedColumn>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub metadata: Value,
}

impl SweepResult {
    pub fn new(parameter: impl Into<String>, grid: Vec<f64>, value_ng: Vec<f64>) -> Result<Self> {
        let sweep = Self {
            parameter: parameter.into(),
            grid,
            value_ng,
            value_ref: None,
            derived: None,
            metadata: Value::Null,
        };
        sweep.validate()?;
        Ok(sweep)
    }

    pub fn with_reference(mut self, value_ref: Vec<f64>) -> Result<Self> {
        self.value_ref = Some(value_ref);
        self.validate()?;
        Ok(self)
    }

    pub fn with_derived(mut self, name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        self.derived = Some(DerivedColumn {
            name: name.into(),
            values,
        });
        self.validate()?;
        Ok(self)
    }

    pub fn with_metadata(mut self, metadata: Value) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidSweep("grid is not strictly increasing".into()));
        }
        let n = self.grid.len();
        let mut lengths = vec![("value_ng", self.value_ng.len())];
        if let Some(r) = &self.value_ref {
            lengths.push(("value_ref", r.len()));
        }
        if let Some(d) = &self.derived {
            lengths.push(("derived", d.values.len()));
        }
        for (name, len) in lengths {
            if len != n {
                return Err(Error::InvalidSweep(format!(
                    "{name} has {len} values for a grid of {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec![self.parameter.clone(), "value_ng".to_string()];
        if self.value_ref.is_some() {
            h.push("value_ref".into());
        }
        if let Some(d) = &self.derived {
            h.push(d.name.clone());
        }
        h
    }

    fn row(&self, i: usize) -> Vec<f64> {
        let mut r = vec![self.grid[i], self.value_ng[i]];
        if let Some(v) = &self.value_ref {
            r.push(v[i]);
        }
        if let Some(d) = &self.derived {
            r.push(d.values[i]);
        }
        r
    }

    /// Writes header and rows. Numbers use the shortest decimal string that
    /// parses back to the same `f64`.
    pub fn write_csv<W: Write>(&self, writer: W) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(writer);
        w.write_record(self.header())?;
        for i in 0..self.len() {
            w.write_record(self.row(i).iter().map(|v| format_number(*v)))?;
        }
        w.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is ASCII")
    }

    /// Parses CSV produced by [`write_csv`](Self::write_csv). Columns after
    /// the parameter are `value_ng`, then optionally `value_ref`, then at
    /// most one derived column.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let bad = |m: String| Error::InvalidSweep(m);
        let mut r = csv::Reader::from_reader(reader);
        let header: Vec<String> = r
            .headers()
            .map_err(|e| bad(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        if header.len() < 2 || header[1] != "value_ng" || header.len() > 4 {
            return Err(bad(format!("unexpected header {header:?}")));
        }
        let has_ref = header.get(2).is_some_and(|h| h == "value_ref");
        let derived_at = if has_ref { 3 } else { 2 };
        if header.len() > derived_at + 1 {
            return Err(bad(format!("unexpected header {header:?}")));
        }
        let mut columns = vec![Vec::new(); header.len()];
        for record in r.records() {
            let record = record.map_err(|e| bad(e.to_string()))?;
            for (col, field) in columns.iter_mut().zip(record.iter()) {
                col.push(field.parse::<f64>().map_err(|e| bad(format!("{field}: {e}")))?);
            }
        }
        let mut columns = columns.into_iter();
        let grid = columns.next().unwrap_or_default();
        let mut sweep = Self::new(header[0].clone(), grid, columns.next().unwrap_or_default())?;
        if has_ref {
            sweep = sweep.with_reference(columns.next().unwrap_or_default())?;
        }
        if let Some(values) = columns.next() {
            sweep = sweep.with_derived(header[derived_at].clone(), values)?;
        }
        Ok(sweep)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let sweep: Self =
            serde_json::from_str(s).map_err(|e| Error::InvalidSweep(e.to_string()))?;
        sweep.validate()?;
        Ok(sweep)
    }
}

/// Shortest round-trip decimal representation, in exponent form outside
/// `1e-5 ..= 1e16`.
pub fn format_number(v: f64) -> String {
    format!("{v:?}")
}

/// `count` evenly spaced points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = (max - min) / (count - 1) as f64;
            (0..count)
                .map(|i| if i + 1 == count { max } else { min + step * i as f64 })
                .collect()
        }
    }
}

fn configs(template: &ExperimentConfig, grid: &[f64]) -> Result<Vec<ExperimentConfig>> {
    grid.iter().map(|&l| template.with_lambda(l)).collect()
}

/// Conditional variance at `phase` against the unsubtracted reference (with
/// the template's path loss), plus the dB gain below shot noise.
pub fn variance_scan(template: &ExperimentConfig, grid: &[f64], phase: f64) -> Result<SweepResult> {
    let cfgs = configs(template, grid)?;
    let values = cfgs
        .par_iter()
        .map(|c| gaussian::variance(c, phase))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<f64> = cfgs.iter().map(|c| gaussian::reference_variance_at(c, phase)).collect();
    let gain = values
        .iter()
        .map(|&v| gaussian::gain_db(v, template.scheme))
        .collect();
    SweepResult::new("lambda", grid.to_vec(), values)?
        .with_reference(refs)?
        .with_derived("gain_db", gain)
}

pub fn pdet_scan(template: &ExperimentConfig, grid: &[f64]) -> Result<SweepResult> {
    let cfgs = configs(template, grid)?;
    let values = cfgs.par_iter().map(gaussian::detection_probability).collect();
    SweepResult::new("lambda", grid.to_vec(), values)
}

/// Mean photon number of the conditional single-mode state against the
/// input's `T_L lambda^2 / (1 - lambda^2)`. `engine` evaluates one point.
pub fn mean_photon_scan<F>(template: &ExperimentConfig, grid: &[f64], engine: F) -> Result<SweepResult>
where
    F: Fn(&ExperimentConfig) -> Result<f64> + Sync,
{
    template.require_scheme(Scheme::SingleMode)?;
    let cfgs = configs(template, grid)?;
    let values = cfgs.par_iter().map(&engine).collect::<Result<Vec<_>>>()?;
    let t_l = template.setup.path_transmittance();
    let refs = grid.iter().map(|l| t_l * l * l / (1.0 - l * l)).collect();
    SweepResult::new("lambda", grid.to_vec(), values)?.with_reference(refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.0, 0.9, 91);
        assert_eq!(g.len(), 91);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[90], 0.9);
        assert!((g[47] - 0.47).abs() < 1e-15);
        assert_eq!(linspace(0.3, 1.0, 1), vec![0.3]);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(SweepResult::new("lambda", vec![0.1, 0.1], vec![1.0, 2.0]).is_err());
        assert!(SweepResult::new("lambda", vec![0.1, 0.2], vec![1.0]).is_err());
        let s = SweepResult::new("lambda", vec![0.1, 0.2], vec![1.0, 2.0]).unwrap();
        assert!(s.with_reference(vec![1.0]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let s = SweepResult::new("lambda", vec![0.1, 0.2, 1.0 / 3.0], vec![1e-300, -0.5, 0.1 + 0.2])
            .unwrap()
            .with_reference(vec![1.0, 2.0, std::f64::consts::PI])
            .unwrap()
            .with_derived("gain_db", vec![3.0, f64::MIN_POSITIVE, 7.123456789012345])
            .unwrap();
        let text = s.to_csv_string();
        assert!(text.starts_with("lambda,value_ng,value_ref,gain_db\n"));
        assert!(!text.contains('\r'));
        assert_eq!(SweepResult::read_csv(text.as_bytes()).unwrap(), s);

        let plain = SweepResult::new("lambda", vec![0.0, 0.5], vec![1.0, 2.0]).unwrap();
        assert_eq!(SweepResult::read_csv(plain.to_csv_string().as_bytes()).unwrap(), plain);
    }

    #[test]
    fn json_round_trip() {
        let s = SweepResult::new("lambda", vec![0.25, 0.5], vec![0.1, 0.7])
            .unwrap()
            .with_reference(vec![0.3, 0.4])
            .unwrap()
            .with_metadata(serde_json::json!({"engine_version": "x"}));
        assert_eq!(SweepResult::from_json_str(&s.to_json_string()).unwrap(), s);
    }

    #[test]
    fn variance_scan_columns() {
        let cfg = ExperimentConfig::ideal(0.1, 0.9, Scheme::SingleMode).unwrap();
        let s = variance_scan(&cfg, &linspace(0.1, 0.5, 5), 0.0).unwrap();
        assert_eq!(s.header(), ["lambda", "value_ng", "value_ref", "gain_db"]);
        let d = s.derived.as_ref().unwrap();
        for i in 0..5 {
            assert!((d.values[i] + 10.0 * (s.value_ng[i] / 0.5).log10()).abs() < 1e-12);
        }
        let zero = ExperimentConfig::ideal(0.0, 0.9, Scheme::SingleMode).unwrap();
        assert_eq!(
            variance_scan(&zero, &[0.0, 0.1], 0.0),
            Err(Error::DegenerateConditioning)
        );
    }
}
