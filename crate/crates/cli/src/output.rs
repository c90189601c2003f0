use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};

use nongauss_core::{ExperimentConfig, ENGINE_VERSION};

use crate::error::CliError;

/// Writes `contents` to `path` through a temporary file in the same
/// directory, or to standard output when `path` is `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        out.write_all(contents.as_bytes())?;
        return Ok(out.flush()?);
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Metadata block of JSON outputs.
pub fn metadata(kind: &str, config: &ExperimentConfig, extra: Value, stamp: bool) -> Value {
    let mut meta = json!({
        "kind": kind,
        "config": config,
        "engine_version": ENGINE_VERSION,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    if stamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        meta["timestamp_unix"] = json!(secs);
    }
    meta
}
