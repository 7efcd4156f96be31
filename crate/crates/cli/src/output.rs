use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use tempfile::NamedTempFile;

use crate::config::CliResult;

/// Shortest decimal that parses back to the same `f64`: integers print
/// bare, very small or large magnitudes in exponent form, `-0` as `0`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.fract() == 0.0 && x.abs() < 1e16 {
        format!("{x}")
    } else {
        format!("{x:?}")
    }
}

/// Writes via a temporary file in the target directory and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Main output: the declared file, or stdout.
pub fn emit(output: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match output {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

/// `<output><suffix>`, e.g. `run.csv.renewal.json`.
pub fn sidecar(output: &Path, suffix: &str) -> PathBuf {
    let mut name = OsString::from(output.as_os_str());
    name.push(suffix);
    PathBuf::from(name)
}

pub fn json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes a sidecar next to `output` when there is one; returns its path.
pub fn emit_sidecar<T: Serialize>(
    output: Option<&Path>,
    suffix: &str,
    value: &T,
) -> CliResult<Option<PathBuf>> {
    match output {
        Some(o) => {
            let path = sidecar(o, suffix);
            write_atomic(&path, &json_bytes(value)?)?;
            Ok(Some(path))
        }
        None => Ok(None),
    }
}
