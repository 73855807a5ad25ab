use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// 17 significant digits, enough to round-trip any double.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(&format!("creating {}", dir.display()), e))
}

/// Writes through a temporary file in the same directory, then renames it into place.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> CliResult<()> {
    let target = dir.join(name);
    let context = format!("writing {}", target.display());
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(&context, e))?;
    tmp.write_all(contents.as_bytes())
        .and_then(|_| tmp.as_file().sync_all())
        .map_err(|e| CliError::io(&context, e))?;
    tmp.persist(&target).map_err(|e| CliError::io(&context, e.error))?;
    Ok(())
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialise");
    s.push('\n');
    s
}
