use std::path::Path;

use crate::error::{CliError, CliResult};

/// Reads one column of positive reals.
///
/// With `column` the first line is a header naming the column. Without it the
/// first column is used, and a non-numeric first line is taken as a header.
/// Errors name the 1-based line of the offending entry.
pub fn read_column(path: &Path, column: Option<&str>) -> CliResult<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::input(format!("reading {}: {e}", path.display())))?;

    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| CliError::input(format!("reading {}: {e}", path.display())))?;
        let line = rec.position().map_or(0, |p| p.line());
        records.push((line, rec));
    }

    let mut rows = records.as_slice();
    let index = match column {
        Some(name) => {
            let (_, header) = rows
                .first()
                .ok_or_else(|| CliError::input(format!("{} is empty", path.display())))?;
            let index = header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| CliError::input(format!("no column named {name:?} in the header")))?;
            rows = &rows[1..];
            index
        }
        None => {
            if let Some((_, first)) = rows.first() {
                if first.get(0).is_some_and(|v| v.parse::<f64>().is_err()) {
                    rows = &rows[1..];
                }
            }
            0
        }
    };

    let mut values = Vec::with_capacity(rows.len());
    for (line, rec) in rows {
        let field = rec.get(index).unwrap_or("");
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => values.push(v),
            Ok(_) => {
                return Err(CliError::input(format!(
                    "row {line}: {field:?} is not a positive number"
                )))
            }
            Err(_) => {
                return Err(CliError::input(format!("row {line}: {field:?} is not numeric")))
            }
        }
    }
    if values.len() < 2 {
        return Err(CliError::input(format!(
            "need at least 2 observations, found {}",
            values.len()
        )));
    }
    Ok(values)
}
