//! CSV to whitespace-separated columns with a `#` header line.

use std::path::Path;

use crate::error::{LabError, LabResult};

/// Selected columns (all when `columns` is empty), optionally as natural
/// logarithms. Rows with a non-positive value under `log` are dropped;
/// non-numeric cells become `nan`.
pub fn emit_plotdata(csv: &str, columns: &[&str], log: bool) -> LabResult<String> {
    let mut lines = csv.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = match lines.next() {
        Some(h) => h.split(',').map(str::trim).collect(),
        None => return Ok("#\n".into()),
    };
    let idx: Vec<usize> = if columns.is_empty() {
        (0..header.len()).collect()
    } else {
        columns
            .iter()
            .map(|c| {
                header
                    .iter()
                    .position(|h| h == c)
                    .ok_or_else(|| LabError::Config(format!("column `{c}` not in CSV header")))
            })
            .collect::<LabResult<_>>()?
    };
    let names: Vec<String> = idx
        .iter()
        .map(|&i| if log { format!("log_{}", header[i]) } else { header[i].to_string() })
        .collect();
    let mut out = format!("# {}\n", names.join(" "));
    'rows: for line in lines {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let mut vals = Vec::with_capacity(idx.len());
        for &i in &idx {
            let v = cells.get(i).and_then(|c| c.parse::<f64>().ok()).unwrap_or(f64::NAN);
            if log {
                if !(v > 0.0) {
                    continue 'rows;
                }
                vals.push(format!("{:.15e}", v.ln()));
            } else if v.is_nan() {
                vals.push("nan".into());
            } else {
                vals.push(format!("{v:.15e}"));
            }
        }
        out.push_str(&vals.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn emit_plotdata_file(path: &Path, columns: &[&str], log: bool) -> LabResult<String> {
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    emit_plotdata(&text, columns, log)
}
