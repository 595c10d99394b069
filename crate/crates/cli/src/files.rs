//! File access for the commands. Outputs go to a temporary file in the
//! destination directory and are renamed into place only on success.

use std::io::Write;
use std::path::Path;

use dbaug_core::dataset::{detect_delimiter, parse_dataset};
use dbaug_core::LabeledDataset;
use tempfile::NamedTempFile;

use crate::failure::{CliResult, Failure};

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

/// Reads a dataset, returning it with the delimiter that was used.
pub fn read_dataset_file(
    path: &Path,
    delimiter: Option<char>,
) -> CliResult<(LabeledDataset, char)> {
    let text = read_text(path)?;
    let delim = delimiter.unwrap_or_else(|| detect_delimiter(&text));
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    let mut data = parse_dataset(&text, Some(delim)).map_err(|e| Failure::from(e).in_file(path))?;
    if let Some(name) = name {
        data = data.with_name(name);
    }
    Ok((data, delim))
}

/// Parses a bare list of numbers separated by commas, tabs, spaces or newlines.
pub fn read_values(path: &Path) -> CliResult<Vec<f64>> {
    let text = read_text(path)?;
    let mut values = Vec::new();
    for (n, line) in text.lines().enumerate() {
        for (c, tok) in line
            .split(|ch: char| ch == ',' || ch == '\t' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            let v: f64 = tok
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| {
                    Failure::parse(format!(
                        "{}: line {}, value {}: `{tok}` is not a finite number",
                        path.display(),
                        n + 1,
                        c + 1
                    ))
                })?;
            values.push(v);
        }
    }
    Ok(values)
}

/// Writes every `(path, bytes)` pair atomically. All temporaries are fully
/// written before any is renamed into place.
pub fn write_all_atomic(outputs: &[(&Path, &[u8])]) -> CliResult<()> {
    let mut staged = Vec::with_capacity(outputs.len());
    for (path, bytes) in outputs {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| Failure::io(path, e))?;
        tmp.write_all(bytes).map_err(|e| Failure::io(path, e))?;
        tmp.as_file().sync_all().map_err(|e| Failure::io(path, e))?;
        staged.push((tmp, *path));
    }
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| Failure::io(path, e.error))?;
    }
    Ok(())
}
