//! `out/<job_id>.json` plus `out/index.json`, written byte-stably.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::jobs::{JobRecord, JobResult};

pub const INDEX_FILE: &str = "index.json";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub kind: String,
    pub file: String,
    /// Companion files such as the CSV and text tables of a sweep.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<String>,
}

pub type Index = BTreeMap<String, IndexEntry>;

fn to_pretty<T: Serialize>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Output {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_index(dir: &Path) -> CliResult<Index> {
    let path = dir.join(INDEX_FILE);
    match fs::read_to_string(&path) {
        Ok(text) => Ok(serde_json::from_str(&text)?),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Index::new()),
        Err(source) => Err(CliError::Input {
            path: path.display().to_string(),
            source,
        }),
    }
}

/// Write the record and register it in the index; returns the record path.
pub fn persist(dir: &Path, record: &JobRecord) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| CliError::Output {
        path: dir.display().to_string(),
        source,
    })?;
    let file = format!("{}.json", record.job_id);
    let path = dir.join(&file);
    write(&path, &to_pretty(record)?)?;

    let mut extra = Vec::new();
    if let JobResult::Sweep(report) = &record.result {
        for (ext, body) in [("csv", report.to_csv()?), ("txt", report.to_text())] {
            let name = format!("{}.{ext}", record.job_id);
            write(&dir.join(&name), &body)?;
            extra.push(name);
        }
    }

    let mut index = read_index(dir)?;
    index.insert(
        record.job_id.clone(),
        IndexEntry {
            kind: record.spec.kind().to_string(),
            file,
            extra,
        },
    );
    write(&dir.join(INDEX_FILE), &to_pretty(&index)?)?;
    Ok(path)
}

pub fn load(path: &Path) -> CliResult<JobRecord> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}
