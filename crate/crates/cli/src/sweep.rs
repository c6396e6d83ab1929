//! Genus sweep over all quadruples up to a given `n` and a list of configs.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

use kummer_core::curvebuild::build_model;
use kummer_core::exactalg::format_rational;
use kummer_core::lattice::representations;
use kummer_core::pencil::{PencilConfig, Quadruple};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::jobs::ConfigSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub config: ConfigSpec,
    pub quad: Quadruple,
    pub n: i64,
    pub genus: Option<i64>,
    /// `4n - 2`.
    pub expected: i64,
    pub anomaly: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub configs: Vec<ConfigSpec>,
    pub n_max: i64,
    pub rows: Vec<SweepRow>,
    /// Rows whose genus is below `4n - 2`.
    pub anomaly_count: usize,
    pub failure_count: usize,
}

fn run_row(spec: &ConfigSpec, cfg: &PencilConfig, quad: Quadruple, n: i64) -> SweepRow {
    let built = catch_unwind(AssertUnwindSafe(|| build_model(cfg, quad)));
    let (genus, error) = match built {
        Ok(Ok(model)) => (Some(model.genus), None),
        Ok(Err(e)) => (None, Some(e.to_string())),
        Err(_) => (None, Some("panic while building the model".to_string())),
    };
    let expected = 4 * n - 2;
    SweepRow {
        config: spec.clone(),
        quad,
        n,
        anomaly: genus.is_some_and(|g| g < expected),
        genus,
        expected,
        error,
    }
}

/// Rows come out in (config, n, quadruple) order whatever `jobs` is.
pub fn run_sweep(configs: &[ConfigSpec], n_max: i64, jobs: usize) -> CliResult<SweepReport> {
    if n_max < 1 {
        return Err(CliError::InvalidSpec(format!("n_max must be at least 1, got {n_max}")));
    }
    let validated: Vec<PencilConfig> = configs.iter().map(ConfigSpec::validate).collect::<CliResult<_>>()?;
    let mut tasks = Vec::new();
    for (k, _) in configs.iter().enumerate() {
        for n in 1..=n_max {
            for quad in representations(n)? {
                tasks.push((k, quad, n));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::InvalidSpec(format!("cannot start {jobs} workers: {e}")))?;
    let rows: Vec<SweepRow> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(k, quad, n)| run_row(&configs[k], &validated[k], quad, n))
            .collect()
    });
    Ok(SweepReport {
        configs: configs.to_vec(),
        n_max,
        anomaly_count: rows.iter().filter(|r| r.anomaly).count(),
        failure_count: rows.iter().filter(|r| r.error.is_some()).count(),
        rows,
    })
}

const HEADER: [&str; 11] = ["a", "b", "p", "q", "r", "s", "n", "genus", "expected", "anomaly", "error"];

fn row_fields(row: &SweepRow) -> [String; 11] {
    let [p, q, r, s] = row.quad.as_array();
    [
        format_rational(&row.config.a),
        format_rational(&row.config.b),
        p.to_string(),
        q.to_string(),
        r.to_string(),
        s.to_string(),
        row.n.to_string(),
        row.genus.map(|g| g.to_string()).unwrap_or_default(),
        row.expected.to_string(),
        row.anomaly.to_string(),
        row.error.clone().unwrap_or_default(),
    ]
}

impl SweepReport {
    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(HEADER)?;
        for row in &self.rows {
            w.write_record(row_fields(row))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    pub fn to_text(&self) -> String {
        let table: Vec<[String; 11]> = self.rows.iter().map(row_fields).collect();
        let mut widths = HEADER.map(str::len);
        for fields in &table {
            for (w, f) in widths.iter_mut().zip(fields) {
                *w = (*w).max(f.len());
            }
        }
        let mut out = String::new();
        let mut line = |fields: &[&str]| {
            let cells: Vec<String> = fields.iter().zip(widths).map(|(f, w)| format!("{f:>w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        };
        line(&HEADER);
        for fields in &table {
            line(&fields.each_ref().map(String::as_str));
        }
        let _ = writeln!(
            out,
            "\n{} rows, {} below 4n-2, {} failed",
            self.rows.len(),
            self.anomaly_count,
            self.failure_count
        );
        out
    }
}
