//! Job specifications, their identifiers and execution.

use std::fmt;
use std::str::FromStr;

use kummer_core::curvebuild::{build_model, harvest_witnesses, CurveRecord, WitnessRecord};
use kummer_core::exactalg::serial::rational_str;
use kummer_core::exactalg::{format_rational, parse_rational, Rational};
use kummer_core::lattice::{count_representations, find_representation, n_invariant, RepresentationCount};
use kummer_core::pencil::{j_orbit, section_from_quadruple, validate_config, PencilConfig, PencilPoint, Quadruple};
use kummer_core::zerocycle::{TargetResult, Verdict, WitnessFile};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::battery::{self, BatteryReport};
use crate::error::{CliError, CliResult};
use crate::sweep::{self, SweepReport};

/// A Legendre pair as given on the command line, `a,b` with `p/q` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSpec {
    #[serde(with = "rational_str")]
    pub a: Rational,
    #[serde(with = "rational_str")]
    pub b: Rational,
}

impl ConfigSpec {
    pub fn new(a: Rational, b: Rational) -> Self {
        ConfigSpec { a, b }
    }

    pub fn validate(&self) -> CliResult<PencilConfig> {
        Ok(validate_config(self.a.clone(), self.b.clone())?)
    }
}

impl FromStr for ConfigSpec {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| CliError::InvalidSpec(format!("config {s:?} is not of the form a,b")))?;
        Ok(ConfigSpec::new(parse_rational(a.trim())?, parse_rational(b.trim())?))
    }
}

impl fmt::Display for ConfigSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_rational(&self.a), format_rational(&self.b))
    }
}

pub fn default_configs() -> Vec<ConfigSpec> {
    [(2, 3), (3, 5), (2, 7)]
        .into_iter()
        .map(|(a, b)| ConfigSpec::new(Rational::from_integer(a.into()), Rational::from_integer(b.into())))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeMode {
    Count,
    Find,
}

/// Everything needed to reproduce a run. The degree of parallelism is
/// deliberately absent: it never changes a result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum JobSpec {
    Section {
        config: ConfigSpec,
        quad: Quadruple,
    },
    Curve {
        config: ConfigSpec,
        quad: Quadruple,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        harvest: Option<u64>,
    },
    Sweep {
        configs: Vec<ConfigSpec>,
        n_max: i64,
    },
    Lattice {
        mode: LatticeMode,
        n: i64,
    },
    Zerocycle {
        input: WitnessFile,
    },
    Battery,
}

impl JobSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            JobSpec::Section { .. } => "section",
            JobSpec::Curve { .. } => "curve",
            JobSpec::Sweep { .. } => "sweep",
            JobSpec::Lattice { .. } => "lattice",
            JobSpec::Zerocycle { .. } => "zerocycle",
            JobSpec::Battery => "battery",
        }
    }

    /// Canonical serialisation the identifier is derived from.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("job specs always serialise")
    }

    /// `<kind>-<first 16 hex digits of sha256(canonical)>`.
    pub fn job_id(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
        format!("{}-{hex}", self.kind())
    }

    /// Reject specs that cannot run before doing any work.
    pub fn validate(&self) -> CliResult<()> {
        match self {
            JobSpec::Section { config, .. } | JobSpec::Curve { config, .. } => {
                config.validate()?;
            }
            JobSpec::Sweep { configs, n_max } => {
                if *n_max < 1 {
                    return Err(CliError::InvalidSpec(format!("n_max must be at least 1, got {n_max}")));
                }
                if configs.is_empty() {
                    return Err(CliError::InvalidSpec("sweep needs at least one config".into()));
                }
                for c in configs {
                    c.validate()?;
                }
            }
            JobSpec::Lattice { mode, n } => {
                let min = if *mode == LatticeMode::Find { 1 } else { 0 };
                if *n < min {
                    return Err(kummer_core::Error::NegativeInput(*n).into());
                }
            }
            JobSpec::Zerocycle { input } => {
                input.witness_set()?;
            }
            JobSpec::Battery => {}
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionRecord {
    pub config: PencilConfig,
    pub quad: Quadruple,
    pub n: i64,
    pub section: PencilPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJobRecord {
    pub curve: CurveRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessRecord>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeRecord {
    Count(RepresentationCount),
    Find { n: i64, quad: Quadruple },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JobResult {
    Section(SectionRecord),
    Curve(Box<CurveJobRecord>),
    Sweep(SweepReport),
    Lattice(LatticeRecord),
    Zerocycle(Vec<TargetResult>),
    Battery(BatteryReport),
}

impl JobResult {
    /// Number of zero-cycle targets left undecided.
    pub fn undecided(&self) -> usize {
        match self {
            JobResult::Zerocycle(rs) => rs.iter().filter(|r| r.result == Verdict::Undecided).count(),
            _ => 0,
        }
    }
}

/// What is persisted for one job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobRecord {
    pub job_id: String,
    pub spec: JobSpec,
    pub result: JobResult,
}

/// Execute a job. `jobs` is the worker count for sweeps.
pub fn run_job(spec: &JobSpec, jobs: usize) -> CliResult<JobRecord> {
    spec.validate()?;
    let result = match spec {
        JobSpec::Section { config, quad } => {
            let cfg = config.validate()?;
            let section = section_from_quadruple(&cfg, *quad)?;
            JobResult::Section(SectionRecord {
                config: cfg,
                quad: *quad,
                n: n_invariant(*quad),
                section,
            })
        }
        JobSpec::Curve { config, quad, harvest } => {
            let cfg = config.validate()?;
            let model = build_model(&cfg, *quad)?;
            JobResult::Curve(Box::new(CurveJobRecord {
                curve: CurveRecord::from(&model),
                witnesses: harvest.map(|bound| harvest_witnesses(&model, bound)),
            }))
        }
        JobSpec::Sweep { configs, n_max } => JobResult::Sweep(sweep::run_sweep(configs, *n_max, jobs)?),
        JobSpec::Lattice { mode: LatticeMode::Count, n } => JobResult::Lattice(LatticeRecord::Count(count_representations(*n)?)),
        JobSpec::Lattice { mode: LatticeMode::Find, n } => JobResult::Lattice(LatticeRecord::Find {
            n: *n,
            quad: find_representation(*n)?,
        }),
        JobSpec::Zerocycle { input } => JobResult::Zerocycle(input.decide_all()?),
        JobSpec::Battery => JobResult::Battery(battery::run_all()),
    };
    Ok(JobRecord {
        job_id: spec.job_id(),
        spec: spec.clone(),
        result,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigCheck {
    pub config: ConfigSpec,
    #[serde(with = "kummer_core::exactalg::serial::rational_vec")]
    pub j_orbit_of_a: Vec<Rational>,
}

pub fn verify_config(config: &ConfigSpec) -> CliResult<ConfigCheck> {
    config.validate()?;
    Ok(ConfigCheck {
        config: config.clone(),
        j_orbit_of_a: j_orbit(&config.a).to_vec(),
    })
}
