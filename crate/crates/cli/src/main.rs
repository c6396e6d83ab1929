use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kummer_cli::error::{CliError, CliResult, EXIT_INTERNAL, EXIT_INVALID, EXIT_UNDECIDED};
use kummer_cli::jobs::{default_configs, run_job, verify_config, ConfigSpec, JobResult, JobSpec, LatticeMode};
use kummer_cli::store;
use kummer_core::exactalg::parse_rational;
use kummer_core::pencil::Quadruple;
use kummer_core::zerocycle::WitnessFile;

#[derive(Parser)]
#[command(name = "kummer", version, about = "Hyperelliptic curves from sections of Inose's pencil")]
struct Cli {
    /// Directory for job records and the index.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Print the result without writing anything to disk.
    #[arg(long, global = true)]
    no_persist: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a, b give a valid pair of non-isomorphic Legendre curves.
    VerifyConfig {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Section p A22 + q A33 + r A23 + s A32.
    Section {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Comma-separated p,q,r,s.
        #[arg(long, allow_hyphen_values = true)]
        quad: String,
    },
    /// Build and check the hyperelliptic curve of a section.
    Curve {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        quad: String,
        /// Also search for rational points with numerator and denominator up to this bound.
        #[arg(long)]
        harvest: Option<u64>,
    },
    /// Genus table for every quadruple with 1 <= n <= n_max.
    Sweep {
        /// A config as a,b; repeatable. Defaults to 2,3 3,5 2,7.
        #[arg(long = "config")]
        configs: Vec<String>,
        #[arg(long)]
        n_max: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Representations of n by the quadruple invariant.
    Lattice {
        #[command(subcommand)]
        mode: LatticeCommand,
    },
    /// Decide zero-cycle targets from a witness file.
    Zerocycle {
        #[arg(long)]
        file: PathBuf,
    },
    /// Run the acceptance battery.
    Battery,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Brute-force count against 3 sigma(3n + 2).
    Count {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Smallest quadruple with the given n.
    Find {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
}

fn config(a: &str, b: &str) -> CliResult<ConfigSpec> {
    Ok(ConfigSpec::new(parse_rational(a)?, parse_rational(b)?))
}

fn quad(s: &str) -> CliResult<Quadruple> {
    Ok(s.parse()?)
}

fn read_witness_file(path: &Path) -> CliResult<WitnessFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn spec_of(command: Command) -> CliResult<(JobSpec, usize)> {
    let spec = match command {
        Command::VerifyConfig { .. } => unreachable!("handled without a job"),
        Command::Section { a, b, quad: q } => JobSpec::Section {
            config: config(&a, &b)?,
            quad: quad(&q)?,
        },
        Command::Curve { a, b, quad: q, harvest } => JobSpec::Curve {
            config: config(&a, &b)?,
            quad: quad(&q)?,
            harvest,
        },
        Command::Sweep { configs, n_max, jobs } => {
            let configs = if configs.is_empty() {
                default_configs()
            } else {
                configs.iter().map(|s| s.parse()).collect::<CliResult<_>>()?
            };
            return Ok((JobSpec::Sweep { configs, n_max }, jobs));
        }
        Command::Lattice { mode } => {
            let (mode, n) = match mode {
                LatticeCommand::Count { n } => (LatticeMode::Count, n),
                LatticeCommand::Find { n } => (LatticeMode::Find, n),
            };
            JobSpec::Lattice { mode, n }
        }
        Command::Zerocycle { file } => JobSpec::Zerocycle {
            input: read_witness_file(&file)?,
        },
        Command::Battery => JobSpec::Battery,
    };
    Ok((spec, 1))
}

/// Write to stdout, tolerating a reader that has gone away.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn run(cli: Cli) -> CliResult<i32> {
    if let Command::VerifyConfig { a, b } = &cli.command {
        let check = verify_config(&config(a, b)?)?;
        emit(&(serde_json::to_string_pretty(&check)? + "\n"));
        return Ok(0);
    }
    let (spec, jobs) = spec_of(cli.command)?;
    let record = run_job(&spec, jobs)?;
    if !cli.no_persist {
        let path = store::persist(&cli.out, &record)?;
        eprintln!("wrote {}", path.display());
    }
    match &record.result {
        JobResult::Sweep(report) => emit(&report.to_text()),
        JobResult::Battery(report) => emit(&report.table()),
        other => emit(&(serde_json::to_string_pretty(other)? + "\n")),
    }
    let code = match &record.result {
        JobResult::Sweep(report) if report.failure_count > 0 => EXIT_INTERNAL,
        JobResult::Battery(report) if !report.all_passed() => EXIT_INTERNAL,
        r if r.undecided() > 0 => EXIT_UNDECIDED,
        _ => 0,
    };
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
