//! The `rheolab` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain rejection,
//! 3 numerical failure.

mod commands;
mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::burgers::BurgersError;
use crate::compare::CompareError;
use crate::models::{ParamError, SimError};
use crate::netcomp::{NotBurgersForm, ParseError};

pub use commands::{compile_report, simulate1d_csv, simulate3d_csv};
pub use scenario::{Scenario, DEFAULT_DT};

/// Reserved for stochastic modes; deterministic commands ignore it.
pub const SEED_ENV: &str = "RHEOLAB_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Network text that failed to parse, rendered with a caret under the offending position.
    #[error("{error}\n  {text}\n  {caret}^")]
    Syntax {
        error: ParseError,
        text: String,
        caret: String,
    },
    #[error(transparent)]
    NotBurgers(#[from] NotBurgersForm),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Numerical(SimError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Syntax { .. } | CliError::Io(_) => 1,
            CliError::NotBurgers(_) | CliError::Domain(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn syntax(error: ParseError, text: &str) -> CliError {
        let offset = text[..error.position().min(text.len())].chars().count();
        CliError::Syntax {
            error,
            text: text.to_string(),
            caret: " ".repeat(offset),
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::StepFailure { .. } => CliError::Numerical(e),
            SimError::InvalidConfig(_) | SimError::Params(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<BurgersError> for CliError {
    fn from(e: BurgersError) -> Self {
        match e {
            BurgersError::InvalidCoefficients(_) | BurgersError::Degenerate(_) => {
                CliError::Domain(e.to_string())
            }
            BurgersError::InvalidGrid | BurgersError::Params(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CompareError> for CliError {
    fn from(e: CompareError) -> Self {
        match e {
            CompareError::Sim(e) => e.into(),
            CompareError::Burgers(e) => e.into(),
            CompareError::Params(e) => e.into(),
            CompareError::Fit { .. } | CompareError::TooManySteps { .. } => {
                CliError::Domain(e.to_string())
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rheolab",
    version,
    about = "Burgers-class viscoelastic models in 3D and 1D"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a 3D model; CSV t,S11,S22,S33,S12,S13,S23,N1,N2,psi,xi,det_a,det_b
    #[command(name = "simulate3d")]
    Simulate3d(ScenarioArgs),
    /// Integrate the 1D Burgers law from a model map or a network; CSV t,eps,sigma
    #[command(name = "simulate1d")]
    Simulate1d(ScenarioArgs),
    /// Reduce a spring-dashpot network to its transfer function and Burgers coefficients
    Compile {
        /// Network text, e.g. "series(spring(mu=1), dashpot(eta=2))"
        text: Option<String>,
        #[arg(long, conflicts_with = "text")]
        file: Option<PathBuf>,
    },
    /// Compare a 3D run against its mapped 1D law and report the maximum relative deviation
    Compare(ScenarioArgs),
    /// Analytic storage and loss moduli; CSV omega,Gp,Gpp
    Moduli(ScenarioArgs),
    /// Run several scenario files concurrently; each must name `command` and a distinct `out`
    Sweep {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
    },
}

/// Every scenario key as a flag; flags override the `--config` file.
#[derive(Debug, Args, Default)]
struct ScenarioArgs {
    /// Scenario file of `key = value` lines
    #[arg(long)]
    config: Option<PathBuf>,
    /// Model number 1-4
    #[arg(long)]
    model: Option<String>,
    /// Network text (simulate1d, moduli)
    #[arg(long)]
    network: Option<String>,
    /// Parameter file, or inline `name=value,...`
    #[arg(long)]
    params: Option<String>,
    /// rest | shear:rate=R | osc:gamma0=G,omega=W | uniaxial:rate=R | step:gamma=G[,ramp=T]
    #[arg(long)]
    protocol: Option<String>,
    #[arg(long)]
    t_end: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    record_every: Option<String>,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// shear | uniaxial (compare without --protocol)
    #[arg(long)]
    mode: Option<String>,
    /// Strain amplitude (compare, moduli --verify)
    #[arg(long)]
    amplitude: Option<String>,
    /// Comma-separated frequencies (moduli)
    #[arg(long)]
    omega: Option<String>,
    /// Re-derive moduli from 3D oscillatory runs (moduli)
    #[arg(long)]
    verify: bool,
    /// Report the deviatoric stress instead of the extra stress (simulate3d)
    #[arg(long)]
    normalize_pressure: bool,
}

impl ScenarioArgs {
    fn into_scenario(self) -> Result<Scenario, CliError> {
        let mut s = match &self.config {
            Some(path) => Scenario::from_file(path)?,
            None => Scenario::default(),
        };
        let pairs = [
            ("model", self.model),
            ("network", self.network),
            ("params", self.params),
            ("protocol", self.protocol),
            ("t_end", self.t_end),
            ("dt", self.dt),
            ("record_every", self.record_every),
            ("out", self.out.map(|p| p.to_string_lossy().into_owned())),
            ("mode", self.mode),
            ("amplitude", self.amplitude),
            ("omega", self.omega),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                s.set(key, &v)?;
            }
        }
        s.verify |= self.verify;
        s.normalize_pressure |= self.normalize_pressure;
        Ok(s)
    }
}

/// Run with process stdout/stderr; returns the exit code.
pub fn run(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                1
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Simulate3d(a) => commands::run_scenario("simulate3d", &a.into_scenario()?, stdout),
        Command::Simulate1d(a) => commands::run_scenario("simulate1d", &a.into_scenario()?, stdout),
        Command::Compare(a) => commands::run_scenario("compare", &a.into_scenario()?, stdout),
        Command::Moduli(a) => commands::run_scenario("moduli", &a.into_scenario()?, stdout),
        Command::Compile { text, file } => {
            let text = match (text, file) {
                (Some(t), _) => t,
                (None, Some(path)) => std::fs::read_to_string(path)?.trim().to_string(),
                (None, None) => {
                    return Err(CliError::Usage(
                        "compile needs network text or --file".into(),
                    ))
                }
            };
            let (body, result) = compile_report(&text);
            stdout.write_all(body.as_bytes())?;
            result
        }
        Command::Sweep { configs } => commands::sweep(&configs, stdout),
    }
}
