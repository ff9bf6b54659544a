//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::analysis::functions::TestFunction;
use crate::analysis::study::{
    convergence_study, error_profile, scheme_moments, Scheme, SchemeConfig,
};
use crate::error::Error;
use crate::quadrature::Mode;
use crate::report::{self, Format};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fpdiff",
    version,
    about = "Difference schemes for the Fokker-Planck angular diffusion operator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convergence table: E and the scheme's exponent columns per N.
    Table(StudyArgs),
    /// Mesh and scheme constants per N.
    Diagnostics(StudyArgs),
    /// Discrete zeroth and first moment residuals per N.
    Moments(StudyArgs),
    /// Node-wise signed error (exact minus discrete) for the last N.
    Profile(StudyArgs),
    /// Run the acceptance checks; exits nonzero if any fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fr,
    Hr,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Fr => Mode::FullRange,
            ModeArg::Hr => Mode::HalfRange,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    /// lee, haldy-ligou, morel, rk4, uniform or uniform-shifted.
    #[arg(long, default_value = "haldy-ligou")]
    pub scheme: Scheme,
    #[arg(long, value_enum, default_value_t = ModeArg::Fr)]
    pub mode: ModeArg,
    /// Comma-separated ascending sizes; nodes per half in hr mode.
    #[arg(long, value_delimiter = ',', required = true)]
    pub ns: Vec<usize>,
    /// exp, const, mu, mu0..mu5 or linear (3 - 2 mu).
    #[arg(long, default_value = "exp")]
    pub function: TestFunction,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Write the tridiagonal operator for the last N as CSV.
    #[arg(long)]
    pub dump_operator: Option<PathBuf>,
    /// Write the mesh for the last N as CSV.
    #[arg(long)]
    pub dump_mesh: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these criteria (1 to 12).
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<u8>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Exit code and message for a failed command.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn construction(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONSTRUCTION,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: format!("cannot write {}: {e}", path.display()),
        }
    }
}

impl StudyArgs {
    fn config(&self) -> Result<SchemeConfig, Failure> {
        let config = SchemeConfig::new(self.scheme, self.mode.into())
            .map_err(|e| Failure::usage(e.to_string()))?;
        if self.ns.contains(&0) {
            return Err(Failure::usage("--ns entries must be positive"));
        }
        if self.ns.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Failure::usage("--ns must be strictly increasing"));
        }
        Ok(config)
    }

    fn last_n(&self) -> usize {
        *self.ns.last().expect("--ns is required")
    }
}

fn construction_failures<'a>(
    config: &SchemeConfig,
    failed: impl Iterator<Item = (usize, &'a Error)>,
) -> Option<Failure> {
    let lines: Vec<String> = failed
        .map(|(n, e)| format!("N={}: {e}", config.node_count(n)))
        .collect();
    (!lines.is_empty())
        .then(|| Failure::construction(format!("construction failed for {}", lines.join("; "))))
}

fn write_artifact(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::io(Path::new("<stdout>"), e)),
    }
}

fn write_dumps(args: &StudyArgs, config: &SchemeConfig) -> Result<(), Failure> {
    if args.dump_mesh.is_none() && args.dump_operator.is_none() {
        return Ok(());
    }
    let n = args.last_n();
    let disc = config.build(n).map_err(|e| {
        Failure::construction(format!(
            "construction failed for N={}: {e}",
            config.node_count(n)
        ))
    })?;
    if let Some(p) = &args.dump_mesh {
        fs::write(p, disc.mesh.to_csv()).map_err(|e| Failure::io(p, e))?;
    }
    if let Some(p) = &args.dump_operator {
        fs::write(p, disc.operator.to_csv()).map_err(|e| Failure::io(p, e))?;
    }
    Ok(())
}

fn table(args: &StudyArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let config = args.config()?;
    let report = convergence_study(&config, &args.function, &args.ns)
        .map_err(|e| Failure::usage(e.to_string()))?;
    write_artifact(
        args.output.as_deref(),
        &report::render_convergence(&report, args.format.into()),
        stdout,
    )?;
    write_dumps(args, &config)?;
    let failed = report
        .rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().err().map(|e| (r.n, e)));
    construction_failures(&config, failed).map_or(Ok(()), Err)
}

fn diagnostics(args: &StudyArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let config = args.config()?;
    let results: Vec<_> = args
        .ns
        .par_iter()
        .map(|&n| config.build(n).map(|d| d.diagnostics()))
        .collect();
    let entries: Vec<_> = args
        .ns
        .iter()
        .zip(results)
        .map(|(&n, r)| (config.node_count(n), r))
        .collect();
    let text = report::diagnostics_table(&entries).render(args.format.into());
    write_artifact(args.output.as_deref(), &text, stdout)?;
    write_dumps(args, &config)?;
    let failed = args
        .ns
        .iter()
        .zip(&entries)
        .filter_map(|(&n, (_, r))| r.as_ref().err().map(|e| (n, e)));
    construction_failures(&config, failed).map_or(Ok(()), Err)
}

fn moments(args: &StudyArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let config = args.config()?;
    if config.scheme == Scheme::ShiftedUniform {
        return Err(Failure::usage(
            "moments need quadrature weights; the shifted uniform mesh has none",
        ));
    }
    let results: Vec<_> = args
        .ns
        .par_iter()
        .map(|&n| scheme_moments(&config, &args.function, n))
        .collect();
    let entries: Vec<_> = args
        .ns
        .iter()
        .zip(results)
        .map(|(&n, r)| (config.node_count(n), r))
        .collect();
    let text = report::moments_table(&entries).render(args.format.into());
    write_artifact(args.output.as_deref(), &text, stdout)?;
    write_dumps(args, &config)?;
    let failed = args
        .ns
        .iter()
        .zip(&entries)
        .filter_map(|(&n, (_, r))| r.as_ref().err().map(|e| (n, e)));
    construction_failures(&config, failed).map_or(Ok(()), Err)
}

fn profile(args: &StudyArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let config = args.config()?;
    let n = args.last_n();
    let profile = error_profile(&config, &args.function, n).map_err(|e| {
        Failure::construction(format!(
            "construction failed for N={}: {e}",
            config.node_count(n)
        ))
    })?;
    let text = report::profile_table(&profile).render(args.format.into());
    write_artifact(args.output.as_deref(), &text, stdout)?;
    write_dumps(args, &config)
}

fn verify_command(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let ids: Vec<u8> = if args.criteria.is_empty() {
        (1..=12).collect()
    } else {
        args.criteria.clone()
    };
    if let Some(bad) = ids.iter().find(|&&id| !(1..=12).contains(&id)) {
        return Err(Failure::usage(format!(
            "no criterion {bad}; valid ids are 1 to 12"
        )));
    }
    let outcomes: Vec<verify::Outcome> =
        ids.iter().filter_map(|&id| verify::criterion(id)).collect();
    let mut text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    text.push_str(&format!(
        "{} passed, {failed} failed\n",
        outcomes.len() - failed
    ));
    write_artifact(args.output.as_deref(), &text, stdout)?;
    if failed > 0 {
        return Err(Failure {
            code: EXIT_FAILURE,
            message: format!("{failed} criteria failed"),
        });
    }
    Ok(())
}

/// Executes a parsed command and returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Table(a) => table(a, stdout),
        Command::Diagnostics(a) => diagnostics(a, stdout),
        Command::Moments(a) => moments(a, stdout),
        Command::Profile(a) => profile(a, stdout),
        Command::Verify(a) => verify_command(a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "fpdiff: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (program name first) and runs the command. Parse errors
/// are printed as clap renders them and map to the usage exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            code
        }
    }
}
