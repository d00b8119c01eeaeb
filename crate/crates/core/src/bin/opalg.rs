use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use opalg::suite::{self, Command, RunConfig};
use opalg::{Error, ToleranceContext};

#[derive(Parser)]
#[command(name = "opalg", version, about = "Verification suites for finite operator algebras")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Spectrum, norm and spectral radius laws.
    Spectra(Opts),
    /// Continuous functional calculus.
    Calculus(Opts),
    /// States, positivity and the GNS construction.
    Gns(Opts),
    /// Discrete Weyl systems and the polynomial commutator.
    Weyl(Opts),
    /// Uniqueness of Weyl representations and the Fock projection.
    Svn(Opts),
    /// Grid Schrodinger representation.
    Schrodinger(Opts),
    /// Every suite in one report.
    VerifyAll(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Opts {
    /// Matrix file (`spectra`, `calculus`) or algebra generator (`gns`).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    state: Option<PathBuf>,
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long)]
    weyl: Option<PathBuf>,
    #[arg(long)]
    integral: Option<PathBuf>,
    /// Function-algebra elements for the Gelfand checks.
    #[arg(long)]
    functions: Option<PathBuf>,
    #[arg(long, env = "OPALG_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tol_eq: Option<f64>,
    #[arg(long)]
    tol_spec: Option<f64>,
    #[arg(long)]
    tol_rank: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long)]
    cutoff: Option<f64>,
    #[arg(long)]
    modulus: Option<usize>,
    #[arg(long = "N")]
    grid_n: Option<usize>,
    #[arg(long = "L")]
    grid_l: Option<f64>,
    /// `sqrt`, `exp`, `log`, `inv`, `abs` or `chebyshev:<degree>:<name>`.
    #[arg(long)]
    function: Option<String>,
    /// Record per-block wall time (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

fn config(command: Command, o: &Opts) -> Result<RunConfig, Error> {
    let d = ToleranceContext::default();
    let ctx = ToleranceContext::new(
        o.tol_eq.unwrap_or(d.eq_tol),
        o.tol_spec.unwrap_or(d.spec_tol),
        o.tol_rank.unwrap_or(d.rank_tol),
    )?;
    let mut cfg = RunConfig::new(command, o.seed);
    cfg.input = o.input.clone();
    cfg.state = o.state.clone();
    cfg.grid = o.grid.clone();
    cfg.weyl = o.weyl.clone();
    cfg.integral = o.integral.clone();
    cfg.functions = o.functions.clone();
    cfg.ctx = ctx;
    cfg.depth = o.depth;
    cfg.cutoff = o.cutoff;
    cfg.modulus = o.modulus;
    cfg.grid_n = o.grid_n;
    cfg.grid_l = o.grid_l;
    cfg.function = o.function.clone();
    cfg.timing = o.timing;
    Ok(cfg)
}

fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn fail(kind: &str, message: String) -> ExitCode {
    let body = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{body}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match &cli.command {
        Cmd::Spectra(o) => (Command::Spectra, o),
        Cmd::Calculus(o) => (Command::Calculus, o),
        Cmd::Gns(o) => (Command::Gns, o),
        Cmd::Weyl(o) => (Command::Weyl, o),
        Cmd::Svn(o) => (Command::Svn, o),
        Cmd::Schrodinger(o) => (Command::Schrodinger, o),
        Cmd::VerifyAll(o) => (Command::VerifyAll, o),
    };
    let report = match config(command, opts).and_then(|cfg| suite::run(&cfg)) {
        Ok(r) => r,
        Err(e) => {
            let kind = format!("{e:?}");
            let kind = kind.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error");
            return fail(kind, e.to_string());
        }
    };
    let body = match opts.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &body) {
                return fail("Io", format!("{}: {e}", path.display()));
            }
        }
        None => print!("{body}"),
    }
    for c in report.failures() {
        eprintln!(
            "FAIL {}: measured {:e} vs tolerance {:e} ({})",
            c.name, c.measured, c.tolerance, c.anchor
        );
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
