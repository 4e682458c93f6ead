use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use schurproc::config::{BoxDims, GridSpec, PointArg};
use schurproc::{run, CliError, CommandKind, Format, Model, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "schurproc", version, about = "Schur process correlations, bulk asymptotics and samples of random plane partitions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Run the built-in consistency suites and print a PASS/FAIL table.
    Verify,
    /// Evaluate kernel entries or correlation determinants.
    #[command(after_help = "Points are tile centers t:h with h + (t+1)/2 an integer \
(for --model planch, 0:x with x a half-odd particle position).\n\
One point gives K(a,a), two give K(a,b), and --det gives the determinant over all points.\n\
--queries reads JSON lines {\"points\": [[t,h],...], \"det\": bool} and writes JSON lines,\n\
the first holding the configuration.")]
    Kernel,
    /// Tabulate the bulk angle and density over a grid.
    #[command(after_help = "CSV columns: tau,chi,theta,rho. SVG draws the level lines theta = k pi/8.")]
    Density,
    /// Tabulate the limit shape over a grid.
    #[command(after_help = "CSV columns: tau,chi,x,y,z. SVG draws the surface mesh in an oblique view.")]
    LimitShape,
    /// Sample a boxed plane partition by Metropolis dynamics.
    #[command(after_help = "JSON holds the final state. SVG draws its lozenge tiling.\n\
CSV columns: tau_lo,tau_hi,chi_lo,chi_hi,sites,empirical,predicted,interior, one row per grid cell,\n\
comparing the sampled horizontal-tile density with the bulk density at (r t, r h).")]
    Sample,
}

impl From<Cmd> for CommandKind {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Verify => CommandKind::Verify,
            Cmd::Kernel => CommandKind::Kernel,
            Cmd::Density => CommandKind::Density,
            Cmd::LimitShape => CommandKind::LimitShape,
            Cmd::Sample => CommandKind::Sample,
        }
    }
}

#[derive(Args, Debug)]
struct Flags {
    /// Weight q of q^{|π|}, in (0, 1). Default 0.1.
    #[arg(long, global = true, conflicts_with = "r")]
    q: Option<f64>,
    /// Scaling parameter, setting q = e^{-r}.
    #[arg(long, global = true)]
    r: Option<f64>,
    /// Plancherel parameter.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Volume cutoff for brute-force enumeration.
    #[arg(long, global = true)]
    cutoff: Option<u32>,
    /// Box a,b,c for sampling.
    #[arg(long = "box", global = true)]
    box_dims: Option<BoxDims>,
    /// Grid tmin:tmax:n,cmin:cmax:n over (tau, chi).
    #[arg(long, global = true, allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    /// Target accuracy of contour quadrature.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Metropolis steps.
    #[arg(long, global = true)]
    steps: Option<u64>,
    /// Output file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    format: Option<Format>,
    /// JSON file with any of the settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Kernel model: mq, window or planch.
    #[arg(long, global = true)]
    model: Option<Model>,
    /// Comma-separated points t:h.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    points: Option<Vec<PointArg>>,
    /// JSON-lines file of kernel queries.
    #[arg(long, global = true)]
    queries: Option<PathBuf>,
    /// Report the correlation determinant of all points.
    #[arg(long, global = true)]
    det: bool,
}

fn build(cli: Cli) -> Result<RunConfig, CliError> {
    let f = cli.flags;
    let mut c = match &f.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            serde_json::from_str::<RunConfig>(&text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?
        }
        None => RunConfig::default(),
    };
    c.command = Some(cli.cmd.into());
    if f.q.is_some() {
        c.q = f.q;
        c.r = None;
    }
    if f.r.is_some() {
        c.r = f.r;
        c.q = None;
    }
    macro_rules! set {
        ($($field:ident => $target:ident),*) => {$(
            if let Some(v) = f.$field {
                c.$target = v;
            }
        )*};
    }
    set!(alpha => alpha, cutoff => cutoff, tol => tol, seed => seed, steps => steps, model => model, points => points);
    if f.box_dims.is_some() {
        c.box_dims = f.box_dims;
    }
    if f.grid.is_some() {
        c.grid = f.grid;
    }
    if f.out.is_some() {
        c.out = f.out;
    }
    if f.format.is_some() {
        c.format = f.format;
    }
    if f.queries.is_some() {
        c.queries = f.queries;
    }
    c.det |= f.det;
    c.resolve().map_err(CliError::Usage)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut err = stderr.lock();
    let result = build(cli).and_then(|cfg| run(&cfg, &mut stdout.lock(), &mut err));
    match result {
        Ok(o) => {
            if let Some(m) = &o.message {
                let _ = writeln!(err, "{m}");
            }
            ExitCode::from(o.exit_code() as u8)
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
