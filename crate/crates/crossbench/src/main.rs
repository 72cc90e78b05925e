use std::io::{ErrorKind, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use crossbench::{run_suite, Config, Format, FunctionSpec, Report, RunOptions, Suite};
use crossbench_core::convolution::twisted_convolve;
use crossbench_core::crossed::{CrossedProduct, RepClass};
use crossbench_core::fixtures::Fixture;

#[derive(Parser)]
#[command(
    name = "crossbench",
    version,
    about = "Crossed products of Banach algebras by finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a configuration and summarize its fixtures.
    Validate { config: PathBuf },
    /// Twisted convolution of two functions read from JSON files.
    Convolve {
        config: PathBuf,
        #[arg(short)]
        f: PathBuf,
        #[arg(short)]
        g: PathBuf,
        /// Fixture to use (defaults to the first).
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Build the crossed product of each fixture and print its shape.
    BuildCrossed { config: PathBuf },
    /// Run a verification suite.
    Verify {
        config: PathBuf,
        #[arg(long)]
        suite: Option<Suite>,
        #[arg(long, env = "CROSSBENCH_SEED")]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Record wall time per check.
        #[arg(long)]
        timings: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-emit a JSON report (from a file, or stdin when omitted or `-`).
    Report {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn pick<'a>(fixtures: &'a [Fixture], id: Option<&str>) -> anyhow::Result<&'a Fixture> {
    match id {
        Some(id) => fixtures
            .iter()
            .find(|f| f.id == id)
            .with_context(|| format!("no fixture {id:?} in the configuration")),
        None => fixtures
            .first()
            .context("the configuration has no fixtures"),
    }
}

fn read_function(path: &Path, fx: &Fixture) -> anyhow::Result<crossbench_core::AFunction> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec = FunctionSpec::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(spec.to_function(fx)?)
}

/// Writes a line to stdout; a closed pipe is not an error.
fn print(text: &str) -> anyhow::Result<()> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Validate { config } => {
            let fixtures = Config::load(&config)?.fixtures()?;
            for fx in &fixtures {
                let sys = &fx.system;
                let c = sys.c_alpha_bounds();
                print(&format!(
                    "{}: |G| = {}, dim A = {}, {} pairs, C_alpha in [{:.6}, {:.6}]",
                    fx.id,
                    sys.group().order(),
                    sys.algebra().dim(),
                    fx.pairs.len(),
                    c.lower,
                    c.upper
                ))?;
            }
            Ok(true)
        }
        Command::Convolve {
            config,
            f,
            g,
            fixture,
        } => {
            let fixtures = Config::load(&config)?.fixtures()?;
            let fx = pick(&fixtures, fixture.as_deref())?;
            let f = read_function(&f, fx)?;
            let g = read_function(&g, fx)?;
            let h = twisted_convolve(&fx.system, &f, &g)?;
            print(&serde_json::to_string(&FunctionSpec::from_function(&h))?)?;
            Ok(true)
        }
        Command::BuildCrossed { config } => {
            let fixtures = Config::load(&config)?.fixtures()?;
            for fx in &fixtures {
                let class = RepClass::new(&fx.system, fx.pairs.clone())?;
                let cp = CrossedProduct::build(&fx.system, class)?;
                let c_r = cp.class().c_r();
                print(&format!(
                    "{}: dim L1 = {}, kernel dim = {}, quotient dim = {}, C^R in [{:.6}, {:.6}]",
                    fx.id,
                    fx.system.group().order() * fx.system.algebra().dim(),
                    cp.kernel_dim(),
                    cp.quotient_dim(),
                    c_r.lower,
                    c_r.upper
                ))?;
            }
            Ok(true)
        }
        Command::Verify {
            config,
            suite,
            seed,
            tol,
            samples,
            format,
            timings,
            out,
        } => {
            let cfg = Config::load(&config)?;
            let fixtures = cfg.fixtures()?;
            let suite = match (suite, &cfg.suite) {
                (Some(s), _) => s,
                (None, Some(name)) => name.parse()?,
                (None, None) => Suite::All,
            };
            let defaults = RunOptions::default();
            let opts = RunOptions {
                seed: seed.or(cfg.seed).unwrap_or(defaults.seed),
                tolerance: tol.or(cfg.tolerance).unwrap_or(defaults.tolerance),
                samples: samples.or(cfg.samples).unwrap_or(defaults.samples),
                timings,
            };
            if !(opts.tolerance.is_finite() && opts.tolerance > 0.0) {
                bail!("tolerance must be positive");
            }
            let report = run_suite(&fixtures, suite, &opts);
            if let Some(path) = out {
                std::fs::write(&path, report.to_json())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            print(&report.emit(format))?;
            Ok(report.passed())
        }
        Command::Report { input, format } => {
            let text = match input.as_deref() {
                Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))?,
                _ => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let report = Report::from_json(&text)?;
            print(&report.emit(format))?;
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
