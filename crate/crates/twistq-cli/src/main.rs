//! `twistq`: run verification suites and exact computations from scenario files.
//!
//! Exit codes: 0 when every selected check passes, 1 when a check fails or
//! errors, 2 for unreadable or invalid scenarios and bad arguments.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twistq::connection::{quantize, render_on_basis};
use twistq::verify::{bundled, run_suite, RunOptions, Scenario, Session, SuiteReport, BUNDLED, CATALOG};
use twistq::Error;

#[derive(Parser)]
#[command(name = "twistq", version, about = "Exact twist deformation checks from scenario files")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the check suite of a scenario.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        suite: Suite,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<String>,
    },
    /// Print the star product of two polynomials.
    Star {
        #[command(flatten)]
        common: Common,
        f: String,
        g: String,
    },
    /// Print the curvature of a declared connection.
    Curvature {
        #[command(flatten)]
        common: Common,
        connection: String,
        /// Use the quantized connection in the deformed world.
        #[arg(long)]
        quantized: bool,
    },
    /// Run the suite and write the report to a file.
    Report {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        suite: Suite,
        out: String,
    },
    /// List registered checks and bundled scenarios.
    Checks,
}

#[derive(Args)]
struct Common {
    /// Scenario file, or `bundled:NAME` for a scenario shipped with the engine.
    scenario: String,
    /// Truncation order in h.
    #[arg(long)]
    order: Option<usize>,
    /// Degree bound for polynomial samples.
    #[arg(long)]
    degree: Option<usize>,
    /// Seed for random samples.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct Suite {
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Comma-separated check ids; dependencies are added automatically.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(c: &Common) -> Result<Session, Failure> {
    let text = match c.scenario.strip_prefix("bundled:") {
        Some(name) => bundled(name).map(str::to_string).ok_or_else(|| {
            let known: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
            Failure::Usage(format!("no bundled scenario `{name}` (known: {})", known.join(", ")))
        })?,
        None => fs::read_to_string(Path::new(&c.scenario))
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", c.scenario)))?,
    };
    let at = |e: Error| match e {
        Error::Parse(m) => Failure::Usage(format!("{}: {m}", c.scenario)),
        e => Failure::Usage(format!("{}: {e}", c.scenario)),
    };
    let sc = Scenario::parse(&text).map_err(at)?.with_overrides(c.order, c.degree, c.seed).map_err(at)?;
    Session::build(sc).map_err(at)
}

fn suite(session: &Session, s: &Suite) -> Result<SuiteReport, Failure> {
    if s.jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    Ok(run_suite(session, &RunOptions { selection: s.checks.clone(), jobs: s.jobs })?)
}

fn render(r: &SuiteReport, f: Format) -> String {
    match f {
        Format::Human => r.to_table(),
        Format::Machine => r.to_json(),
    }
}

fn write(path: &str, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))
}

fn verdict(r: &SuiteReport) -> Result<(), Failure> {
    if r.ok() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Verify { common, suite: s, out } => {
            let session = load(&common)?;
            let r = suite(&session, &s)?;
            let text = render(&r, s.format.unwrap_or(Format::Human));
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            verdict(&r)
        }
        Cmd::Report { common, suite: s, out } => {
            let session = load(&common)?;
            let r = suite(&session, &s)?;
            write(&out, &render(&r, s.format.unwrap_or(Format::Machine)))?;
            verdict(&r)
        }
        Cmd::Star { common, f, g } => {
            let session = load(&common)?;
            let f = session.poly(&f)?;
            let g = session.poly(&g)?;
            println!("{}", session.deformed.star(&f, &g).render());
            Ok(())
        }
        Cmd::Curvature { common, connection, quantized } => {
            let session = load(&common)?;
            let c = session.connection(&connection).ok_or_else(|| {
                let known: Vec<&str> = session.connections.iter().map(|c| c.name.as_str()).collect();
                Failure::Usage(format!("unknown connection `{connection}` (declared: {})", known.join(", ")))
            })?;
            let env = &session.env;
            let curvature = if quantized {
                session.deformed.curvature(&quantize(&session.twist, env, c))
            } else {
                session.undeformed.curvature(c)
            };
            println!("{}", render_on_basis(env, &curvature, &c.module));
            Ok(())
        }
        Cmd::Checks => {
            for c in CATALOG {
                println!("{:<24} {}", c.id, c.anchor);
            }
            println!();
            for (name, _) in BUNDLED {
                println!("bundled:{name}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
