//! The `distinguish` command line.
//!
//! Exit codes: 0 success, 1 a property check or construction failed, 2 bad
//! usage or unreadable input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::automorphisms::{self, BoundaryMode};
use crate::colouring::Colouring;
use crate::constructions::{self, Algorithm};
use crate::dot;
use crate::error::Result;
use crate::experiment::{self, ExperimentConfig};
use crate::families::Instance;
use crate::invariants::{self, Limits};
use crate::source::{self, Defaults, Named};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "distinguish",
    version,
    about = "Distinguishing colourings: exact invariants, certified constructions, verification and corpus experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the graph (with the resulting colouring) as Graphviz DOT.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,

    /// Which automorphisms of a truncation must be broken.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Pointwise)]
    mode: ModeArg,

    /// Seed filled into family strings that omit it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Radius filled into family strings that omit it.
    #[arg(long, global = true)]
    radius: Option<u64>,

    /// Wall-clock budget in milliseconds for each exact computation.
    #[arg(long = "budget-ms", global = true, value_name = "MS")]
    budget_ms: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact invariants of a graph, or of every graph in an atlas range.
    Invariants {
        /// `family:<name>(<params>)`, `atlas:<lo>..<hi>` or a graph JSON file.
        source: String,
    },
    /// Runs a construction and certifies its output.
    Construct {
        #[arg(value_enum)]
        algorithm: Algorithm,
        /// `family:<name>(<params>)` or a graph or truncation JSON file.
        source: String,
        /// Input colouring for the constructions that transform one.
        #[arg(long, value_name = "FILE")]
        colouring: Option<PathBuf>,
    },
    /// Checks a colouring: distinguishing by default, proper on request.
    Verify {
        source: String,
        colouring: PathBuf,
        #[arg(long)]
        distinguishing: bool,
        #[arg(long)]
        proper: bool,
    },
    /// Runs the checks of an experiment config over its corpus.
    Experiment { config: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Pointwise,
    Setwise,
}

impl From<ModeArg> for BoundaryMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Pointwise => BoundaryMode::Pointwise,
            ModeArg::Setwise => BoundaryMode::Setwise,
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn defaults(&self) -> Defaults {
        Defaults {
            radius: self.cli.radius,
            seed: self.cli.seed,
        }
    }

    fn limits(&self) -> Limits {
        Limits {
            deadline: self.cli.budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
            ..Limits::default()
        }
    }

    fn print(&mut self, s: &str) -> Result<()> {
        self.out.write_all(s.as_bytes())?;
        if !s.ends_with('\n') {
            self.out.write_all(b"\n")?;
        }
        Ok(())
    }

    fn print_json(&mut self, v: &Value) -> Result<()> {
        let s = serde_json::to_string_pretty(v)?;
        self.print(&s)
    }

    fn write_dot(&self, named: &Named, c: Option<&Colouring>) -> Result<()> {
        if let Some(path) = &self.cli.dot {
            std::fs::write(path, dot::to_dot(named.instance.graph(), c))?;
        }
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, out };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                EXIT_USAGE
            } else {
                EXIT_FAILED
            }
        }
    }
}

fn dispatch(ctx: &mut Ctx<'_>) -> Result<i32> {
    match &ctx.cli.command {
        Command::Invariants { source } => cmd_invariants(ctx, source),
        Command::Construct {
            algorithm,
            source,
            colouring,
        } => cmd_construct(ctx, *algorithm, source, colouring.as_deref()),
        Command::Verify {
            source,
            colouring,
            distinguishing,
            proper,
        } => cmd_verify(ctx, source, colouring, *distinguishing, *proper),
        Command::Experiment { config } => cmd_experiment(ctx, config),
    }
}

fn cmd_invariants(ctx: &mut Ctx<'_>, src: &str) -> Result<i32> {
    let graphs = source::load(src, ctx.defaults())?;
    let mut reports = Vec::with_capacity(graphs.len());
    for named in &graphs {
        reports.push(invariants::full_report(named.instance.graph(), &named.name, &ctx.limits())?);
    }
    if let ([named], [report]) = (&graphs[..], &reports[..]) {
        let best = report
            .certificates
            .get(&invariants::Invariant::ChiD)
            .or_else(|| report.certificates.get(&invariants::Invariant::D));
        ctx.write_dot(named, best)?;
    }
    if ctx.cli.json {
        let v = if source::is_multi(src) {
            serde_json::to_value(&reports)?
        } else {
            serde_json::to_value(&reports[0])?
        };
        ctx.print_json(&v)?;
    } else {
        let table = invariants::render_table(&reports);
        ctx.print(&table)?;
    }
    Ok(EXIT_OK)
}

fn cmd_construct(ctx: &mut Ctx<'_>, alg: Algorithm, src: &str, colouring: Option<&Path>) -> Result<i32> {
    let named = source::load_one(src, ctx.defaults())?;
    let g = named.instance.graph();
    let given = colouring.map(source::load_colouring).transpose()?;
    let (c, audit) = constructions::run(alg, &named.instance, given, &ctx.limits())?;
    ctx.write_dot(&named, Some(&c))?;
    let v = json!({
        "algorithm": alg.name(),
        "graph": named.name,
        "n": g.n(),
        "m": g.m(),
        "max_degree": g.max_degree(),
        "colours": c.num_colours(),
        "colouring": c,
        "audit": audit,
    });
    ctx.print_json(&v)?;
    Ok(EXIT_OK)
}

fn cmd_verify(ctx: &mut Ctx<'_>, src: &str, path: &Path, distinguishing: bool, proper: bool) -> Result<i32> {
    let named = source::load_one(src, ctx.defaults())?;
    let g = named.instance.graph();
    let c = source::load_colouring(path)?;
    c.check_domain(g)?;
    let check_distinguishing = distinguishing || !proper;
    let mut ok = true;
    let mut report = serde_json::Map::new();
    let mut lines = Vec::new();
    if proper {
        let conflict = c.first_conflict(g);
        ok &= conflict.is_none();
        report.insert("proper".into(), json!(conflict.is_none()));
        match conflict {
            None => lines.push("proper: yes".to_string()),
            Some(x) => {
                report.insert("conflict".into(), json!(x.to_string()));
                lines.push(format!("proper: no ({x})"));
            }
        }
    }
    if check_distinguishing {
        let verdict = match &named.instance {
            Instance::Finite(g) => automorphisms::is_distinguishing(g, &c)?,
            Instance::Truncated(t) => automorphisms::truncation_distinguishing(t, &c, ctx.cli.mode.into())?,
        };
        ok &= verdict.is_distinguishing();
        report.insert("distinguishing".into(), json!(verdict.is_distinguishing()));
        match verdict.witness() {
            None => lines.push("distinguishing: yes".to_string()),
            Some(w) => {
                let witness = json!({ "image": w.image, "support": w.support() });
                lines.push("distinguishing: no".to_string());
                lines.push(serde_json::to_string(&json!({ "witness": witness }))?);
                report.insert("witness".into(), witness);
            }
        }
    }
    ctx.write_dot(&named, Some(&c))?;
    if ctx.cli.json {
        ctx.print_json(&Value::Object(report))?;
    } else {
        ctx.print(&lines.join("\n"))?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_experiment(ctx: &mut Ctx<'_>, path: &Path) -> Result<i32> {
    let mut config = ExperimentConfig::load(path)?;
    if let Some(ms) = ctx.cli.budget_ms {
        config.limits.budget_ms = Some(ms);
    }
    if ctx.cli.seed.is_some() {
        config.defaults.seed = ctx.cli.seed;
    }
    if ctx.cli.radius.is_some() {
        config.defaults.radius = ctx.cli.radius;
    }
    let result = experiment::run(&config)?;
    experiment::write_outputs(&config, &result)?;
    if ctx.cli.json {
        ctx.print_json(&serde_json::to_value(&result)?)?;
    } else {
        if config.output.is_none() {
            let csv = result.to_csv()?;
            ctx.print(&csv)?;
        }
        let summary = result.summary_markdown();
        ctx.print(&summary)?;
    }
    Ok(if result.has_failures() { EXIT_FAILED } else { EXIT_OK })
}
