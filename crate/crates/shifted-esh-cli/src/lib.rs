//! Command-line front end for `shifted-esh`: argument definitions, the
//! subcommands, text rendering, JSON/CSV formats and verification sweeps.

pub mod formats;
pub mod render;
pub mod sweep;

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use shifted_esh::coplactic::counting_criterion;
use shifted_esh::esh::{self, Method};
use shifted_esh::ktheory::{self, Suite};
use shifted_esh::shifted_core::{enumerate_lr_pairs, BoxSide, Instance, MarkedTableau, StrictPartition, Word};
use shifted_esh::Error as EngineError;

use crate::formats::{ReportJson, TraceJson};
use crate::render::{render_tableau, Style};
use crate::sweep::{parse_suites, run_sweep, SweepConfig};

/// Exit status for a failed verification or disagreement.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for unusable input.
pub const EXIT_USAGE: i32 = 2;

/// An error caused by the user's input (exit status 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

/// Engine errors about the input become usage errors; internal invariant
/// violations stay failures.
fn input_error(e: EngineError) -> anyhow::Error {
    match e {
        EngineError::Invariant(_) => anyhow!(e),
        other => usage(other.to_string()),
    }
}

#[derive(Parser, Debug)]
#[command(name = "shifted-esh", version, about = "Evacuation-shuffling and monodromy of shifted Littlewood-Richardson tableaux")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run esh (or its inverse) on one tableau and print the step table.
    Esh(EshArgs),
    /// List the orbits of the monodromy operator on an instance.
    Orbits(OrbitsArgs),
    /// List LR tableaux or genomic tableaux of an instance.
    Enumerate(EnumerateArgs),
    /// Sweep all instances up to a size and check theorems and conjectures.
    Verify(VerifyArgs),
    /// Draw a tableau as a shifted grid.
    Render(RenderArgs),
}

/// An instance `(α, β, γ^c)`.
#[derive(Args, Debug, Clone, Default)]
pub struct InstanceArgs {
    /// Inner shape α, e.g. `4,2`.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Content β, e.g. `2` (empty for no letters).
    #[arg(long)]
    pub beta: Option<String>,
    /// Outer shape γ^c, e.g. `5,3,1`.
    #[arg(long = "gamma-c")]
    pub gamma_c: Option<String>,
}

/// A tableau given as a word (optionally with its shape), or as an index
/// into the sorted LR tableaux of an instance.
#[derive(Args, Debug, Clone, Default)]
pub struct TableauArgs {
    /// Reading word with one `X` for the marker, e.g. `"1 2 X 1"`. Without
    /// `--shape` it is placed on a shape where no two cells touch.
    pub word: Option<String>,
    /// Skew shape for the word, e.g. `5,3,1/4,2`.
    #[arg(long)]
    pub shape: Option<String>,
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// 0-based position in the sorted list of LR tableaux of the instance.
    #[arg(long)]
    pub index: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum MethodArg {
    Oracle,
    Coplactic,
    Switching,
    Indexed,
    All,
}

#[derive(Args, Debug)]
pub struct EshArgs {
    #[command(flatten)]
    pub tableau: TableauArgs,
    /// Algorithm; `all` runs every algorithm and checks they agree.
    #[arg(long, value_enum, default_value = "switching")]
    pub method: MethodArg,
    /// Compute esh⁻¹ instead (the marker must be an outer co-corner).
    #[arg(long)]
    pub inverse: bool,
    /// Print the switching trace as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct OrbitsArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "ascii")]
    pub style: Style,
    /// Print reading words only, without grids.
    #[arg(long)]
    pub words: bool,
    /// Write a verification report (all suites) as JSON to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum What {
    /// LR tableaux with the marker an inner co-corner (the domain of esh).
    Lr,
    /// LR tableaux with the marker an outer co-corner (the codomain).
    Outer,
    /// Ballot genomic tableaux with one repeated gene.
    Genomic,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "lr")]
    pub what: What,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest |α| + |β| to include.
    #[arg(long = "max-size")]
    pub max_size: usize,
    /// `all`, `theorems`, `conjectures`, or a comma-separated list of suites.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Output directory for reports, summary and cursor.
    #[arg(long, env = "SHIFTED_ESH_OUT", default_value = "esh-out")]
    pub out: PathBuf,
    /// Process at most this many instances, leaving the sweep resumable.
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub tableau: TableauArgs,
    #[arg(long, value_enum, default_value = "ascii")]
    pub style: Style,
}

/// The text a command prints and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, code: 0 }
    }
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Esh(a) => cmd_esh(&a),
        Command::Orbits(a) => cmd_orbits(&a),
        Command::Enumerate(a) => cmd_enumerate(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Render(a) => cmd_render(&a),
    }
}

fn parse_partition(flag: &str, s: &str) -> Result<StrictPartition> {
    s.parse().map_err(|e: EngineError| usage(format!("--{flag}: {e}")))
}

impl InstanceArgs {
    pub fn resolve(&self) -> Result<Instance> {
        let (Some(a), Some(b), Some(g)) = (&self.alpha, &self.beta, &self.gamma_c) else {
            return Err(usage("an instance needs --alpha, --beta and --gamma-c"));
        };
        Instance::new(parse_partition("alpha", a)?, parse_partition("beta", b)?, parse_partition("gamma-c", g)?)
            .map_err(input_error)
    }

    fn given(&self) -> bool {
        self.alpha.is_some() || self.beta.is_some() || self.gamma_c.is_some()
    }
}

impl TableauArgs {
    /// The tableau described by the arguments. Words must be ballot.
    pub fn resolve(&self, side: BoxSide) -> Result<MarkedTableau> {
        if let Some(text) = &self.word {
            let word: Word = text.parse().map_err(|e: EngineError| usage(format!("word: {e}")))?;
            let verdict = counting_criterion(&word.without_marker());
            if !verdict.ballot() {
                let (i, j) = verdict.first_failure.unwrap_or((0, 0));
                return Err(usage(format!(
                    "word is not ballot: the counting criterion fails for families {i},{} at step {j}",
                    i + 1
                )));
            }
            let t = match &self.shape {
                Some(s) => {
                    let shape = s.parse().map_err(|e: EngineError| usage(format!("--shape: {e}")))?;
                    MarkedTableau::from_reading_word(shape, &word).map_err(input_error)?
                }
                None => MarkedTableau::from_word(&word).map_err(input_error)?,
            };
            if !t.is_semistandard() {
                return Err(usage("the filling is not semistandard on this shape"));
            }
            return Ok(t);
        }
        if self.instance.given() {
            let inst = self.instance.resolve()?;
            let all = enumerate_lr_pairs(&inst, side);
            let k = self.index.unwrap_or(0);
            return all
                .get(k)
                .cloned()
                .ok_or_else(|| usage(format!("--index {k} out of range: the instance has {} LR tableaux", all.len())));
        }
        Err(usage("give a word, or --alpha/--beta/--gamma-c with --index"))
    }
}

pub fn cmd_esh(a: &EshArgs) -> Result<Outcome> {
    let side = if a.inverse { BoxSide::Outer } else { BoxSide::Inner };
    let t = a.tableau.resolve(side)?;
    let (out, trace) =
        if a.inverse { esh::esh_switching_inverse(&t) } else { esh::esh_switching(&t) }.map_err(input_error)?;
    if a.json {
        return Ok(Outcome::ok(serde_json::to_string_pretty(&TraceJson::new(&trace, a.inverse))? + "\n"));
    }
    let mut s = String::new();
    let mut code = 0;
    let methods: &[Method] = match a.method {
        MethodArg::Oracle => &[Method::Oracle],
        MethodArg::Coplactic => &[Method::Coplactic],
        MethodArg::Switching => &[Method::Switching],
        MethodArg::Indexed => &[Method::Indexed],
        MethodArg::All => &[Method::Oracle, Method::Coplactic, Method::Switching, Method::Indexed],
    };
    if methods.contains(&Method::Switching) {
        s.push_str(&trace.table());
    }
    for &m in methods {
        let r = if a.inverse { esh::esh_inverse(&t, m) } else { esh::esh(&t, m) }.map_err(input_error)?;
        writeln!(s, "{}: {}", format!("{m:?}").to_lowercase(), r.reading_word())?;
        if r != out {
            code = EXIT_FAILURE;
        }
    }
    if methods.len() > 1 {
        s.push_str(if code == 0 { "all methods agree\n" } else { "METHODS DISAGREE\n" });
    }
    Ok(Outcome { stdout: s, code })
}

pub fn cmd_orbits(a: &OrbitsArgs) -> Result<Outcome> {
    let inst = a.instance.resolve()?;
    let report = esh::orbits(&inst).map_err(input_error)?;
    let mut s = String::new();
    writeln!(s, "{inst}")?;
    writeln!(s, "|LR| = {}, orbits = {}", report.lr_count(), report.orbit_count())?;
    for (k, (orbit, &(std, rev))) in report.orbits.iter().zip(&report.genomic_by_orbit).enumerate() {
        writeln!(s, "orbit {} (size {}, genomic steps {std} standard / {rev} reverse)", k + 1, orbit.len())?;
        for t in orbit {
            writeln!(s, "  {}", t.reading_word())?;
            if !a.words {
                for line in render_tableau(t, a.style).lines() {
                    writeln!(s, "    {line}")?;
                }
            }
        }
    }
    let mut code = 0;
    if let Some(path) = &a.report {
        let r = ktheory::verify(&inst, &Suite::ALL).map_err(input_error)?;
        std::fs::write(path, serde_json::to_vec_pretty(&ReportJson::new(&r))?)
            .with_context(|| format!("writing {}", path.display()))?;
        writeln!(s, "report written to {}", path.display())?;
        if !r.theorems_pass() {
            code = EXIT_FAILURE;
        }
    }
    Ok(Outcome { stdout: s, code })
}

pub fn cmd_enumerate(a: &EnumerateArgs) -> Result<Outcome> {
    let inst = a.instance.resolve()?;
    let mut s = String::new();
    match a.what {
        What::Lr | What::Outer => {
            let side = if a.what == What::Lr { BoxSide::Inner } else { BoxSide::Outer };
            let all = enumerate_lr_pairs(&inst, side);
            for (k, t) in all.iter().enumerate() {
                writeln!(s, "{k}: {}", t.reading_word())?;
            }
            writeln!(s, "total {}", all.len())?;
        }
        What::Genomic => {
            let all = ktheory::enumerate_genomic(&inst).map_err(input_error)?;
            for (k, g) in all.iter().enumerate() {
                writeln!(s, "{k}: {g}")?;
            }
            writeln!(s, "total {}", all.len())?;
        }
    }
    Ok(Outcome::ok(s))
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let suites = parse_suites(&a.suite).map_err(usage)?;
    if a.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let cfg = SweepConfig { max_size: a.max_size, suites, jobs: a.jobs, out: a.out.clone(), limit: a.limit };
    let mut last_percent = None;
    let summary = run_sweep(&cfg, |done, total| {
        let percent = done * 100 / total.max(1);
        if last_percent != Some(percent) {
            last_percent = Some(percent);
            eprintln!("{done}/{total} instances ({percent}%)");
        }
    })?;
    let mut s = String::new();
    if summary.resumed_from > 0 {
        writeln!(s, "resumed at instance {}", summary.resumed_from)?;
    }
    writeln!(
        s,
        "{} of {} instances, {} words: {} theorem failures, {} conjecture failures{}",
        summary.instances,
        summary.total,
        summary.words,
        summary.theorem_failures,
        summary.conjecture_failures,
        if summary.complete { "" } else { " (incomplete; rerun to resume)" }
    )?;
    writeln!(s, "summary: {}", cfg.out.join("summary.csv").display())?;
    let code = if summary.theorem_failures > 0 { EXIT_FAILURE } else { 0 };
    Ok(Outcome { stdout: s, code })
}

pub fn cmd_render(a: &RenderArgs) -> Result<Outcome> {
    let t = a.tableau.resolve(BoxSide::Inner)?;
    Ok(Outcome::ok(render_tableau(&t, a.style)))
}

/// Maps an error to its exit status.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<UsageError>().is_some() {
        EXIT_USAGE
    } else {
        EXIT_FAILURE
    }
}
