//! `cmc4`: runs the replay stages and reports their verdicts.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cmc4_core::replay::{Replay, Stage, StageReport, Verdict};
use cmc4_core::{load_fixtures, render_latex, FixtureError};
use rayon::prelude::*;

#[derive(Parser, Debug)]
#[command(
    name = "cmc4",
    version,
    about = "Replays the elimination stages and checks each derived relation against the fixtures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run stages and check every derived relation against the fixtures.
    Verify(VerifyArgs),
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Stages to run.
    #[arg(value_enum, ignore_case = true)]
    stages: Vec<StageArg>,
    /// Directory holding the fixture files.
    #[arg(long, env = "CMC4_FIXTURES", default_value = "./fixtures")]
    fixtures: PathBuf,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Write one LaTeX file per derived equation into this directory.
    #[arg(long, value_name = "DIR")]
    latex_out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Treat best-effort stages as success.
    #[arg(long)]
    allow_best_effort: bool,
    /// Include polynomial bodies in the report.
    #[arg(long)]
    verbose: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum StageArg {
    Identities,
    Lemma33,
    Lemma34,
    #[value(name = "caseA")]
    CaseA,
    #[value(name = "caseB")]
    CaseB,
    Frame,
    Caseiii,
    All,
}

impl StageArg {
    fn stages(self) -> Vec<Stage> {
        match self {
            StageArg::Identities => vec![Stage::Identities],
            StageArg::Lemma33 => vec![Stage::Lemma33],
            StageArg::Lemma34 => vec![Stage::Lemma34],
            StageArg::CaseA => vec![Stage::CaseA],
            StageArg::CaseB => vec![Stage::CaseB],
            StageArg::Frame => vec![Stage::Frame],
            StageArg::Caseiii => vec![Stage::CaseIII],
            StageArg::All => Stage::ALL.to_vec(),
        }
    }
}

/// Errors in the invocation rather than in the mathematics.
#[derive(Debug)]
struct ConfigError(String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

fn selected(args: &[StageArg]) -> Vec<Stage> {
    let mut out = Vec::new();
    for s in args.iter().flat_map(|a| a.stages()) {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn write_latex(dir: &Path, reports: &[StageReport]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for r in reports {
        for s in r.steps.iter().filter(|s| !s.paper_eq.is_empty()) {
            let path = dir.join(format!("{}.tex", s.paper_eq));
            let body = format!(
                "% {} / {}\n\\[\n{}\n\\]\n",
                r.stage.name(),
                s.id,
                render_latex(&s.derived)
            );
            fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<bool> {
    if args.threads == Some(0) {
        return Err(config("--threads must be positive"));
    }
    let fixtures = load_fixtures(&args.fixtures).map_err(|e| match e {
        FixtureError::MissingDirectory(_) => config(format!(
            "fixtures directory not found: {}",
            args.fixtures.display()
        )),
        other => config(format!("cannot load fixtures: {other}")),
    })?;
    let stages = selected(&args.stages);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().context("building the thread pool")?;
    let replay = Replay::new(fixtures);
    let reports: Vec<StageReport> =
        pool.install(|| stages.par_iter().map(|s| replay.run(*s)).collect());

    if args.json {
        println!("{}", report::emit_json(&reports, args.verbose));
    } else if stages.is_empty() {
        println!("no stages selected");
    } else {
        print!("{}", report::emit_text(&reports, args.verbose));
    }
    if let Some(dir) = &args.latex_out {
        write_latex(dir, &reports)?;
    }
    let ok = reports.iter().all(|r| match r.verdict {
        Verdict::Certified => true,
        Verdict::BestEffort => args.allow_best_effort,
        Verdict::Failed => false,
    });
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ConfigError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
