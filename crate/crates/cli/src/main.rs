use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use prismatic_core::budget::Budget;
use prismatic_core::campaign::{counterexample_check, emit_certificate, run_campaign, CampaignError, GeneratorSpec, Input, Mode};
use prismatic_core::graph6::{parse_graph6, parse_stream, to_graph6};
use prismatic_core::invariants::GraphParams;
use prismatic_core::pipeline::{certify, verify_certificate, PipelineError};
use prismatic_core::Graph;

const INPUT_ERROR: u8 = 2;
const EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "prismatic", version, about = "Certified Hamilton cycles in prisms over graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Prism certificates
    Theorem3,
    /// Hamilton cycles of G x C_t (needs --t)
    Prop9,
    /// Toughness conditions
    Prop10,
    /// Prism certificates plus unused-branch listing
    Audit,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign over a graph6 stream or a generator.
    Verify {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        t: Option<usize>,
        /// graph6 file; standard input when neither this nor --gen is given
        #[arg(long, conflicts_with = "gen")]
        input: Option<PathBuf>,
        /// e.g. "gnp n=12 p=0.5 count=1000 seed=7"
        #[arg(long)]
        gen: Option<String>,
        /// JSON-lines report; standard output by default
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Check K_{k,a} against the bound a <= 2k.
    CheckKab { k: usize, a: usize },
    /// Print alpha, kappa and toughness for every graph in a graph6 file.
    Invariants {
        #[arg(long)]
        input: PathBuf,
    },
    /// Write a certificate for one graph (graph6 or edge list).
    Cert {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    match parse_graph6(first) {
        Ok(g) => Ok(g),
        Err(g6_err) => Graph::parse_edge_list(&text)
            .with_context(|| format!("{} is neither graph6 ({g6_err}) nor an edge list", path.display())),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing standard output"),
    }
}

fn verify(mode: ModeArg, t: Option<usize>, input: Option<PathBuf>, gen: Option<String>, report: Option<PathBuf>, jobs: usize) -> Result<u8> {
    let mode = match (mode, t) {
        (ModeArg::Prop9, Some(t)) => Mode::CyclicProduct(t),
        (ModeArg::Prop9, None) => bail!("--mode prop9 needs --t"),
        (_, Some(_)) => bail!("--t only applies to --mode prop9"),
        (ModeArg::Theorem3, None) => Mode::Prism,
        (ModeArg::Prop10, None) => Mode::Toughness,
        (ModeArg::Audit, None) => Mode::Audit,
    };
    let text;
    let source = match gen {
        Some(spec) => Input::Generated(spec.parse::<GeneratorSpec>()?.generate()?),
        None => {
            text = read_input(input.as_deref())?;
            Input::Graph6(&text)
        }
    };
    let r = run_campaign(source, mode, jobs)?;
    write_out(report.as_deref(), &r.to_json_lines())?;
    let s = &r.summary;
    eprintln!(
        "{} graphs: {} verified, {} failed, {} exhausted, {} malformed, {} gaps",
        s.records,
        s.verified,
        s.failed,
        s.exhausted,
        s.malformed,
        s.gaps.len()
    );
    Ok(r.exit_code() as u8)
}

fn check_kab(k: usize, a: usize) -> Result<u8> {
    let report = match counterexample_check(k, a, &Budget::from_env()) {
        Err(e @ (CampaignError::TooLarge { .. } | CampaignError::Graph(_))) => return Err(e.into()),
        Err(CampaignError::Pipeline(PipelineError::Exhausted)) => return Ok(EXHAUSTED),
        r => r?,
    };
    println!("{}", serde_json::to_string(&report)?);
    Ok(if report.verified {
        0
    } else if report.beyond_bound && report.prism_hamiltonian.is_none() {
        EXHAUSTED
    } else {
        1
    })
}

fn invariants(input: &Path) -> Result<u8> {
    let text = read_input(Some(input))?;
    let mut code = 0;
    for (line, g) in parse_stream(&text) {
        match g {
            Ok(g) => {
                let p = GraphParams::compute(&g)?;
                let row = serde_json::json!({
                    "line": line,
                    "graph6": to_graph6(&g)?,
                    "n": p.n,
                    "alpha": p.alpha,
                    "kappa": p.kappa,
                    "toughness": p.toughness,
                });
                println!("{row}");
            }
            Err(e) => {
                eprintln!("line {line}: {e}");
                code = INPUT_ERROR;
            }
        }
    }
    Ok(code)
}

fn cert(graph: &Path, out: &Path) -> Result<u8> {
    let g = read_graph(graph)?;
    let run = match certify(&g, &Budget::from_env()) {
        Ok(run) => run,
        Err(PipelineError::Exhausted) => {
            eprintln!("search budget exhausted");
            return Ok(EXHAUSTED);
        }
        Err(e @ PipelineError::TooSmall(_)) => return Err(e.into()),
        Err(e) => {
            eprintln!("{e}");
            return Ok(1);
        }
    };
    emit_certificate(out, &run.certificate).with_context(|| format!("writing {}", out.display()))?;
    if let Some(gap) = &run.gap {
        eprintln!("gap report: {}", serde_json::to_string(gap)?);
    }
    Ok(if verify_certificate(&g, &run.certificate) && run.gap.is_none() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            mode,
            t,
            input,
            gen,
            report,
            jobs,
        } => verify(mode, t, input, gen, report, jobs),
        Command::CheckKab { k, a } => check_kab(k, a),
        Command::Invariants { input } => invariants(&input),
        Command::Cert { graph, out } => cert(&graph, &out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
