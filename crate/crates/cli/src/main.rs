use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use shiftcrit_core::chromatic::{chromatic_number, SearchBudget};
use shiftcrit_core::diagram::{render_svg, DiagramSpec};
use shiftcrit_core::verify::{
    verify_chromatic_formula, verify_core_chromatic, verify_criticality, verify_uniqueness, Status,
    TheoremReport, VerifyOptions,
};
use shiftcrit_core::{critical_core, Error, ShiftGraph, Vertex};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "shiftcrit",
    version,
    about = "Shift graphs, their critical core and chromatic certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the shift graph G_{N,2}
    Gen {
        n_points: u32,
        #[arg(long, value_enum, default_value_t = Format::Dimacs)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the intervals and members of the critical core W(n)
    Core {
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chromatic number of G_{N,2}, or of G[W(n)], minus deleted vertices
    Chi {
        #[arg(required_unless_present = "core", conflicts_with = "core")]
        n_points: Option<u32>,
        #[arg(long, value_name = "n")]
        core: Option<u32>,
        /// Vertex to delete, as x,y (repeatable)
        #[arg(long, value_name = "x,y", value_parser = parse_vertex)]
        delete: Vec<Vertex>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write coloring.json, sequence.json and refutation.json here
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
    /// Run a verification pipeline and report pass, fail or inconclusive
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Largest N for the formula pipeline
        #[arg(long, default_value_t = 17)]
        n_max: u32,
        /// Skip the refutations for vertices outside W
        #[arg(long)]
        members_only: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw W(n) on the (x, y) grid as SVG
    Diagram {
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dimacs,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    #[value(name = "1")]
    Uniqueness,
    #[value(name = "2")]
    Criticality,
    #[value(name = "3")]
    CoreChromatic,
    Formula,
}

#[derive(clap::Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 100_000_000)]
    max_nodes: u64,
    #[arg(long, env = "SHIFTCRIT_MAX_SECONDS", default_value_t = 600)]
    max_seconds: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget::new(self.max_nodes, Duration::from_secs(self.max_seconds))
    }
}

fn parse_vertex(s: &str) -> Result<Vertex, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let x = x
        .trim()
        .parse::<u32>()
        .map_err(|e| format!("bad x in {s:?}: {e}"))?;
    let y = y
        .trim()
        .parse::<u32>()
        .map_err(|e| format!("bad y in {s:?}: {e}"))?;
    Ok(Vertex::new(x, y))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn cmd_gen(n_points: u32, format: Format, out: Option<&Path>) -> anyhow::Result<u8> {
    let graph = ShiftGraph::new(n_points)?;
    let full = graph.full();
    let text = match format {
        Format::Dimacs => full.to_dimacs(),
        Format::Json => {
            let vertices: Vec<_> = full
                .vertices()
                .iter()
                .enumerate()
                .map(|(i, v)| json!({"id": i + 1, "x": v.x, "y": v.y}))
                .collect();
            let edges: Vec<_> = full
                .edges()
                .into_iter()
                .map(|(i, j)| [i + 1, j + 1])
                .collect();
            pretty(&json!({"n_points": n_points, "vertices": vertices, "edges": edges}))?
        }
    };
    emit(out, &text)?;
    Ok(0)
}

fn cmd_core(n: u32, out: Option<&Path>) -> anyhow::Result<u8> {
    let core = critical_core(n)?;
    let intervals: Vec<_> = core
        .intervals()
        .iter()
        .enumerate()
        .map(|(level, iv)| json!({"level": level, "lo": iv.lo, "hi": iv.hi}))
        .collect();
    let doc = json!({
        "n": n,
        "n_points": core.n_points(),
        "intervals": intervals,
        "members": core.members(),
    });
    emit(out, &pretty(&doc)?)?;
    Ok(0)
}

fn cmd_chi(
    n_points: Option<u32>,
    core: Option<u32>,
    delete: &[Vertex],
    budget: SearchBudget,
    cert_dir: Option<&Path>,
) -> anyhow::Result<u8> {
    let (graph, base, target) = match (n_points, core) {
        (_, Some(n)) => {
            let c = critical_core(n)?;
            (c.graph(), c.members().to_vec(), json!({"core": n}))
        }
        (Some(big_n), None) => {
            let g = ShiftGraph::new(big_n)?;
            let vs = g.vertices().collect();
            (g, vs, json!({"n_points": big_n}))
        }
        (None, None) => bail!("give N or --core n"),
    };
    for &v in delete {
        graph.check_vertex(v)?;
    }
    let view = graph.induced(base.into_iter().filter(|v| !delete.contains(v)))?;
    let report = chromatic_number(&view, budget)?;

    let mut summary = json!({
        "target": target,
        "deleted": delete,
        "vertices": view.len(),
        "edges": view.edge_count(),
        "chi": report.chi,
        "lower_bound": report.lower_bound,
        "greedy_bound": report.greedy_bound,
    });
    match cert_dir {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            let mut paths = serde_json::Map::new();
            let mut put = |name: &str, value: String| -> anyhow::Result<()> {
                let path = dir.join(name);
                fs::write(&path, value)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                paths.insert(
                    name.trim_end_matches(".json").to_string(),
                    json!(path.display().to_string()),
                );
                Ok(())
            };
            put("coloring.json", pretty(&report.coloring)?)?;
            if let Some(seq) = &report.sequence {
                put("sequence.json", pretty(seq)?)?;
            }
            if let Some(r) = &report.refutation {
                put("refutation.json", pretty(r)?)?;
            }
            summary["certificates"] = json!(paths);
        }
        None => {
            summary["coloring"] = json!(report.coloring);
            summary["sequence"] = json!(report.sequence);
            summary["refutation"] = json!(report.refutation);
        }
    }
    print!("{}", pretty(&summary)?);
    Ok(0)
}

fn cmd_verify(
    theorem: Theorem,
    n: u32,
    n_max: u32,
    opts: &VerifyOptions,
    out: Option<&Path>,
) -> anyhow::Result<u8> {
    let report: TheoremReport = match theorem {
        Theorem::Uniqueness => verify_uniqueness(n, opts)?,
        Theorem::Criticality => verify_criticality(n, opts)?,
        Theorem::CoreChromatic => verify_core_chromatic(n, opts)?,
        Theorem::Formula => verify_chromatic_formula(n_max, opts)?,
    };
    let text = pretty(&report)?;
    match out {
        Some(path) => {
            emit(Some(path), &text)?;
            println!(
                "{} n={}: {} ({} pass, {} fail, {} inconclusive, {} skipped)",
                report.theorem,
                report.n,
                status_word(report.status),
                report.count(Status::Pass),
                report.count(Status::Fail),
                report.count(Status::Inconclusive),
                report.count(Status::Skipped),
            );
        }
        None => print!("{text}"),
    }
    Ok(match report.status {
        Status::Pass => 0,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive | Status::Skipped => EXIT_INCONCLUSIVE,
    })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Inconclusive => "inconclusive",
        Status::Skipped => "skipped",
    }
}

fn cmd_diagram(n: u32, out: Option<&Path>) -> anyhow::Result<u8> {
    let svg = render_svg(&DiagramSpec::new(n)?)?;
    emit(out, &svg)?;
    Ok(0)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Gen {
            n_points,
            format,
            out,
        } => cmd_gen(n_points, format, out.as_deref()),
        Command::Core { n, out } => cmd_core(n, out.as_deref()),
        Command::Chi {
            n_points,
            core,
            delete,
            budget,
            cert_dir,
        } => cmd_chi(
            n_points,
            core,
            &delete,
            budget.budget(),
            cert_dir.as_deref(),
        ),
        Command::Verify {
            theorem,
            n,
            n_max,
            members_only,
            budget,
            out,
        } => {
            let opts = VerifyOptions {
                budget: budget.budget(),
                refute_non_members: members_only.then_some(false),
                ..VerifyOptions::default()
            };
            cmd_verify(theorem, n, n_max, &opts, out.as_deref())
        }
        Command::Diagram { n, out } => cmd_diagram(n, out.as_deref()),
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Inconclusive { .. }) => EXIT_INCONCLUSIVE,
        Some(Error::EngineDisagreement { .. } | Error::Inconsistent(_)) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
