mod pace;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dfvs_core::oracle::{brute_force_dfvs, OracleLimit};
use dfvs_core::reductions::{reduce, ReductionTrace};
use dfvs_core::{solve_dfvs, validate, DiGraph, Mode, RuleSet, SolveConfig, Validation};
use serde_json::json;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dfvs", version, about = "Exact minimum directed feedback vertex set")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Propagate,
    Cegar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatsFormat {
    None,
    Json,
}

#[derive(clap::Args)]
struct RuleArgs {
    /// Disable every reduction rule.
    #[arg(long, conflicts_with = "rules")]
    no_reductions: bool,
    /// Comma-separated rules, or `all` / `default` / `none`.
    #[arg(long)]
    rules: Option<String>,
}

impl RuleArgs {
    fn rule_set(&self) -> Result<RuleSet> {
        if self.no_reductions {
            return Ok(RuleSet::empty());
        }
        match &self.rules {
            Some(list) => Ok(RuleSet::parse(list)?),
            None => Ok(RuleSet::default()),
        }
    }
}

#[derive(clap::Args)]
struct StatsArgs {
    #[arg(long, value_enum, default_value = "none")]
    stats: StatsFormat,
    /// Write statistics here instead of stderr.
    #[arg(long, requires = "stats")]
    stats_file: Option<PathBuf>,
}

impl StatsArgs {
    fn emit(&self, value: serde_json::Value) -> Result<()> {
        if self.stats == StatsFormat::None {
            return Ok(());
        }
        let line = serde_json::to_string(&value)?;
        match &self.stats_file {
            Some(p) => {
                let mut f = File::options().create(true).append(true).open(p)?;
                writeln!(f, "{line}")?;
            }
            None => eprintln!("{line}"),
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a minimum DFVS, one vertex per line.
    Solve {
        /// Graph file, `-` for stdin.
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "propagate")]
        mode: ModeArg,
        #[command(flatten)]
        rules: RuleArgs,
        #[arg(long, default_value_t = 4)]
        max_cycle_len: usize,
        #[arg(long, default_value_t = 25_000)]
        max_cycles: usize,
        /// Search steps allowed for cycle enumeration.
        #[arg(long, default_value_t = 10_000_000)]
        node_budget: u64,
        /// Start without cycle clauses (propagate mode only).
        #[arg(long)]
        lazy: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        stats: StatsArgs,
    },
    /// Reduce an instance and print the kernel in the input format.
    Reduce {
        graph: PathBuf,
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        stats: StatsArgs,
    },
    /// Check that a solution file is a DFVS of the graph.
    Verify { graph: PathBuf, solution: PathBuf },
    /// Brute-force optimum for tiny graphs.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = OracleLimit::default().max_n)]
        max_n: usize,
    },
}

fn open(path: &Path) -> Result<Box<dyn io::BufRead>> {
    if path == Path::new("-") {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(Box::new(BufReader::new(f)))
}

fn load(path: &Path) -> Result<DiGraph> {
    pace::read_graph(open(path)?).with_context(|| format!("reading {}", path.display()))
}

fn reduction_json(trace: &ReductionTrace, g: &DiGraph, kernel: &DiGraph) -> serde_json::Value {
    json!({
        "input_vertices": g.num_vertices(),
        "input_arcs": g.arc_count(),
        "kernel_vertices": kernel.num_vertices(),
        "kernel_arcs": kernel.arc_count(),
        "forced": trace.forced.len(),
        "fold_offset": trace.offset,
        "rules": trace.stats.rules,
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Solve {
            graph,
            mode,
            rules,
            max_cycle_len,
            max_cycles,
            node_budget,
            lazy,
            seed,
            stats,
        } => {
            let mode = match mode {
                ModeArg::Propagate => Mode::Propagate,
                ModeArg::Cegar => Mode::Cegar,
            };
            if lazy && mode == Mode::Cegar {
                bail!("--lazy needs --mode propagate");
            }
            if max_cycle_len < 2 || max_cycles == 0 {
                bail!("--max-cycle-len must be at least 2 and --max-cycles positive");
            }
            let g = load(&graph)?;
            let config = SolveConfig {
                max_cycle_len,
                max_cycles,
                mode,
                rules: rules.rule_set()?,
                node_budget,
                seed,
                seed_clauses: !lazy,
            };
            let report = solve_dfvs(&g, &config)?;
            pace::write_solution(&mut out, &report.solution)?;
            out.flush()?;
            let mut value = serde_json::to_value(&report)?;
            value["command"] = json!("solve");
            value["input"] = json!(graph.display().to_string());
            stats.emit(value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { graph, rules, stats } => {
            let g = load(&graph)?;
            let (kernel, trace) = reduce(&g, rules.rule_set()?);
            pace::write_graph(&mut out, &kernel)?;
            out.flush()?;
            let mut value = reduction_json(&trace, &g, &kernel);
            value["command"] = json!("reduce");
            value["input"] = json!(graph.display().to_string());
            stats.emit(value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { graph, solution } => {
            let g = load(&graph)?;
            let set = pace::read_solution(open(&solution)?, g.capacity())
                .with_context(|| format!("reading {}", solution.display()))?;
            match validate(&g, &set) {
                Validation::Valid => {
                    writeln!(out, "valid DFVS of size {}", set.len())?;
                    Ok(ExitCode::SUCCESS)
                }
                Validation::UnknownVertex(v) => {
                    eprintln!("unknown vertex {}", v + 1);
                    Ok(ExitCode::FAILURE)
                }
                Validation::Cycle(c) => {
                    let c: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
                    eprintln!("not a DFVS: cycle {} survives", c.join(" -> "));
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Oracle { graph, max_n } => {
            let g = load(&graph)?;
            let limit = OracleLimit {
                max_n,
                ..OracleLimit::default()
            };
            let (_, set) = brute_force_dfvs(&g, &limit)?;
            pace::write_solution(&mut out, &set)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
