mod bench;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use lazyroute::generators::{qaoa_maxklin2, random_pauli_sequence};
use lazyroute::verify::{dense_cap, verify_routed};
use lazyroute::{emit_qasm, parse_qasm, route, CouplingGraph, Method, RouteOptions};

use crate::report::Report;

#[derive(Parser)]
#[command(name = "lazyroute", version, about = "Qubit routing by lazy synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Route an OpenQASM circuit onto an architecture.
    Route(RouteArgs),
    /// Route generated or stored circuits with several methods and tabulate overheads.
    Bench(bench::BenchArgs),
    /// Write a benchmark circuit as OpenQASM.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Args)]
struct RouteArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Preset (melbourne, aspen, grid:RxC, lnn:N, all2all:N) or file:<path>.
    #[arg(long)]
    arch: String,
    #[arg(long)]
    method: Method,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    merge: bool,
    #[arg(long)]
    reorder: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Check the result against the input with a dense simulation.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// QAOA layer for MAX-k-LIN-2.
    Qaoa {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sequence of rotations about distinct random Pauli axes.
    Pauli {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

const USAGE: u8 = 2;

fn run_route(args: RouteArgs) -> anyhow::Result<ExitCode> {
    let text = fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let circuit = parse_qasm(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let graph = CouplingGraph::load(&args.arch)?;
    let opts = RouteOptions {
        depth: args.depth,
        merge: args.merge,
        reorder: args.reorder,
        initial: None,
    };
    let out = route(&circuit, &graph, args.method, &opts)?;
    fs::write(&args.out, emit_qasm(&out.circuit)?).with_context(|| format!("writing {}", args.out.display()))?;

    let verified = if args.verify {
        let n = out.circuit.n_qubits();
        if n > dense_cap() {
            eprintln!("skipping verification: {n} qubits exceed the dense cap of {}", dense_cap());
            None
        } else {
            Some(verify_routed(&circuit, &out, None, 1e-9)?)
        }
    } else {
        None
    };
    let depth = args.depth.unwrap_or(args.method.default_depth());
    let report = Report::new(args.method, graph.name(), depth, &out, verified);
    if let Some(path) = &args.report {
        fs::write(path, serde_json::to_string_pretty(&report)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!(
        "{}: {} -> {} CNOTs ({:+.1}%)",
        args.method, report.in_cnot, report.out_cnot, report.overhead_pct
    );
    if verified == Some(false) {
        eprintln!("verification failed");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn run_gen(cmd: GenCommand) -> anyhow::Result<ExitCode> {
    let (circuit, out) = match cmd {
        GenCommand::Qaoa { n, k, seed, out } => (qaoa_maxklin2(n, k, seed)?, out),
        GenCommand::Pauli { n, count, seed, out } => (random_pauli_sequence(n, count, seed)?, out),
    };
    fs::write(&out, emit_qasm(&circuit)?).with_context(|| format!("writing {}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn check_usage(cli: &Cli) -> anyhow::Result<()> {
    if let Command::Route(a) = &cli.command {
        if (a.merge || a.reorder) && a.method != Method::Clifford {
            bail!("--merge and --reorder require --method clifford");
        }
    }
    if let Command::Bench(b) = &cli.command {
        b.check()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = check_usage(&cli) {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE);
    }
    let result = match cli.command {
        Command::Route(args) => run_route(args),
        Command::Bench(args) => bench::run(args),
        Command::Gen(cmd) => run_gen(cmd),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::FAILURE
    })
}
