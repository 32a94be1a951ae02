use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use lazyroute::generators::{qaoa_maxklin2, random_pauli_sequence};
use lazyroute::{parse_qasm, route, Circuit, CouplingGraph, Method, RouteOptions};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, ValueEnum)]
pub enum Generator {
    Qaoa,
    Pauli,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Generate instances instead of reading `--dir`.
    #[arg(long, conflicts_with = "dir")]
    gen: Option<Generator>,
    /// Directory of `.qasm` files, one instance each.
    #[arg(long)]
    dir: Option<PathBuf>,
    #[arg(long, default_value_t = 14)]
    n: usize,
    /// Parity weight for `qaoa`.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Rotation count for `pauli`.
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Number of generated instances, seeded 0, 1, …
    #[arg(long, default_value_t = 30)]
    seeds: u64,
    #[arg(long)]
    arch: String,
    #[arg(long, value_delimiter = ',', default_value = "swap,linear,clifford")]
    methods: Vec<Method>,
    /// Overrides every method's default depth.
    #[arg(long)]
    depth: Option<usize>,
    /// Enable rotation merging on clifford runs.
    #[arg(long)]
    merge: bool,
    /// Enable commuting-group reordering on clifford runs.
    #[arg(long)]
    reorder: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl BenchArgs {
    pub fn check(&self) -> anyhow::Result<()> {
        if self.gen.is_none() && self.dir.is_none() {
            bail!("one of --gen or --dir is required");
        }
        if self.methods.is_empty() {
            bail!("--methods is empty");
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Row {
    instance: String,
    method: String,
    arch: String,
    depth: usize,
    in_cnot: usize,
    out_cnot: usize,
    overhead_pct: f64,
    wall_ms: f64,
}

#[derive(Serialize)]
struct Mean {
    method: String,
    instances: usize,
    overhead_pct: f64,
    wall_ms: f64,
}

fn instances(args: &BenchArgs) -> anyhow::Result<Vec<(String, Circuit)>> {
    if let Some(dir) = &args.dir {
        let mut paths: Vec<PathBuf> = fs::read_dir(dir)
            .with_context(|| format!("reading {}", dir.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "qasm"))
            .collect();
        paths.sort();
        if paths.is_empty() {
            bail!("no .qasm files in {}", dir.display());
        }
        return paths
            .into_iter()
            .map(|p| {
                let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                let c = parse_qasm(&text).with_context(|| format!("parsing {}", p.display()))?;
                let name = p.file_name().unwrap_or_default().to_string_lossy().into_owned();
                Ok((name, c))
            })
            .collect();
    }
    (0..args.seeds)
        .map(|seed| {
            let c = match args.gen.expect("checked") {
                Generator::Qaoa => qaoa_maxklin2(args.n, args.k, seed)?,
                Generator::Pauli => random_pauli_sequence(args.n, args.count, seed)?,
            };
            Ok((format!("seed{seed}"), c))
        })
        .collect()
}

pub fn run(args: BenchArgs) -> anyhow::Result<ExitCode> {
    let graph = CouplingGraph::load(&args.arch)?;
    let inputs = instances(&args)?;
    let jobs: Vec<(&str, &Circuit, Method)> = inputs
        .iter()
        .flat_map(|(name, c)| args.methods.iter().map(move |&m| (name.as_str(), c, m)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(name, c, method)| {
            let clifford = method == Method::Clifford;
            let opts = RouteOptions {
                depth: args.depth,
                merge: clifford && args.merge,
                reorder: clifford && args.reorder,
                initial: None,
            };
            let out = route(c, &graph, method, &opts).with_context(|| format!("{name} with {method}"))?;
            Ok(Row {
                instance: name.to_string(),
                method: method.to_string(),
                arch: graph.name().to_string(),
                depth: args.depth.unwrap_or(method.default_depth()),
                in_cnot: out.metrics.in_cnot,
                out_cnot: out.metrics.out_cnot,
                overhead_pct: out.metrics.overhead_pct(),
                wall_ms: out.metrics.wall.as_secs_f64() * 1e3,
            })
        })
        .collect::<anyhow::Result<Vec<Row>>>()?;

    let means: Vec<Mean> = args
        .methods
        .iter()
        .map(|m| {
            let mine: Vec<&Row> = rows.iter().filter(|r| r.method == m.as_str()).collect();
            let k = mine.len().max(1) as f64;
            Mean {
                method: m.to_string(),
                instances: mine.len(),
                overhead_pct: mine.iter().map(|r| r.overhead_pct).sum::<f64>() / k,
                wall_ms: mine.iter().map(|r| r.wall_ms).sum::<f64>() / k,
            }
        })
        .collect();
    for m in &means {
        eprintln!(
            "{:<9} mean overhead {:>7.1}%  mean wall {:>8.1} ms  ({} instances)",
            m.method, m.overhead_pct, m.wall_ms, m.instances
        );
    }

    let mut sink: Box<dyn Write> = match &args.out {
        Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    };
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, &serde_json::json!({ "rows": rows, "means": means }))?;
            writeln!(sink)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
