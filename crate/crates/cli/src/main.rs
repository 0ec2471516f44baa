use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use sbmatch::graph::{
    assign_random_weights, generate_rmat, make_b_vector, parse_b_file, parse_matrix_market,
    write_matrix_market, BSpec, BVector, Graph, RmatParams,
};
use sbmatch::loadbalance::{assign, baseline_assign, load_stats, LoadStats, TaskSet};
use sbmatch::matching::verify_matching;
use sbmatch::objective::ConcavePolynomial;
use sbmatch::report::{parse_matching_tsv, write_assignment_tsv, write_matching_tsv};
use sbmatch::run::{bench, bench_tsv, build_report, run_algorithm, Algorithm, RunContext};
use serde::Serialize;

mod args;

use args::{AlgorithmArg, BArg, BaselineArg, CapacityArg, Instance, KindArg, WeightArg};

#[derive(Debug, Parser)]
#[command(name = "sbmatch", version, about = "Submodular b-matching and load balancing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a b-matching and write `<out>.matching.tsv` and `<out>.report.json`
    Match {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value = "llg")]
        algorithm: AlgorithmArg,
        /// worker threads for pllg (default: all available cores)
        #[arg(long)]
        threads: Option<usize>,
        /// output prefix (default: input path without extension plus the algorithm name)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assign tasks to machines; writes `<out>.assignment.tsv` and `<out>.stats.json`
    Assign {
        /// one task load per line
        #[arg(long)]
        loads: PathBuf,
        #[arg(long)]
        machines: usize,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// tasks per machine: auto, an integer, or inf
        #[arg(long, default_value = "auto")]
        capacity: CapacityArg,
        #[arg(long, value_enum, default_value = "none")]
        baseline: BaselineArg,
        /// output prefix (default: loads path without extension)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an R-MAT graph in Matrix Market format
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        scale: u32,
        #[arg(long, default_value_t = 16)]
        edge_factor: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time algorithms and print a comparison table
    Bench {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "lazy,llg")]
        algorithms: Vec<AlgorithmArg>,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        /// thread counts for pllg, e.g. 1,2,4,8
        #[arg(long, value_delimiter = ',')]
        threads_sweep: Vec<usize>,
        /// also write `<out>.bench.tsv` and `<out>.bench.json`
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a matching file for feasibility (and optionally maximality)
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long, default_value = "1")]
        b: BArg,
        #[arg(long)]
        require_maximal: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Match { instance, algorithm, threads, out } => {
            cmd_match(&instance, algorithm.into(), threads, out)
        }
        Command::Assign { loads, machines, alpha, capacity, baseline, out } => {
            cmd_assign(&loads, machines, alpha, capacity, baseline, out)
        }
        Command::Generate { kind, scale, edge_factor, seed, out } => {
            cmd_generate(kind, scale, edge_factor, seed, &out)
        }
        Command::Bench { instance, algorithms, repeat, threads_sweep, out } => {
            cmd_bench(&instance, &algorithms, repeat, &threads_sweep, out)
        }
        Command::Verify { input, matching, b, require_maximal } => {
            cmd_verify(&input, &matching, &b, require_maximal)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_matrix_market(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_b(graph: &Graph, b: &BArg) -> Result<BVector> {
    let spec = match b {
        BArg::Uniform(k) => BSpec::Uniform(*k),
        BArg::File(path) => {
            parse_b_file(&read(path)?).with_context(|| format!("parsing {}", path.display()))?
        }
    };
    Ok(make_b_vector(graph, &spec)?)
}

fn load_instance(inst: &Instance) -> Result<(Graph, BVector, ConcavePolynomial)> {
    let mut graph = load_graph(&inst.input)?;
    if let WeightArg::Random { lo, hi, mode } = inst.weights {
        graph = assign_random_weights(&graph, lo, hi, inst.seed, mode)?;
    }
    let b = load_b(&graph, &inst.b)?;
    let obj = ConcavePolynomial::new(inst.alpha)?;
    Ok((graph, b, obj))
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn cmd_match(
    inst: &Instance,
    algorithm: Algorithm,
    threads: Option<usize>,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let (graph, b, obj) = load_instance(inst)?;
    let threads = threads.unwrap_or_else(default_threads);
    let run = run_algorithm(algorithm, &graph, &b, &obj, threads)?;
    let ctx = RunContext {
        threads,
        seed: inst.seed,
        input: inst.input.display().to_string(),
    };
    let report = build_report(algorithm, &graph, &obj, &run, &ctx)?;
    let prefix = out.unwrap_or_else(|| {
        with_suffix(&inst.input.with_extension(""), &format!(".{}", algorithm.name()))
    });
    let json = serde_json::to_string_pretty(&report)?;
    write(&with_suffix(&prefix, ".matching.tsv"), &write_matching_tsv(&graph, run.outcome.matching.edges()))?;
    write(&with_suffix(&prefix, ".report.json"), &json)?;
    println!("{json}");
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct AssignSummary {
    machines: usize,
    alpha: f64,
    submodular: PolicySummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    baseline: Option<PolicySummary>,
}

#[derive(Serialize)]
struct PolicySummary {
    policy: String,
    machine_loads: Vec<f64>,
    messages: Vec<u32>,
    stats: LoadStats,
}

fn cmd_assign(
    loads: &Path,
    machines: usize,
    alpha: f64,
    capacity: CapacityArg,
    baseline: BaselineArg,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let tasks = TaskSet::parse(&read(loads)?).with_context(|| format!("parsing {}", loads.display()))?;
    let a = assign(&tasks, machines, alpha, capacity.0)?;
    let submodular = PolicySummary {
        policy: "submodular".into(),
        machine_loads: a.machine_loads.clone(),
        messages: a.messages.clone(),
        stats: load_stats(&a)?,
    };
    let baseline = match baseline.policy() {
        None => None,
        Some(policy) => {
            let base = baseline_assign(&tasks, machines, policy)?;
            Some(PolicySummary {
                policy: baseline.name().into(),
                stats: load_stats(&base)?,
                machine_loads: base.machine_loads,
                messages: base.messages,
            })
        }
    };
    let prefix = out.unwrap_or_else(|| loads.with_extension(""));
    write(&with_suffix(&prefix, ".assignment.tsv"), &write_assignment_tsv(&tasks, &a))?;
    if let Some(base) = &baseline {
        let mut table = String::from("policy\tmax\tmin\tmean\tstd\tcv\n");
        for p in [&submodular, base] {
            let s = &p.stats;
            table += &format!("{}\t{}\t{}\t{}\t{}\t{}\n", p.policy, s.max, s.min, s.mean, s.std, s.cv);
        }
        write(&with_suffix(&prefix, ".compare.tsv"), &table)?;
        eprint!("{table}");
    }
    let summary = AssignSummary { machines, alpha, submodular, baseline };
    let json = serde_json::to_string_pretty(&summary)?;
    write(&with_suffix(&prefix, ".stats.json"), &json)?;
    println!("{json}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(kind: KindArg, scale: u32, edge_factor: u32, seed: u64, out: &Path) -> Result<ExitCode> {
    let (name, params) = match kind {
        KindArg::G500 => ("g500", RmatParams::g500(scale, edge_factor, seed)),
        KindArg::Ssca => ("ssca", RmatParams::ssca(scale, edge_factor, seed)),
    };
    let graph = generate_rmat(&params)?;
    let comments = [
        format!("rmat kind={name} scale={scale} edge_factor={edge_factor} seed={seed}"),
        format!("a={} b={} c={} d={}", params.a, params.b, params.c, params.d),
    ];
    write(out, &write_matrix_market(&graph, &comments))?;
    eprintln!("{}: {} vertices, {} edges", out.display(), graph.num_vertices(), graph.num_edges());
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(
    inst: &Instance,
    algorithms: &[AlgorithmArg],
    repeat: usize,
    threads_sweep: &[usize],
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let (graph, b, obj) = load_instance(inst)?;
    let algorithms: Vec<Algorithm> = algorithms.iter().map(|&a| a.into()).collect();
    let rows = bench(&graph, &b, &obj, &algorithms, repeat, threads_sweep)?;
    let table = bench_tsv(&rows);
    if let Some(prefix) = out {
        write(&with_suffix(&prefix, ".bench.tsv"), &table)?;
        write(&with_suffix(&prefix, ".bench.json"), &serde_json::to_string_pretty(&rows)?)?;
    }
    print!("{table}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(input: &Path, matching: &Path, b: &BArg, require_maximal: bool) -> Result<ExitCode> {
    let graph = load_graph(input)?;
    let b = load_b(&graph, b)?;
    let edges = parse_matching_tsv(&graph, &read(matching)?)
        .with_context(|| format!("parsing {}", matching.display()))?;
    let v = verify_matching(&graph, &b, &edges)?;
    for &(vertex, count) in &v.over_capacity {
        eprintln!("vertex {vertex}: {count} matched edges, bound {}", b.get(vertex));
    }
    if require_maximal {
        if let Some(e) = v.augmentable {
            let (x, y) = graph.endpoints(e);
            eprintln!("not maximal: edge {e} ({x}, {y}) can still be added");
        }
    }
    let ok = v.feasible && (!require_maximal || v.maximal);
    eprintln!(
        "{} edges: {}",
        edges.len(),
        if ok { "ok" } else { "violations found" }
    );
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
