//! `slt`: generate instances, build shallow-light trees, verify and benchmark them.

mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use slt_core::baselines::{abp_slt, kry_slt, mst_tree, solomon_slt};
use slt_core::graph::{lightness, mst, root_stretch, RootedTree, VertexKind};
use slt_core::instances::{generate, GenParams, Kind};
use slt_core::io::{read_instance, read_tree, write_instance, write_tree};
use slt_core::oracles::{brute_force_opt_st, steiner_lower_bound_certificate};
use slt_core::pipeline::{build_slt_with, Execution, Mode};
use slt_core::Instance;

/// Relative tolerance on every floating-point comparison made by `verify`.
const VERIFY_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "slt", version, about = "Shallow-light trees for planar point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long)]
        epsilon: f64,
        /// Uniform: number of non-source points.
        #[arg(long)]
        n: Option<usize>,
        /// Comb: number of vertical lines.
        #[arg(long)]
        k: Option<usize>,
        /// Comb and sector-lb: point spacing.
        #[arg(long)]
        delta: Option<f64>,
        /// Circle: number of points.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build a tree for an instance.
    Build {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Measure a tree against its instance and check the requested bounds.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        tree: PathBuf,
        /// Compare against the disjoint-box lower bound.
        #[arg(long)]
        certificate: bool,
        /// Compare against the exhaustive optimum (at most 8 points).
        #[arg(long)]
        oracle: bool,
        /// Fail if the root-stretch exceeds this value.
        #[arg(long)]
        max_stretch: Option<f64>,
    },
    /// Sweep algorithms, epsilons and seeds on one instance family and write CSV.
    Bench {
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        algos: Vec<Algo>,
        #[arg(long, value_delimiter = ',', required = true)]
        eps_list: Vec<f64>,
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Render an instance and optionally a tree as SVG.
    Plot {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        tree: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Steiner,
    Restricted,
    Kry,
    Abp,
    Solomon,
    Mst,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Steiner => "steiner",
            Algo::Restricted => "restricted",
            Algo::Kry => "kry",
            Algo::Abp => "abp",
            Algo::Solomon => "solomon",
            Algo::Mst => "mst",
        }
    }

    fn run(self, inst: &Instance, threads: usize) -> slt_core::Result<RootedTree> {
        let exec = Execution::with_threads(threads);
        match self {
            Algo::Steiner => build_slt_with(inst, Mode::Steiner, exec).map(|r| r.0),
            Algo::Restricted => build_slt_with(inst, Mode::Restricted, exec).map(|r| r.0),
            Algo::Kry => kry_slt(inst),
            Algo::Abp => abp_slt(inst),
            Algo::Solomon => solomon_slt(inst),
            Algo::Mst => mst_tree(inst),
        }
    }
}

fn parse_kind(s: &str) -> std::result::Result<Kind, String> {
    s.parse().map_err(|e: slt_core::SltError| e.to_string())
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_tree(path: &Path) -> Result<RootedTree> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_tree(&text).with_context(|| format!("parsing {}", path.display()))
}

fn save(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn verify(inst: &Instance, tree: &RootedTree, certificate: bool, oracle: bool, max_stretch: Option<f64>) -> Result<Status> {
    let eps = inst.eps();
    let mut failures = Vec::new();
    let stretch = match root_stretch(tree, inst) {
        Ok(v) => v,
        Err(e) => {
            println!("invalid tree: {e}");
            return Ok(Status::Failed);
        }
    };
    let weight = tree.weight();
    let light = lightness(tree, inst);
    let shallow = stretch <= (1.0 + eps) * (1.0 + VERIFY_TOL);
    let has_steiner = tree.vertices().iter().any(|v| v.kind == VertexKind::Steiner);
    let mut line = format!("stretch={stretch} lightness={light}");
    if let Some(bound) = max_stretch {
        if stretch > bound * (1.0 + VERIFY_TOL) {
            failures.push(format!("stretch {stretch} exceeds {bound}"));
        }
    }
    if !has_steiner && weight < mst(inst.points()).weight * (1.0 - VERIFY_TOL) {
        failures.push("spanning tree lighter than the MST".to_string());
    }
    if certificate {
        let cert = steiner_lower_bound_certificate(inst, eps, eps.sqrt())?;
        line.push_str(&format!(" certificate={}", cert.value));
        if shallow && weight < cert.value * (1.0 - VERIFY_TOL) {
            failures.push(format!("weight {weight} below certificate {}", cert.value));
        }
    }
    if oracle {
        let (opt, _) = brute_force_opt_st(inst, eps)?;
        line.push_str(&format!(" opt={opt}"));
        if shallow && !has_steiner && weight < opt * (1.0 - VERIFY_TOL) {
            failures.push(format!("weight {weight} below optimum {opt}"));
        }
    }
    println!("{line}");
    for f in &failures {
        eprintln!("check failed: {f}");
    }
    Ok(if failures.is_empty() { Status::Ok } else { Status::Failed })
}

const CSV_HEADER: &str = "epsilon,algorithm,kind,n,seed,weight,mst_weight,lightness,max_stretch,runtime_ms";

fn bench(algos: &[Algo], eps_list: &[f64], kind: Kind, seeds: &[u64], n: Option<usize>, threads: usize) -> Result<String> {
    let mut out = format!("{CSV_HEADER}\n");
    for &eps in eps_list {
        for &seed in seeds {
            let inst = generate(kind, eps, GenParams { n, ..Default::default() }, seed)?;
            let mst_w = mst(inst.points()).weight;
            for &algo in algos {
                let start = Instant::now();
                let t = algo.run(&inst, threads).with_context(|| format!("{} on {kind} eps={eps} seed={seed}", algo.name()))?;
                let ms = start.elapsed().as_secs_f64() * 1e3;
                let w = t.weight();
                let stretch = root_stretch(&t, &inst)?;
                out.push_str(&format!(
                    "{eps},{},{kind},{},{seed},{w},{mst_w},{},{stretch},{ms:.3}\n",
                    algo.name(),
                    inst.len(),
                    w / mst_w
                ));
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Gen { kind, epsilon, n, k, delta, m, seed, output } => {
            let inst = generate(kind, epsilon, GenParams { m, k, delta, n }, seed)?;
            save(&output, &write_instance(&inst))?;
        }
        Command::Build { algo, input, output, threads } => {
            let inst = load_instance(&input)?;
            let t = algo.run(&inst, threads)?;
            save(&output, &write_tree(&t))?;
        }
        Command::Verify { input, tree, certificate, oracle, max_stretch } => {
            let inst = load_instance(&input)?;
            let t = load_tree(&tree)?;
            return verify(&inst, &t, certificate, oracle, max_stretch);
        }
        Command::Bench { algos, eps_list, kind, seeds, n, threads, output } => {
            save(&output, &bench(&algos, &eps_list, kind, &seeds, n, threads)?)?;
        }
        Command::Plot { input, tree, output } => {
            let inst = load_instance(&input)?;
            let t = tree.as_deref().map(load_tree).transpose()?;
            save(&output, &svg::render(&inst, t.as_ref()))?;
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
