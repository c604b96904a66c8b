use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use spanner_core::stats::{summarize, write_atomic};
use spanner_core::{
    build_spanner, generate, match_edges, parse_graph, verify_size, verify_stretch, write_graph, Algorithm, Error,
    GenParams, Graph, Model, ParseOptions, RunStats, SizeMode, StrongOptions,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "spanner", version, about = "Roundtrip spanners for directed weighted graphs")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs). Never changes output.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Basic,
    Strong,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Basic => Algorithm::Basic,
            AlgoArg::Strong => Algorithm::Strong,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph.
    Gen {
        /// gnp-bidirected, gnp-directed, cycle, layered or grid-torus.
        #[arg(long)]
        model: Model,
        #[arg(long)]
        n: usize,
        /// Edge probability (gnp and layered models).
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        wmin: f64,
        #[arg(long, default_value_t = 1.0)]
        wmax: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Build a (2k-1)-stretch roundtrip spanner.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        output: PathBuf,
        /// Write run statistics as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Keep long-girth edges in the strong construction.
        #[arg(long)]
        no_delete_long: bool,
        /// Scale weights so the minimum becomes 1 when it is below 1.
        #[arg(long)]
        rescale: bool,
    },
    /// Check the stretch of a spanner against its graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        spanner: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Print size, weight range, SCC count and girth range.
    Stats {
        #[arg(long)]
        graph: PathBuf,
    },
}

enum Failure {
    Core(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read_graph(path: &Path, opts: ParseOptions) -> Result<Graph, Error> {
    let file = File::open(path)?;
    parse_graph(BufReader::new(file), opts)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen {
            model,
            n,
            p,
            wmin,
            wmax,
            seed,
            output,
        } => {
            let mut params = GenParams::new(n).with_weights(wmin, wmax);
            params.p = p;
            let g = generate(model, &params, seed)?;
            write_atomic(&output, write_graph(&g, None).as_bytes())?;
            println!("generated {model}: n = {}, m = {}", g.n(), g.m());
        }
        Command::Build {
            input,
            k,
            algo,
            output,
            stats,
            no_delete_long,
            rescale,
        } => {
            let g = read_graph(&input, ParseOptions { rescale })?;
            let opts = StrongOptions {
                delete_long_edges: !no_delete_long,
            };
            let start = Instant::now();
            let result = build_spanner(&g, k, algo.into(), &opts)?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            write_atomic(&output, write_graph(&g, Some(&result.edges)).as_bytes())?;
            let mode = match result.stats.algorithm {
                Algorithm::Basic => SizeMode::Basic,
                Algorithm::Strong => SizeMode::Strong,
            };
            let bound_ratio = verify_size(g.n(), g.max_weight(), k, result.edges.len(), mode).ok().map(|r| r.1);
            println!(
                "{}: n = {}, m = {}, k = {}, spanner edges = {}",
                result.stats.algorithm.name(),
                g.n(),
                g.m(),
                k,
                result.edges.len()
            );
            if let Some(path) = stats {
                RunStats {
                    n: g.n(),
                    m: g.m(),
                    k,
                    algorithm: Some(result.stats.algorithm.name().to_string()),
                    epsilon: result.stats.epsilon,
                    p_iterations: Some(result.stats.p_iterations),
                    spanner_edges: result.edges.len(),
                    max_stretch: None,
                    bound_ratio,
                    wall_time_ms: elapsed,
                    seed: None,
                }
                .write_atomic(&path)?;
            }
        }
        Command::Verify { graph, spanner, k, stats } => {
            if k < 1 {
                return Err(Error::Parameter("k must be a positive integer".into()).into());
            }
            let g = read_graph(&graph, ParseOptions::default())?;
            let h = read_graph(&spanner, ParseOptions::default())?;
            let edges = match_edges(&g, &h)?;
            let bound = f64::from(2 * k - 1);
            let start = Instant::now();
            let report = verify_stretch(&g, &edges, bound)?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            println!(
                "pairs = {}, max stretch = {}, bound = {}, violations = {}",
                report.finite_pairs,
                report.max_stretch,
                bound,
                report.violations.len()
            );
            for v in report.violations.iter().take(10) {
                println!("  ({}, {}): graph {} spanner {}", v.u, v.v, v.d_graph, v.d_spanner);
            }
            if let Some(path) = stats {
                RunStats {
                    n: g.n(),
                    m: g.m(),
                    k,
                    algorithm: None,
                    epsilon: None,
                    p_iterations: None,
                    spanner_edges: edges.len(),
                    max_stretch: Some(report.max_stretch),
                    bound_ratio: None,
                    wall_time_ms: elapsed,
                    seed: None,
                }
                .write_atomic(&path)?;
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Stats { graph } => {
            let g = read_graph(&graph, ParseOptions::default())?;
            let s = summarize(&g);
            let show = |x: Option<f64>| x.map_or_else(|| "none".to_string(), |v| v.to_string());
            println!("n = {}", s.n);
            println!("m = {}", s.m);
            println!("max weight = {}", s.max_weight);
            println!("strongly connected components = {}", s.scc_count);
            println!("min girth = {}", show(s.min_girth));
            println!("max girth = {}", show(s.max_girth));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { EXIT_INPUT } else { EXIT_INTERNAL })
        }
    }
}
