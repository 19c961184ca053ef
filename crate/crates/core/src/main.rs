use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use planar_sssp::io::{generate, read_graph, write_graph, Family, GeneratorSpec};
use planar_sssp::pipeline::{report::STAGES, solve_with, Options};
use planar_sssp::sssp::{bellman_ford_oracle, dijkstra, OracleOutcome, PriceFunction};
use planar_sssp::{Error, PlanarGraph, INF};

#[derive(Parser)]
#[command(name = "planar-sssp", version, about = "Shortest paths in planar graphs with negative lengths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Pipeline,
    Oracle,
    Dijkstra,
}

#[derive(Subcommand)]
enum Command {
    /// Print `v distance` for every vertex.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        source: usize,
        #[arg(long, value_enum, default_value = "pipeline")]
        algo: Algo,
        /// Print the pipeline's key=value report to stderr.
        #[arg(long)]
        report: bool,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        parallel: bool,
    },
    /// Run the pipeline and the oracle; exit 0 iff they agree.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        parallel: bool,
    },
    /// Write a generated instance.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        neg_frac: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the pipeline on generated instances; CSV `n,stage,millis`.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 10000, 100000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "grid")]
        family: Family,
        #[arg(long, default_value_t = 0.2)]
        neg_frac: f64,
        #[arg(long)]
        parallel: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NegativeCycleDetected => 3,
        _ => 2,
    }
}

fn options(r: Option<usize>, parallel: bool) -> Options {
    Options {
        r,
        parallel,
        ..Options::default()
    }
}

fn oracle(g: &PlanarGraph, s: usize) -> Result<Vec<i64>, Error> {
    if s >= g.n() {
        return Err(Error::BadInput(format!("source {s} out of range (n = {})", g.n())));
    }
    match bellman_ford_oracle(g, s) {
        OracleOutcome::Distances(d) => Ok(d.dist),
        OracleOutcome::NegativeCycle(_) => Err(Error::NegativeCycleDetected),
    }
}

fn print_distances(dist: &[i64]) {
    use std::io::Write;
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    for (v, &d) in dist.iter().enumerate() {
        let _ = if d >= INF {
            writeln!(out, "{v} +inf")
        } else {
            writeln!(out, "{v} {d}")
        };
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Solve {
            input,
            source,
            algo,
            report,
            r,
            parallel,
        } => {
            let g = read_graph(&input)?;
            let dist = match algo {
                Algo::Pipeline => {
                    let (d, rep) = solve_with(&g, source, &options(r, parallel))?;
                    if report {
                        eprintln!("{rep}");
                    }
                    d.dist
                }
                Algo::Oracle => oracle(&g, source)?,
                Algo::Dijkstra => {
                    if source >= g.n() {
                        return Err(Error::BadInput(format!("source {source} out of range")));
                    }
                    dijkstra(&g, source, &PriceFunction::zero(g.n()))
                        .map_err(|_| Error::BadInput("dijkstra needs nonnegative lengths".into()))?
                        .dist
                }
            };
            print_distances(&dist);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            input,
            source,
            r,
            parallel,
        } => {
            let g = read_graph(&input)?;
            let want = oracle(&g, source);
            let got = solve_with(&g, source, &options(r, parallel)).map(|(d, _)| d.dist);
            match (got, want) {
                (Ok(a), Ok(b)) if a == b => {
                    println!("ok {} vertices", a.len());
                    Ok(ExitCode::SUCCESS)
                }
                (Ok(a), Ok(b)) => {
                    let v = (0..a.len()).find(|&v| a[v] != b[v]).unwrap_or(0);
                    println!("mismatch at vertex {v}: pipeline {} oracle {}", a[v], b[v]);
                    Ok(ExitCode::from(1))
                }
                (Err(Error::NegativeCycleDetected), Err(Error::NegativeCycleDetected)) => {
                    println!("negative cycle");
                    Ok(ExitCode::from(3))
                }
                (Err(e), Ok(_)) | (Ok(_), Err(e)) if e == Error::NegativeCycleDetected => {
                    println!("mismatch: only one side found a negative cycle");
                    Ok(ExitCode::from(1))
                }
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        }
        Command::Gen {
            family,
            n,
            neg_frac,
            seed,
            out,
        } => {
            let g = generate(&GeneratorSpec::new(family, n, neg_frac, seed))?;
            std::fs::write(&out, write_graph(&g)).map_err(|e| Error::BadInput(format!("{}: {e}", out.display())))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            sizes,
            seed,
            family,
            neg_frac,
            parallel,
        } => {
            println!("n,stage,millis");
            for n in sizes {
                let g = generate(&GeneratorSpec::new(family, n, neg_frac, seed))?;
                let start = Instant::now();
                let (_, rep) = solve_with(&g, 0, &options(None, parallel))?;
                let wall = start.elapsed().as_secs_f64() * 1e3;
                for stage in STAGES {
                    println!("{n},{stage},{:.3}", rep.millis(stage));
                }
                println!("{n},total,{wall:.3}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
