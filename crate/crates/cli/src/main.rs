use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nodegame::io::{read_dendrogram, write_dendrogram, write_metrics_csv, write_partition};
use nodegame::{
    benchmark_spec, combined_compare, criterion_report, metrics_vector, node_game_betweenness,
    parse_edge_list, power_vector, run_benchmark, run_divisive_with, sp_edge_betweenness,
    Algorithm, DivisiveConfig, Error, GameParams, Graph, Level, LogBase, Sources, DEFAULT_EPS,
};

#[derive(Parser)]
#[command(
    name = "nodegame",
    version,
    about = "Divisive community detection with node-game edge betweenness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Gn,
    Gice,
    Gicef,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Gn => Algorithm::Gn,
            AlgorithmArg::Gice => Algorithm::Gice,
            AlgorithmArg::Gicef => Algorithm::Gicef,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LogBaseArg {
    Natural,
    #[value(name = "2")]
    Two,
    #[value(name = "10")]
    Ten,
}

impl From<LogBaseArg> for LogBase {
    fn from(b: LogBaseArg) -> Self {
        match b {
            LogBaseArg::Natural => LogBase::Natural,
            LogBaseArg::Two => LogBase::Two,
            LogBaseArg::Ten => LogBase::Ten,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Weighting {
    /// Every pair weighs 1.
    Unit,
    /// Pair weight is the smaller endpoint power.
    Game,
}

#[derive(Subcommand)]
enum Command {
    /// Build a full dendrogram and report its criteria.
    Cluster {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "gice")]
        algorithm: AlgorithmArg,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// 0 breaks ties by the lexicographically smallest edge.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "natural")]
        sources_log_base: LogBaseArg,
        #[arg(long)]
        dendrogram: Option<PathBuf>,
        /// Per-event CSV: step,k,Q,CV,removed_u,removed_v,split.
        #[arg(long)]
        metrics: Option<PathBuf>,
        /// Write the maximum-modularity partition as "label community" lines.
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Compare two dendrograms of the same graph.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Cluster planted-partition graphs and report agreement with the plant.
    Benchmark {
        #[arg(long)]
        z_out: f64,
        #[arg(long, default_value_t = 20)]
        runs: usize,
        #[arg(long, value_enum, default_value = "gice")]
        algorithm: AlgorithmArg,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Break betweenness ties lexicographically instead of at random.
        #[arg(long)]
        deterministic_ties: bool,
        /// Summary CSV destination; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Per-run CSV destination.
        #[arg(long)]
        runs_output: Option<PathBuf>,
    },
    /// Dump edge betweenness scores of the input graph.
    Betweenness {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "game")]
        weighting: Weighting,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
    /// Dump node power of the input graph.
    Power {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Degenerate(_) => 3,
        Error::Replay(_) => 4,
        _ => 2,
    }
}

fn open(path: &Path) -> Result<File, Error> {
    File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    parse_edge_list(open(path)?)
}

fn eps_arg(eps: f64) -> Result<f64, Error> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(eps)
    } else {
        Err(Error::Argument(format!(
            "eps must be a finite nonnegative number, got {eps}"
        )))
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Cluster {
            input,
            algorithm,
            alpha,
            seed,
            sources_log_base,
            dendrogram,
            metrics,
            partition,
        } => {
            let g = read_graph(&input)?;
            let cfg = DivisiveConfig::new(algorithm.into())
                .with_params(GameParams::new(alpha, 1.0)?)
                .with_seed(seed)
                .with_log_base(sources_log_base.into());
            let d = run_divisive_with(&g, &cfg)?;
            let mv = metrics_vector(&g, &d)?;
            let r = criterion_report(&mv)?;
            if let Some(path) = dendrogram {
                write_dendrogram(create(&path)?, &g, &d)?;
            }
            if let Some(path) = metrics {
                write_metrics_csv(create(&path)?, &g, &d)?;
            }
            if let Some(path) = partition {
                write_partition(create(&path)?, &g, &d.partitions()[r.t_max - 1])?;
            }
            writeln!(out, "algorithm {}", d.algorithm())?;
            writeln!(
                out,
                "nodes {} edges {} components {}",
                g.node_count(),
                g.edge_count(),
                d.initial().len()
            )?;
            writeln!(out, "t_max {} k {}", r.t_max, mv.k_at_step[r.t_max - 1])?;
            writeln!(
                out,
                "Cr1 {:.6} CrAvg {:.6} Cr3 {:.6} SCr1 {:.6} SCr3 {:.6}",
                r.cr1, r.cr_avg, r.cr3, r.scr1, r.scr3
            )?;
        }
        Command::Compare { a, b, graph, eps } => {
            let eps = eps_arg(eps)?;
            let g = read_graph(&graph)?;
            let da = read_dendrogram(open(&a)?, &g)?;
            let db = read_dendrogram(open(&b)?, &g)?;
            let (ma, mb) = (metrics_vector(&g, &da)?, metrics_vector(&g, &db)?);
            writeln!(out, "criteria verdict")?;
            for level in Level::ALL {
                writeln!(
                    out,
                    "{} {}",
                    level.label(),
                    combined_compare(&ma, &mb, eps, level)?
                )?;
            }
        }
        Command::Benchmark {
            z_out,
            runs,
            algorithm,
            alpha,
            seed,
            deterministic_ties,
            output,
            runs_output,
        } => {
            let spec = benchmark_spec(z_out)?;
            let s = run_benchmark(
                &spec,
                runs,
                algorithm.into(),
                GameParams::new(alpha, 1.0)?,
                seed,
                !deterministic_ties,
            )?;
            let mut sink: Box<dyn Write + '_> = match output {
                Some(path) => Box::new(create(&path)?),
                None => Box::new(&mut out),
            };
            writeln!(
                sink,
                "algorithm,z_out,mu,runs,mean_nmi,mean_q,mean_planted_q"
            )?;
            writeln!(
                sink,
                "{},{},{},{},{},{},{}",
                s.algorithm, spec.z_out, spec.mu, runs, s.mean_nmi, s.mean_q, s.mean_planted_q
            )?;
            sink.flush()?;
            if let Some(path) = runs_output {
                let mut w = create(&path)?;
                writeln!(w, "run,graph_seed,tie_seed,edges,k,nmi,q,planted_q")?;
                for (i, r) in s.runs.iter().enumerate() {
                    writeln!(
                        w,
                        "{},{},{},{},{},{},{},{}",
                        i + 1,
                        r.graph_seed,
                        r.tie_seed,
                        r.edge_count,
                        r.k,
                        r.nmi,
                        r.q,
                        r.planted_q
                    )?;
                }
                w.flush()?;
            }
        }
        Command::Betweenness {
            input,
            weighting,
            alpha,
        } => {
            let g = read_graph(&input)?;
            let scores = match weighting {
                Weighting::Unit => sp_edge_betweenness(&g, Sources::All)?,
                Weighting::Game => {
                    let phi = power_vector(&g, GameParams::new(alpha, 1.0)?)?;
                    node_game_betweenness(&g, &phi, Sources::All)?
                }
            };
            for (e, w) in scores.iter() {
                writeln!(out, "{} {} {}", g.label(e.u()), g.label(e.v()), w)?;
            }
        }
        Command::Power { input, alpha } => {
            let g = read_graph(&input)?;
            let phi = power_vector(&g, GameParams::new(alpha, 1.0)?)?;
            for node in 0..g.node_count() {
                writeln!(out, "{} {}", g.label(node), phi.get(node))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
