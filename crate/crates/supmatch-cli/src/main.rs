use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use supmatch::error::Error;
use supmatch::oracle::DEFAULT_ENUM_BUDGET;
use supmatch_cli::grid::Range;
use supmatch_cli::{bench, compare, generate, grid, oracle_cmd, solve};

#[derive(Parser)]
#[command(
    name = "supmatch",
    about = "Two-sided student-supervisor allocation under quotas: a multi-objective genetic solver with an experiment harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOut {
    /// Output directory for reports and matching files
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Master seed; omitted means a random seed (echoed in the outputs)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a problem instance by sampling preference pools
    Generate {
        /// Number of students
        #[arg(long, short = 'n')]
        students: usize,
        /// Number of supervisors
        #[arg(long, short = 'm')]
        supervisors: usize,
        /// Percentage by which total capacity must exceed the student count
        #[arg(long, default_value_t = 20.0)]
        surplus: f64,
        /// Taxonomy file (node,parent records)
        #[arg(long)]
        taxonomy: PathBuf,
        /// Student preference pool (id,topic-1..topic-k records)
        #[arg(long)]
        student_pool: PathBuf,
        /// Supervisor preference pool
        #[arg(long)]
        supervisor_pool: PathBuf,
        /// Rank weights, comma separated (defaults to the built-in k=5 vector)
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
        /// Workload balance exponent
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Run the evolutionary solver on an instance
    Solve {
        /// Instance document (instance.cfg)
        #[arg(long)]
        instance: PathBuf,
        /// Run configuration file; defaults apply when omitted
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Sweep mutation parameters over instances and seeds
    Grid {
        /// Instance documents (repeatable)
        #[arg(long, required = true)]
        instance: Vec<PathBuf>,
        /// Base run configuration
        #[arg(long)]
        config: Option<PathBuf>,
        /// p_mt sweep as start:end:step
        #[arg(long, default_value = "0.05:0.5:0.05")]
        p_mt: String,
        /// p_sw sweep as start:end:step
        #[arg(long, default_value = "0.1:0.9:0.1")]
        p_sw: String,
        /// Per-run seeds, comma separated; defaults to the master seed
        #[arg(long, value_delimiter = ',')]
        seeds: Option<Vec<u64>>,
        /// Worker threads for independent cells
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Benchmark the crossover operators (timing and new-gene ratio)
    Bench {
        /// Sizes as start:end:step students
        #[arg(long, default_value = "50:500:50")]
        sizes: String,
        /// Parent pairs per cell
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Worker threads for ratio cells (timing is always sequential)
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Compare a solver run against the exhaustive oracle
    Compare {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Ceiling on the raw assignment space m^n
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        enum_budget: f64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Enumerate the exact Pareto frontier of a small instance
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        enum_budget: f64,
        #[command(flatten)]
        out: CommonOut,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::EnumerationBudget { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Generate {
            students,
            supervisors,
            surplus,
            taxonomy,
            student_pool,
            supervisor_pool,
            weights,
            alpha,
            out,
        } => {
            let seed = out.seed.unwrap_or_else(rand::random);
            let outcome = generate::run_generate(
                students,
                supervisors,
                surplus,
                seed,
                &taxonomy,
                &student_pool,
                &supervisor_pool,
                weights,
                alpha,
                &out.out_dir,
            )?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            println!(
                "generated {} (seed {seed}, total capacity {})",
                outcome.instance_path.display(),
                outcome.capacity_total
            );
        }
        Command::Solve {
            instance,
            config,
            out,
        } => {
            let outcome = solve::run_solve(&instance, config.as_deref(), out.seed, &out.out_dir)?;
            println!(
                "solved in {} iterations (seed {}): s-metric {:.6}, {} frontier points",
                outcome.iterations, outcome.seed, outcome.s_metric, outcome.frontier_size
            );
            println!("frontier: {}", outcome.frontier_path.display());
            println!("trace:    {}", outcome.run_report_path.display());
        }
        Command::Grid {
            instance,
            config,
            p_mt,
            p_sw,
            seeds,
            threads,
            out,
        } => {
            let p_mt = Range::parse(&p_mt).map_err(Error::InvalidConfig)?;
            let p_sw = Range::parse(&p_sw).map_err(Error::InvalidConfig)?;
            let seeds = seeds.unwrap_or_else(|| vec![out.seed.unwrap_or_else(rand::random)]);
            let outcome = grid::run_grid(
                &instance,
                config.as_deref(),
                p_mt,
                p_sw,
                &seeds,
                threads,
                &out.out_dir,
            )?;
            println!(
                "grid of {} cells x {} runs each: {}",
                outcome.cells.len(),
                outcome.runs_per_cell,
                outcome.report_path.display()
            );
        }
        Command::Bench {
            sizes,
            trials,
            threads,
            out,
        } => {
            let range = Range::parse(&sizes).map_err(Error::InvalidConfig)?;
            let sizes: Vec<usize> = range.values().iter().map(|&v| v as usize).collect();
            let seed = out.seed.unwrap_or_else(rand::random);
            let outcome = bench::run_bench(&sizes, trials, seed, threads, &out.out_dir)?;
            println!(
                "timing (seed {seed}): hopcroft-karp fits {}, gsp fits {}",
                outcome.timing.hk_class.as_str(),
                outcome.timing.gsp_class.as_str()
            );
            println!("reports: {}", outcome.timing_path.display());
            println!("         {}", outcome.ratio_path.display());
        }
        Command::Compare {
            instance,
            config,
            enum_budget,
            out,
        } => {
            let outcome = compare::run_compare(
                &instance,
                config.as_deref(),
                out.seed,
                enum_budget,
                &out.out_dir,
            )?;
            println!(
                "optimality: students {:.2}%, supervisors {:.2}%",
                100.0 * outcome.optimality_students(),
                100.0 * outcome.optimality_supervisors()
            );
            println!(
                "s-metric: ga {:.6} vs exact {:.6}",
                outcome.ga_s_metric, outcome.exact_s_metric
            );
            println!("report: {}", outcome.report_path.display());
        }
        Command::Oracle {
            instance,
            enum_budget,
            out,
        } => {
            let outcome = oracle_cmd::run_oracle(&instance, enum_budget, &out.out_dir, &mut |space,
                     budget| {
                eprintln!("enumeration space: {space:.0} assignment vectors (budget {budget:.0})");
            })?;
            println!(
                "exact frontier: {} points, s-metric {:.6}",
                outcome.frontier_size, outcome.s_metric
            );
            println!("report: {}", outcome.frontier_path.display());
        }
    }
    Ok(())
}
