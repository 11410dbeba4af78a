//! Command-line front end: single solver runs and table-reproduction
//! campaigns with machine-readable reports.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use boxmin::{solve, SolverConfig, StopReason};
use boxmin_cli::report::{rounding_from_str, sampling_from_str, RunReport};
use boxmin_cli::tables::{run_row, suite_rows, Suite};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "boxmin",
    about = "Rigorous enclosure of global minima over box constraints",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one benchmark instance and write a report.
    Run(RunArgs),
    /// Run a whole benchmark suite and compare against expected counts.
    ReproduceTables(TablesArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Objective name (ackley, belegundu, breiman, fu, griewank, levy,
    /// rastrigin, salomon, styblinski, zabinsky)
    #[arg(long)]
    function: String,

    /// Dimension of the problem
    #[arg(long)]
    n: usize,

    /// Dimensions partitioned per iteration
    #[arg(long, default_value_t = 10)]
    dims_per_iter: usize,

    /// Subintervals per partitioned dimension
    #[arg(long, default_value_t = 4)]
    subintervals: usize,

    /// Diagonal sample points per iteration
    #[arg(long, default_value_t = 10)]
    samples: usize,

    /// Region width stopping tolerance
    #[arg(long, default_value_t = 1e-4)]
    tolerance: f64,

    /// Iteration budget
    #[arg(long, default_value_t = 10_000_000)]
    max_iterations: u64,

    /// Wall-clock budget in seconds
    #[arg(long)]
    time_limit: Option<f64>,

    /// Worker threads (0 = all available cores)
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// First-order pruning test: on|off
    #[arg(long, default_value = "on", value_parser = ["on", "off"])]
    derivative_test: String,

    /// Diagonal sampling scope: selected|per-subregion
    #[arg(long, default_value = "selected", value_parser = ["selected", "per-subregion"])]
    sampling: String,

    /// Outward rounding policy: optimal|slack-ulps(M)
    #[arg(long, default_value = "optimal")]
    rounding: String,

    /// Track that no pruned subregion ever contained the known minimizer
    #[arg(long, default_value_t = false)]
    debug_soundness: bool,

    /// Report file (stdout when omitted)
    #[arg(long)]
    output: Option<std::path::PathBuf>,

    /// Report format: json|csv
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
}

#[derive(Args)]
struct TablesArgs {
    /// n50 (published counts, slow) or fast (n = 10, p = 5)
    #[arg(long, default_value = "n50", value_parser = ["n50", "fast"])]
    suite: String,

    /// Worker threads (0 = all available cores)
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// Track minimizer soundness during every run
    #[arg(long, default_value_t = false)]
    debug_soundness: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match cli.command {
        Command::Run(args) => match run(args) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Command::ReproduceTables(args) => match reproduce_tables(args) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
    }
}

fn run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let mut cfg = SolverConfig::new(args.function.clone(), args.n);
    cfg.dims_per_iteration = args.dims_per_iter;
    cfg.subintervals = args.subintervals;
    cfg.samples_per_iteration = args.samples;
    cfg.width_tolerance = args.tolerance;
    cfg.max_iterations = args.max_iterations;
    cfg.time_limit = args.time_limit;
    cfg.threads = args.threads;
    cfg.derivative_test = args.derivative_test == "on";
    cfg.sampling =
        sampling_from_str(&args.sampling).ok_or_else(|| anyhow!("invalid --sampling value"))?;
    cfg.rounding =
        rounding_from_str(&args.rounding).ok_or_else(|| anyhow!("invalid --rounding value"))?;
    cfg.debug_soundness = args.debug_soundness;

    let result = solve(cfg).map_err(|e| anyhow!("{e}"))?;
    let report = RunReport::from_result(&result);
    let body = match args.format.as_str() {
        "csv" => report.to_csv(),
        _ => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    };
    match &args.output {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => {
            std::io::stdout().write_all(body.as_bytes())?;
        }
    }

    Ok(match result.stop_reason {
        StopReason::WidthTolerance => ExitCode::SUCCESS,
        StopReason::MaxIterations | StopReason::TimeLimit | StopReason::ListExhausted => {
            ExitCode::from(2)
        }
    })
}

fn reproduce_tables(args: TablesArgs) -> anyhow::Result<ExitCode> {
    let suite = Suite::parse(&args.suite).ok_or_else(|| anyhow!("invalid --suite value"))?;
    let rows = suite_rows(suite);
    println!(
        "{:<11} {:>3} {:>4}  {:>9} {:>9}  {:>8} {:>8}  {:>9} {:>8}  status",
        "function",
        "n",
        "p",
        "iter(exp)",
        "iter(got)",
        "reg(exp)",
        "reg(got)",
        "gub-glb",
        "time(s)"
    );
    let mut all_pass = true;
    for row in &rows {
        let outcome =
            run_row(row, args.threads, args.debug_soundness).map_err(|e| anyhow!("{e}"))?;
        let gap = outcome.result.gub - outcome.result.glb;
        println!(
            "{:<11} {:>3} {:>4}  {:>9} {:>9}  {:>8} {:>8}  {:>9.2e} {:>8.1}  {}",
            row.function,
            row.n,
            row.p,
            row.expected_iterations,
            outcome.result.iterations,
            row.expected_regions,
            outcome.result.regions.len(),
            gap,
            outcome.result.wall_time.as_secs_f64(),
            if outcome.pass { "PASS" } else { "FAIL" }
        );
        all_pass &= outcome.pass;
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
