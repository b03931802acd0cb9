use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rankone::builtin::{is_builtin, parse_builtin};
use rankone::formats::{parse_tensor, TensorInput};
use rankone::report::{report, RatioReport};
use rankone::search::{search_nonsym, search_sym, Target};
use rankone::sweep::{run_sweep, SweepKind, SweepParams};
use rankone::verify::{run_suite, Suite, SuiteResult};
use rankone::{csv_field, CliError};
use rankone_core::ranktwo::SearchConfig;
use rankone_core::IterConfig;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

/// Spectral-to-Frobenius norm ratios of symmetric and low-rank tensors.
#[derive(Debug, Parser)]
#[command(name = "rankone", version)]
struct Cli {
    /// Master seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Work budget: cases for `verify`, evaluations or samples for `search`,
    /// random starts for `report`.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Comparison slack for `verify` and `search`, iteration tolerance for `report`.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectral norm, ratio and distance to rank one of a tensor.
    Report {
        /// JSON file, or `wd:<d>`, `ranktwo:<alpha>,<beta>,<cos theta>,<d>`, `border:<a>,<b>,<d>`.
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Run verification suites; exits with status 1 if any case fails.
    Verify {
        #[arg(value_enum, required_unless_present = "all")]
        suites: Vec<Suite>,
        #[arg(long, conflicts_with = "suites")]
        all: bool,
        /// Also write the kkt-region optimum as `a,b,c,d,objective,hyperdet`.
        #[arg(long)]
        scan_csv: Option<PathBuf>,
    },
    /// Sweep a one-parameter family and tabulate exact ratios and bounds.
    Sweep {
        #[arg(value_enum)]
        kind: SweepKind,
        #[arg(long, default_value_t = 4)]
        d: usize,
        /// Last order for `limit_d`.
        #[arg(long, default_value_t = 40)]
        d_max: usize,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value_t = 1e-4)]
        t_min: f64,
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
    },
    /// Search for small ratios among rank-two tensors.
    Search {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Multistart count for `min-ratio-sym`.
        #[arg(long, default_value_t = 64)]
        starts: usize,
        /// Factor length for `counterexample-nonsym`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Write the optimization trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

fn read_input(s: &str) -> Result<TensorInput, CliError> {
    if is_builtin(s) {
        return Ok(TensorInput::Sym(parse_builtin(s)?));
    }
    let text = fs::read_to_string(s).map_err(|e| CliError::Input(format!("{s}: {e}")))?;
    parse_tensor(&text).map_err(|e| match e {
        CliError::Parse { position, message } => CliError::Parse {
            position,
            message: format!("{s}: {message}"),
        },
        other => other,
    })
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    println!("{text}");
    Ok(())
}

/// One header line and one value line from a flat JSON object.
fn object_csv<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Input(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::Input("expected an object".into()))?;
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let vals: Vec<String> = obj
        .values()
        .map(|x| match x {
            serde_json::Value::String(s) => csv_field(s),
            other => csv_field(&other.to_string()),
        })
        .collect();
    Ok(format!("{}\n{}", keys.join(","), vals.join(",")))
}

/// Returns whether the command's checks passed.
fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Report { inputs } => {
            let power = IterConfig {
                starts: cli.budget.unwrap_or(16),
                tol: cli.tol.unwrap_or(1e-12),
                seed: cli.seed,
                ..IterConfig::default()
            };
            let als = IterConfig {
                starts: cli.budget.unwrap_or(32),
                tol: cli.tol.unwrap_or(1e-14),
                ..power
            };
            let mut reports: Vec<RatioReport> = Vec::new();
            for s in inputs {
                reports.push(report(s, &read_input(s)?, &power, &als)?);
            }
            match cli.out {
                OutFormat::Json if reports.len() == 1 => print_json(&reports[0])?,
                OutFormat::Json => print_json(&reports)?,
                OutFormat::Csv => {
                    println!("{}", RatioReport::CSV_HEADER);
                    reports.iter().for_each(|r| println!("{}", r.csv_row()));
                }
            }
            Ok(true)
        }
        Command::Verify {
            suites,
            all,
            scan_csv,
        } => {
            let list: Vec<Suite> = if *all {
                Suite::ALL.to_vec()
            } else {
                suites.clone()
            };
            let mut results: Vec<SuiteResult> = Vec::new();
            for s in list {
                let start = Instant::now();
                let r = run_suite(s, cli.seed, cli.budget, cli.tol)?;
                eprintln!(
                    "{s}: {} ({} cases, {} failures) in {:.2?}",
                    if r.pass { "pass" } else { "FAIL" },
                    r.cases,
                    r.failures.len(),
                    start.elapsed()
                );
                if let (Some(path), Some(row)) = (scan_csv, &r.scan) {
                    let mut f = fs::File::create(path)?;
                    writeln!(f, "a,b,c,d,objective,hyperdet")?;
                    writeln!(
                        f,
                        "{},{},{},{},{},{}",
                        row.a, row.b, row.c, row.d, row.objective, row.hyperdet
                    )?;
                }
                results.push(r);
            }
            match cli.out {
                OutFormat::Json if results.len() == 1 => print_json(&results[0])?,
                OutFormat::Json => print_json(&results)?,
                OutFormat::Csv => {
                    println!("{}", SuiteResult::CSV_HEADER);
                    results
                        .iter()
                        .flat_map(SuiteResult::csv_rows)
                        .for_each(|r| println!("{r}"));
                }
            }
            Ok(results.iter().all(|r| r.pass))
        }
        Command::Sweep {
            kind,
            d,
            d_max,
            steps,
            t_min,
            t_max,
        } => {
            let p = SweepParams {
                d: *d,
                d_max: *d_max,
                steps: *steps,
                t_min: *t_min,
                t_max: *t_max,
            };
            let table = run_sweep(*kind, &p)?;
            match cli.out {
                OutFormat::Csv => print!("{}", table.to_csv()),
                OutFormat::Json => print_json(&table.to_json())?,
            }
            Ok(true)
        }
        Command::Search {
            target,
            d,
            starts,
            n,
            trace,
        } => match target {
            Target::MinRatioSym => {
                let cfg = SearchConfig {
                    starts: *starts,
                    budget: cli.budget.unwrap_or(10_000),
                    seed: cli.seed,
                    tol: cli.tol.unwrap_or(1e-12),
                };
                let r = search_sym(*d, &cfg)?;
                if let Some(path) = trace {
                    let mut f = fs::File::create(path)?;
                    for t in &r.trace {
                        writeln!(
                            f,
                            "{}",
                            serde_json::to_string(t).map_err(|e| CliError::Input(e.to_string()))?
                        )?;
                    }
                }
                match cli.out {
                    OutFormat::Json => print_json(&r)?,
                    OutFormat::Csv => println!("{}", object_csv(&r)?),
                }
                Ok(r.gap >= 0.0)
            }
            Target::CounterexampleNonsym => {
                let r = search_nonsym(
                    *d,
                    *n,
                    cli.budget.unwrap_or(10_000),
                    cli.seed,
                    cli.tol.unwrap_or(1e-9),
                )?;
                match cli.out {
                    OutFormat::Json => print_json(&r)?,
                    OutFormat::Csv => println!("{}", object_csv(&r)?),
                }
                Ok(*d != 3 || r.counterexamples.is_empty())
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = run(&cli);
    eprintln!("wall time {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
