//! `choquetq`: phase-space Choquet analysis of Hermitian PSD operators.

use anyhow::{bail, Context, Result};
use choquetq_cli::matrix_io::{FiducialFile, MatrixFile};
use choquetq_cli::noise::NoiseSpec;
use choquetq_cli::{cell_tolerance, reproduce, DEFAULT_CELL_TOL};
use choquetq_core::bounds::partition_bounds;
use choquetq_core::choquet::choquet_integral;
use choquetq_core::comonotone::{scan_intervals, OperatorPath};
use choquetq_core::phase_space::{p_function, q_function, q_function_csv, HermitianPsd};
use choquetq_core::{CoherentFamily, FiducialVector, HilbertContext};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "choquetq",
    about = "Choquet integrals of Hermitian operators over discrete coherent states",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChoquetEmit {
    Operator,
    Trace,
    Ratio,
}

#[derive(Args)]
struct FamilyArgs {
    /// Fiducial vector JSON ({"d": .., "re": [..], "im": [..]}); defaults to
    /// the built-in d = 3 vector (1,2,3)/sqrt(14).
    #[arg(long, global = true)]
    fiducial: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Q-function of a Hermitian PSD operator.
    Qfunc {
        /// Operator JSON file ({"d": .., "re": [[..]], "im": [[..]]}).
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        out: OutputFormat,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Choquet integral C_Q of a Hermitian PSD operator.
    Choquet {
        #[arg(long)]
        matrix: PathBuf,
        /// Which part of the result to print.
        #[arg(long, value_enum, default_value = "operator")]
        emit: ChoquetEmit,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// P-function (least-squares weights) of a Hermitian PSD operator.
    Pfunc {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Comonotonicity-interval scan of an affine family theta1 + lambda*theta2.
    Scan {
        #[arg(long)]
        theta1: PathBuf,
        #[arg(long)]
        theta2: PathBuf,
        #[arg(long)]
        lmin: f64,
        #[arg(long)]
        lmax: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        /// Crossing refinement tolerance in lambda.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        out: OutputFormat,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Operator bound reports.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// Recompute a bundled reference scenario and verify its cells.
    Reproduce {
        #[command(subcommand)]
        which: ReproduceCommand,
    },
    /// Print the classical assessment example (alias of `reproduce students`).
    StudentsDemo,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Partition-function bounds for a Hermitian Hamiltonian.
    Partition {
        #[arg(long)]
        matrix: PathBuf,
        /// Inverse temperature (nonnegative).
        #[arg(long)]
        lambda: f64,
        #[command(flatten)]
        family: FamilyArgs,
    },
}

#[derive(Args)]
struct ReproduceArgs {
    /// Write CSV and JSON reports into this directory instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReproduceCommand {
    Students {
        #[command(flatten)]
        args: ReproduceArgs,
    },
    Table1 {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[command(flatten)]
        args: ReproduceArgs,
    },
    Table2 {
        #[command(flatten)]
        args: ReproduceArgs,
    },
    Table3 {
        #[command(flatten)]
        args: ReproduceArgs,
    },
    Table4 {
        #[command(flatten)]
        args: ReproduceArgs,
    },
}

fn load_family(args: &FamilyArgs, d: usize) -> Result<CoherentFamily> {
    let fiducial = match &args.fiducial {
        Some(path) => FiducialFile::load(path)?.fiducial()?,
        None => FiducialVector::default_for(d).with_context(|| {
            format!("no built-in fiducial for d = {d}; pass --fiducial")
        })?,
    };
    let context = HilbertContext::new(d)?;
    Ok(CoherentFamily::new(context, fiducial)?)
}

fn load_psd(path: &std::path::Path) -> Result<(HermitianPsd, usize)> {
    let file = MatrixFile::load(path)?;
    let (matrix, asymmetry) = file.hermitian_matrix();
    if asymmetry > 1e-8 {
        eprintln!(
            "note: symmetrized {} (largest asymmetry {asymmetry:.3e})",
            path.display()
        );
    }
    Ok((HermitianPsd::new(matrix)?, file.d))
}

fn emit_report<T: serde::Serialize>(
    name: &str,
    report: &T,
    csv: String,
    matched: bool,
    failures: &[String],
    out: &ReproduceArgs,
) -> Result<()> {
    match &out.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(format!("{name}.csv")), &csv)?;
            std::fs::write(
                dir.join(format!("{name}.json")),
                serde_json::to_string_pretty(report)?,
            )?;
            println!("{name}: wrote {name}.csv and {name}.json to {}", dir.display());
        }
        None => print!("{csv}"),
    }
    if matched {
        println!("{name}: all matched cells within tolerance");
        Ok(())
    } else {
        for f in failures {
            eprintln!("{name}: MISMATCH {f}");
        }
        bail!("{name}: {} cell(s) out of tolerance", failures.len());
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Qfunc { matrix, out, family } => {
            let (theta, d) = load_psd(&matrix)?;
            let fam = load_family(&family, d)?;
            let q = q_function(&fam, &theta)?;
            match out {
                OutputFormat::Csv => print!("{}", q_function_csv(&q)),
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&q)?),
            }
        }
        Command::Choquet { matrix, emit, family } => {
            let (theta, d) = load_psd(&matrix)?;
            let fam = load_family(&family, d)?;
            let result = choquet_integral(&fam, &theta)?;
            match emit {
                ChoquetEmit::Operator => {
                    println!("{}", serde_json::to_string_pretty(&result.to_json())?)
                }
                ChoquetEmit::Trace => println!("{}", result.trace()),
                ChoquetEmit::Ratio => match result.dominance_ratio() {
                    Some(r) => println!("{r}"),
                    None => bail!("dominance ratio undefined for the zero operator"),
                },
            }
        }
        Command::Pfunc { matrix, family } => {
            let (theta, d) = load_psd(&matrix)?;
            let fam = load_family(&family, d)?;
            let p = p_function(&fam, &theta)?;
            println!("{}", serde_json::to_string_pretty(&p)?);
        }
        Command::Scan {
            theta1,
            theta2,
            lmin,
            lmax,
            grid,
            tol,
            out,
            family,
        } => {
            let f1 = MatrixFile::load(&theta1)?;
            let f2 = MatrixFile::load(&theta2)?;
            if f1.d != f2.d {
                bail!("theta1 and theta2 have different dimensions");
            }
            let fam = load_family(&family, f1.d)?;
            let path = OperatorPath::affine(
                f1.hermitian_matrix().0,
                f2.hermitian_matrix().0,
                (lmin, lmax),
                grid,
            );
            let report = scan_intervals(&fam, &path, tol)?;
            match out {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                OutputFormat::Csv => {
                    println!("lambda_lo,lambda_hi,dominant");
                    for iv in &report.intervals {
                        let points: Vec<String> =
                            iv.dominant.iter().map(|p| p.to_string()).collect();
                        println!("{},{},{}", iv.lambda_lo, iv.lambda_hi, points.join(" "));
                    }
                }
            }
        }
        Command::Bounds { which } => match which {
            BoundsCommand::Partition {
                matrix,
                lambda,
                family,
            } => {
                let file = MatrixFile::load(&matrix)?;
                let fam = load_family(&family, file.d)?;
                let (h, _) = file.hermitian_matrix();
                let report = partition_bounds(&fam, &h, lambda)?;
                println!("{}", serde_json::to_string_pretty(&report)?);
            }
        },
        Command::Reproduce { which } => run_reproduce(which)?,
        Command::StudentsDemo => {
            run_reproduce(ReproduceCommand::Students {
                args: ReproduceArgs { out: None },
            })?;
        }
    }
    Ok(())
}

fn run_reproduce(which: ReproduceCommand) -> Result<()> {
    let tol = Some(cell_tolerance(DEFAULT_CELL_TOL));
    match which {
        ReproduceCommand::Students { args } => {
            let report = reproduce::students()?;
            for row in &report.rows {
                println!(
                    "candidate {}: choquet {} (= {}), average {}",
                    row.name, row.choquet, row.choquet_exact, row.average_exact
                );
            }
            println!(
                "mobius layers of candidate A: {} + {} + {}",
                report.layers[0], report.layers[1], report.layers[2]
            );
            println!("choquet order: {}", report.choquet_order);
            println!("average order: {}", report.average_order);
            let csv = report.csv();
            let matched = report.matched();
            let failures = report.failures.clone();
            emit_report("students", &report, csv, matched, &failures, &args)
        }
        ReproduceCommand::Table1 { seed, trials, args } => {
            let spec = NoiseSpec {
                seed,
                trials,
                amplitude: 1.0,
            };
            let tol1 = Some(cell_tolerance(0.002));
            let report = reproduce::table1(&spec, tol1)?;
            println!(
                "table1: {} trials, ratio in band {:.1}%, top pair kept {:.1}%",
                trials,
                100.0 * report.ratio_in_band_fraction,
                100.0 * report.top_pair_match_fraction
            );
            let csv = report.csv();
            let matched = report.matched();
            let failures = report.failures.clone();
            emit_report("table1", &report, csv, matched, &failures, &args)
        }
        ReproduceCommand::Table2 { args } => {
            let report = reproduce::table2()?;
            let csv = report.csv();
            let matched = report.matched();
            let failures = report.failures.clone();
            emit_report("table2", &report, csv, matched, &failures, &args)
        }
        ReproduceCommand::Table3 { args } => {
            let report = reproduce::table3(tol)?;
            let csv = report.csv();
            let matched = report.matched();
            let failures = report.failures.clone();
            emit_report("table3", &report, csv, matched, &failures, &args)
        }
        ReproduceCommand::Table4 { args } => {
            let report = reproduce::table4(tol)?;
            let csv = report.csv();
            let matched = report.matched();
            let failures = report.failures.clone();
            emit_report("table4", &report, csv, matched, &failures, &args)
        }
    }
}
