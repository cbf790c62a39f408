use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sparsopt::experiments::{
    basin_csv, basin_grid, catalog_for, run_multistart, run_solver, Algo, CLASSIFY_REL_TOL,
};
use sparsopt::fixtures::reproduce_fixtures;
use sparsopt::instance::{generate_gaussian_ls, generate_quartic, ProblemInstance};
use sparsopt::report::{
    termination_name, CertificateSummary, ConfigEcho, ExperimentReport, RunRecord,
    FORMAT_VERSION, TOOL_VERSION,
};
use sparsopt_core::optimality::certify;
use sparsopt_core::solvers::SolverConfig;
use sparsopt_core::sparsity::SparseVector;

#[derive(Parser)]
#[command(
    name = "sparsopt",
    version,
    about = "Sparsity-constrained minimization toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeneratorKind {
    LeastSquares,
    Quartic,
}

#[derive(Args)]
struct SolverFlags {
    /// Algorithm: iht, gss (greedy exchange), pss (partial exchange), mp, omp
    #[arg(long = "algo", default_value = "iht")]
    algo: Algo,
    /// Step constant for iht (defaults to the model's Lipschitz constant)
    #[arg(long = "L")]
    l: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
}

impl SolverFlags {
    fn config(&self, record_trace: bool) -> SolverConfig {
        SolverConfig {
            l: self.l,
            max_iter: self.max_iter,
            record_trace,
            ..SolverConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random problem instance (JSON)
    Generate {
        #[arg(long, value_enum, default_value = "least-squares")]
        kind: GeneratorKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Normalize the columns of the sensing matrix (least-squares only)
        #[arg(long, default_value_t = true)]
        normalize_columns: bool,
        /// Plant a random s-sparse solution and set b accordingly
        #[arg(long, default_value_t = true)]
        planted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one algorithm on a problem file
    Solve {
        #[arg(long)]
        problem: PathBuf,
        #[command(flatten)]
        solver: SolverFlags,
        /// Starting point, comma-separated (default: all zeros)
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a candidate point against the optimality hierarchy
    Certify {
        #[arg(long)]
        problem: PathBuf,
        /// Candidate point, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// L at which stationarity is queried
        #[arg(long = "L")]
        l: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all basic feasible vectors of a problem file
    EnumerateBf {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multi-start experiment with seeded random sparse starts
    Multistart {
        #[arg(long)]
        problem: PathBuf,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long, default_value_t = 100)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Basin-of-attraction grid for a 2-dimensional problem (CSV)
    Basin {
        #[arg(long)]
        problem: PathBuf,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long, default_value_t = -2.0)]
        x_min: f64,
        #[arg(long, default_value_t = 2.0)]
        x_max: f64,
        #[arg(long, default_value_t = -2.0)]
        y_min: f64,
        #[arg(long, default_value_t = 2.0)]
        y_max: f64,
        #[arg(long, default_value_t = 50)]
        nx: usize,
        #[arg(long, default_value_t = 50)]
        ny: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the embedded reference fixtures and report pass/fail
    Fixtures {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_vector(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad number `{}`: {e}", t.trim()))
        })
        .collect()
}

fn read_problem(path: &PathBuf) -> Result<ProblemInstance, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let inst: ProblemInstance =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    inst.validate().map_err(|e| e.to_string())?;
    Ok(inst)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CertifyOutput {
    format_version: u32,
    tool_version: String,
    point: Vec<f64>,
    value: f64,
    certificate: CertificateSummary,
}

#[derive(Serialize)]
struct CatalogEntryOutput {
    index: usize,
    support: Vec<usize>,
    point: Vec<f64>,
    value: f64,
    stationarity_level: f64,
}

#[derive(Serialize)]
struct CatalogOutput {
    format_version: u32,
    tool_version: String,
    entries: Vec<CatalogEntryOutput>,
    skipped_supports: Vec<Vec<usize>>,
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Generate {
            kind,
            seed,
            m,
            n,
            s,
            normalize_columns,
            planted,
            out,
        } => {
            if s == 0 || s >= n {
                return Err(format!("sparsity level must satisfy 0 < s < n (got s={s}, n={n})"));
            }
            let inst = match kind {
                GeneratorKind::LeastSquares => {
                    generate_gaussian_ls(seed, m, n, s, normalize_columns, planted)
                }
                GeneratorKind::Quartic => generate_quartic(seed, m, n, s),
            };
            let text = serde_json::to_string_pretty(&inst).map_err(|e| e.to_string())? + "\n";
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            problem,
            solver,
            x0,
            format,
            out,
        } => {
            let inst = read_problem(&problem)?;
            let model = inst.build_model().map_err(|e| e.to_string())?;
            let budget = inst.budget().map_err(|e| e.to_string())?;
            let start = match x0 {
                Some(text) => parse_vector(&text)?,
                None => vec![0.0; inst.n],
            };
            if start.len() != inst.n {
                return Err(format!(
                    "x0 has {} entries, problem dimension is {}",
                    start.len(),
                    inst.n
                ));
            }
            let config = solver.config(false);
            let result = run_solver(&model, solver.algo, budget, &start, &config)
                .map_err(|e| e.to_string())?;
            let catalog = catalog_for(&model, budget).map_err(|e| e.to_string())?;
            let catalog_index = catalog
                .as_ref()
                .and_then(|c| c.classify(result.x.entries(), CLASSIFY_REL_TOL));
            let record = RunRecord {
                run: 0,
                start,
                limit: Some(result.x.entries().to_vec()),
                value: Some(result.value),
                iterations: Some(result.iterations),
                termination: Some(termination_name(result.termination).into()),
                catalog_index,
                certificate: None,
                error: None,
            };
            let bins = catalog.as_ref().map_or(0, |c| c.entries.len());
            let mut histogram = vec![0u64; bins + 1];
            match catalog_index {
                Some(i) => histogram[i] += 1,
                None => histogram[bins] += 1,
            }
            let report = ExperimentReport {
                format_version: FORMAT_VERSION,
                tool_version: TOOL_VERSION.into(),
                config: ConfigEcho {
                    algorithm: solver.algo.name().into(),
                    l: config.l,
                    max_iter: config.max_iter,
                    step_tol: config.step_tol,
                    decrease_tol: config.decrease_tol,
                    starts: 1,
                    start_seed: 0,
                },
                runs: vec![record],
                histogram,
            };
            let text = match format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
                }
                OutputFormat::Csv => report.to_csv(),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify {
            problem,
            point,
            l,
            out,
        } => {
            let inst = read_problem(&problem)?;
            let model = inst.build_model().map_err(|e| e.to_string())?;
            let budget = inst.budget().map_err(|e| e.to_string())?;
            let coords = parse_vector(&point)?;
            if coords.len() != inst.n {
                return Err(format!(
                    "point has {} entries, problem dimension is {}",
                    coords.len(),
                    inst.n
                ));
            }
            let value = model
                .objective()
                .eval(&coords)
                .map_err(|e| e.to_string())?;
            let x = SparseVector::from_dense_snapped(coords.clone());
            let cert = certify(model.objective(), &x, budget, l).map_err(|e| e.to_string())?;
            let output = CertifyOutput {
                format_version: FORMAT_VERSION,
                tool_version: TOOL_VERSION.into(),
                point: coords,
                value,
                certificate: CertificateSummary::from(&cert),
            };
            let text = serde_json::to_string_pretty(&output).map_err(|e| e.to_string())? + "\n";
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::EnumerateBf {
            problem,
            format,
            out,
        } => {
            let inst = read_problem(&problem)?;
            let model = inst.build_model().map_err(|e| e.to_string())?;
            let budget = inst.budget().map_err(|e| e.to_string())?;
            let catalog = catalog_for(&model, budget)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| {
                    "basic feasible enumeration is defined for least-squares and quadratic \
                     problems only"
                        .to_string()
                })?;
            let text = match format {
                OutputFormat::Json => {
                    let output = CatalogOutput {
                        format_version: FORMAT_VERSION,
                        tool_version: TOOL_VERSION.into(),
                        entries: catalog
                            .entries
                            .iter()
                            .enumerate()
                            .map(|(index, e)| CatalogEntryOutput {
                                index,
                                support: e.support.clone(),
                                point: e.point.entries().to_vec(),
                                value: e.value,
                                stationarity_level: e.stationarity_level,
                            })
                            .collect(),
                        skipped_supports: catalog.skipped_supports.clone(),
                    };
                    serde_json::to_string_pretty(&output).map_err(|e| e.to_string())? + "\n"
                }
                OutputFormat::Csv => {
                    let mut text =
                        String::from("index,support,value,stationarity_level,point\n");
                    for (index, e) in catalog.entries.iter().enumerate() {
                        let support = e
                            .support
                            .iter()
                            .map(|i| i.to_string())
                            .collect::<Vec<_>>()
                            .join(" ");
                        let point = e
                            .point
                            .entries()
                            .iter()
                            .map(|v| format!("{v:.12e}"))
                            .collect::<Vec<_>>()
                            .join(" ");
                        text.push_str(&format!(
                            "{index},{support},{:.12e},{:.12e},{point}\n",
                            e.value, e.stationarity_level
                        ));
                    }
                    text
                }
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Multistart {
            problem,
            solver,
            starts,
            seed,
            format,
            out,
        } => {
            let inst = read_problem(&problem)?;
            let config = solver.config(false);
            let report = run_multistart(&inst, solver.algo, &config, starts, seed)
                .map_err(|e| e.to_string())?;
            let text = match format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
                }
                OutputFormat::Csv => report.to_csv(),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Basin {
            problem,
            solver,
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
            out,
        } => {
            let inst = read_problem(&problem)?;
            let config = solver.config(false);
            let cells = basin_grid(
                &inst,
                solver.algo,
                &config,
                (x_min, x_max),
                (y_min, y_max),
                (nx, ny),
            )
            .map_err(|e| e.to_string())?;
            emit(&out, &basin_csv(&cells))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixtures { out } => {
            let report = reproduce_fixtures();
            let rendered = report.render();
            match &out {
                Some(path) => {
                    let text =
                        serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n";
                    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
                }
                None => {}
            }
            print!("{rendered}");
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
