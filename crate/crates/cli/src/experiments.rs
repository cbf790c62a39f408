//! Multi-start experiments and basin-of-attraction grids.

use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

use sparsopt_core::models::Objective;
use sparsopt_core::optimality::{certify, enumerate_bf, BfCatalog};
use sparsopt_core::solvers::{
    self, SolverConfig, SolverError, SolverResult,
};
use sparsopt_core::sparsity::{project_cs, SparseVector, SparsityBudget};

use crate::instance::{BuiltModel, InstanceError, ProblemInstance};
use crate::report::{
    termination_name, CertificateSummary, ConfigEcho, ExperimentReport, RunRecord,
    FORMAT_VERSION, TOOL_VERSION,
};
use crate::rng::CounterRng;

/// Relative distance below which a limit point is identified with a catalog
/// entry.
pub const CLASSIFY_REL_TOL: f64 = 1e-4;

/// Guard on catalog sizes for enumeration-backed experiments.
pub const MAX_SUPPORTS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Iht,
    Gss,
    Pss,
    Mp,
    Omp,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Iht => "iht",
            Algo::Gss => "gss",
            Algo::Pss => "pss",
            Algo::Mp => "mp",
            Algo::Omp => "omp",
        }
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iht" => Ok(Algo::Iht),
            "gss" => Ok(Algo::Gss),
            "pss" => Ok(Algo::Pss),
            "mp" => Ok(Algo::Mp),
            "omp" => Ok(Algo::Omp),
            other => Err(format!(
                "unknown algorithm `{other}` (expected iht, gss, pss, mp, omp)"
            )),
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug)]
pub enum ExperimentError {
    Instance(InstanceError),
    Solver(SolverError),
    /// MP/OMP are defined for least-squares problems only.
    AlgorithmKindMismatch(Algo),
    Catalog(String),
    BadGrid(String),
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::Instance(e) => write!(f, "{e}"),
            ExperimentError::Solver(e) => write!(f, "{e}"),
            ExperimentError::AlgorithmKindMismatch(a) => {
                write!(f, "algorithm `{a}` requires a least-squares problem")
            }
            ExperimentError::Catalog(msg) => write!(f, "catalog enumeration failed: {msg}"),
            ExperimentError::BadGrid(msg) => write!(f, "bad grid: {msg}"),
        }
    }
}

impl std::error::Error for ExperimentError {}

impl From<InstanceError> for ExperimentError {
    fn from(e: InstanceError) -> Self {
        ExperimentError::Instance(e)
    }
}

impl From<SolverError> for ExperimentError {
    fn from(e: SolverError) -> Self {
        ExperimentError::Solver(e)
    }
}

/// Run one algorithm on a built model from `x0` (ignored by MP/OMP, which
/// always start at zero).
pub fn run_solver(
    model: &BuiltModel,
    algo: Algo,
    budget: SparsityBudget,
    x0: &[f64],
    config: &SolverConfig,
) -> Result<SolverResult, ExperimentError> {
    let obj = model.objective();
    match algo {
        Algo::Iht => Ok(solvers::iht(obj, budget, x0, config)?),
        Algo::Gss => Ok(solvers::greedy_sparse_simplex(obj, budget, x0, config)?),
        Algo::Pss => Ok(solvers::partial_sparse_simplex(obj, budget, x0, config)?),
        Algo::Mp => {
            let ls = model
                .least_squares()
                .ok_or(ExperimentError::AlgorithmKindMismatch(algo))?;
            Ok(solvers::matching_pursuit(ls, budget, config)?)
        }
        Algo::Omp => {
            let ls = model
                .least_squares()
                .ok_or(ExperimentError::AlgorithmKindMismatch(algo))?;
            Ok(solvers::orthogonal_matching_pursuit(ls, budget, config)?)
        }
    }
}

/// Catalog of basic feasible vectors for kinds that admit one (least squares
/// and quadratic); `None` for quartic problems.
pub fn catalog_for(model: &BuiltModel, budget: SparsityBudget) -> Result<Option<BfCatalog>, ExperimentError> {
    let result = match model {
        BuiltModel::LeastSquares(m) => enumerate_bf(m, budget, MAX_SUPPORTS),
        BuiltModel::Quadratic(m) => enumerate_bf(m, budget, MAX_SUPPORTS),
        BuiltModel::Quartic(_) => return Ok(None),
    };
    result
        .map(Some)
        .map_err(|e| ExperimentError::Catalog(e.to_string()))
}

/// The L value whose stationarity is reported for a run of `algo`.
fn certificate_l(model: &dyn Objective, algo: Algo, config: &SolverConfig) -> Option<f64> {
    let (l_global, l_local) = model.lipschitz_constants();
    match algo {
        Algo::Iht => config.l.or(l_global),
        // Coordinate exchange methods are certified at the two-coordinate
        // level.
        Algo::Gss | Algo::Pss => l_local,
        Algo::Mp | Algo::Omp => None,
    }
}

fn classify_and_certify(
    model: &BuiltModel,
    catalog: Option<&BfCatalog>,
    budget: SparsityBudget,
    algo: Algo,
    config: &SolverConfig,
    result: &SolverResult,
) -> (Option<usize>, Option<CertificateSummary>) {
    let obj = model.objective();
    let l_query = certificate_l(obj, algo, config);
    let matched = catalog.and_then(|c| c.classify(result.x.entries(), CLASSIFY_REL_TOL));
    // Certify the exact catalog point when one matched; the raw limit
    // carries solver-tolerance noise that the tight certificate defaults
    // would misreport.
    let point = match (matched, catalog) {
        (Some(i), Some(c)) => c.entries[i].point.clone(),
        _ => result.x.clone(),
    };
    let cert = certify(obj, &point, budget, l_query)
        .map(|c| CertificateSummary::from(&c))
        .ok();
    (matched, cert)
}

/// Draw `n_starts` random s-sparse starting points: uniformly random size-s
/// support, standard normal values, sequentially from one seeded stream.
pub fn random_starts(seed: u64, n: usize, s: usize, n_starts: usize) -> Vec<Vec<f64>> {
    let mut rng = CounterRng::new(seed);
    (0..n_starts)
        .map(|_| {
            let support = rng.subset(n, s);
            let mut x = vec![0.0; n];
            for &i in &support {
                x[i] = rng.normal();
            }
            x
        })
        .collect()
}

/// Multi-start experiment: solve from seeded random s-sparse starts, classify
/// every limit against the BF catalog, aggregate a histogram. Runs execute in
/// parallel; records are ordered by run index.
pub fn run_multistart(
    instance: &ProblemInstance,
    algo: Algo,
    config: &SolverConfig,
    n_starts: usize,
    start_seed: u64,
) -> Result<ExperimentReport, ExperimentError> {
    let model = instance.build_model()?;
    let budget = instance.budget()?;
    let catalog = catalog_for(&model, budget)?;
    let starts = random_starts(start_seed, instance.n, instance.s, n_starts);
    let runs: Vec<RunRecord> = starts
        .par_iter()
        .enumerate()
        .map(|(run, start)| match run_solver(&model, algo, budget, start, config) {
            Ok(result) => {
                let (catalog_index, certificate) =
                    classify_and_certify(&model, catalog.as_ref(), budget, algo, config, &result);
                RunRecord {
                    run,
                    start: start.clone(),
                    limit: Some(result.x.entries().to_vec()),
                    value: Some(result.value),
                    iterations: Some(result.iterations),
                    termination: Some(termination_name(result.termination).into()),
                    catalog_index,
                    certificate,
                    error: None,
                }
            }
            Err(e) => RunRecord {
                run,
                start: start.clone(),
                limit: None,
                value: None,
                iterations: None,
                termination: None,
                catalog_index: None,
                certificate: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let bins = catalog.as_ref().map_or(0, |c| c.entries.len());
    let mut histogram = vec![0u64; bins + 1];
    for r in &runs {
        match r.catalog_index {
            Some(i) => histogram[i] += 1,
            None => histogram[bins] += 1,
        }
    }
    Ok(ExperimentReport {
        format_version: FORMAT_VERSION,
        tool_version: TOOL_VERSION.into(),
        config: ConfigEcho {
            algorithm: algo.name().into(),
            l: config.l,
            max_iter: config.max_iter,
            step_tol: config.step_tol,
            decrease_tol: config.decrease_tol,
            starts: n_starts,
            start_seed,
        },
        runs,
        histogram,
    })
}

/// One basin grid cell: starting coordinates and the matched catalog entry.
#[derive(Debug, Clone, PartialEq)]
pub struct BasinCell {
    pub x: f64,
    pub y: f64,
    pub class: Option<usize>,
}

/// Classify the basin of attraction over a rectangular grid of starting
/// points for a 2-dimensional problem. Grid points are projected onto the
/// sparse set to obtain feasible starts. Cells are emitted row-major, y
/// outer, x inner.
pub fn basin_grid(
    instance: &ProblemInstance,
    algo: Algo,
    config: &SolverConfig,
    x_range: (f64, f64),
    y_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<Vec<BasinCell>, ExperimentError> {
    if instance.n != 2 {
        return Err(ExperimentError::BadGrid(format!(
            "basin grids require n = 2, got n = {}",
            instance.n
        )));
    }
    let (rx, ry) = resolution;
    if rx == 0 || ry == 0 {
        return Err(ExperimentError::BadGrid("resolution must be positive".into()));
    }
    let model = instance.build_model()?;
    let budget = instance.budget()?;
    let catalog = catalog_for(&model, budget)?;
    let coord = |lo: f64, hi: f64, steps: usize, k: usize| {
        if steps == 1 {
            (lo + hi) / 2.0
        } else {
            lo + (hi - lo) * k as f64 / (steps - 1) as f64
        }
    };
    let cells: Vec<(f64, f64)> = (0..ry)
        .flat_map(|j| {
            (0..rx).map(move |i| {
                (
                    coord(x_range.0, x_range.1, rx, i),
                    coord(y_range.0, y_range.1, ry, j),
                )
            })
        })
        .collect();
    cells
        .par_iter()
        .map(|&(x, y)| {
            let x0 = project_cs(&[x, y], budget)
                .map(SparseVector::into_entries)
                .map_err(|e| ExperimentError::Solver(SolverError::Sparsity(e)))?;
            let result = run_solver(&model, algo, budget, &x0, config)?;
            let class = catalog
                .as_ref()
                .and_then(|c| c.classify(result.x.entries(), CLASSIFY_REL_TOL));
            Ok(BasinCell { x, y, class })
        })
        .collect()
}

/// CSV for a basin grid: `x,y,class` with empty class when unmatched.
pub fn basin_csv(cells: &[BasinCell]) -> String {
    let mut out = String::from("x,y,class\n");
    for c in cells {
        let class = c.class.map(|i| i.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{}\n", c.x, c.y, class));
    }
    out
}
