//! Iterative methods for the sparsity-constrained problem: hard-thresholded
//! gradient descent, two coordinate-exchange schemes, and the two classical
//! pursuit baselines for least squares.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::models::{LeastSquaresModel, ModelError, Objective};
use crate::numerics::{self, NumericsError};
use crate::optimality::combinations;
use crate::sparsity::{project_cs, SparseVector, SparsityBudget, SparsityError};

#[derive(Debug, Clone, PartialEq)]
pub enum SolverError {
    /// The algorithm needs a gradient Lipschitz constant and neither the
    /// configuration nor the model provides one.
    MissingLipschitz,
    NonPositiveStep { l: f64 },
    DimensionMismatch { expected: usize, found: usize },
    /// The exhaustive surrogate check is restricted to small dimensions.
    ProblemTooLarge { n: usize, limit: usize },
    Model(ModelError),
    Sparsity(SparsityError),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::MissingLipschitz => {
                write!(f, "no Lipschitz constant available; pass one explicitly")
            }
            SolverError::NonPositiveStep { l } => write!(f, "step constant must be positive, got {l}"),
            SolverError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            SolverError::ProblemTooLarge { n, limit } => {
                write!(f, "exhaustive check limited to n <= {limit}, got n = {n}")
            }
            SolverError::Model(e) => write!(f, "{e}"),
            SolverError::Sparsity(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SolverError {}

impl From<ModelError> for SolverError {
    fn from(e: ModelError) -> Self {
        SolverError::Model(e)
    }
}

impl From<SparsityError> for SolverError {
    fn from(e: SparsityError) -> Self {
        SolverError::Sparsity(e)
    }
}

impl From<NumericsError> for SolverError {
    fn from(e: NumericsError) -> Self {
        SolverError::Model(ModelError::Numerics(e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Hard-thresholded gradient steps.
    Iht,
    /// Best single-coordinate or swap move per iteration.
    GreedySparseSimplex,
    /// Cheap two-option variant of the coordinate-exchange scheme.
    PartialSparseSimplex,
    MatchingPursuit,
    OrthogonalMatchingPursuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Iterate stopped moving (infinity norm below the step tolerance).
    StepTol,
    /// No candidate move improves the objective beyond the decrease
    /// tolerance.
    NoImprovingMove,
    /// Pursuit stopped: residual correlations vanished.
    StationaryStop,
    /// Pursuit stopped: the support reached the sparsity budget and the
    /// best coordinate lies outside it.
    SupportFull,
    MaxIter,
}

/// One applied move, for traces and debugging.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Move {
    /// Full-vector thresholded gradient step.
    Threshold,
    /// `x ← x + t e_i` with `t` chosen by the exact 1-D oracle.
    Coordinate { i: usize, t: f64 },
    /// `x ← x − x_i e_i + t e_j`.
    Swap { i: usize, j: usize, t: f64 },
    /// Pursuit update of coordinate `i` by `t` (MP) or a refit after
    /// inserting `i` (OMP).
    Pursuit { i: usize, t: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub iterate: Vec<f64>,
    pub value: f64,
    pub applied: Option<Move>,
}

/// Optional per-iteration record; step 0 is the starting point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolverTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Step constant for the thresholded gradient method; falls back to the
    /// model's global Lipschitz constant.
    pub l: Option<f64>,
    pub max_iter: usize,
    /// Infinity-norm iterate movement below which the run stops.
    pub step_tol: f64,
    /// Relative objective decrease below which a move does not count as
    /// improving.
    pub decrease_tol: f64,
    pub record_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            l: None,
            max_iter: 10_000,
            step_tol: 1e-10,
            decrease_tol: 1e-12,
            record_trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub x: SparseVector,
    pub value: f64,
    pub iterations: usize,
    pub termination: Termination,
    pub trace: Option<SolverTrace>,
}

fn check_start(x0: &[f64], budget: SparsityBudget) -> Result<(), SolverError> {
    if x0.len() != budget.n() {
        return Err(SolverError::DimensionMismatch {
            expected: budget.n(),
            found: x0.len(),
        });
    }
    let nnz = x0.iter().filter(|&&v| v != 0.0).count();
    if nnz > budget.s() {
        return Err(SolverError::Sparsity(SparsityError::Infeasible {
            nnz,
            s: budget.s(),
        }));
    }
    Ok(())
}

struct TraceRecorder {
    trace: Option<SolverTrace>,
}

impl TraceRecorder {
    fn new(active: bool) -> Self {
        TraceRecorder {
            trace: active.then(SolverTrace::default),
        }
    }

    fn push(&mut self, x: &[f64], value: f64, applied: Option<Move>) {
        if let Some(t) = self.trace.as_mut() {
            t.steps.push(TraceStep {
                iterate: x.to_vec(),
                value,
                applied,
            });
        }
    }
}

/// Thresholded gradient method: `x ← P_Cs(x − ∇f(x)/L)`.
///
/// Monotone when `L` exceeds the gradient Lipschitz constant; with a
/// strictly larger `L` the per-step decrease is at least
/// `(L − L(f))/2 · ‖x⁺ − x‖²`.
pub fn iht<M: Objective + ?Sized>(
    model: &M,
    budget: SparsityBudget,
    x0: &[f64],
    config: &SolverConfig,
) -> Result<SolverResult, SolverError> {
    check_start(x0, budget)?;
    let l = match config.l.or(model.lipschitz_constants().0) {
        Some(l) => l,
        None => return Err(SolverError::MissingLipschitz),
    };
    if l <= 0.0 {
        return Err(SolverError::NonPositiveStep { l });
    }
    let mut x = x0.to_vec();
    let mut fx = model.eval(&x)?;
    let mut rec = TraceRecorder::new(config.record_trace);
    rec.push(&x, fx, None);
    for k in 1..=config.max_iter {
        let g = model.grad(&x)?;
        let u: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - gi / l).collect();
        let next = project_cs(&u, budget)?;
        let moved = x
            .iter()
            .zip(next.entries())
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0f64, f64::max);
        x = next.into_entries();
        fx = model.eval(&x)?;
        rec.push(&x, fx, Some(Move::Threshold));
        if moved <= config.step_tol {
            return Ok(SolverResult {
                x: SparseVector::from_dense(x),
                value: fx,
                iterations: k,
                termination: Termination::StepTol,
                trace: rec.trace,
            });
        }
    }
    Ok(SolverResult {
        x: SparseVector::from_dense(x),
        value: fx,
        iterations: config.max_iter,
        termination: Termination::MaxIter,
        trace: rec.trace,
    })
}

/// Best 1-D move over all coordinates: `(i, t*, f*)`.
fn best_coordinate_move<M: Objective + ?Sized>(
    model: &M,
    x: &[f64],
) -> Result<(usize, f64, f64), SolverError> {
    let mut best: Option<(usize, f64, f64)> = None;
    for i in 0..x.len() {
        let (t, f) = model.minimize_1d(x, i)?;
        if best.map_or(true, |(_, _, bf)| f < bf) {
            best = Some((i, t, f));
        }
    }
    Ok(best.expect("nonzero dimension"))
}

fn apply_coordinate(x: &mut [f64], i: usize, t: f64) {
    x[i] += t;
}

fn apply_swap(x: &mut [f64], i: usize, j: usize, t: f64) {
    x[i] = 0.0;
    x[j] = if i == j { t } else { x[j] + t };
}

/// Coordinate-exchange method taking the globally best move each iteration.
///
/// Under the sparsity budget the move is the best single-coordinate update;
/// at a full support it is the best zero-one-coordinate-and-reoptimize-
/// another exchange over all pairs. Stops when no move improves the
/// objective beyond the relative decrease tolerance; monotone throughout.
pub fn greedy_sparse_simplex<M: Objective + ?Sized>(
    model: &M,
    budget: SparsityBudget,
    x0: &[f64],
    config: &SolverConfig,
) -> Result<SolverResult, SolverError> {
    check_start(x0, budget)?;
    let mut x = x0.to_vec();
    let mut fx = model.eval(&x)?;
    let mut rec = TraceRecorder::new(config.record_trace);
    rec.push(&x, fx, None);
    for k in 1..=config.max_iter {
        let sparse = SparseVector::from_dense(x.clone());
        let improvement_floor = fx - config.decrease_tol * (1.0 + libm::fabs(fx));
        let applied: Option<Move>;
        let f_new: f64;
        if sparse.nnz() < budget.s() {
            let (i, t, f) = best_coordinate_move(model, &x)?;
            if f >= improvement_floor {
                return Ok(SolverResult {
                    x: sparse,
                    value: fx,
                    iterations: k - 1,
                    termination: Termination::NoImprovingMove,
                    trace: rec.trace,
                });
            }
            apply_coordinate(&mut x, i, t);
            applied = Some(Move::Coordinate { i, t });
            f_new = f;
        } else {
            let mut best: Option<(usize, usize, f64, f64)> = None;
            for &i in sparse.support() {
                for j in 0..x.len() {
                    let (t, f) = model.minimize_swap(&x, i, j)?;
                    if best.map_or(true, |(_, _, _, bf)| f < bf) {
                        best = Some((i, j, t, f));
                    }
                }
            }
            let (i, j, t, f) = best.expect("full support is nonempty");
            if f >= improvement_floor {
                return Ok(SolverResult {
                    x: sparse,
                    value: fx,
                    iterations: k - 1,
                    termination: Termination::NoImprovingMove,
                    trace: rec.trace,
                });
            }
            apply_swap(&mut x, i, j, t);
            applied = Some(Move::Swap { i, j, t });
            f_new = f;
        }
        fx = f_new;
        rec.push(&x, fx, applied);
    }
    Ok(SolverResult {
        x: SparseVector::from_dense(x),
        value: fx,
        iterations: config.max_iter,
        termination: Termination::MaxIter,
        trace: rec.trace,
    })
}

/// Cheap coordinate-exchange variant.
///
/// Under the budget it behaves like the greedy method. At a full support it
/// compares exactly two candidate moves: re-optimizing the best support
/// coordinate in place, or dropping the smallest-magnitude support
/// coordinate and re-optimizing the coordinate with the largest off-support
/// gradient. The in-place move is taken only when strictly better.
pub fn partial_sparse_simplex<M: Objective + ?Sized>(
    model: &M,
    budget: SparsityBudget,
    x0: &[f64],
    config: &SolverConfig,
) -> Result<SolverResult, SolverError> {
    check_start(x0, budget)?;
    let mut x = x0.to_vec();
    let mut fx = model.eval(&x)?;
    let mut rec = TraceRecorder::new(config.record_trace);
    rec.push(&x, fx, None);
    for k in 1..=config.max_iter {
        let sparse = SparseVector::from_dense(x.clone());
        let improvement_floor = fx - config.decrease_tol * (1.0 + libm::fabs(fx));
        let applied: Option<Move>;
        let f_new: f64;
        if sparse.nnz() < budget.s() {
            let (i, t, f) = best_coordinate_move(model, &x)?;
            if f >= improvement_floor {
                return Ok(SolverResult {
                    x: sparse,
                    value: fx,
                    iterations: k - 1,
                    termination: Termination::NoImprovingMove,
                    trace: rec.trace,
                });
            }
            apply_coordinate(&mut x, i, t);
            applied = Some(Move::Coordinate { i, t });
            f_new = f;
        } else {
            // Option 1: best in-place support update.
            let mut opt1: Option<(usize, f64, f64)> = None;
            for &i in sparse.support() {
                let (t, f) = model.minimize_1d(&x, i)?;
                if opt1.map_or(true, |(_, _, bf)| f < bf) {
                    opt1 = Some((i, t, f));
                }
            }
            let (i1, t1, f1) = opt1.expect("full support is nonempty");
            // Option 2: drop the smallest support entry, re-optimize the
            // largest off-support gradient coordinate.
            let g = model.grad(&x)?;
            let m = *sparse
                .support()
                .iter()
                .min_by(|&&a, &&b| {
                    libm::fabs(x[a])
                        .partial_cmp(&libm::fabs(x[b]))
                        .unwrap()
                        .then(a.cmp(&b))
                })
                .expect("full support is nonempty");
            let j = (0..x.len())
                .filter(|&i| x[i] == 0.0)
                .max_by(|&a, &b| {
                    libm::fabs(g[a])
                        .partial_cmp(&libm::fabs(g[b]))
                        .unwrap()
                        .then(b.cmp(&a))
                })
                .expect("s < n leaves an off-support coordinate");
            let (t2, f2) = model.minimize_swap(&x, m, j)?;
            // Ties fall to the exchange option.
            let (mv, f) = if f1 < f2 {
                (Move::Swap { i: i1, j: i1, t: t1 + x[i1] }, f1)
            } else {
                (Move::Swap { i: m, j, t: t2 }, f2)
            };
            if f >= improvement_floor {
                return Ok(SolverResult {
                    x: sparse,
                    value: fx,
                    iterations: k - 1,
                    termination: Termination::NoImprovingMove,
                    trace: rec.trace,
                });
            }
            if let Move::Swap { i, j, t } = mv {
                apply_swap(&mut x, i, j, t);
            }
            applied = Some(mv);
            f_new = f;
        }
        fx = f_new;
        rec.push(&x, fx, applied);
    }
    Ok(SolverResult {
        x: SparseVector::from_dense(x),
        value: fx,
        iterations: config.max_iter,
        termination: Termination::MaxIter,
        trace: rec.trace,
    })
}

/// Largest normalized residual correlation `argmax_i |a_iᵀ r| / ‖a_i‖`,
/// lowest index on ties. Returns the index and the correlation.
fn best_correlation(model: &LeastSquaresModel, r: &[f64]) -> (usize, f64) {
    let a = model.matrix();
    let mut best = (0usize, -1.0f64);
    for i in 0..a.cols() {
        let c: f64 = (0..a.rows()).map(|k| a.get(k, i) * r[k]).sum();
        let score = libm::fabs(c) / libm::sqrt(model.column_norm_sq(i));
        if score > best.1 {
            best = (i, score);
        }
    }
    best
}

const RESIDUAL_REFRESH_PERIOD: usize = 50;

/// Matching pursuit on the residual `r = Ax − b`: repeatedly update the
/// single coordinate with the largest normalized residual correlation.
///
/// Stops when correlations vanish, when the update would push the support
/// past the budget, or at the iteration cap. The residual is updated
/// incrementally and refreshed from scratch periodically.
pub fn matching_pursuit(
    model: &LeastSquaresModel,
    budget: SparsityBudget,
    config: &SolverConfig,
) -> Result<SolverResult, SolverError> {
    let n = model.dim();
    if budget.n() != n {
        return Err(SolverError::DimensionMismatch {
            expected: n,
            found: budget.n(),
        });
    }
    let mut x = vec![0.0; n];
    let mut r: Vec<f64> = model.rhs().iter().map(|&b| -b).collect();
    let mut rec = TraceRecorder::new(config.record_trace);
    rec.push(&x, numerics::norm_sq(&r), None);
    let corr_tol = 1e-12 * (1.0 + numerics::norm(model.rhs()));
    for k in 1..=config.max_iter {
        let (i, score) = best_correlation(model, &r);
        if score <= corr_tol {
            return Ok(SolverResult {
                x: SparseVector::from_dense(x.clone()),
                value: numerics::norm_sq(&r),
                iterations: k - 1,
                termination: Termination::StationaryStop,
                trace: rec.trace,
            });
        }
        let nnz = x.iter().filter(|&&v| v != 0.0).count();
        if nnz == budget.s() && x[i] == 0.0 {
            return Ok(SolverResult {
                x: SparseVector::from_dense(x.clone()),
                value: numerics::norm_sq(&r),
                iterations: k - 1,
                termination: Termination::SupportFull,
                trace: rec.trace,
            });
        }
        let a = model.matrix();
        let c: f64 = (0..a.rows()).map(|m| a.get(m, i) * r[m]).sum();
        let t = -c / model.column_norm_sq(i);
        x[i] += t;
        if k % RESIDUAL_REFRESH_PERIOD == 0 {
            r = model.residual(&x)?;
        } else {
            for m in 0..a.rows() {
                r[m] += t * a.get(m, i);
            }
        }
        rec.push(&x, numerics::norm_sq(&r), Some(Move::Pursuit { i, t }));
        if libm::fabs(t) <= config.step_tol {
            return Ok(SolverResult {
                x: SparseVector::from_dense(x),
                value: numerics::norm_sq(&r),
                iterations: k,
                termination: Termination::StepTol,
                trace: rec.trace,
            });
        }
    }
    Ok(SolverResult {
        x: SparseVector::from_dense(x.clone()),
        value: numerics::norm_sq(&r),
        iterations: config.max_iter,
        termination: Termination::MaxIter,
        trace: rec.trace,
    })
}

/// Orthogonal matching pursuit: grow the support one coordinate at a time by
/// residual correlation, refitting by least squares on the accumulated
/// support after every insertion.
pub fn orthogonal_matching_pursuit(
    model: &LeastSquaresModel,
    budget: SparsityBudget,
    config: &SolverConfig,
) -> Result<SolverResult, SolverError> {
    let n = model.dim();
    if budget.n() != n {
        return Err(SolverError::DimensionMismatch {
            expected: n,
            found: budget.n(),
        });
    }
    let mut x = vec![0.0; n];
    let mut support: Vec<usize> = Vec::new();
    let mut r: Vec<f64> = model.rhs().iter().map(|&b| -b).collect();
    let mut rec = TraceRecorder::new(config.record_trace);
    rec.push(&x, numerics::norm_sq(&r), None);
    let corr_tol = 1e-12 * (1.0 + numerics::norm(model.rhs()));
    let mut iterations = 0;
    let termination = loop {
        if support.len() == budget.s() {
            break Termination::SupportFull;
        }
        let (i, score) = best_correlation(model, &r);
        if score <= corr_tol {
            break Termination::StationaryStop;
        }
        iterations += 1;
        support.push(i);
        support.sort_unstable();
        // Refit on the accumulated support.
        let a_s = model.matrix().select_columns(&support);
        let gram = a_s.gram();
        let rhs = numerics::mat_t_vec(&a_s, model.rhs())?;
        let coords = numerics::solve_linear(&gram, &rhs)?;
        x = vec![0.0; n];
        for (k, &idx) in support.iter().enumerate() {
            x[idx] = coords[k];
        }
        r = model.residual(&x)?;
        rec.push(&x, numerics::norm_sq(&r), Some(Move::Pursuit { i, t: x[i] }));
        if iterations >= config.max_iter {
            break Termination::MaxIter;
        }
    };
    Ok(SolverResult {
        x: SparseVector::from_dense(x.clone()),
        value: numerics::norm_sq(&r),
        iterations,
        termination,
        trace: rec.trace,
    })
}

const SURROGATE_CHECK_DIM_LIMIT: usize = 12;

/// Exhaustive oracle: does `x` minimize the quadratic upper surrogate
/// `h_L(·, x)` over the sparse set? Minimizing `h_L` over a fixed support
/// reduces to copying `x − ∇f(x)/L` on that support, so every support is
/// tried. Intended for validating the thresholded projection step on small
/// problems.
pub fn surrogate_argmin_check<M: Objective + ?Sized>(
    model: &M,
    x: &SparseVector,
    budget: SparsityBudget,
    l: f64,
) -> Result<bool, SolverError> {
    let n = budget.n();
    if n > SURROGATE_CHECK_DIM_LIMIT {
        return Err(SolverError::ProblemTooLarge {
            n,
            limit: SURROGATE_CHECK_DIM_LIMIT,
        });
    }
    if l <= 0.0 {
        return Err(SolverError::NonPositiveStep { l });
    }
    let g = model.grad(x.entries())?;
    let u: Vec<f64> = (0..n).map(|i| x.get(i) - g[i] / l).collect();
    // h_L(y, x) − f(x) = (L/2)(‖y − u‖² − ‖x − u‖²) + const in y; comparing
    // squared distances to u suffices.
    let dist_sq = |y: &[f64]| -> f64 {
        y.iter()
            .zip(&u)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
    };
    let mut best = f64::INFINITY;
    for support in combinations(n, budget.s()) {
        let mut y = vec![0.0; n];
        for &i in &support {
            y[i] = u[i];
        }
        best = best.min(dist_sq(&y));
    }
    let own = dist_sq(x.entries());
    Ok(own <= best + 1e-12 * (1.0 + best))
}
