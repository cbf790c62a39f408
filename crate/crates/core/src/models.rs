//! Objective models: least squares `||Ax - b||²`, quadratic `xᵀQx + 2bᵀx`,
//! and the quartic quadratic-measurement objective `Σ (xᵀA_i x - c_i)²`.
//!
//! Every model exposes an exact coordinate-restricted minimization oracle
//! (`minimize_1d` / `minimize_swap`): the sparse-simplex methods assume exact
//! one-dimensional minimization, so no generic line search is provided.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::numerics::{
    self, mat_t_vec, mat_vec, real_cubic_roots, DenseMatrix, DenseVector, NumericsError,
};

#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    DimensionMismatch { expected: usize, found: usize },
    /// The 1-D restriction along the given coordinate has no minimum.
    UnboundedDirection { index: usize },
    NotSymmetric,
    /// Least-squares matrices must have no zero columns.
    ZeroColumn { index: usize },
    Numerics(NumericsError),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            ModelError::UnboundedDirection { index } => {
                write!(f, "objective is unbounded along coordinate {index}")
            }
            ModelError::NotSymmetric => write!(f, "matrix is not symmetric"),
            ModelError::ZeroColumn { index } => write!(f, "column {index} is zero"),
            ModelError::Numerics(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ModelError {}

impl From<NumericsError> for ModelError {
    fn from(e: NumericsError) -> Self {
        ModelError::Numerics(e)
    }
}

/// A continuously differentiable objective with exact coordinate oracles.
pub trait Objective {
    /// Problem dimension `n`.
    fn dim(&self) -> usize;

    /// Objective value `f(x)`.
    fn eval(&self, x: &[f64]) -> Result<f64, ModelError>;

    /// Gradient `∇f(x)`.
    fn grad(&self, x: &[f64]) -> Result<DenseVector, ModelError>;

    /// Global minimizer of `t ↦ f(x + t e_i)` and its value `(t*, f*)`.
    fn minimize_1d(&self, x: &[f64], i: usize) -> Result<(f64, f64), ModelError>;

    /// Global minimizer of `t ↦ f(x - x_i e_i + t e_j)` and its value:
    /// the 1-D oracle applied at the point with coordinate `i` zeroed.
    fn minimize_swap(&self, x: &[f64], i: usize, j: usize) -> Result<(f64, f64), ModelError> {
        let mut y = x.to_vec();
        y[i] = 0.0;
        self.minimize_1d(&y, j)
    }

    /// `(L(f), L₂(f))`: global and two-coordinate local Lipschitz constants
    /// of the gradient, when they exist. Absence is a value, not an error.
    fn lipschitz_constants(&self) -> (Option<f64>, Option<f64>);

    /// Analytic lower bound `γ` on `f`, when known.
    fn lower_bound(&self) -> Option<f64> {
        None
    }
}

fn check_dim(n: usize, x: &[f64]) -> Result<(), ModelError> {
    if x.len() != n {
        return Err(ModelError::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    Ok(())
}

/// Quadratic upper surrogate `h_L(x, y) = f(y) + ⟨∇f(y), x−y⟩ + (L/2)‖x−y‖²`.
///
/// For `L ≥ L(f)` the descent lemma gives `f(x) ≤ h_L(x, y)`; the hard
/// thresholding step minimizes this surrogate over `C_s`.
pub fn surrogate_value<M: Objective + ?Sized>(
    model: &M,
    x: &[f64],
    y: &[f64],
    big_l: f64,
) -> Result<f64, ModelError> {
    check_dim(model.dim(), x)?;
    check_dim(model.dim(), y)?;
    let fy = model.eval(y)?;
    let gy = model.grad(y)?;
    let mut lin = 0.0;
    let mut sq = 0.0;
    for i in 0..x.len() {
        let d = x[i] - y[i];
        lin += gy[i] * d;
        sq += d * d;
    }
    Ok(fy + lin + 0.5 * big_l * sq)
}

/// Largest eigenvalue of a symmetric 2×2 matrix `[[a, b], [b, c]]`.
fn lambda_max_2x2(a: f64, b: f64, c: f64) -> f64 {
    0.5 * (a + c) + libm::sqrt(0.25 * (a - c) * (a - c) + b * b)
}

/// `2 · max_{i≠j} λ_max` of the 2×2 principal submatrices of a symmetric
/// matrix: the local Lipschitz constant for a quadratic form.
fn local_lipschitz_from_sym(g: &DenseMatrix) -> f64 {
    let n = g.rows();
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            best = best.max(lambda_max_2x2(g.get(i, i), g.get(i, j), g.get(j, j)));
        }
    }
    2.0 * best
}

/// `f(x) = ||Ax - b||²`.
#[derive(Debug, Clone)]
pub struct LeastSquaresModel {
    a: DenseMatrix,
    b: DenseVector,
    col_norm_sq: Vec<f64>,
    lipschitz: f64,
    local_lipschitz: f64,
}

impl LeastSquaresModel {
    pub fn new(a: DenseMatrix, b: DenseVector) -> Result<Self, ModelError> {
        if b.len() != a.rows() {
            return Err(ModelError::DimensionMismatch {
                expected: a.rows(),
                found: b.len(),
            });
        }
        let col_norm_sq: Vec<f64> = (0..a.cols())
            .map(|j| numerics::norm_sq(&a.column(j)))
            .collect();
        if let Some(j) = col_norm_sq.iter().position(|&v| v == 0.0) {
            return Err(ModelError::ZeroColumn { index: j });
        }
        let gram = a.gram();
        let lipschitz = 2.0 * numerics::lambda_max_sym(&gram)?;
        let local_lipschitz = local_lipschitz_from_sym(&gram);
        Ok(LeastSquaresModel {
            a,
            b,
            col_norm_sq,
            lipschitz,
            local_lipschitz,
        })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &[f64] {
        &self.b
    }

    pub fn column_norm_sq(&self, j: usize) -> f64 {
        self.col_norm_sq[j]
    }

    /// Residual `Ax - b`.
    pub fn residual(&self, x: &[f64]) -> Result<DenseVector, ModelError> {
        check_dim(self.a.cols(), x)?;
        let mut r = mat_vec(&self.a, x)?;
        for (ri, bi) in r.iter_mut().zip(&self.b) {
            *ri -= bi;
        }
        Ok(r)
    }
}

impl Objective for LeastSquaresModel {
    fn dim(&self) -> usize {
        self.a.cols()
    }

    fn eval(&self, x: &[f64]) -> Result<f64, ModelError> {
        Ok(numerics::norm_sq(&self.residual(x)?))
    }

    fn grad(&self, x: &[f64]) -> Result<DenseVector, ModelError> {
        let r = self.residual(x)?;
        let mut g = mat_t_vec(&self.a, &r)?;
        g.iter_mut().for_each(|v| *v *= 2.0);
        Ok(g)
    }

    fn minimize_1d(&self, x: &[f64], i: usize) -> Result<(f64, f64), ModelError> {
        let r = self.residual(x)?;
        let corr = numerics::dot(&self.a.column(i), &r);
        let t = -corr / self.col_norm_sq[i];
        let f = numerics::norm_sq(&r) - corr * corr / self.col_norm_sq[i];
        Ok((t, f))
    }

    fn lipschitz_constants(&self) -> (Option<f64>, Option<f64>) {
        (Some(self.lipschitz), Some(self.local_lipschitz))
    }

    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
}

/// `f(x) = xᵀQx + 2bᵀx` with symmetric `Q`.
#[derive(Debug, Clone)]
pub struct QuadraticModel {
    q: DenseMatrix,
    b: DenseVector,
    lipschitz: f64,
    local_lipschitz: f64,
}

impl QuadraticModel {
    pub fn new(q: DenseMatrix, b: DenseVector) -> Result<Self, ModelError> {
        if !q.is_symmetric(1e-12) {
            return Err(ModelError::NotSymmetric);
        }
        if b.len() != q.rows() {
            return Err(ModelError::DimensionMismatch {
                expected: q.rows(),
                found: b.len(),
            });
        }
        let lipschitz = 2.0 * numerics::lambda_max_sym(&q)?;
        let local_lipschitz = local_lipschitz_from_sym(&q);
        Ok(QuadraticModel {
            q,
            b,
            lipschitz,
            local_lipschitz,
        })
    }

    pub fn quadratic_matrix(&self) -> &DenseMatrix {
        &self.q
    }

    pub fn linear_term(&self) -> &[f64] {
        &self.b
    }
}

impl Objective for QuadraticModel {
    fn dim(&self) -> usize {
        self.q.rows()
    }

    fn eval(&self, x: &[f64]) -> Result<f64, ModelError> {
        check_dim(self.dim(), x)?;
        let qx = mat_vec(&self.q, x)?;
        Ok(numerics::dot(x, &qx) + 2.0 * numerics::dot(&self.b, x))
    }

    fn grad(&self, x: &[f64]) -> Result<DenseVector, ModelError> {
        check_dim(self.dim(), x)?;
        let mut g = mat_vec(&self.q, x)?;
        for i in 0..g.len() {
            g[i] = 2.0 * (g[i] + self.b[i]);
        }
        Ok(g)
    }

    fn minimize_1d(&self, x: &[f64], i: usize) -> Result<(f64, f64), ModelError> {
        check_dim(self.dim(), x)?;
        let qii = self.q.get(i, i);
        if qii <= 0.0 {
            return Err(ModelError::UnboundedDirection { index: i });
        }
        let gi = self.grad(x)?[i];
        let t = -gi / (2.0 * qii);
        // f(x + t e_i) = f(x) + t ∇_i f(x) + t² Q_ii.
        let f = self.eval(x)? + t * gi + t * t * qii;
        Ok((t, f))
    }

    fn lipschitz_constants(&self) -> (Option<f64>, Option<f64>) {
        (Some(self.lipschitz), Some(self.local_lipschitz))
    }
}

/// `f(x) = Σ_i (xᵀA_i x - c_i)²` for symmetric `A_i`.
///
/// When every `A_i = a_i a_iᵀ` is rank one, the factors can be supplied via
/// [`QuarticModel::from_rank_one`]; evaluation then runs in `O(mn)` instead
/// of `O(mn²)`.
#[derive(Debug, Clone)]
pub struct QuarticModel {
    mats: Vec<DenseMatrix>,
    targets: DenseVector,
    factors: Option<Vec<DenseVector>>,
    n: usize,
}

impl QuarticModel {
    pub fn new(mats: Vec<DenseMatrix>, targets: DenseVector) -> Result<Self, ModelError> {
        if mats.len() != targets.len() {
            return Err(ModelError::DimensionMismatch {
                expected: mats.len(),
                found: targets.len(),
            });
        }
        if mats.is_empty() {
            return Err(ModelError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let n = mats[0].rows();
        for m in &mats {
            if m.rows() != n || m.cols() != n {
                return Err(ModelError::DimensionMismatch {
                    expected: n,
                    found: m.rows(),
                });
            }
            if !m.is_symmetric(1e-12) {
                return Err(ModelError::NotSymmetric);
            }
        }
        Ok(QuarticModel {
            mats,
            targets,
            factors: None,
            n,
        })
    }

    /// Rank-one measurements `(a_iᵀx)² ≈ c_i`, i.e. `A_i = a_i a_iᵀ`.
    pub fn from_rank_one(factors: Vec<DenseVector>, targets: DenseVector) -> Result<Self, ModelError> {
        if factors.len() != targets.len() || factors.is_empty() {
            return Err(ModelError::DimensionMismatch {
                expected: targets.len().max(1),
                found: factors.len(),
            });
        }
        let n = factors[0].len();
        let mut mats = Vec::with_capacity(factors.len());
        for a in &factors {
            if a.len() != n {
                return Err(ModelError::DimensionMismatch {
                    expected: n,
                    found: a.len(),
                });
            }
            let mut m = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, a[i] * a[j]);
                }
            }
            mats.push(m);
        }
        Ok(QuarticModel {
            mats,
            targets,
            factors: Some(factors),
            n,
        })
    }

    pub fn measurement_count(&self) -> usize {
        self.targets.len()
    }

    pub fn measurement_matrices(&self) -> &[DenseMatrix] {
        &self.mats
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn rank_one_factors(&self) -> Option<&[DenseVector]> {
        self.factors.as_deref()
    }

    /// Coefficients of the quartic `t ↦ f(x + t e_i)` as
    /// `(c4, c3, c2, c1, c0)`.
    ///
    /// Each measurement restricts to a quadratic `q_m(t) = α t² + β t + γ`
    /// with `α = (A_m)_ii`, `β = 2 (A_m x)_i`, `γ = xᵀA_m x - c_m`, and the
    /// restriction of `f` is the sum of the `q_m²`.
    fn restriction_coeffs(&self, x: &[f64], i: usize) -> (f64, f64, f64, f64, f64) {
        let (mut c4, mut c3, mut c2, mut c1, mut c0) = (0.0, 0.0, 0.0, 0.0, 0.0);
        if let Some(factors) = &self.factors {
            for (a, &c) in factors.iter().zip(self.targets.iter()) {
                let d = numerics::dot(a, x);
                let alpha = a[i] * a[i];
                let beta = 2.0 * d * a[i];
                let gamma = d * d - c;
                c4 += alpha * alpha;
                c3 += 2.0 * alpha * beta;
                c2 += beta * beta + 2.0 * alpha * gamma;
                c1 += 2.0 * beta * gamma;
                c0 += gamma * gamma;
            }
        } else {
            for (m, &c) in self.mats.iter().zip(self.targets.iter()) {
                let mx = mat_vec(m, x).expect("dimension checked");
                let alpha = m.get(i, i);
                let beta = 2.0 * mx[i];
                let gamma = numerics::dot(x, &mx) - c;
                c4 += alpha * alpha;
                c3 += 2.0 * alpha * beta;
                c2 += beta * beta + 2.0 * alpha * gamma;
                c1 += 2.0 * beta * gamma;
                c0 += gamma * gamma;
            }
        }
        (c4, c3, c2, c1, c0)
    }
}

/// Pick the best stationary point of a polynomial restriction: smallest
/// value, ties (relative 1e-12) broken by smaller `|t|`, then smaller `t`.
fn pick_best_candidate(candidates: &[(f64, f64)]) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for &(t, f) in candidates {
        match best {
            None => best = Some((t, f)),
            Some((bt, bf)) => {
                let tie = libm::fabs(f - bf) <= 1e-12 * (1.0 + libm::fabs(bf));
                if f < bf && !tie {
                    best = Some((t, f));
                } else if tie {
                    let abs_tie = libm::fabs(libm::fabs(t) - libm::fabs(bt))
                        <= 1e-12 * (1.0 + libm::fabs(bt));
                    if (!abs_tie && libm::fabs(t) < libm::fabs(bt)) || (abs_tie && t < bt) {
                        best = Some((t, f.min(bf)));
                    }
                }
            }
        }
    }
    best
}

impl Objective for QuarticModel {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &[f64]) -> Result<f64, ModelError> {
        check_dim(self.n, x)?;
        let mut f = 0.0;
        if let Some(factors) = &self.factors {
            for (a, &c) in factors.iter().zip(self.targets.iter()) {
                let d = numerics::dot(a, x);
                let e = d * d - c;
                f += e * e;
            }
        } else {
            for (m, &c) in self.mats.iter().zip(self.targets.iter()) {
                let mx = mat_vec(m, x)?;
                let e = numerics::dot(x, &mx) - c;
                f += e * e;
            }
        }
        Ok(f)
    }

    fn grad(&self, x: &[f64]) -> Result<DenseVector, ModelError> {
        check_dim(self.n, x)?;
        let mut g = vec![0.0; self.n];
        if let Some(factors) = &self.factors {
            for (a, &c) in factors.iter().zip(self.targets.iter()) {
                let d = numerics::dot(a, x);
                let w = 4.0 * (d * d - c) * d;
                for j in 0..self.n {
                    g[j] += w * a[j];
                }
            }
        } else {
            for (m, &c) in self.mats.iter().zip(self.targets.iter()) {
                let mx = mat_vec(m, x)?;
                let w = 4.0 * (numerics::dot(x, &mx) - c);
                for j in 0..self.n {
                    g[j] += w * mx[j];
                }
            }
        }
        Ok(g)
    }

    fn minimize_1d(&self, x: &[f64], i: usize) -> Result<(f64, f64), ModelError> {
        check_dim(self.n, x)?;
        let (c4, c3, c2, c1, c0) = self.restriction_coeffs(x, i);
        let scale = c4
            .abs()
            .max(c3.abs())
            .max(c2.abs())
            .max(c1.abs())
            .max(c0.abs());
        let tol = 1e-14 * scale;
        let eval_poly = |t: f64| (((c4 * t + c3) * t + c2) * t + c1) * t + c0;
        if scale == 0.0 {
            // f vanishes identically along this line.
            return Ok((0.0, 0.0));
        }
        if c4.abs() <= tol {
            if c3.abs() > tol {
                return Err(ModelError::UnboundedDirection { index: i });
            }
            if c2.abs() <= tol {
                if c1.abs() > tol {
                    return Err(ModelError::UnboundedDirection { index: i });
                }
                return Ok((0.0, c0));
            }
            if c2 < 0.0 {
                return Err(ModelError::UnboundedDirection { index: i });
            }
            let t = -c1 / (2.0 * c2);
            return Ok((t, eval_poly(t)));
        }
        if c4 < 0.0 {
            return Err(ModelError::UnboundedDirection { index: i });
        }
        // Stationary points are the real roots of the cubic derivative.
        let roots = real_cubic_roots(4.0 * c4, 3.0 * c3, 2.0 * c2, c1)?;
        let candidates: Vec<(f64, f64)> = roots.into_iter().map(|t| (t, eval_poly(t))).collect();
        pick_best_candidate(&candidates).ok_or(ModelError::UnboundedDirection { index: i })
    }

    fn lipschitz_constants(&self) -> (Option<f64>, Option<f64>) {
        // The quartic gradient is not globally Lipschitz.
        (None, None)
    }

    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
}
