//! Dense linear algebra primitives and a closed-form real cubic root finder.
//!
//! Everything here operates on plain `f64` slices and a row-major
//! [`DenseMatrix`]; the matrices involved are small (at most a few hundred
//! rows), so no factorization library is used and all routines are
//! deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Dense coefficient vector.
pub type DenseVector = Vec<f64>;

/// Relative threshold below which a leading polynomial coefficient is
/// treated as zero.
const DEGENERATE_COEFF_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub enum NumericsError {
    /// Operand shapes are incompatible.
    DimensionMismatch { expected: usize, found: usize },
    /// A routine requiring a symmetric matrix was given a non-symmetric one.
    NotSymmetric,
    /// Entries must be finite.
    NonFiniteEntry,
    /// The eigenvalue iteration did not reach the requested accuracy.
    NoConvergence,
    /// Linear system has a (numerically) singular matrix.
    Singular,
    /// All polynomial coefficients vanish; the root set is undetermined.
    ZeroPolynomial,
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericsError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            NumericsError::NotSymmetric => write!(f, "matrix is not symmetric"),
            NumericsError::NonFiniteEntry => write!(f, "non-finite entry"),
            NumericsError::NoConvergence => write!(f, "eigenvalue iteration did not converge"),
            NumericsError::Singular => write!(f, "singular linear system"),
            NumericsError::ZeroPolynomial => write!(f, "identically zero polynomial"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NumericsError {}

/// Row-major dense matrix of 64-bit floats.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, NumericsError> {
        if data.len() != rows * cols {
            return Err(NumericsError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::NonFiniteEntry);
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// `I_n + J_n`: identity plus the all-ones matrix.
    pub fn identity_plus_ones(n: usize) -> Self {
        let mut m = DenseMatrix {
            rows: n,
            cols: n,
            data: vec![1.0; n * n],
        };
        for i in 0..n {
            m.data[i * n + i] = 2.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Gram matrix `AᵀA`.
    pub fn gram(&self) -> DenseMatrix {
        let mut g = DenseMatrix::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in i..self.cols {
                let mut s = 0.0;
                for k in 0..self.rows {
                    s += self.get(k, i) * self.get(k, j);
                }
                g.set(i, j, s);
                g.set(j, i, s);
            }
        }
        g
    }

    /// Submatrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, idx: &[usize]) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    /// Principal submatrix on the listed index set (rows and columns).
    pub fn principal_submatrix(&self, idx: &[usize]) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(idx.len(), idx.len());
        for (ii, &i) in idx.iter().enumerate() {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(ii, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let scale = 1.0 + self.data.iter().fold(0.0f64, |a, v| a.max(libm::fabs(*v)));
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if libm::fabs(self.get(i, j) - self.get(j, i)) > tol * scale {
                    return false;
                }
            }
        }
        true
    }
}

/// Matrix-vector product `Ax`.
pub fn mat_vec(a: &DenseMatrix, x: &[f64]) -> Result<DenseVector, NumericsError> {
    if a.cols != x.len() {
        return Err(NumericsError::DimensionMismatch {
            expected: a.cols,
            found: x.len(),
        });
    }
    let mut y = vec![0.0; a.rows];
    for i in 0..a.rows {
        let row = a.row(i);
        let mut s = 0.0;
        for j in 0..a.cols {
            s += row[j] * x[j];
        }
        y[i] = s;
    }
    Ok(y)
}

/// `Aᵀx`.
pub fn mat_t_vec(a: &DenseMatrix, x: &[f64]) -> Result<DenseVector, NumericsError> {
    if a.rows != x.len() {
        return Err(NumericsError::DimensionMismatch {
            expected: a.rows,
            found: x.len(),
        });
    }
    let mut y = vec![0.0; a.cols];
    for i in 0..a.rows {
        let row = a.row(i);
        for j in 0..a.cols {
            y[j] += row[j] * x[i];
        }
    }
    Ok(y)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(norm_sq(a))
}

pub fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v)))
}

const POWER_MAX_ITER: usize = 200_000;

/// Largest eigenvalue of a symmetric matrix.
///
/// Deterministic power iteration on the Gershgorin-shifted matrix `M + cI`
/// (which is positive semidefinite), started from the all-ones vector; if the
/// start happens to be orthogonal to the dominant eigenspace the iteration
/// stagnates and is restarted from a fixed alternating vector.
pub fn lambda_max_sym(m: &DenseMatrix) -> Result<f64, NumericsError> {
    if !m.is_symmetric(1e-12) {
        return Err(NumericsError::NotSymmetric);
    }
    let n = m.rows;
    if n == 0 {
        return Err(NumericsError::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    // Diagonal matrices short-circuit; the shifted iteration below cannot
    // handle M = -cI (the shifted matrix is identically zero).
    let off_diag = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| libm::fabs(m.get(i, j)))
        .fold(0.0f64, f64::max);
    if off_diag == 0.0 {
        return Ok((0..n).map(|i| m.get(i, i)).fold(f64::NEG_INFINITY, f64::max));
    }
    // Gershgorin bound on the spectral radius.
    let shift = (0..n)
        .map(|i| m.row(i).iter().map(|v| libm::fabs(*v)).sum::<f64>())
        .fold(0.0f64, f64::max);
    if shift == 0.0 {
        return Ok(0.0);
    }
    let shifted_mv = |v: &[f64]| -> Vec<f64> {
        let mut w = mat_vec(m, v).expect("square matrix");
        for i in 0..n {
            w[i] += shift * v[i];
        }
        w
    };
    for attempt in 0..2 {
        let mut v: Vec<f64> = if attempt == 0 {
            vec![1.0; n]
        } else {
            // Deterministic restart: index-dependent, not orthogonal to
            // anything in particular.
            (0..n).map(|i| libm::sin(1.0 + i as f64)).collect()
        };
        let nv = norm(&v);
        v.iter_mut().for_each(|x| *x /= nv);
        let mut rayleigh = dot(&shifted_mv(&v), &v);
        for _ in 0..POWER_MAX_ITER {
            let mut w = shifted_mv(&v);
            let nw = norm(&w);
            if nw == 0.0 {
                // v is in the null space of the shifted matrix.
                break;
            }
            w.iter_mut().for_each(|x| *x /= nw);
            let new_rayleigh = dot(&shifted_mv(&w), &w);
            let resid = {
                let mw = shifted_mv(&w);
                let mut r = 0.0f64;
                for i in 0..n {
                    r += (mw[i] - new_rayleigh * w[i]) * (mw[i] - new_rayleigh * w[i]);
                }
                libm::sqrt(r)
            };
            v = w;
            let stalled = libm::fabs(new_rayleigh - rayleigh) <= 1e-15 * (1.0 + libm::fabs(new_rayleigh));
            rayleigh = new_rayleigh;
            if resid <= 1e-11 * (shift + libm::fabs(new_rayleigh)) || stalled && resid <= 1e-9 * (shift + libm::fabs(new_rayleigh)) {
                return Ok(rayleigh - shift);
            }
        }
        // Stagnated: try the deterministic restart vector once.
    }
    Err(NumericsError::NoConvergence)
}

/// Smallest eigenvalue of a symmetric matrix, via `λ_min(M) = -λ_max(-M)`.
pub fn lambda_min_sym(m: &DenseMatrix) -> Result<f64, NumericsError> {
    let neg = DenseMatrix {
        rows: m.rows,
        cols: m.cols,
        data: m.data.iter().map(|v| -v).collect(),
    };
    Ok(-lambda_max_sym(&neg)?)
}

/// Solve `Ax = b` for square `A` by Gaussian elimination with partial
/// pivoting. Returns [`NumericsError::Singular`] when a pivot falls below
/// `1e-12` relative to the matrix scale.
pub fn solve_linear(a: &DenseMatrix, b: &[f64]) -> Result<DenseVector, NumericsError> {
    let n = a.rows;
    if a.cols != n {
        return Err(NumericsError::DimensionMismatch {
            expected: n,
            found: a.cols,
        });
    }
    if b.len() != n {
        return Err(NumericsError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let scale = a.data.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
    if scale == 0.0 {
        return Err(NumericsError::Singular);
    }
    let mut m = a.data.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = libm::fabs(m[col * n + col]);
        for r in (col + 1)..n {
            let v = libm::fabs(m[r * n + col]);
            if v > pivot_val {
                pivot_val = v;
                pivot_row = r;
            }
        }
        if pivot_val <= 1e-12 * scale {
            return Err(NumericsError::Singular);
        }
        if pivot_row != col {
            for j in 0..n {
                m.swap(col * n + j, pivot_row * n + j);
            }
            rhs.swap(col, pivot_row);
        }
        let p = m[col * n + col];
        for r in (col + 1)..n {
            let factor = m[r * n + col] / p;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                m[r * n + j] -= factor * m[col * n + j];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in (i + 1)..n {
            s -= m[i * n + j] * x[j];
        }
        x[i] = s / m[i * n + i];
    }
    Ok(x)
}

fn polish_root(c3: f64, c2: f64, c1: f64, c0: f64, t: f64) -> f64 {
    let p = ((c3 * t + c2) * t + c1) * t + c0;
    let dp = (3.0 * c3 * t + 2.0 * c2) * t + c1;
    if dp != 0.0 && p.is_finite() {
        let t2 = t - p / dp;
        if t2.is_finite() {
            let p2 = ((c3 * t2 + c2) * t2 + c1) * t2 + c0;
            if libm::fabs(p2) <= libm::fabs(p) {
                return t2;
            }
        }
    }
    t
}

fn real_quadratic_roots(c2: f64, c1: f64, c0: f64, scale: f64) -> Vec<f64> {
    if libm::fabs(c2) <= DEGENERATE_COEFF_TOL * scale {
        if libm::fabs(c1) <= DEGENERATE_COEFF_TOL * scale {
            // Nonzero constant: no roots.
            return Vec::new();
        }
        return vec![-c0 / c1];
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = libm::sqrt(disc);
    // Numerically stable split: avoid cancellation in -b ± sqrt(disc).
    let q = -0.5 * (c1 + if c1 >= 0.0 { sq } else { -sq });
    let mut roots = if q == 0.0 {
        // c1 = 0 and disc = 0: double root at the vertex.
        vec![0.0, 0.0]
    } else {
        vec![q / c2, c0 / q]
    };
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// All real roots of `c3 t³ + c2 t² + c1 t + c0`, ascending.
///
/// Degenerates gracefully to the quadratic/linear/constant case when leading
/// coefficients vanish (relative threshold `1e-14`); the identically zero
/// polynomial is an error. Each root receives one Newton polish step.
pub fn real_cubic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Vec<f64>, NumericsError> {
    if !(c3.is_finite() && c2.is_finite() && c1.is_finite() && c0.is_finite()) {
        return Err(NumericsError::NonFiniteEntry);
    }
    let scale = libm::fabs(c3)
        .max(libm::fabs(c2))
        .max(libm::fabs(c1))
        .max(libm::fabs(c0));
    if scale == 0.0 {
        return Err(NumericsError::ZeroPolynomial);
    }
    if libm::fabs(c3) <= DEGENERATE_COEFF_TOL * scale {
        let mut roots = real_quadratic_roots(c2, c1, c0, scale);
        for r in roots.iter_mut() {
            *r = polish_root(0.0, c2, c1, c0, *r);
        }
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return Ok(roots);
    }
    // Normalize to monic t³ + pt² + qt + r.
    let p = c2 / c3;
    let q = c1 / c3;
    let r = c0 / c3;
    let big_q = (p * p - 3.0 * q) / 9.0;
    let big_r = (2.0 * p * p * p - 9.0 * p * q + 27.0 * r) / 54.0;
    let q3 = big_q * big_q * big_q;
    let mut roots: Vec<f64>;
    if big_r * big_r < q3 {
        // Three real roots (trigonometric form).
        let theta = libm::acos((big_r / libm::sqrt(q3)).clamp(-1.0, 1.0));
        let sq = -2.0 * libm::sqrt(big_q);
        roots = vec![
            sq * libm::cos(theta / 3.0) - p / 3.0,
            sq * libm::cos((theta + 2.0 * core::f64::consts::PI) / 3.0) - p / 3.0,
            sq * libm::cos((theta - 2.0 * core::f64::consts::PI) / 3.0) - p / 3.0,
        ];
    } else {
        // One real root (Cardano).
        let a = -libm::copysign(1.0, big_r)
            * libm::cbrt(libm::fabs(big_r) + libm::sqrt((big_r * big_r - q3).max(0.0)));
        let b = if a != 0.0 { big_q / a } else { 0.0 };
        roots = vec![a + b - p / 3.0];
        // Double-root boundary: when R² == Q³ the remaining (double) root is
        // -A/2 - p/3... detect near-equality and include it.
        if big_r * big_r <= q3 * (1.0 + 1e-12) && big_q > 0.0 {
            roots.push(-(a + b) / 2.0 - p / 3.0);
        }
    }
    for t in roots.iter_mut() {
        *t = polish_root(c3, c2, c1, c0, *t);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}
