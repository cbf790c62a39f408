//! Support-set bookkeeping, order statistics `M_k`, and the
//! hard-thresholding projection onto `C_s = { x : ||x||_0 <= s }`.

use alloc::vec::Vec;
use core::fmt;

use crate::numerics::DenseVector;

#[derive(Debug, Clone, PartialEq)]
pub enum SparsityError {
    IndexOutOfRange { index: usize, len: usize },
    DimensionMismatch { expected: usize, found: usize },
    InvalidBudget { s: usize, n: usize },
    Infeasible { nnz: usize, s: usize },
}

impl fmt::Display for SparsityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SparsityError::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            SparsityError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            SparsityError::InvalidBudget { s, n } => {
                write!(f, "sparsity budget must satisfy 0 < s < n (got s={s}, n={n})")
            }
            SparsityError::Infeasible { nnz, s } => {
                write!(f, "vector has {nnz} nonzeros, exceeding the budget s={s}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SparsityError {}

/// Sparsity level `s` for an `n`-dimensional problem; `0 < s < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparsityBudget {
    s: usize,
    n: usize,
}

impl SparsityBudget {
    pub fn new(s: usize, n: usize) -> Result<Self, SparsityError> {
        if s == 0 || s >= n {
            return Err(SparsityError::InvalidBudget { s, n });
        }
        Ok(SparsityBudget { s, n })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Dense coefficient vector with its nonzero support cached.
///
/// The support is exact: `support = { i : entries[i] != 0.0 }`. Callers that
/// build iterates from floating-point arithmetic should use
/// [`SparseVector::from_dense_snapped`], which snaps negligible entries to
/// zero first so that `I_0`/`I_1` stay well defined.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    entries: DenseVector,
    support: Vec<usize>,
}

/// Relative snap threshold used by [`SparseVector::from_dense_snapped`].
pub const SNAP_TOL: f64 = 1e-14;

impl SparseVector {
    /// Wrap a dense vector, taking the exact-zero support.
    pub fn from_dense(entries: DenseVector) -> Self {
        let support = entries
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, _)| i)
            .collect();
        SparseVector { entries, support }
    }

    /// Wrap a dense vector, snapping entries below `1e-14·(1+||x||_inf)` to
    /// exact zero before taking the support.
    pub fn from_dense_snapped(mut entries: DenseVector) -> Self {
        let max = entries.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
        let tol = SNAP_TOL * (1.0 + max);
        for v in entries.iter_mut() {
            if libm::fabs(*v) <= tol {
                *v = 0.0;
            }
        }
        SparseVector::from_dense(entries)
    }

    pub fn zeros(n: usize) -> Self {
        SparseVector {
            entries: alloc::vec![0.0; n],
            support: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> DenseVector {
        self.entries
    }

    /// Sorted indices of the nonzero entries (`I_1`).
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn nnz(&self) -> usize {
        self.support.len()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.entries[i]
    }
}

/// Split `{0..n}` into the support `I_1` and its complement `I_0`.
pub fn support_sets(x: &SparseVector) -> (Vec<usize>, Vec<usize>) {
    let i1 = x.support.clone();
    let i0 = (0..x.len()).filter(|i| x.entries[*i] == 0.0).collect();
    (i1, i0)
}

/// `M_k(x)`: the k-th largest absolute value among the entries of `x`
/// (1-based `k`, so `m_stat(x, 1)` is the max and `m_stat(x, n)` the min).
pub fn m_stat(x: &SparseVector, k: usize) -> Result<f64, SparsityError> {
    let n = x.len();
    if k == 0 || k > n {
        return Err(SparsityError::IndexOutOfRange { index: k, len: n });
    }
    let mut abs: Vec<f64> = x.entries.iter().map(|v| libm::fabs(*v)).collect();
    abs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(abs[k - 1])
}

/// Indices of the `s` entries of largest absolute value, ties broken by
/// keeping the lowest index. Returned sorted ascending.
pub fn top_s_indices(x: &[f64], s: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    // Stable sort on descending |x_i|; stability gives the lowest-index
    // tie-break.
    order.sort_by(|&a, &b| {
        libm::fabs(x[b]).partial_cmp(&libm::fabs(x[a])).unwrap()
    });
    let mut keep: Vec<usize> = order.into_iter().take(s).collect();
    keep.sort_unstable();
    keep
}

/// Hard-thresholding projection `P_Cs`: keep the `s` entries of largest
/// absolute value, zero the rest. The set-valued projection is made
/// deterministic by breaking ties toward the lowest index.
pub fn project_cs(x: &[f64], budget: SparsityBudget) -> Result<SparseVector, SparsityError> {
    if x.len() != budget.n {
        return Err(SparsityError::DimensionMismatch {
            expected: budget.n,
            found: x.len(),
        });
    }
    let keep = top_s_indices(x, budget.s);
    let mut out = alloc::vec![0.0; x.len()];
    for &i in &keep {
        out[i] = x[i];
    }
    Ok(SparseVector::from_dense(out))
}

/// Every member of the set-valued projection `P_Cs(x)`, as supports. Used by
/// tests that must not depend on the tie-break.
pub fn projection_supports(x: &[f64], budget: SparsityBudget) -> Vec<Vec<usize>> {
    let s = budget.s;
    let n = x.len();
    let mut abs: Vec<f64> = x.iter().map(|v| libm::fabs(*v)).collect();
    abs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let threshold = abs[s - 1];
    let above: Vec<usize> = (0..n).filter(|&i| libm::fabs(x[i]) > threshold).collect();
    let at: Vec<usize> = (0..n).filter(|&i| libm::fabs(x[i]) == threshold).collect();
    let need = s - above.len();
    let mut result = Vec::new();
    for combo in crate::optimality::combinations(at.len(), need) {
        let mut support = above.clone();
        support.extend(combo.iter().map(|&k| at[k]));
        support.sort_unstable();
        result.push(support);
    }
    result
}
