//! Certification of candidate points against the optimality hierarchy
//! (basic feasibility → L-stationarity → coordinate-wise minimality) and
//! exhaustive enumeration of the basic feasible vectors of small
//! least-squares / quadratic problems.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::models::{LeastSquaresModel, ModelError, Objective, QuadraticModel};
use crate::numerics::{self, mat_t_vec, solve_linear, DenseMatrix, NumericsError};
use crate::sparsity::{m_stat, SparseVector, SparsityBudget};

#[derive(Debug, Clone, PartialEq)]
pub enum OptimalityError {
    Infeasible { nnz: usize, s: usize },
    NotBasicFeasible,
    /// `M_s = 0` with a full support contradicts the support definition.
    DegenerateSupport,
    SupportBudgetExceeded { needed: u64, guard: u64 },
    AllSupportsSingular,
    DimensionMismatch { expected: usize, found: usize },
    Model(ModelError),
}

impl fmt::Display for OptimalityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptimalityError::Infeasible { nnz, s } => {
                write!(f, "point has {nnz} nonzeros, exceeding s={s}")
            }
            OptimalityError::NotBasicFeasible => write!(f, "point is not basic feasible"),
            OptimalityError::DegenerateSupport => {
                write!(f, "full support with M_s = 0 (internal contradiction)")
            }
            OptimalityError::SupportBudgetExceeded { needed, guard } => {
                write!(f, "{needed} supports exceed the enumeration guard {guard}")
            }
            OptimalityError::AllSupportsSingular => {
                write!(f, "every size-s support produced a singular system")
            }
            OptimalityError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            OptimalityError::Model(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OptimalityError {}

impl From<ModelError> for OptimalityError {
    fn from(e: ModelError) -> Self {
        OptimalityError::Model(e)
    }
}

/// All k-subsets of `{0..n}` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        out.push(combo.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        combo[i] += 1;
        for j in (i + 1)..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Binomial coefficient with saturation.
pub fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut result: u64 = 1;
    for i in 0..k {
        result = match result.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u64::MAX,
        };
    }
    result
}

/// First violated coordinate-wise inequality, as evidence against
/// CW-minimality: re-optimizing coordinate `j` after zeroing coordinate `i`
/// reaches `f_star < f(x)` at step `t_star`.
#[derive(Debug, Clone, PartialEq)]
pub struct CwWitness {
    pub i: usize,
    pub j: usize,
    pub t_star: f64,
    pub f_star: f64,
}

/// Tolerances actually used when producing a certificate; recorded so a
/// verdict can be reproduced exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateTolerances {
    pub bf_tol: f64,
    pub l_stationary_rel_tol: f64,
    pub cw_tol: f64,
}

/// Verdicts for one candidate point against the optimality hierarchy.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityCertificate {
    pub is_feasible: bool,
    pub is_bf: bool,
    /// `SL(x)`; `None` when the point is not basic feasible (the level is
    /// then undefined / infinite).
    pub stationarity_level: Option<f64>,
    /// The queried `L` and the resulting verdict, if a query was made.
    pub l_stationary_at: Option<(f64, bool)>,
    pub is_cw_minimum: bool,
    pub cw_witness: Option<CwWitness>,
    pub tolerances: CertificateTolerances,
}

fn default_bf_tol(grad: &[f64], x: &SparseVector) -> f64 {
    // Scale by the off-support gradient magnitude.
    let mut scale = 0.0f64;
    for i in 0..x.len() {
        if x.get(i) == 0.0 {
            scale = scale.max(libm::fabs(grad[i]));
        }
    }
    1e-8 * (1.0 + scale)
}

fn check_feasible(x: &SparseVector, budget: SparsityBudget) -> Result<(), OptimalityError> {
    if x.len() != budget.n() {
        return Err(OptimalityError::DimensionMismatch {
            expected: budget.n(),
            found: x.len(),
        });
    }
    if x.nnz() > budget.s() {
        return Err(OptimalityError::Infeasible {
            nnz: x.nnz(),
            s: budget.s(),
        });
    }
    Ok(())
}

/// Basic feasibility: the gradient vanishes on the support (the whole
/// gradient, when the support is strictly smaller than `s`).
pub fn is_basic_feasible<M: Objective + ?Sized>(
    model: &M,
    x: &SparseVector,
    budget: SparsityBudget,
    tol: Option<f64>,
) -> Result<bool, OptimalityError> {
    check_feasible(x, budget)?;
    let grad = model.grad(x.entries())?;
    let tol = tol.unwrap_or_else(|| default_bf_tol(&grad, x));
    if x.nnz() < budget.s() {
        Ok(numerics::inf_norm(&grad) <= tol)
    } else {
        Ok(x.support().iter().all(|&i| libm::fabs(grad[i]) <= tol))
    }
}

/// Stationarity level `SL(x) = max_{i ∈ I₀} |∇_i f(x)| / M_s(x)`: the
/// smallest `L` at which the BF vector `x` is L-stationary. Zero when the
/// support is strictly smaller than `s`.
pub fn stationarity_level<M: Objective + ?Sized>(
    model: &M,
    x: &SparseVector,
    budget: SparsityBudget,
) -> Result<f64, OptimalityError> {
    if !is_basic_feasible(model, x, budget, None)? {
        return Err(OptimalityError::NotBasicFeasible);
    }
    if x.nnz() < budget.s() {
        return Ok(0.0);
    }
    let ms = m_stat(x, budget.s()).expect("s <= n by budget invariant");
    if ms == 0.0 {
        return Err(OptimalityError::DegenerateSupport);
    }
    let grad = model.grad(x.entries())?;
    let max_off = (0..x.len())
        .filter(|&i| x.get(i) == 0.0)
        .map(|i| libm::fabs(grad[i]))
        .fold(0.0f64, f64::max);
    Ok(max_off / ms)
}

/// L-stationarity via the explicit form: basic feasibility plus
/// `SL(x) ≤ L` (relative tolerance, default `1e-9`).
pub fn is_l_stationary<M: Objective + ?Sized>(
    model: &M,
    x: &SparseVector,
    budget: SparsityBudget,
    big_l: f64,
    tol: Option<f64>,
) -> Result<bool, OptimalityError> {
    let tol = tol.unwrap_or(1e-9);
    if !is_basic_feasible(model, x, budget, None)? {
        return Ok(false);
    }
    let sl = stationarity_level(model, x, budget)?;
    Ok(sl <= big_l + tol * (1.0 + big_l))
}

/// Coordinate-wise minimality.
///
/// Under budget: no single-coordinate move improves `f`. At full budget: for
/// every support coordinate `i` and every `j`, zeroing `x_i` and
/// re-optimizing coordinate `j` does not improve `f`. On failure the first
/// violated pair is returned as a witness.
pub fn is_cw_minimum<M: Objective + ?Sized>(
    model: &M,
    x: &SparseVector,
    budget: SparsityBudget,
    tol: Option<f64>,
) -> Result<(bool, Option<CwWitness>), OptimalityError> {
    check_feasible(x, budget)?;
    let fx = model.eval(x.entries())?;
    let tol = tol.unwrap_or_else(|| 1e-9 * (1.0 + libm::fabs(fx)));
    if x.nnz() < budget.s() {
        for i in 0..x.len() {
            let (t_star, f_star) = model.minimize_1d(x.entries(), i)?;
            if f_star < fx - tol {
                return Ok((
                    false,
                    Some(CwWitness {
                        i,
                        j: i,
                        t_star,
                        f_star,
                    }),
                ));
            }
        }
    } else {
        for &i in x.support() {
            for j in 0..x.len() {
                let (t_star, f_star) = model.minimize_swap(x.entries(), i, j)?;
                if f_star < fx - tol {
                    return Ok((
                        false,
                        Some(CwWitness {
                            i,
                            j,
                            t_star,
                            f_star,
                        }),
                    ));
                }
            }
        }
    }
    Ok((true, None))
}

/// Full certificate for one candidate point.
pub fn certify<M: Objective + ?Sized>(
    model: &M,
    x: &SparseVector,
    budget: SparsityBudget,
    l_query: Option<f64>,
) -> Result<OptimalityCertificate, OptimalityError> {
    check_feasible(x, budget)?;
    let grad = model.grad(x.entries())?;
    let bf_tol = default_bf_tol(&grad, x);
    let fx = model.eval(x.entries())?;
    let cw_tol = 1e-9 * (1.0 + libm::fabs(fx));
    let tolerances = CertificateTolerances {
        bf_tol,
        l_stationary_rel_tol: 1e-9,
        cw_tol,
    };
    let is_bf = is_basic_feasible(model, x, budget, Some(bf_tol))?;
    let stationarity = if is_bf {
        Some(stationarity_level(model, x, budget)?)
    } else {
        None
    };
    let l_stationary_at = match l_query {
        Some(l) => Some((l, is_l_stationary(model, x, budget, l, None)?)),
        None => None,
    };
    let (is_cw, cw_witness) = is_cw_minimum(model, x, budget, Some(cw_tol))?;
    Ok(OptimalityCertificate {
        is_feasible: true,
        is_bf,
        stationarity_level: stationarity,
        l_stationary_at,
        is_cw_minimum: is_cw,
        cw_witness,
        tolerances,
    })
}

/// Models whose basic feasible vector with a prescribed support can be
/// computed by a single linear solve.
pub trait SupportSolvable: Objective {
    /// On-support coordinates of the unique gradient-zero candidate for the
    /// given support, or `Singular` when the restricted system degenerates.
    fn solve_on_support(&self, support: &[usize]) -> Result<Vec<f64>, NumericsError>;
}

impl SupportSolvable for LeastSquaresModel {
    fn solve_on_support(&self, support: &[usize]) -> Result<Vec<f64>, NumericsError> {
        // x_S = (A_SᵀA_S)⁻¹ A_Sᵀ b.
        let a_s = self.matrix().select_columns(support);
        let gram = a_s.gram();
        let rhs = mat_t_vec(&a_s, self.rhs())?;
        solve_linear(&gram, &rhs)
    }
}

impl SupportSolvable for QuadraticModel {
    fn solve_on_support(&self, support: &[usize]) -> Result<Vec<f64>, NumericsError> {
        // Q_S x_S = -b_S.
        let q_s = self.quadratic_matrix().principal_submatrix(support);
        let rhs: Vec<f64> = support.iter().map(|&i| -self.linear_term()[i]).collect();
        solve_linear(&q_s, &rhs)
    }
}

/// One basic feasible candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct BfEntry {
    /// The enumerated size-s support (the point may have incidental zeros
    /// inside it).
    pub support: Vec<usize>,
    pub point: SparseVector,
    pub value: f64,
    pub stationarity_level: f64,
    /// True when the solved point has fewer than `s` nonzeros, i.e. it is an
    /// unconstrained stationary point that happens to be sparse.
    pub undersized_support: bool,
}

/// All basic feasible vectors of a least-squares or quadratic problem,
/// one candidate per size-s support.
#[derive(Debug, Clone, PartialEq)]
pub struct BfCatalog {
    pub entries: Vec<BfEntry>,
    /// Supports whose restricted system was singular (skipped, not guessed).
    pub skipped_supports: Vec<Vec<usize>>,
}

impl BfCatalog {
    /// Index of the entry with minimal objective value.
    pub fn argmin(&self) -> Option<usize> {
        self.entries
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.value.partial_cmp(&b.1.value).unwrap())
            .map(|(i, _)| i)
    }

    /// Index of the catalog entry within relative Euclidean distance
    /// `rel_tol` of `x`, if any.
    pub fn classify(&self, x: &[f64], rel_tol: f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (idx, entry) in self.entries.iter().enumerate() {
            let dist_sq: f64 = (0..x.len())
                .map(|i| {
                    let d = x[i] - entry.point.get(i);
                    d * d
                })
                .sum();
            let dist = libm::sqrt(dist_sq);
            let scale = 1.0 + numerics::norm(entry.point.entries());
            if dist <= rel_tol * scale && best.map_or(true, |(_, bd)| dist < bd) {
                best = Some((idx, dist));
            }
        }
        best.map(|(i, _)| i)
    }
}

/// Enumerate the basic feasible vector candidates of `model` over every
/// size-s support, via the per-support normal-equation solve.
///
/// Guarded by `max_supports`; singular supports are skipped and reported;
/// duplicate points (within `1e-10`) are merged, keeping the
/// lexicographically first support. Entries come out sorted by support.
pub fn enumerate_bf<M: SupportSolvable + ?Sized>(
    model: &M,
    budget: SparsityBudget,
    max_supports: u64,
) -> Result<BfCatalog, OptimalityError> {
    let n = budget.n();
    let s = budget.s();
    let needed = binomial(n as u64, s as u64);
    if needed > max_supports {
        return Err(OptimalityError::SupportBudgetExceeded {
            needed,
            guard: max_supports,
        });
    }
    let mut entries: Vec<BfEntry> = Vec::new();
    let mut skipped = Vec::new();
    for support in combinations(n, s) {
        let coords = match model.solve_on_support(&support) {
            Ok(c) => c,
            Err(NumericsError::Singular) => {
                skipped.push(support);
                continue;
            }
            Err(e) => return Err(OptimalityError::Model(ModelError::Numerics(e))),
        };
        let mut dense = vec![0.0; n];
        for (k, &i) in support.iter().enumerate() {
            dense[i] = coords[k];
        }
        let point = SparseVector::from_dense_snapped(dense);
        let duplicate = entries.iter().any(|e| {
            let d: f64 = (0..n)
                .map(|i| {
                    let d = e.point.get(i) - point.get(i);
                    d * d
                })
                .sum();
            libm::sqrt(d) <= 1e-10
        });
        if duplicate {
            continue;
        }
        let value = model.eval(point.entries())?;
        let undersized_support = point.nnz() < s;
        let sl = stationarity_level(model, &point, budget)?;
        entries.push(BfEntry {
            support,
            point,
            value,
            stationarity_level: sl,
            undersized_support,
        });
    }
    if entries.is_empty() {
        return Err(OptimalityError::AllSupportsSingular);
    }
    Ok(BfCatalog {
        entries,
        skipped_supports: skipped,
    })
}

/// s-regularity: every size-s column subset of `A` has full rank, tested via
/// the eigenvalue spread of each Gram submatrix. The 1e-12 relative cutoff
/// matches the power iteration's accuracy; in singular-value terms it admits
/// condition numbers up to about 1e6.
pub fn is_s_regular(
    a: &DenseMatrix,
    s: usize,
    max_supports: u64,
) -> Result<bool, OptimalityError> {
    let n = a.cols();
    if s > a.rows().min(n) {
        return Ok(false);
    }
    let needed = binomial(n as u64, s as u64);
    if needed > max_supports {
        return Err(OptimalityError::SupportBudgetExceeded {
            needed,
            guard: max_supports,
        });
    }
    for support in combinations(n, s) {
        let gram = a.select_columns(&support).gram();
        let lmax = numerics::lambda_max_sym(&gram).map_err(ModelError::Numerics)?;
        let lmin = numerics::lambda_min_sym(&gram).map_err(ModelError::Numerics)?;
        if lmin.max(0.0) <= 1e-12 * lmax.max(0.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::QuadraticModel;
    use crate::testutil::uniform;

    fn example_model() -> QuadraticModel {
        QuadraticModel::new(
            DenseMatrix::identity_plus_ones(5),
            vec![-3.0, -2.0, -3.0, -12.0, -5.0],
        )
        .unwrap()
    }

    fn budget() -> SparsityBudget {
        SparsityBudget::new(2, 5).unwrap()
    }

    #[test]
    fn combinations_lexicographic() {
        let c = combinations(4, 2);
        assert_eq!(
            c,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(30, 3), 4060);
    }

    #[test]
    fn x3_is_basic_feasible() {
        let m = example_model();
        let x = SparseVector::from_dense(vec![-2.0, 0.0, 0.0, 7.0, 0.0]);
        assert!(is_basic_feasible(&m, &x, budget(), None).unwrap());
    }

    #[test]
    fn arbitrary_support_point_is_not_bf() {
        let m = example_model();
        let x = SparseVector::from_dense(vec![1.0, 0.0, 0.0, 1.0, 0.0]);
        assert!(!is_basic_feasible(&m, &x, budget(), None).unwrap());
    }

    #[test]
    fn infeasible_point_is_rejected() {
        let m = example_model();
        let x = SparseVector::from_dense(vec![1.0, 1.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            is_basic_feasible(&m, &x, budget(), None),
            Err(OptimalityError::Infeasible { .. })
        ));
    }

    #[test]
    fn stationarity_levels_from_table1() {
        let m = example_model();
        let x6 = SparseVector::from_dense(vec![0.0, -8.0 / 3.0, 0.0, 22.0 / 3.0, 0.0]);
        assert!((stationarity_level(&m, &x6, budget()).unwrap() - 1.25).abs() < 1e-10);
        let x3 = SparseVector::from_dense(vec![-2.0, 0.0, 0.0, 7.0, 0.0]);
        assert!((stationarity_level(&m, &x3, budget()).unwrap() - 3.0).abs() < 1e-10);
    }

    #[test]
    fn l_stationarity_at_6() {
        let m = example_model();
        let x6 = SparseVector::from_dense(vec![0.0, -8.0 / 3.0, 0.0, 22.0 / 3.0, 0.0]);
        assert!(is_l_stationary(&m, &x6, budget(), 6.0, None).unwrap());
        // x₁ has SL = 62.
        let x1 = SparseVector::from_dense(vec![4.0 / 3.0, 1.0 / 3.0, 0.0, 0.0, 0.0]);
        assert!(!is_l_stationary(&m, &x1, budget(), 6.0, None).unwrap());
    }

    #[test]
    fn l_stationarity_monotone_in_l() {
        let m = example_model();
        let catalog = enumerate_bf(&m, budget(), 1000).unwrap();
        for e in &catalog.entries {
            for (l1, l2) in [(1.0, 4.0), (3.0, 20.0), (10.0, 70.0)] {
                if is_l_stationary(&m, &e.point, budget(), l1, None).unwrap() {
                    assert!(is_l_stationary(&m, &e.point, budget(), l2, None).unwrap());
                }
            }
        }
    }

    #[test]
    fn only_x6_is_cw_minimum() {
        let m = example_model();
        let x6 = SparseVector::from_dense(vec![0.0, -8.0 / 3.0, 0.0, 22.0 / 3.0, 0.0]);
        let (ok, witness) = is_cw_minimum(&m, &x6, budget(), None).unwrap();
        assert!(ok);
        assert!(witness.is_none());
        let x3 = SparseVector::from_dense(vec![-2.0, 0.0, 0.0, 7.0, 0.0]);
        let (ok, witness) = is_cw_minimum(&m, &x3, budget(), None).unwrap();
        assert!(!ok);
        assert!(witness.is_some());
    }

    #[test]
    fn enumerate_example23_catalog() {
        let m = example_model();
        let catalog = enumerate_bf(&m, budget(), 1000).unwrap();
        assert_eq!(catalog.entries.len(), 10);
        assert!(catalog.skipped_supports.is_empty());
        // x₆ (support {1, 3} zero-based) is the catalog minimum.
        let best = catalog.argmin().unwrap();
        assert_eq!(catalog.entries[best].support, vec![1, 3]);
        assert!((catalog.entries[best].value - (-248.0 / 3.0)).abs() < 1e-9);
        // Spot-check x₂ = (1, 0, 1, 0, 0): value -6, SL 20.
        let x2 = &catalog.entries[1];
        assert_eq!(x2.support, vec![0, 2]);
        assert!((x2.value - (-6.0)).abs() < 1e-9);
        assert!((x2.stationarity_level - 20.0).abs() < 1e-8);
    }

    #[test]
    fn enumerate_homogeneous_collapses_to_zero() {
        let m = QuadraticModel::new(DenseMatrix::identity_plus_ones(4), vec![0.0; 4]).unwrap();
        let catalog = enumerate_bf(&m, SparsityBudget::new(2, 4).unwrap(), 1000).unwrap();
        assert_eq!(catalog.entries.len(), 1);
        assert_eq!(catalog.entries[0].point.nnz(), 0);
        assert!(catalog.entries[0].undersized_support);
    }

    #[test]
    fn hierarchy_on_catalog() {
        // CW-minimum ⇒ L₂-stationary ⇒ BF, exhaustively over the catalog.
        let m = example_model();
        let l2 = m.lipschitz_constants().1.unwrap();
        let catalog = enumerate_bf(&m, budget(), 1000).unwrap();
        for e in &catalog.entries {
            let cert = certify(&m, &e.point, budget(), Some(l2)).unwrap();
            assert!(cert.is_bf);
            if cert.is_cw_minimum {
                assert!(cert.l_stationary_at.unwrap().1);
            }
        }
    }

    #[test]
    fn projection_form_equivalence() {
        // Lemma form: x is L-stationary iff x ∈ P_Cs(x - ∇f(x)/L), checked
        // against every member of the set-valued projection.
        let m = example_model();
        let catalog = enumerate_bf(&m, budget(), 1000).unwrap();
        for e in &catalog.entries {
            for l in [1.0, 1.25, 3.0, 6.0, 25.0, 70.0] {
                let verdict = is_l_stationary(&m, &e.point, budget(), l, None).unwrap();
                let g = m.grad(e.point.entries()).unwrap();
                let u: Vec<f64> = (0..5).map(|i| e.point.get(i) - g[i] / l).collect();
                // Tie-broken projection.
                let p = crate::sparsity::project_cs(&u, budget()).unwrap();
                let close = |a: &[f64], b: &[f64]| {
                    a.iter()
                        .zip(b)
                        .all(|(x, y)| (x - y).abs() <= 1e-7 * (1.0 + y.abs()))
                };
                let direct = close(p.entries(), e.point.entries());
                // Full tied set: x is in the projection iff some support
                // reproduces it.
                let any_support = crate::sparsity::projection_supports(&u, budget())
                    .into_iter()
                    .any(|sup| {
                        let mut z = vec![0.0; 5];
                        for &i in &sup {
                            z[i] = u[i];
                        }
                        close(&z, e.point.entries())
                    });
                assert_eq!(
                    verdict, any_support,
                    "L={l} support={:?} SL={}",
                    e.support, e.stationarity_level
                );
                if direct {
                    assert!(any_support);
                }
            }
        }
    }

    #[test]
    fn s_regular_identity() {
        assert!(is_s_regular(&DenseMatrix::identity(4), 4, 100).unwrap());
    }

    #[test]
    fn s_regular_fails_on_duplicate_columns() {
        let a = DenseMatrix::new(3, 3, vec![1.0, 1.0, 0.0, 2.0, 2.0, 1.0, 3.0, 3.0, 0.0]).unwrap();
        assert!(!is_s_regular(&a, 2, 100).unwrap());
    }

    #[test]
    fn s_regular_random_gaussianish() {
        let mut st = 41u64;
        let data: Vec<f64> = (0..20).map(|_| uniform(&mut st)).collect();
        let a = DenseMatrix::new(4, 5, data).unwrap();
        assert!(is_s_regular(&a, 4, 100).unwrap());
    }

    #[test]
    fn cw_diagonal_case_certifies_support_minimality() {
        // For a full-budget CW-minimum the i = j case alone certifies that
        // each support coordinate is at its 1-D minimum.
        let m = example_model();
        let x6 = SparseVector::from_dense(vec![0.0, -8.0 / 3.0, 0.0, 22.0 / 3.0, 0.0]);
        let fx = m.eval(x6.entries()).unwrap();
        for &i in x6.support() {
            let (_t, f) = m.minimize_swap(x6.entries(), i, i).unwrap();
            assert!((f - fx).abs() <= 1e-9 * (1.0 + fx.abs()));
        }
    }
}
