//! Embedded reference problems and the self-check suite that compares the
//! toolkit's output against their published values.
//!
//! Two problems are embedded:
//!
//! * a dense 5-variable quadratic (Q = I + ones, b = -(3,2,3,12,5), s = 2)
//!   with a fully known catalog of 10 basic feasible vectors;
//! * a 4x5 column-normalized sensing problem ("sensing_4x5") with planted
//!   solution (1,-1,0,0,0), s = 2, also with a 10-entry catalog.
//!
//! One embedded expectation is knowingly unreproducible: the published
//! 11-iteration trace of the exchange method on the sensing problem skips a
//! strictly better admissible exchange at its first step, so the method as
//! defined (searching all coordinate pairs) takes a different path. The
//! corresponding checks stay in the suite and report their failure rather
//! than being deleted or weakened; see the trace checks below.

use serde::{Deserialize, Serialize};

use sparsopt_core::models::{Objective, QuadraticModel};
use sparsopt_core::numerics::{self, mat_vec, DenseMatrix};
use sparsopt_core::optimality::{enumerate_bf, is_cw_minimum, is_l_stationary, BfCatalog};
use sparsopt_core::solvers::{greedy_sparse_simplex, SolverConfig};
use sparsopt_core::sparsity::SparsityBudget;

use crate::instance::{ProblemInstance, ProblemKind, FORMAT_VERSION};

pub fn quadratic_example() -> ProblemInstance {
    ProblemInstance {
        format_version: FORMAT_VERSION,
        kind: ProblemKind::Quadratic,
        m: 5,
        n: 5,
        s: 2,
        a: None,
        q: Some(DenseMatrix::identity_plus_ones(5).data().to_vec()),
        b: Some(vec![-3.0, -2.0, -3.0, -12.0, -5.0]),
        mats: None,
        factors: None,
        c: None,
        x_true: None,
        provenance: None,
    }
}

pub const SENSING_A: [f64; 20] = [
    0.8899, -0.4355, 0.5304, -0.2324, 0.3745, //
    0.0797, -0.3475, 0.0942, 0.9681, -0.4919, //
    0.4425, 0.3248, 0.6921, 0.0921, 0.7575, //
    0.0773, 0.7643, -0.4804, 0.0142, 0.2099,
];

pub const SENSING_X_TRUE: [f64; 5] = [1.0, -1.0, 0.0, 0.0, 0.0];

pub fn sensing_example() -> ProblemInstance {
    let a = DenseMatrix::new(4, 5, SENSING_A.to_vec()).unwrap();
    let b = mat_vec(&a, &SENSING_X_TRUE).unwrap();
    ProblemInstance {
        format_version: FORMAT_VERSION,
        kind: ProblemKind::LeastSquares,
        m: 4,
        n: 5,
        s: 2,
        a: Some(SENSING_A.to_vec()),
        q: None,
        b: Some(b),
        mats: None,
        factors: None,
        c: None,
        x_true: Some(SENSING_X_TRUE.to_vec()),
        provenance: None,
    }
}

/// Catalog coordinates of the quadratic example, by lexicographic support.
pub const QUADRATIC_BF_COORDS: [[f64; 5]; 10] = [
    [1.3333, 0.3333, 0.0, 0.0, 0.0],
    [1.0, 0.0, 1.0, 0.0, 0.0],
    [-2.0, 0.0, 0.0, 7.0, 0.0],
    [0.3333, 0.0, 0.0, 0.0, 2.3333],
    [0.0, 0.3333, 1.3333, 0.0, 0.0],
    [0.0, -2.6667, 0.0, 7.3333, 0.0],
    [0.0, -0.3333, 0.0, 0.0, 2.6667],
    [0.0, 0.0, -2.0, 7.0, 0.0],
    [0.0, 0.0, 0.3333, 0.0, 2.3333],
    [0.0, 0.0, 0.0, 6.3333, -0.6667],
];

pub const QUADRATIC_BF_VALUES: [f64; 10] = [
    -4.66, -6.00, -78.0, -12.66, -4.66, -82.66, -12.66, -78.0, -12.66, -72.66,
];

pub const QUADRATIC_BF_LEVELS: [f64; 10] =
    [62.0, 20.0, 3.0, 56.0, 62.0, 1.25, 58.0, 3.0, 56.0, 11.0];

/// Published sensing-catalog rows, printed as value − ‖b‖² (the reference
/// lists the optimum at −2.42 although the objective is nonnegative; the
/// offset is ‖b‖² ≈ 2.4251 uniformly across all ten rows).
pub const SENSING_BF_SHIFTED_VALUES: [f64; 10] = [
    -2.42, -1.60, -1.51, -1.99, -1.99, -1.48, -2.11, -1.33, -1.61, -0.11,
];

pub const SENSING_BF_LEVELS: [f64; 10] =
    [0.00, 2.90, 8.46, 0.91, 1.08, 13.97, 0.69, 18.70, 1.50, 9.05];

/// Published 11-iteration exchange-method trace from start (0,1,5,0,0).
pub const SENSING_TRACE: [[f64; 5]; 12] = [
    [0.0, 1.0, 5.0, 0.0, 0.0],
    [0.0, 1.0000, 1.5608, 0.0, 0.0],
    [0.0, 0.0, 1.5608, 0.0, -0.6674],
    [1.6431, 0.0, 0.0, 0.0, -0.6674],
    [1.6431, -0.8634, 0.0, 0.0, 0.0],
    [1.0290, -0.8634, 0.0, 0.0, 0.0],
    [1.0290, -0.9938, 0.0, 0.0, 0.0],
    [1.0013, -0.9938, 0.0, 0.0, 0.0],
    [1.0013, -0.9997, 0.0, 0.0, 0.0],
    [1.0001, -0.9997, 0.0, 0.0, 0.0],
    [1.0001, -1.0000, 0.0, 0.0, 0.0],
    [1.0000, -1.0000, 0.0, 0.0, 0.0],
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub checks: Vec<FixtureCheck>,
}

impl FixtureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  {}  {}\n", c.name, c.detail));
        }
        let (passed, total) = (
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len(),
        );
        out.push_str(&format!("{passed}/{total} fixture checks passed\n"));
        out
    }
}

fn check(checks: &mut Vec<FixtureCheck>, name: &str, passed: bool, detail: String) {
    checks.push(FixtureCheck {
        name: name.into(),
        passed,
        detail,
    });
}

fn max_abs_dev(actual: &[f64], expected: &[f64]) -> f64 {
    actual
        .iter()
        .zip(expected)
        .map(|(a, e)| (a - e).abs())
        .fold(0.0, f64::max)
}

fn catalog_rows(catalog: &BfCatalog) -> (Vec<f64>, Vec<f64>) {
    let values = catalog.entries.iter().map(|e| e.value).collect();
    let levels = catalog
        .entries
        .iter()
        .map(|e| e.stationarity_level)
        .collect();
    (values, levels)
}

/// Run every embedded fixture and report each comparison.
pub fn reproduce_fixtures() -> FixtureReport {
    let mut checks = Vec::new();
    let budget = SparsityBudget::new(2, 5).unwrap();

    // Quadratic example catalog.
    let quad = QuadraticModel::new(
        DenseMatrix::identity_plus_ones(5),
        vec![-3.0, -2.0, -3.0, -12.0, -5.0],
    )
    .unwrap();
    let catalog = enumerate_bf(&quad, budget, 1000).unwrap();
    check(
        &mut checks,
        "quadratic_catalog_size",
        catalog.entries.len() == 10,
        format!("{} entries", catalog.entries.len()),
    );
    let coord_dev = catalog
        .entries
        .iter()
        .zip(&QUADRATIC_BF_COORDS)
        .map(|(e, exp)| max_abs_dev(e.point.entries(), exp))
        .fold(0.0, f64::max);
    check(
        &mut checks,
        "quadratic_catalog_coords",
        coord_dev <= 1e-3,
        format!("max coordinate deviation {coord_dev:.2e} (tol 1e-3)"),
    );
    let (values, levels) = catalog_rows(&catalog);
    let value_dev = max_abs_dev(&values, &QUADRATIC_BF_VALUES);
    check(
        &mut checks,
        "quadratic_catalog_values",
        value_dev <= 1e-2,
        format!("max value deviation {value_dev:.2e} (tol 1e-2)"),
    );
    let level_dev = max_abs_dev(&levels, &QUADRATIC_BF_LEVELS);
    check(
        &mut checks,
        "quadratic_catalog_levels",
        level_dev <= 1e-2,
        format!("max stationarity level deviation {level_dev:.2e} (tol 1e-2)"),
    );

    // Lipschitz constants.
    let (lq, lq2) = quad.lipschitz_constants();
    check(
        &mut checks,
        "quadratic_lipschitz",
        (lq.unwrap() - 12.0).abs() <= 1e-9 && (lq2.unwrap() - 6.0).abs() <= 1e-9,
        format!("L = {:.9}, L2 = {:.9}", lq.unwrap(), lq2.unwrap()),
    );
    let sensing = sensing_example();
    let ls = match sensing.build_model().unwrap() {
        crate::instance::BuiltModel::LeastSquares(m) => m,
        _ => unreachable!(),
    };
    let (ll, ll2) = ls.lipschitz_constants();
    check(
        &mut checks,
        "sensing_lipschitz",
        (ll.unwrap() - 4.78).abs() <= 0.01 && (ll2.unwrap() - 3.4972).abs() <= 0.001,
        format!("L = {:.4}, L2 = {:.4}", ll.unwrap(), ll2.unwrap()),
    );

    // Hierarchy on the quadratic catalog.
    let stationary_at_6: Vec<usize> = (0..10)
        .filter(|&i| is_l_stationary(&quad, &catalog.entries[i].point, budget, 6.0, None).unwrap())
        .collect();
    check(
        &mut checks,
        "quadratic_l6_stationary_set",
        stationary_at_6 == vec![2, 5, 7],
        format!("indices {stationary_at_6:?} (expected [2, 5, 7])"),
    );
    let cw_set: Vec<usize> = (0..10)
        .filter(|&i| {
            is_cw_minimum(&quad, &catalog.entries[i].point, budget, None)
                .unwrap()
                .0
        })
        .collect();
    check(
        &mut checks,
        "quadratic_cw_set",
        cw_set == vec![5],
        format!("indices {cw_set:?} (expected [5])"),
    );
    check(
        &mut checks,
        "quadratic_argmin_is_cw",
        catalog.argmin() == Some(5),
        format!("argmin {:?}", catalog.argmin()),
    );

    // Sensing catalog against the published (value − ||b||²) rows.
    let sensing_catalog = enumerate_bf(&ls, budget, 1000).unwrap();
    let b_norm_sq = numerics::norm_sq(ls.rhs());
    let (values, levels) = catalog_rows(&sensing_catalog);
    let shifted: Vec<f64> = values.iter().map(|v| v - b_norm_sq).collect();
    let value_dev = max_abs_dev(&shifted, &SENSING_BF_SHIFTED_VALUES);
    check(
        &mut checks,
        "sensing_catalog_values",
        sensing_catalog.entries.len() == 10 && value_dev <= 5e-2,
        format!("max shifted-value deviation {value_dev:.2e} (tol 5e-2)"),
    );
    let level_dev = max_abs_dev(&levels, &SENSING_BF_LEVELS);
    check(
        &mut checks,
        "sensing_catalog_levels",
        level_dev <= 5e-2,
        format!("max stationarity level deviation {level_dev:.2e} (tol 5e-2)"),
    );

    // Published exchange-method trace. The support-sequence and per-iterate
    // checks are expected to fail: the published run skipped the admissible
    // exchange (zero coordinate 3, re-optimize coordinate 2, objective
    // 0.9549) that the method as defined takes at step 1.
    let config = SolverConfig {
        record_trace: true,
        ..SolverConfig::default()
    };
    let run = greedy_sparse_simplex(&ls, budget, &SENSING_TRACE[0], &config).unwrap();
    let steps = run.trace.as_ref().unwrap().steps.clone();
    let support_of = |x: &[f64]| -> Vec<usize> {
        x.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(i, _)| i)
            .collect()
    };
    let mut supports_match = steps.len() >= SENSING_TRACE.len();
    let mut coords_dev = 0.0f64;
    for (k, expected) in SENSING_TRACE.iter().enumerate() {
        match steps.get(k) {
            Some(step) => {
                if support_of(&step.iterate) != support_of(expected) {
                    supports_match = false;
                }
                coords_dev = coords_dev.max(max_abs_dev(&step.iterate, expected));
            }
            None => supports_match = false,
        }
    }
    check(
        &mut checks,
        "sensing_trace_supports",
        supports_match,
        "published trace support sequence (expected to fail: the published \
         run skipped a better admissible exchange at step 1)"
            .into(),
    );
    check(
        &mut checks,
        "sensing_trace_coords",
        supports_match && coords_dev <= 1e-3,
        format!("max per-iterate deviation {coords_dev:.2e} (tol 1e-3; same caveat)"),
    );
    let terminal_dev = max_abs_dev(run.x.entries(), &SENSING_X_TRUE);
    check(
        &mut checks,
        "sensing_trace_terminal",
        terminal_dev <= 1e-4,
        format!("terminal deviation {terminal_dev:.2e} (tol 1e-4)"),
    );

    FixtureReport { checks }
}
