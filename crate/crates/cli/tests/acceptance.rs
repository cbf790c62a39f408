//! Acceptance suite: one test per criterion, each printing a single
//! `acceptance criterion N: PASS` line (run with `-- --nocapture` to see the
//! lines for passing tests). A failing criterion panics with a
//! `acceptance criterion N: FAIL` message carrying the diagnostic.
//!
//! Criterion 5 is expected to fail: the published 11-iteration exchange
//! trace it checks cannot be produced by the exchange method as defined,
//! because the published run skips a strictly better admissible first
//! exchange. See the message in that test for the numbers.

use sparsopt::experiments::{run_multistart, Algo};
use sparsopt::fixtures::{
    quadratic_example, reproduce_fixtures, sensing_example, QUADRATIC_BF_COORDS,
    QUADRATIC_BF_LEVELS, QUADRATIC_BF_VALUES, SENSING_BF_LEVELS, SENSING_BF_SHIFTED_VALUES,
    SENSING_TRACE, SENSING_X_TRUE,
};
use sparsopt::instance::{generate_gaussian_ls, generate_quartic, BuiltModel};
use sparsopt::rng::CounterRng;

use sparsopt_core::models::{LeastSquaresModel, Objective, QuadraticModel};
use sparsopt_core::numerics::{self, DenseMatrix};
use sparsopt_core::optimality::{enumerate_bf, is_cw_minimum, is_l_stationary};
use sparsopt_core::solvers::{
    greedy_sparse_simplex, iht, matching_pursuit, orthogonal_matching_pursuit,
    partial_sparse_simplex, surrogate_argmin_check, SolverConfig,
};
use sparsopt_core::sparsity::{project_cs, SparsityBudget};

fn quadratic_model() -> QuadraticModel {
    QuadraticModel::new(
        DenseMatrix::identity_plus_ones(5),
        vec![-3.0, -2.0, -3.0, -12.0, -5.0],
    )
    .unwrap()
}

fn sensing_model() -> LeastSquaresModel {
    match sensing_example().build_model().unwrap() {
        BuiltModel::LeastSquares(m) => m,
        _ => unreachable!(),
    }
}

fn budget_2_of_5() -> SparsityBudget {
    SparsityBudget::new(2, 5).unwrap()
}

fn max_abs_dev(actual: &[f64], expected: &[f64]) -> f64 {
    actual
        .iter()
        .zip(expected)
        .map(|(a, e)| (a - e).abs())
        .fold(0.0, f64::max)
}

fn support_of(x: &[f64]) -> Vec<usize> {
    x.iter()
        .enumerate()
        .filter(|(_, &v)| v != 0.0)
        .map(|(i, _)| i)
        .collect()
}

#[test]
fn criterion_01_quadratic_bf_catalog() {
    let catalog = enumerate_bf(&quadratic_model(), budget_2_of_5(), 1000).unwrap();
    assert_eq!(
        catalog.entries.len(),
        10,
        "acceptance criterion 1: FAIL - expected 10 basic feasible vectors, got {}",
        catalog.entries.len()
    );
    for (k, entry) in catalog.entries.iter().enumerate() {
        let coord_dev = max_abs_dev(entry.point.entries(), &QUADRATIC_BF_COORDS[k]);
        assert!(
            coord_dev <= 1e-3,
            "acceptance criterion 1: FAIL - entry {k} coordinates off by {coord_dev:.2e} (tol 1e-3)"
        );
        let value_dev = (entry.value - QUADRATIC_BF_VALUES[k]).abs();
        assert!(
            value_dev <= 1e-2,
            "acceptance criterion 1: FAIL - entry {k} value off by {value_dev:.2e} (tol 1e-2)"
        );
        let level_dev = (entry.stationarity_level - QUADRATIC_BF_LEVELS[k]).abs();
        assert!(
            level_dev <= 1e-2,
            "acceptance criterion 1: FAIL - entry {k} stationarity level off by {level_dev:.2e} (tol 1e-2)"
        );
    }
    println!("acceptance criterion 1: PASS");
}

#[test]
fn criterion_02_lipschitz_constants() {
    let (lq, lq2) = quadratic_model().lipschitz_constants();
    let (lq, lq2) = (lq.unwrap(), lq2.unwrap());
    assert!(
        (lq - 12.0).abs() <= 1e-9 && (lq2 - 6.0).abs() <= 1e-9,
        "acceptance criterion 2: FAIL - quadratic constants L = {lq}, L2 = {lq2} (expected 12, 6)"
    );
    let (ls_l, ls_l2) = sensing_model().lipschitz_constants();
    let (ls_l, ls_l2) = (ls_l.unwrap(), ls_l2.unwrap());
    assert!(
        (ls_l - 4.78).abs() <= 0.01,
        "acceptance criterion 2: FAIL - sensing L = {ls_l} (expected 4.78 +/- 0.01)"
    );
    assert!(
        (ls_l2 - 3.4972).abs() <= 0.001,
        "acceptance criterion 2: FAIL - sensing L2 = {ls_l2} (expected 3.4972 +/- 0.001)"
    );
    println!("acceptance criterion 2: PASS");
}

#[test]
fn criterion_03_optimality_hierarchy() {
    let model = quadratic_model();
    let budget = budget_2_of_5();
    let catalog = enumerate_bf(&model, budget, 1000).unwrap();
    let stationary_at_6: Vec<usize> = (0..catalog.entries.len())
        .filter(|&i| is_l_stationary(&model, &catalog.entries[i].point, budget, 6.0, None).unwrap())
        .collect();
    assert_eq!(
        stationary_at_6,
        vec![2, 5, 7],
        "acceptance criterion 3: FAIL - L = 6 stationary set is {stationary_at_6:?}, expected [2, 5, 7]"
    );
    let cw_set: Vec<usize> = (0..catalog.entries.len())
        .filter(|&i| {
            is_cw_minimum(&model, &catalog.entries[i].point, budget, None)
                .unwrap()
                .0
        })
        .collect();
    assert_eq!(
        cw_set,
        vec![5],
        "acceptance criterion 3: FAIL - coordinate-wise minimum set is {cw_set:?}, expected [5]"
    );
    assert_eq!(
        catalog.argmin(),
        Some(5),
        "acceptance criterion 3: FAIL - catalog argmin is {:?}, expected Some(5)",
        catalog.argmin()
    );
    println!("acceptance criterion 3: PASS");
}

#[test]
fn criterion_04_sensing_bf_catalog() {
    let model = sensing_model();
    let catalog = enumerate_bf(&model, budget_2_of_5(), 1000).unwrap();
    assert_eq!(
        catalog.entries.len(),
        10,
        "acceptance criterion 4: FAIL - expected 10 entries, got {}",
        catalog.entries.len()
    );
    let b_norm_sq = numerics::norm_sq(model.rhs());
    for (k, entry) in catalog.entries.iter().enumerate() {
        let shifted = entry.value - b_norm_sq;
        let value_dev = (shifted - SENSING_BF_SHIFTED_VALUES[k]).abs();
        assert!(
            value_dev <= 5e-2,
            "acceptance criterion 4: FAIL - entry {k} shifted value {shifted:.4} off by {value_dev:.2e} (tol 5e-2)"
        );
        let level_dev = (entry.stationarity_level - SENSING_BF_LEVELS[k]).abs();
        assert!(
            level_dev <= 5e-2,
            "acceptance criterion 4: FAIL - entry {k} stationarity level off by {level_dev:.2e} (tol 5e-2)"
        );
    }
    println!("acceptance criterion 4: PASS");
}

#[test]
fn criterion_05_published_exchange_trace() {
    let model = sensing_model();
    let config = SolverConfig {
        record_trace: true,
        ..SolverConfig::default()
    };
    let run = greedy_sparse_simplex(&model, budget_2_of_5(), &SENSING_TRACE[0], &config).unwrap();

    // The terminal point is reproduced regardless of the path taken.
    let terminal_dev = max_abs_dev(run.x.entries(), &SENSING_X_TRUE);
    assert!(
        terminal_dev <= 1e-4,
        "acceptance criterion 5: FAIL - terminal point off by {terminal_dev:.2e} (tol 1e-4)"
    );

    let steps = &run.trace.as_ref().unwrap().steps;
    for (k, expected) in SENSING_TRACE.iter().enumerate() {
        let step = steps.get(k).unwrap_or_else(|| {
            panic!(
                "acceptance criterion 5: FAIL - trace has {} iterates, expected at least {}",
                steps.len(),
                SENSING_TRACE.len()
            )
        });
        assert_eq!(
            support_of(&step.iterate),
            support_of(expected),
            "acceptance criterion 5: FAIL - iterate {k} support {:?} differs from the published \
             {:?}. The published trace moves first to (0, 1, 1.5608, 0, 0) with objective 3.4139, \
             but the exchange over all coordinate pairs admits zeroing coordinate 3 and \
             re-optimizing coordinate 2 for objective 0.9549, which the method takes instead. \
             The published trace is reproduced only when exchanges are restricted to off-support \
             target coordinates.",
            support_of(&step.iterate),
            support_of(expected)
        );
        let dev = max_abs_dev(&step.iterate, expected);
        assert!(
            dev <= 1e-3,
            "acceptance criterion 5: FAIL - iterate {k} off by {dev:.2e} (tol 1e-3)"
        );
    }
    println!("acceptance criterion 5: PASS");
}

#[test]
fn criterion_06_multistart_structure() {
    let instance = sensing_example();
    let n_starts = 1000;
    let seed = 20_240_817;

    let config = |l: Option<f64>| SolverConfig {
        l,
        ..SolverConfig::default()
    };

    // Thresholded gradient runs only reach points whose stationarity level
    // is at most the step constant: with L = 9.56 the two entries above it
    // (levels 13.97 and 18.70) must receive zero mass.
    let report = run_multistart(&instance, Algo::Iht, &config(Some(9.56)), n_starts, seed).unwrap();
    for &bin in &[5usize, 7] {
        assert_eq!(
            report.histogram[bin],
            0,
            "acceptance criterion 6: FAIL - step constant 9.56 reached catalog entry {bin} \
             (level above 9.56) {} times",
            report.histogram[bin]
        );
    }

    // With L = 5.26 entries with levels 8.46 and 9.05 drop out as well.
    let report = run_multistart(&instance, Algo::Iht, &config(Some(5.26)), n_starts, seed).unwrap();
    for &bin in &[2usize, 5, 7, 9] {
        assert_eq!(
            report.histogram[bin],
            0,
            "acceptance criterion 6: FAIL - step constant 5.26 reached catalog entry {bin} {} times",
            report.histogram[bin]
        );
    }

    // The full exchange method only stops at coordinate-wise minima: entries
    // 0, 3, 6 on this problem.
    let report = run_multistart(&instance, Algo::Gss, &config(None), n_starts, seed).unwrap();
    for (bin, &count) in report.histogram.iter().enumerate() {
        assert!(
            count == 0 || matches!(bin, 0 | 3 | 6),
            "acceptance criterion 6: FAIL - full exchange reached bin {bin} (count {count}), \
             expected mass only on entries 0, 3, 6"
        );
    }

    // The partial variant satisfies a weaker condition and additionally
    // stops at entry 8.
    let report = run_multistart(&instance, Algo::Pss, &config(None), n_starts, seed).unwrap();
    for (bin, &count) in report.histogram.iter().enumerate() {
        assert!(
            count == 0 || matches!(bin, 0 | 3 | 6 | 8),
            "acceptance criterion 6: FAIL - partial exchange reached bin {bin} (count {count}), \
             expected mass only on entries 0, 3, 6, 8"
        );
    }
    println!("acceptance criterion 6: PASS");
}

#[test]
fn criterion_07_property_checks() {
    // Guaranteed per-step decrease of the thresholded gradient method when
    // the step constant exceeds the gradient Lipschitz constant.
    for seed in 0..50u64 {
        let inst = generate_gaussian_ls(seed, 5, 8, 3, false, seed % 2 == 0);
        let model = match inst.build_model().unwrap() {
            BuiltModel::LeastSquares(m) => m,
            _ => unreachable!(),
        };
        let budget = inst.budget().unwrap();
        let lf = model.lipschitz_constants().0.unwrap();
        let l = 1.5 * lf;
        let mut rng = CounterRng::new(seed ^ 0xD1CE);
        let mut x0 = vec![0.0; 8];
        for &i in &rng.subset(8, 3) {
            x0[i] = rng.normal();
        }
        let config = SolverConfig {
            l: Some(l),
            record_trace: true,
            ..SolverConfig::default()
        };
        let run = iht(&model, budget, &x0, &config).unwrap();
        let steps = &run.trace.as_ref().unwrap().steps;
        for w in steps.windows(2) {
            let move_sq: f64 = w[0]
                .iterate
                .iter()
                .zip(&w[1].iterate)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let required = (l - lf) / 2.0 * move_sq;
            assert!(
                w[1].value <= w[0].value - required + 1e-9 * (1.0 + w[0].value.abs()),
                "acceptance criterion 7: FAIL - seed {seed}: step decreased by {:.3e}, \
                 required {required:.3e}",
                w[0].value - w[1].value
            );
        }
    }

    // The fixed-point characterization: a basic feasible vector minimizes
    // the step-L surrogate over the sparse set exactly when its stationarity
    // level is at most L.
    for seed in 0..20u64 {
        let inst = generate_gaussian_ls(1000 + seed, 5, 6, 2, false, false);
        let model = match inst.build_model().unwrap() {
            BuiltModel::LeastSquares(m) => m,
            _ => unreachable!(),
        };
        let budget = inst.budget().unwrap();
        let l = 1.5 * model.lipschitz_constants().0.unwrap();
        let catalog = enumerate_bf(&model, budget, 1000).unwrap();
        for entry in &catalog.entries {
            let expected = entry.stationarity_level <= l;
            let actual = surrogate_argmin_check(&model, &entry.point, budget, l).unwrap();
            assert_eq!(
                actual, expected,
                "acceptance criterion 7: FAIL - seed {seed}: surrogate argmin check {actual} \
                 but stationarity level {} vs L {l}",
                entry.stationarity_level
            );
        }
    }

    // Sparse projection against brute force over all supports.
    for seed in 0..30u64 {
        let mut rng = CounterRng::new(2000 + seed);
        let x: Vec<f64> = (0..8).map(|_| rng.normal()).collect();
        let budget = SparsityBudget::new(3, 8).unwrap();
        let projected = project_cs(&x, budget).unwrap();
        let dist = |y: &[f64]| -> f64 {
            y.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum()
        };
        let mut best = f64::INFINITY;
        for support in sparsopt_core::optimality::combinations(8, 3) {
            let mut y = vec![0.0; 8];
            for &i in &support {
                y[i] = x[i];
            }
            best = best.min(dist(&y));
        }
        let own = dist(projected.entries());
        assert!(
            own <= best + 1e-12,
            "acceptance criterion 7: FAIL - seed {seed}: projection distance {own:.6e} \
             exceeds brute-force optimum {best:.6e}"
        );
    }

    // Gradients against central finite differences for all three model
    // kinds.
    let instances = vec![
        generate_gaussian_ls(7, 5, 8, 3, true, true),
        quadratic_example(),
        generate_quartic(7, 6, 8, 3),
    ];
    for inst in &instances {
        let model = inst.build_model().unwrap();
        let obj = model.objective();
        let n = obj.dim();
        let mut rng = CounterRng::new(3000);
        let x: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let grad = obj.grad(&x).unwrap();
        let h = 1e-6;
        let scale = 1.0 + numerics::inf_norm(&grad);
        for i in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            let fd = (obj.eval(&xp).unwrap() - obj.eval(&xm).unwrap()) / (2.0 * h);
            let rel = (grad[i] - fd).abs() / scale;
            assert!(
                rel <= 1e-5,
                "acceptance criterion 7: FAIL - {:?} gradient coordinate {i}: analytic \
                 {:.6e} vs finite difference {fd:.6e} (rel {rel:.2e})",
                inst.kind,
                grad[i]
            );
        }
    }
    println!("acceptance criterion 7: PASS");
}

#[test]
fn criterion_08_pursuit_baselines() {
    let config = SolverConfig {
        record_trace: true,
        ..SolverConfig::default()
    };
    for seed in 0..20u64 {
        let inst = generate_gaussian_ls(4000 + seed, 6, 10, 3, true, seed % 2 == 0);
        let model = match inst.build_model().unwrap() {
            BuiltModel::LeastSquares(m) => m,
            _ => unreachable!(),
        };
        let budget = inst.budget().unwrap();

        // While the support is under budget, the exchange method started at
        // zero takes exactly the matching-pursuit step: both pick the
        // coordinate with the largest normalized residual correlation and
        // apply the exact one-dimensional minimizer.
        let mp = matching_pursuit(&model, budget, &config).unwrap();
        let gss = greedy_sparse_simplex(&model, budget, &vec![0.0; 10], &config).unwrap();
        let mp_steps = &mp.trace.as_ref().unwrap().steps;
        let gss_steps = &gss.trace.as_ref().unwrap().steps;
        for k in 1..mp_steps.len().min(gss_steps.len()) {
            if support_of(&mp_steps[k - 1].iterate).len() >= budget.s() {
                break;
            }
            let dev = max_abs_dev(&gss_steps[k].iterate, &mp_steps[k].iterate);
            let scale = 1.0 + numerics::inf_norm(&mp_steps[k].iterate);
            assert!(
                dev <= 1e-9 * scale,
                "acceptance criterion 8: FAIL - seed {seed}: exchange iterate {k} differs \
                 from the pursuit iterate by {dev:.2e}"
            );
        }

        // After each orthogonal refit the residual is orthogonal to every
        // selected column.
        let omp = orthogonal_matching_pursuit(&model, budget, &config).unwrap();
        let r = model.residual(omp.x.entries()).unwrap();
        let scale = 1.0 + numerics::norm(model.rhs());
        for &j in omp.x.support() {
            let corr = numerics::dot(&model.matrix().column(j), &r).abs();
            assert!(
                corr <= 1e-10 * scale,
                "acceptance criterion 8: FAIL - seed {seed}: residual correlation {corr:.2e} \
                 with selected column {j}"
            );
        }
    }
    println!("acceptance criterion 8: PASS");
}

#[test]
fn criterion_09_quartic_recovery_ordering() {
    let config = SolverConfig::default();
    let n_instances = 10;
    let n_starts = 50;
    let mut gss_successes = 0usize;
    let mut pss_successes = 0usize;
    for seed in 0..n_instances {
        let inst = generate_quartic(5000 + seed, 20, 30, 3);
        let model = inst.build_model().unwrap();
        let obj = model.objective();
        let budget = inst.budget().unwrap();
        let x_true = inst.x_true.as_ref().unwrap();
        let scale = 1.0 + numerics::norm(x_true);
        // Targets are squares of linear measurements, so both signs of the
        // planted vector attain objective zero.
        let recovered = |x: &[f64]| -> bool {
            let d_plus: f64 = x
                .iter()
                .zip(x_true)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let d_minus: f64 = x
                .iter()
                .zip(x_true)
                .map(|(a, b)| (a + b) * (a + b))
                .sum::<f64>()
                .sqrt();
            d_plus.min(d_minus) <= 1e-3 * scale
        };
        let mut rng = CounterRng::new(6000 + seed);
        for _ in 0..n_starts {
            let mut x0 = vec![0.0; 30];
            for &i in &rng.subset(30, 3) {
                x0[i] = rng.normal();
            }
            let gss = greedy_sparse_simplex(obj, budget, &x0, &config).unwrap();
            if recovered(gss.x.entries()) {
                gss_successes += 1;
            }
            let pss = partial_sparse_simplex(obj, budget, &x0, &config).unwrap();
            if recovered(pss.x.entries()) {
                pss_successes += 1;
            }
        }
    }
    assert!(
        gss_successes >= pss_successes,
        "acceptance criterion 9: FAIL - full exchange recovered {gss_successes} of {} runs, \
         partial recovered {pss_successes}",
        n_instances as usize * n_starts
    );
    println!(
        "acceptance criterion 9: PASS (full exchange {gss_successes}, partial {pss_successes} \
         of {} runs recovered)",
        n_instances as usize * n_starts
    );
}

#[test]
fn criterion_10_determinism() {
    let a = serde_json::to_vec(&reproduce_fixtures()).unwrap();
    let b = serde_json::to_vec(&reproduce_fixtures()).unwrap();
    assert_eq!(
        a, b,
        "acceptance criterion 10: FAIL - fixture reports differ between runs"
    );

    let instance = sensing_example();
    let config = SolverConfig::default();
    let r1 = run_multistart(&instance, Algo::Gss, &config, 100, 42).unwrap();
    let r2 = run_multistart(&instance, Algo::Gss, &config, 100, 42).unwrap();
    assert_eq!(
        serde_json::to_vec(&r1).unwrap(),
        serde_json::to_vec(&r2).unwrap(),
        "acceptance criterion 10: FAIL - multi-start reports differ between identically seeded runs"
    );
    println!("acceptance criterion 10: PASS");
}
