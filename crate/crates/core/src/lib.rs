//! Minimization of a smooth objective subject to a sparsity constraint
//! `||x||_0 <= s`.
//!
//! The crate provides:
//!
//! * [`numerics`] — small dense linear algebra and a closed-form real cubic
//!   root finder;
//! * [`sparsity`] — support bookkeeping, order statistics `M_k` and the
//!   hard-thresholding projection onto the set of s-sparse vectors;
//! * [`models`] — the objective abstraction plus least-squares, quadratic and
//!   quartic (quadratic-measurement) objectives with exact coordinate
//!   minimization oracles;
//! * [`optimality`] — certification of candidate points against the
//!   basic-feasibility / L-stationarity / coordinate-wise minimality
//!   hierarchy, and exhaustive enumeration of basic feasible vectors;
//! * [`solvers`] — iterative hard thresholding, the greedy and partial
//!   sparse-simplex methods, and matching pursuit / orthogonal matching
//!   pursuit baselines, all with full iteration traces.
//!
//! The crate is `no_std` compatible (requires `alloc`); the `std` feature
//! (default) is only needed by downstream tooling.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod models;
#[cfg(test)]
pub(crate) mod testutil;
pub mod numerics;
pub mod optimality;
pub mod solvers;
pub mod sparsity;

pub use models::{LeastSquaresModel, Objective, QuadraticModel, QuarticModel};
pub use numerics::{DenseMatrix, DenseVector};
pub use optimality::{BfCatalog, OptimalityCertificate};
pub use solvers::{SolverConfig, SolverTrace, Termination};
pub use sparsity::{SparseVector, SparsityBudget};
