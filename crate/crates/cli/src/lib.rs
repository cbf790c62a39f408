//! Experiment harness around `sparsopt-core`: problem files, seeded
//! generators, multi-start experiments, basin grids, and the embedded
//! fixture suite. The `sparsopt` binary exposes all of it on the command
//! line.

pub mod experiments;
pub mod fixtures;
pub mod instance;
pub mod report;
pub mod rng;
