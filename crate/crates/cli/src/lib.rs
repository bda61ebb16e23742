//! Configuration, orchestration and output for `fcstat` experiments.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod emit;
pub mod runner;

pub use config::{load_config, parse_config, ConfigError, ExperimentConfig};
pub use runner::{run_experiment, write_outputs, RunError, RunOutcome, RunReport};
