//! Scenario loading, execution and validation behind the `eitfwm` binary.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod presets;
pub mod runner;
pub mod scenario;
pub mod validate;

pub use error::{CliError, Result};
pub use presets::{load_preset, PRESETS};
pub use runner::{run, RunReport};
pub use scenario::{load_scenario, parse_scenario, Overrides, Scenario};
