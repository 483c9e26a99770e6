//! Command-line front end for `cvtele`: scenario files, the pinned back-test,
//! figure datasets and parameter sweeps.

pub mod axis;
pub mod backtest;
pub mod config;
pub mod error;
pub mod figure;
pub mod scenario;
pub mod svg;
pub mod sweep;
pub mod table;

pub use config::{Engine, Scenario};
pub use error::{CliError, Result};
pub use scenario::{run_scenario, ScenarioReport};
