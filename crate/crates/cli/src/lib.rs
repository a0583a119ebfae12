//! Command-line front end: `analyze`, `score`, `export`, `synth` and
//! `task-metrics`.
//!
//! Exit codes are 0 on success, 1 for input or configuration errors and 2 when
//! an iterative metric fails to converge.

pub mod app;
pub mod config;
pub mod error;
pub mod export;
pub mod report;
pub mod score;

pub use app::run;
pub use config::RunConfig;
pub use error::CliError;
pub use report::{analyze, analyze_log, Report};
pub use score::{score_groups, ProfilesFile};
