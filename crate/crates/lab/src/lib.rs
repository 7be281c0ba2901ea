//! Config-driven experiment runner on top of `semiclassical`.
//!
//! A config names one experiment kind and its parameters; a run produces a
//! CSV of `(ħ or N, t)` rows and a JSON summary with checks, fits and
//! cross-checks. See [`cli`] for the command-line contract.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod report;
pub mod spec;

pub use config::{Config, Kind};
pub use error::{LabError, Result};
pub use experiments::{run, Experiment};
pub use report::{Report, Row, Summary, CSV_COLUMNS};
pub use spec::CatalogSpec;
