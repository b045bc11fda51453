//! Command-line verification harness: configuration, the check suites,
//! JSON reports and CSV field dumps.

pub mod config;
pub mod document;
pub mod dump;
pub mod error;
pub mod report;
pub mod shapes;
pub mod suites;

pub use config::{FileConfig, Overrides, Suite, SuiteConfig};
pub use document::ChartDocument;
pub use error::{CliError, CliResult};
pub use report::Report;
pub use suites::run_suite;
