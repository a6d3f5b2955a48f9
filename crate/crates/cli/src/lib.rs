//! Verification runner behind the `slring` binary: algebra loading, the
//! basis cache, task reports and the acceptance suite.

pub mod cache;
pub mod criteria;
pub mod error;
pub mod report;
pub mod tasks;

pub use error::CliError;
