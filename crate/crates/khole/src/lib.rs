//! Standard-library companion to `khole-core`: the point-set file format,
//! JSON reports, rayon drivers, the property suites behind `khole verify`,
//! and the counting benchmark.

pub mod bench;
pub mod error;
pub mod instances;
pub mod io;
pub mod parallel;
pub mod report;
pub mod verify;

pub use error::{CliError, CliResult};
