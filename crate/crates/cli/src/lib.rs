//! Instance files, deterministic generation, JSON reports, and the `wsdec`
//! command line on top of `wsdec-core`.

pub mod commands;
pub mod gen;
pub mod instance;
pub mod report;

pub use commands::run;
