//! Command-line front end: expression parsing, request dispatch and output.

pub mod error;
pub mod json;
pub mod parse;
pub mod report;
pub mod run;

pub use error::CliError;
pub use report::Report;
pub use run::{parse_field, run, Command, Format, Request};
