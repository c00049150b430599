//! Command-line frontend: input parsing, report rendering and the golden corpus.

pub mod cli;
pub mod corpus;
pub mod input;
pub mod render;
pub mod report;

pub use cli::run;
pub use input::CliError;
