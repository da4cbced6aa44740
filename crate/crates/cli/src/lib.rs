//! Command-line front end: input handling, JSON documents, the fixture
//! catalog and the subcommands. `main.rs` only parses arguments and exits.

pub mod commands;
pub mod document;
pub mod fixtures;
pub mod input;
pub mod pretty;

pub use commands::{run, Cli, Command, Options, Outcome};
pub use document::{FixtureSummary, ReportDocument, TableEntry};
pub use input::InputArgs;
