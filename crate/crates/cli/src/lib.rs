//! Script front end: parse a session, run it against the engine, and emit
//! JSON and text reports.

pub mod ast;
pub mod error;
pub mod parse;
pub mod session;

pub use ast::{render, Script};
pub use error::{CliError, ErrorObject};
pub use parse::parse_script;
pub use session::{run_session, run_source, Options, SessionOutcome, SessionReport};
