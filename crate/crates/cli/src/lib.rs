//! Script checker, REPL and theorem export on top of `cqe-core`.

pub mod error;
pub mod export;
pub mod proof;
pub mod repl;
pub mod script;
pub mod session;
pub mod style;

pub use error::CliError;
pub use session::{Outcome, ScriptFailure, Session};
