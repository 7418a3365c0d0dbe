//! Batch interpreter for char2qf scripts.
//!
//! A script is a sequence of lines, each either `let NAME = EXPR` or a
//! command. Element expressions are evaluated in the most recently bound
//! field (initially `GF(2)(t)`).
//!
//! ```
//! use char2qf_cli::{parse, run, Options};
//! let script = parse("let F = GF(2)(t)\nsplit [1/t, 1+t)\n").unwrap();
//! let out = run(&script, &Options::default());
//! assert_eq!(out.exit_code(), 0);
//! assert_eq!(out.records[0].text, "nonsplit");
//! ```

pub mod ast;
pub mod commands;
pub mod lexer;
pub mod parser;
pub mod value;

use thiserror::Error;

pub use commands::{run, Options, Record, RunOutput, Status};
pub use lexer::Pos;
pub use parser::{parse, parse_expr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, Error)]
pub enum EvalError {
    /// Unbound name, type mismatch or bad flag.
    #[error("{pos}: {msg}")]
    Usage { pos: Pos, msg: String },
    #[error(transparent)]
    Library(#[from] char2qf::Error),
    #[error("timed out after {0} ms")]
    Timeout(u64),
}

impl EvalError {
    pub fn usage(pos: Pos, msg: impl Into<String>) -> Self {
        EvalError::Usage { pos, msg: msg.into() }
    }
}
