//! Construction scripts: parsing, canonical rendering, evaluation and JSON
//! output of states.

pub mod interp;
pub mod json;
pub mod syntax;

use thiserror::Error;

pub use interp::{run, run_text, Outcome, Transcript, Value};
pub use json::{state_json, StateJson, SurfaceJson};
pub use syntax::{parse, render, Cmp, Expr, Script, Span, Stmt, BUILTINS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("syntax error: found {found}, expected {}", expected.join(" | "))]
    Syntax { found: String, expected: Vec<String> },
    #[error("unbound name `{0}`")]
    UnboundName(String),
    #[error("`{name}` takes {expected} argument(s), got {found}")]
    ArityMismatch { name: String, expected: String, found: usize },
    #[error("`{0}` is already bound")]
    Rebinding(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error(transparent)]
    Runtime(#[from] crate::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{kind}", span.map(|s| format!("{s}: ")).unwrap_or_default())]
pub struct DslError {
    pub kind: DslErrorKind,
    pub span: Option<Span>,
}
