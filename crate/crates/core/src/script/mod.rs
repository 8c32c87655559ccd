//! MAMLScript: lexer, parser, semantic checks against a document, and
//! lowering to the event-wiring IR consumed by the transpiler.

pub mod ast;
mod check;
pub mod lexer;
mod lower;
mod parse;
pub mod sim;

pub use ast::{Arg, Listener, ListenerEvent, ScriptAst, Subject, TriggerCall, TriggerName};
pub use check::check_script;
pub use lexer::Pos;
pub use lower::{lower_script, EventWiring, Op, ValueExpr, WiredEvent, WiringEntry};
pub use parse::parse_script;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScriptError {
    #[error("{pos}: {message}")]
    Lex { pos: Pos, message: String },
    #[error("{pos}: expected {expected}, found {found}")]
    Parse { pos: Pos, expected: String, found: String },
    #[error("{pos}: `{name}` takes {expected} argument(s), found {found}")]
    Arity { pos: Pos, name: String, expected: String, found: usize },
    #[error("{pos}: unknown listener `{name}`")]
    UnknownListener { pos: Pos, name: String },
    #[error("{pos}: unknown trigger `{name}`")]
    UnknownTrigger { pos: Pos, name: String },
    #[error("{pos}: `{name}` returns no value and cannot be nested")]
    NestedNonValueTrigger { pos: Pos, name: String },
    #[error("{pos}: `{name}` only returns a value and cannot be a statement")]
    BareValueTrigger { pos: Pos, name: String },
    #[error("{pos}: bad argument to `{name}`: {reason}")]
    BadArgument { pos: Pos, name: String, reason: String },
}

impl ScriptError {
    pub fn pos(&self) -> Pos {
        match self {
            ScriptError::Lex { pos, .. }
            | ScriptError::Parse { pos, .. }
            | ScriptError::Arity { pos, .. }
            | ScriptError::UnknownListener { pos, .. }
            | ScriptError::UnknownTrigger { pos, .. }
            | ScriptError::NestedNonValueTrigger { pos, .. }
            | ScriptError::BareValueTrigger { pos, .. }
            | ScriptError::BadArgument { pos, .. } => *pos,
        }
    }
}
