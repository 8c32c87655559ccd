//! Diagnostics shared by the document validator, the script checker and
//! the parser's lenient mode.

use std::fmt;

use crate::model::ElementError;
use crate::script::ScriptError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DiagnosticKind {
    ZeroViewport,
    MultipleScripts,
    ScriptNotLast,
    DuplicateId(String),
    /// A script names an element id that the document does not define.
    UnresolvedId(String),
    /// A trigger or listener is applied to an element of the wrong kind.
    TypeMismatch {
        operation: String,
        id: String,
    },
    Element(ElementError),
    Script(ScriptError),
    /// Lenient mode dropped an unknown property.
    DroppedProperty(String),
    UnknownHeaderKey(String),
}

impl DiagnosticKind {
    /// Stable short code used in CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            DiagnosticKind::ZeroViewport => "zero-viewport",
            DiagnosticKind::MultipleScripts => "multiple-scripts",
            DiagnosticKind::ScriptNotLast => "script-not-last",
            DiagnosticKind::DuplicateId(_) => "duplicate-id",
            DiagnosticKind::UnresolvedId(_) => "unresolved-id",
            DiagnosticKind::TypeMismatch { .. } => "type-mismatch",
            DiagnosticKind::Element(e) => e.code(),
            DiagnosticKind::Script(_) => "script-syntax",
            DiagnosticKind::DroppedProperty(_) => "dropped-property",
            DiagnosticKind::UnknownHeaderKey(_) => "unknown-header-key",
        }
    }
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagnosticKind::ZeroViewport => f.write_str("viewport_width must be positive"),
            DiagnosticKind::MultipleScripts => f.write_str("more than one script element"),
            DiagnosticKind::ScriptNotLast => f.write_str("script element must be the last element"),
            DiagnosticKind::DuplicateId(id) => write!(f, "id `{id}` is used more than once"),
            DiagnosticKind::UnresolvedId(id) => write!(f, "script references unknown id `{id}`"),
            DiagnosticKind::TypeMismatch { operation, id } => {
                write!(f, "`{operation}` cannot be applied to element `{id}`")
            }
            DiagnosticKind::Element(e) => e.fmt(f),
            DiagnosticKind::Script(e) => e.fmt(f),
            DiagnosticKind::DroppedProperty(name) => write!(f, "dropped unknown property `{name}`"),
            DiagnosticKind::UnknownHeaderKey(name) => write!(f, "ignored unknown header key `{name}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagnosticKind,
    /// Index into the document's element list.
    pub element: Option<usize>,
    pub property: Option<String>,
    /// 1-based source line, filled in by the parser.
    pub line: Option<usize>,
}

impl Diagnostic {
    pub fn error(kind: DiagnosticKind) -> Self {
        Diagnostic { severity: Severity::Error, kind, element: None, property: None, line: None }
    }

    pub fn warning(kind: DiagnosticKind) -> Self {
        Diagnostic { severity: Severity::Warning, kind, element: None, property: None, line: None }
    }

    pub fn at(mut self, element: usize) -> Self {
        self.element = Some(element);
        self
    }

    pub fn on_property(mut self, name: impl Into<String>) -> Self {
        self.property = Some(name.into());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.severity, self.kind.code(), self.kind)
    }
}
