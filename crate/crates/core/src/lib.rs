//! MAML toolchain core.
//!
//! MAML describes a web page as a flat list of absolutely positioned
//! elements, one JSON object per line, optionally followed by a script
//! element carrying MAMLScript. This crate covers the whole offline
//! pipeline:
//!
//! ```text
//! .maml text ──parser──► MamlDocument ──transpile──► HtmlPage
//!                            ▲
//! LayoutSnapshot ──translate─┘          analyze: HTML ──► PageReport
//! ```
//!
//! All operations are pure functions over immutable values.

pub mod analyze;
pub mod diag;
pub mod model;
pub mod number;
pub mod parser;
pub mod script;
pub mod translate;
pub mod transpile;

pub use analyze::{compare, report_bytes, report_page, AnalyzeError, DeltaReport, PageReport};
pub use diag::{Diagnostic, DiagnosticKind, Severity};
pub use model::{
    get_prop, make_element, validate_document, ElementError, ElementKind, Geometry, MamlDocument, MamlElement, Mode,
    PropValue, PropertySchema, ValueDomain,
};
pub use number::Number;
pub use parser::{
    format_document, load_document, parse_document, serialize_document, LoadedDocument, ParseError, ParseOptions,
};
pub use script::{check_script, lower_script, parse_script, EventWiring, ScriptAst, ScriptError};
pub use translate::{translate_snapshot, LayoutSnapshot, SnapshotError, Translation};
pub use transpile::{compile_document, transpile_document, CompileError, HtmlPage, ScaleModel};
