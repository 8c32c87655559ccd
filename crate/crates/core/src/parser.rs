//! Reading and writing `.maml` files.
//!
//! A file is UTF-8 text. The first non-empty line is the header object
//! `{"viewport_width":N}`; every following non-empty line is one element
//! object. `\r\n` is accepted on input; output always uses `\n`.

use serde_json::{Map, Value};

use crate::diag::{Diagnostic, DiagnosticKind};
use crate::model::{json_string, validate_document, MamlDocument, MamlElement, Mode, PropValue};

pub const DEFAULT_MAX_BYTES: usize = 16 * 1024 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub mode: Mode,
    pub max_bytes: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { mode: Mode::Strict, max_bytes: DEFAULT_MAX_BYTES }
    }
}

impl ParseOptions {
    pub fn lenient() -> Self {
        ParseOptions { mode: Mode::Lenient, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("document is {size} bytes, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("line {line}: malformed header: {cause}")]
    MalformedHeader { line: usize, cause: String },
    #[error("line {line}: malformed line: {cause}")]
    MalformedLine { line: usize, cause: String },
    /// The document is well-formed but has error diagnostics.
    #[error("{} error(s), first: {}", .0.len(), .0.first().map(|d| d.to_string()).unwrap_or_default())]
    Invalid(Vec<Diagnostic>),
}

/// A parsed document with everything the parser had to say about it.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedDocument {
    pub document: MamlDocument,
    /// Diagnostics in source order, each carrying its line number.
    pub diagnostics: Vec<Diagnostic>,
    /// Source line of each element in `document`.
    pub element_lines: Vec<usize>,
    pub header_line: usize,
}

impl LoadedDocument {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }
}

/// Parses syntax and builds every element it can, collecting semantic
/// problems as diagnostics instead of failing.
///
/// Only size, header and JSON syntax problems are returned as errors.
/// Elements that fail schema checks are left out of the document and
/// reported as error diagnostics; in lenient mode unknown properties are
/// dropped with a warning.
pub fn load_document(source: &str, opts: ParseOptions) -> Result<LoadedDocument, ParseError> {
    if source.len() > opts.max_bytes {
        return Err(ParseError::TooLarge { size: source.len(), limit: opts.max_bytes });
    }
    let mut lines = source
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty());

    let mut diagnostics = Vec::new();
    let (header_line, header) =
        lines.next().ok_or_else(|| ParseError::MalformedHeader { line: 1, cause: "missing header line".into() })?;
    let viewport_width = parse_header(header_line, header, opts.mode, &mut diagnostics)?;

    let mut elements = Vec::new();
    let mut element_lines = Vec::new();
    for (line, text) in lines {
        let obj = match serde_json::from_str::<Value>(text) {
            Ok(Value::Object(obj)) => obj,
            Ok(_) => return Err(ParseError::MalformedLine { line, cause: "expected a JSON object".into() }),
            Err(e) => return Err(ParseError::MalformedLine { line, cause: e.to_string() }),
        };
        match MamlElement::from_json(&obj, opts.mode) {
            Ok((el, dropped)) => {
                for name in dropped {
                    let mut d = Diagnostic::warning(DiagnosticKind::DroppedProperty(name.clone()))
                        .at(elements.len())
                        .on_property(name);
                    d.line = Some(line);
                    diagnostics.push(d);
                }
                elements.push(el);
                element_lines.push(line);
            }
            Err(e) => {
                let mut d = Diagnostic::error(DiagnosticKind::Element(e.clone()));
                d.property = e.property().map(str::to_owned);
                d.line = Some(line);
                diagnostics.push(d);
            }
        }
    }

    let document = MamlDocument::new(viewport_width, elements);
    for mut d in validate_document(&document) {
        d.line = Some(d.element.map_or(header_line, |i| element_lines[i]));
        diagnostics.push(d);
    }
    diagnostics.sort_by_key(|d| d.line);
    Ok(LoadedDocument { document, diagnostics, element_lines, header_line })
}

fn parse_header(line: usize, text: &str, mode: Mode, diagnostics: &mut Vec<Diagnostic>) -> Result<u32, ParseError> {
    let malformed = |cause: &str| ParseError::MalformedHeader { line, cause: cause.to_owned() };
    let obj: Map<String, Value> = match serde_json::from_str(text) {
        Ok(Value::Object(obj)) => obj,
        Ok(_) => return Err(malformed("expected a JSON object")),
        Err(e) => return Err(malformed(&e.to_string())),
    };
    let width = obj
        .get("viewport_width")
        .ok_or_else(|| malformed("missing viewport_width"))?
        .as_u64()
        .filter(|w| *w > 0)
        .and_then(|w| u32::try_from(w).ok())
        .ok_or_else(|| malformed("viewport_width must be a positive integer"))?;
    for key in obj.keys().filter(|k| *k != "viewport_width") {
        match mode {
            Mode::Strict => return Err(malformed(&format!("unknown key `{key}`"))),
            Mode::Lenient => {
                let mut d = Diagnostic::warning(DiagnosticKind::UnknownHeaderKey(key.clone()));
                d.line = Some(line);
                diagnostics.push(d);
            }
        }
    }
    Ok(width)
}

/// Parses a document in strict mode. Any error diagnostic fails the parse.
pub fn parse_document(source: &str) -> Result<MamlDocument, ParseError> {
    parse_document_with(source, ParseOptions::default())
}

/// Parses with explicit options. Lenient-mode warnings are discarded; use
/// [`load_document`] to see them.
pub fn parse_document_with(source: &str, opts: ParseOptions) -> Result<MamlDocument, ParseError> {
    let loaded = load_document(source, opts)?;
    if loaded.has_errors() {
        return Err(ParseError::Invalid(loaded.diagnostics.into_iter().filter(Diagnostic::is_error).collect()));
    }
    Ok(loaded.document)
}

/// Canonical text: header, one element per line with keys in canonical
/// order, no insignificant whitespace, trailing newline.
pub fn serialize_document(doc: &MamlDocument) -> String {
    let mut out = format!("{{\"viewport_width\":{}}}\n", doc.viewport_width());
    for el in doc.elements() {
        write_element(&mut out, el);
        out.push('\n');
    }
    out
}

pub fn serialize_element(el: &MamlElement) -> String {
    let mut out = String::new();
    write_element(&mut out, el);
    out
}

fn write_element(out: &mut String, el: &MamlElement) {
    out.push('{');
    for (i, (key, value)) in el.canonical_entries().into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&json_string(key));
        out.push(':');
        out.push_str(&PropValue::to_json(value));
    }
    out.push('}');
}

/// Re-emits `source` in canonical form.
pub fn format_document(source: &str, opts: ParseOptions) -> Result<String, ParseError> {
    parse_document_with(source, opts).map(|doc| serialize_document(&doc))
}
