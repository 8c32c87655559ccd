//! Document model: element kinds, per-kind property schemas, element
//! construction and whole-document validation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde_json::{Map, Value};

use crate::diag::{Diagnostic, DiagnosticKind};
use crate::number::Number;
use crate::script;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKind {
    Text,
    Shape,
    TextField,
    Button,
    Dropdown,
    Image,
    Carousel,
    Video,
    Script,
}

impl ElementKind {
    pub const ALL: [ElementKind; 9] = [
        ElementKind::Text,
        ElementKind::Shape,
        ElementKind::TextField,
        ElementKind::Button,
        ElementKind::Dropdown,
        ElementKind::Image,
        ElementKind::Carousel,
        ElementKind::Video,
        ElementKind::Script,
    ];

    /// The canonical `type` string written to `.maml` files.
    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Text => "text",
            ElementKind::Shape => "shape",
            ElementKind::TextField => "text-field",
            ElementKind::Button => "button",
            ElementKind::Dropdown => "dropdown",
            ElementKind::Image => "img",
            ElementKind::Carousel => "carousel",
            ElementKind::Video => "video",
            ElementKind::Script => "script",
        }
    }

    /// Parses a `type` string. Images accept both `img` and `image`.
    pub fn from_type(name: &str) -> Option<Self> {
        Some(match name {
            "text" => ElementKind::Text,
            "shape" => ElementKind::Shape,
            "text-field" => ElementKind::TextField,
            "button" => ElementKind::Button,
            "dropdown" => ElementKind::Dropdown,
            "img" | "image" => ElementKind::Image,
            "carousel" => ElementKind::Carousel,
            "video" => ElementKind::Video,
            "script" => ElementKind::Script,
            _ => return None,
        })
    }

    pub fn schema(self) -> &'static PropertySchema {
        match self {
            ElementKind::Text => &TEXT_SCHEMA,
            ElementKind::Shape => &SHAPE_SCHEMA,
            ElementKind::TextField => &TEXT_FIELD_SCHEMA,
            ElementKind::Button => &BUTTON_SCHEMA,
            ElementKind::Dropdown => &DROPDOWN_SCHEMA,
            ElementKind::Image => &IMAGE_SCHEMA,
            ElementKind::Carousel => &CAROUSEL_SCHEMA,
            ElementKind::Video => &VIDEO_SCHEMA,
            ElementKind::Script => &SCRIPT_SCHEMA,
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Legal values for a property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueDomain {
    Kind,
    Bool,
    /// Number ≥ 0.
    NonNegative,
    /// Number > 0.
    Positive,
    Integer,
    Text,
    NonEmptyText,
    /// Non-empty, no whitespace.
    Id,
    /// `#RRGGBB` or `#RRGGBBAA`.
    Color,
    OneOf(&'static [&'static str]),
    /// 1..=1000 or a CSS keyword.
    FontWeight,
    NonEmptyList,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropSpec {
    pub name: &'static str,
    pub domain: ValueDomain,
}

const fn prop(name: &'static str, domain: ValueDomain) -> PropSpec {
    PropSpec { name, domain }
}

#[derive(Debug, PartialEq, Eq)]
pub struct PropertySchema {
    pub kind: ElementKind,
    pub required: &'static [PropSpec],
    pub optional: &'static [PropSpec],
}

impl PropertySchema {
    pub fn lookup(&self, name: &str) -> Option<&'static PropSpec> {
        self.required.iter().chain(self.optional).find(|p| p.name == name)
    }

    pub fn is_required(&self, name: &str) -> bool {
        self.required.iter().any(|p| p.name == name)
    }
}

pub const FIT_VALUES: &[&str] = &["fill", "contain", "cover"];
pub const TEXT_ALIGN_VALUES: &[&str] = &["left", "right", "center", "justify", "start", "end"];
pub const FONT_STYLE_VALUES: &[&str] = &["normal", "italic", "oblique"];
const FONT_WEIGHT_KEYWORDS: &[&str] = &["normal", "bold", "lighter", "bolder"];

const TYPE: PropSpec = prop("type", ValueDomain::Kind);
const X: PropSpec = prop("x", ValueDomain::NonNegative);
const Y: PropSpec = prop("y", ValueDomain::NonNegative);
const Z: PropSpec = prop("z", ValueDomain::Integer);
const W: PropSpec = prop("w", ValueDomain::Positive);
const H: PropSpec = prop("h", ValueDomain::Positive);
const DISPLAY: PropSpec = prop("display", ValueDomain::Bool);
const ID: PropSpec = prop("id", ValueDomain::Id);
const BACKGROUND: PropSpec = prop("backgroundColor", ValueDomain::Color);

const BASE: [PropSpec; 7] = [TYPE, X, Y, Z, W, H, DISPLAY];

const fn with_base(extra: PropSpec) -> [PropSpec; 8] {
    [TYPE, X, Y, Z, W, H, DISPLAY, extra]
}

const TEXT_REQUIRED: [PropSpec; 8] = with_base(prop("text", ValueDomain::Text));
const BUTTON_REQUIRED: [PropSpec; 8] = with_base(prop("text", ValueDomain::Text));
const DROPDOWN_REQUIRED: [PropSpec; 8] = with_base(prop("options", ValueDomain::NonEmptyList));
const IMAGE_REQUIRED: [PropSpec; 8] = with_base(prop("src", ValueDomain::NonEmptyText));
const CAROUSEL_REQUIRED: [PropSpec; 8] = with_base(prop("srcs", ValueDomain::NonEmptyList));

static TEXT_SCHEMA: PropertySchema = PropertySchema {
    kind: ElementKind::Text,
    required: &TEXT_REQUIRED,
    optional: &[
        ID,
        prop("fontFamily", ValueDomain::NonEmptyText),
        prop("textAlign", ValueDomain::OneOf(TEXT_ALIGN_VALUES)),
        prop("fontSize", ValueDomain::Positive),
        prop("color", ValueDomain::Color),
        prop("fontStyle", ValueDomain::OneOf(FONT_STYLE_VALUES)),
        prop("fontWeight", ValueDomain::FontWeight),
    ],
};

static SHAPE_SCHEMA: PropertySchema = PropertySchema {
    kind: ElementKind::Shape,
    required: &BASE,
    optional: &[ID, BACKGROUND, prop("borderRadius", ValueDomain::NonNegative)],
};

static TEXT_FIELD_SCHEMA: PropertySchema = PropertySchema {
    kind: ElementKind::TextField,
    required: &BASE,
    optional: &[ID, prop("placeholder", ValueDomain::Text), BACKGROUND],
};

static BUTTON_SCHEMA: PropertySchema =
    PropertySchema { kind: ElementKind::Button, required: &BUTTON_REQUIRED, optional: &[ID] };

static DROPDOWN_SCHEMA: PropertySchema =
    PropertySchema { kind: ElementKind::Dropdown, required: &DROPDOWN_REQUIRED, optional: &[ID] };

static IMAGE_SCHEMA: PropertySchema = PropertySchema {
    kind: ElementKind::Image,
    required: &IMAGE_REQUIRED,
    optional: &[ID, prop("fit", ValueDomain::OneOf(FIT_VALUES)), prop("alt", ValueDomain::Text)],
};

static CAROUSEL_SCHEMA: PropertySchema =
    PropertySchema { kind: ElementKind::Carousel, required: &CAROUSEL_REQUIRED, optional: &[ID] };

static VIDEO_SCHEMA: PropertySchema = PropertySchema {
    kind: ElementKind::Video,
    required: &BASE,
    optional: &[ID, prop("src", ValueDomain::NonEmptyText)],
};

static SCRIPT_SCHEMA: PropertySchema =
    PropertySchema { kind: ElementKind::Script, required: &[TYPE, prop("code", ValueDomain::Text)], optional: &[] };

/// Alternate spelling accepted for image `fit`.
const FIT_ALIAS: &str = "objectFit";

#[derive(Debug, Clone, PartialEq)]
pub enum PropValue {
    Bool(bool),
    Number(Number),
    Text(String),
    List(Vec<String>),
}

impl PropValue {
    pub fn as_str(&self) -> Option<&str> {
        match self {
            PropValue::Text(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_number(&self) -> Option<Number> {
        match self {
            PropValue::Number(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            PropValue::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[String]> {
        match self {
            PropValue::List(l) => Some(l),
            _ => None,
        }
    }

    pub fn from_json(name: &str, value: &Value) -> Result<Self, ElementError> {
        match value {
            Value::Bool(b) => Ok(PropValue::Bool(*b)),
            Value::Number(n) => n
                .as_f64()
                .and_then(Number::new)
                .map(PropValue::Number)
                .ok_or_else(|| ElementError::bad_value(name, "number out of range")),
            Value::String(s) => Ok(PropValue::Text(s.clone())),
            Value::Array(items) => items
                .iter()
                .map(|v| v.as_str().map(str::to_owned))
                .collect::<Option<Vec<_>>>()
                .map(PropValue::List)
                .ok_or_else(|| ElementError::bad_value(name, "list items must be strings")),
            Value::Null => Err(ElementError::bad_value(name, "null is not allowed")),
            Value::Object(_) => Err(ElementError::bad_value(name, "nested objects are not allowed")),
        }
    }

    /// Compact JSON text for this value.
    pub fn to_json(&self) -> String {
        match self {
            PropValue::Bool(b) => b.to_string(),
            PropValue::Number(n) => n.to_string(),
            PropValue::Text(s) => json_string(s),
            PropValue::List(items) => {
                let parts: Vec<String> = items.iter().map(|s| json_string(s)).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }
}

impl From<&str> for PropValue {
    fn from(s: &str) -> Self {
        PropValue::Text(s.to_owned())
    }
}

impl From<String> for PropValue {
    fn from(s: String) -> Self {
        PropValue::Text(s)
    }
}

impl From<bool> for PropValue {
    fn from(b: bool) -> Self {
        PropValue::Bool(b)
    }
}

impl From<Number> for PropValue {
    fn from(n: Number) -> Self {
        PropValue::Number(n)
    }
}

impl From<Vec<String>> for PropValue {
    fn from(items: Vec<String>) -> Self {
        PropValue::List(items)
    }
}

pub(crate) fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization is infallible")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElementError {
    #[error("unknown element type `{0}`")]
    UnknownKind(String),
    #[error("missing mandatory property `{0}`")]
    MissingMandatoryProperty(String),
    #[error("property `{0}` is not allowed on this element")]
    IllegalProperty(String),
    #[error("bad value for `{name}`: {reason}")]
    BadValue { name: String, reason: String },
}

impl ElementError {
    fn bad_value(name: &str, reason: impl Into<String>) -> Self {
        ElementError::BadValue { name: name.to_owned(), reason: reason.into() }
    }

    pub fn code(&self) -> &'static str {
        match self {
            ElementError::UnknownKind(_) => "unknown-kind",
            ElementError::MissingMandatoryProperty(_) => "missing-property",
            ElementError::IllegalProperty(_) => "illegal-property",
            ElementError::BadValue { .. } => "bad-value",
        }
    }

    pub fn property(&self) -> Option<&str> {
        match self {
            ElementError::UnknownKind(_) => Some("type"),
            ElementError::MissingMandatoryProperty(n) | ElementError::IllegalProperty(n) => Some(n),
            ElementError::BadValue { name, .. } => Some(name),
        }
    }
}

/// How unknown properties are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Unknown properties are errors.
    #[default]
    Strict,
    /// Unknown properties are dropped and reported as warnings.
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub x: f64,
    pub y: f64,
    pub z: i64,
    pub w: f64,
    pub h: f64,
}

/// A validated element. Every property, including `type` and geometry,
/// lives in one flat map.
#[derive(Debug, Clone, PartialEq)]
pub struct MamlElement {
    kind: ElementKind,
    props: HashMap<String, PropValue>,
}

impl MamlElement {
    /// Builds a strictly validated element of `kind`. `type` may be omitted
    /// from `props`; `display` defaults to `true`.
    pub fn new<K, I>(kind: ElementKind, props: I) -> Result<Self, ElementError>
    where
        K: Into<String>,
        I: IntoIterator<Item = (K, PropValue)>,
    {
        let mut map: HashMap<String, PropValue> = props.into_iter().map(|(k, v)| (k.into(), v)).collect();
        map.entry("type".to_owned()).or_insert_with(|| PropValue::from(kind.as_str()));
        let (el, _) = Self::build(map, Mode::Strict)?;
        if el.kind != kind {
            return Err(ElementError::bad_value("type", format!("expected `{kind}`")));
        }
        Ok(el)
    }

    /// Builds an element from a JSON object. In lenient mode the names of
    /// dropped unknown properties are returned alongside the element.
    pub fn from_json(obj: &Map<String, Value>, mode: Mode) -> Result<(Self, Vec<String>), ElementError> {
        let mut keys: Vec<&String> = obj.keys().collect();
        keys.sort();
        let mut map = HashMap::with_capacity(obj.len());
        for key in keys {
            map.insert(key.clone(), PropValue::from_json(key, &obj[key])?);
        }
        Self::build(map, mode)
    }

    fn build(mut props: HashMap<String, PropValue>, mode: Mode) -> Result<(Self, Vec<String>), ElementError> {
        let kind = match props.get("type") {
            None => return Err(ElementError::MissingMandatoryProperty("type".into())),
            Some(PropValue::Text(t)) => {
                ElementKind::from_type(t).ok_or_else(|| ElementError::UnknownKind(t.clone()))?
            }
            Some(_) => return Err(ElementError::bad_value("type", "expected a string")),
        };
        props.insert("type".into(), PropValue::from(kind.as_str()));
        let schema = kind.schema();

        if kind == ElementKind::Image {
            if let Some(v) = props.remove(FIT_ALIAS) {
                if props.contains_key("fit") {
                    return Err(ElementError::bad_value(FIT_ALIAS, "conflicts with `fit`"));
                }
                props.insert("fit".into(), v);
            }
        }
        if kind != ElementKind::Script {
            props.entry("display".into()).or_insert(PropValue::Bool(true));
        }

        let mut names: Vec<String> = props.keys().cloned().collect();
        names.sort();
        let mut dropped = Vec::new();
        for name in names {
            match schema.lookup(&name) {
                Some(spec) => check_domain(spec, &props[&name])?,
                None if mode == Mode::Lenient => {
                    props.remove(&name);
                    dropped.push(name);
                }
                None => return Err(ElementError::IllegalProperty(name)),
            }
        }
        if let Some(missing) = schema.required.iter().find(|p| !props.contains_key(p.name)) {
            return Err(ElementError::MissingMandatoryProperty(missing.name.into()));
        }
        Ok((MamlElement { kind, props }, dropped))
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    /// Constant-time property lookup.
    pub fn get(&self, name: &str) -> Option<&PropValue> {
        self.props.get(name)
    }

    pub fn get_str(&self, name: &str) -> Option<&str> {
        self.get(name).and_then(PropValue::as_str)
    }

    pub fn get_number(&self, name: &str) -> Option<Number> {
        self.get(name).and_then(PropValue::as_number)
    }

    pub fn get_list(&self, name: &str) -> Option<&[String]> {
        self.get(name).and_then(PropValue::as_list)
    }

    pub fn id(&self) -> Option<&str> {
        self.get_str("id")
    }

    /// `None` for script elements.
    pub fn geometry(&self) -> Option<Geometry> {
        let n = |k: &str| self.get_number(k);
        Some(Geometry { x: n("x")?.get(), y: n("y")?.get(), z: n("z")?.as_i64()?, w: n("w")?.get(), h: n("h")?.get() })
    }

    pub fn display(&self) -> bool {
        self.get("display").and_then(PropValue::as_bool).unwrap_or(true)
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    /// Properties in canonical order: `type`, geometry, `display`, then the
    /// remaining keys alphabetically.
    pub fn canonical_entries(&self) -> Vec<(&str, &PropValue)> {
        const LEADING: [&str; 7] = ["type", "x", "y", "z", "w", "h", "display"];
        let mut out: Vec<(&str, &PropValue)> =
            LEADING.iter().filter_map(|k| self.props.get(*k).map(|v| (*k, v))).collect();
        let mut rest: Vec<(&str, &PropValue)> =
            self.props.iter().filter(|(k, _)| !LEADING.contains(&k.as_str())).map(|(k, v)| (k.as_str(), v)).collect();
        rest.sort_by(|a, b| a.0.cmp(b.0));
        out.extend(rest);
        out
    }
}

fn check_domain(spec: &PropSpec, value: &PropValue) -> Result<(), ElementError> {
    let name = spec.name;
    let fail = |reason: &str| Err(ElementError::bad_value(name, reason));
    match spec.domain {
        ValueDomain::Kind => Ok(()),
        ValueDomain::Bool => match value {
            PropValue::Bool(_) => Ok(()),
            _ => fail("expected true or false"),
        },
        ValueDomain::NonNegative => match value.as_number() {
            Some(n) if n.get() >= 0.0 => Ok(()),
            Some(_) => fail("must not be negative"),
            None => fail("expected a number"),
        },
        ValueDomain::Positive => match value.as_number() {
            Some(n) if n.get() > 0.0 => Ok(()),
            Some(_) => fail("must be greater than zero"),
            None => fail("expected a number"),
        },
        ValueDomain::Integer => match value.as_number() {
            Some(n) if n.as_i64().is_some() => Ok(()),
            _ => fail("expected an integer"),
        },
        ValueDomain::Text => match value {
            PropValue::Text(_) => Ok(()),
            _ => fail("expected a string"),
        },
        ValueDomain::NonEmptyText => match value.as_str() {
            Some(s) if !s.is_empty() => Ok(()),
            Some(_) => fail("must not be empty"),
            None => fail("expected a string"),
        },
        ValueDomain::Id => match value.as_str() {
            Some(s) if is_valid_id(s) => Ok(()),
            Some(_) => fail("ids must be non-empty and contain no whitespace"),
            None => fail("expected a string"),
        },
        ValueDomain::Color => match value.as_str() {
            Some(s) if is_color(s) => Ok(()),
            _ => fail("expected #RRGGBB or #RRGGBBAA"),
        },
        ValueDomain::OneOf(options) => match value.as_str() {
            Some(s) if options.contains(&s) => Ok(()),
            _ => Err(ElementError::bad_value(name, format!("expected one of {}", options.join(", ")))),
        },
        ValueDomain::FontWeight => match value {
            PropValue::Number(n) if n.as_i64().is_some_and(|w| (1..=1000).contains(&w)) => Ok(()),
            PropValue::Text(s) if FONT_WEIGHT_KEYWORDS.contains(&s.as_str()) => Ok(()),
            _ => fail("expected 1-1000 or normal, bold, lighter, bolder"),
        },
        ValueDomain::NonEmptyList => match value.as_list() {
            Some(items) if !items.is_empty() => Ok(()),
            Some(_) => fail("list must not be empty"),
            None => fail("expected a list of strings"),
        },
    }
}

pub fn is_valid_id(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(char::is_whitespace)
}

pub fn is_color(s: &str) -> bool {
    s.strip_prefix('#').is_some_and(|hex| matches!(hex.len(), 6 | 8) && hex.bytes().all(|b| b.is_ascii_hexdigit()))
}

/// Strictly builds an element from a JSON property map.
pub fn make_element(props: &Map<String, Value>) -> Result<MamlElement, ElementError> {
    MamlElement::from_json(props, Mode::Strict).map(|(el, _)| el)
}

pub fn get_prop<'a>(el: &'a MamlElement, name: &str) -> Option<&'a PropValue> {
    el.get(name)
}

/// An ordered list of elements plus the design-time viewport width.
#[derive(Debug, Clone, PartialEq)]
pub struct MamlDocument {
    viewport_width: u32,
    elements: Vec<MamlElement>,
}

impl MamlDocument {
    /// Invariants across elements are checked by [`validate_document`].
    pub fn new(viewport_width: u32, elements: Vec<MamlElement>) -> Self {
        MamlDocument { viewport_width, elements }
    }

    pub fn viewport_width(&self) -> u32 {
        self.viewport_width
    }

    pub fn elements(&self) -> &[MamlElement] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<MamlElement> {
        self.elements
    }

    pub fn script_index(&self) -> Option<usize> {
        self.elements.iter().rposition(|e| e.kind == ElementKind::Script)
    }

    /// MAMLScript source of the (last) script element.
    pub fn script_code(&self) -> Option<&str> {
        self.script_index().and_then(|i| self.elements[i].get_str("code"))
    }

    pub fn find_by_id(&self, id: &str) -> Option<&MamlElement> {
        self.elements.iter().find(|e| e.id() == Some(id))
    }
}

/// Checks cross-element invariants and the embedded script. Element-level
/// invariants are guaranteed by construction.
pub fn validate_document(doc: &MamlDocument) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if doc.viewport_width == 0 {
        out.push(Diagnostic::error(DiagnosticKind::ZeroViewport));
    }

    let last = doc.elements.len().saturating_sub(1);
    let mut seen_script = false;
    let mut seen_ids = HashSet::new();
    for (i, el) in doc.elements.iter().enumerate() {
        if el.kind == ElementKind::Script {
            if seen_script {
                out.push(Diagnostic::error(DiagnosticKind::MultipleScripts).at(i));
            } else if i != last {
                out.push(Diagnostic::error(DiagnosticKind::ScriptNotLast).at(i));
            }
            seen_script = true;
        }
        if let Some(id) = el.id() {
            if !seen_ids.insert(id) {
                out.push(Diagnostic::error(DiagnosticKind::DuplicateId(id.to_owned())).at(i).on_property("id"));
            }
        }
    }

    if let Some(idx) = doc.script_index() {
        let code = doc.elements[idx].get_str("code").unwrap_or_default();
        match script::parse_script(code) {
            Ok(ast) => out.extend(script::check_script(&ast, doc)),
            Err(e) => out.push(Diagnostic::error(DiagnosticKind::Script(e)).at(idx).on_property("code")),
        }
    }
    out
}
