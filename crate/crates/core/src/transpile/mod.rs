//! MAML → HTML.
//!
//! Every non-script element becomes one absolutely positioned child of
//! `body` with inline styles. A single inline script, always the last
//! child of `body`, carries the page runtime: proportional scaling plus
//! the event wiring compiled from MAMLScript.

use std::collections::HashSet;
use std::fmt::Write;

use crate::diag::Diagnostic;
use crate::model::{validate_document, ElementKind, Geometry, MamlDocument, MamlElement};
use crate::number::Number;
use crate::script::{lower_script, parse_script, EventWiring};

const RUNTIME_SCALE: &str = include_str!("runtime/scale.js");
const RUNTIME_EVENTS: &str = include_str!("runtime/events.js");
const RUNTIME_CAROUSEL: &str = include_str!("runtime/carousel.js");

/// Upper bound on the embedded runtime with every module included.
pub const RUNTIME_BUDGET_BYTES: usize = 6 * 1024;

/// Size of the full runtime (all modules, before the init call).
pub fn runtime_size() -> usize {
    [RUNTIME_SCALE, RUNTIME_EVENTS, RUNTIME_CAROUSEL].iter().map(|s| s.trim_end().len()).sum()
}

/// Proportional horizontal scaling against the authored viewport.
///
/// The factor is `live / authored`, so content shrinks on narrower
/// viewports. Only `x` and `w` change; `y` and `h` are never touched.
/// The runtime always scales from authored values, so repeated resizes
/// never compound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleModel {
    pub viewport_width_original: u32,
}

impl ScaleModel {
    pub fn new(viewport_width_original: u32) -> Self {
        ScaleModel { viewport_width_original }
    }

    pub fn factor(&self, live_width: f64) -> f64 {
        live_width / f64::from(self.viewport_width_original)
    }

    /// Effective `(left, width)` for authored `(x, w)` at `live_width`.
    pub fn rescale(&self, x: f64, w: f64, live_width: f64) -> (f64, f64) {
        let s = self.factor(live_width);
        (x * s, w * s)
    }

    pub fn rescale_geometry(&self, g: Geometry, live_width: f64) -> Geometry {
        let (x, w) = self.rescale(g.x, g.w, live_width);
        Geometry { x, w, ..g }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HtmlPage {
    pub text: String,
    /// Distinct media URLs referenced by the page, in first-use order.
    pub asset_manifest: Vec<String>,
}

impl HtmlPage {
    pub fn manifest_json(&self) -> String {
        serde_json::to_string_pretty(&self.asset_manifest).expect("list of strings serializes")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CompileError {
    #[error("document has {} validation error(s)", .0.len())]
    Invalid(Vec<Diagnostic>),
}

/// Validates `doc`, compiles its script and transpiles it.
pub fn compile_document(doc: &MamlDocument) -> Result<HtmlPage, CompileError> {
    let errors: Vec<Diagnostic> = validate_document(doc).into_iter().filter(Diagnostic::is_error).collect();
    if !errors.is_empty() {
        return Err(CompileError::Invalid(errors));
    }
    let wiring = doc
        .script_code()
        .map(|code| parse_script(code).map(|ast| lower_script(&ast)).unwrap_or_default())
        .unwrap_or_default();
    Ok(transpile_document(doc, &wiring))
}

pub fn transpile_document(doc: &MamlDocument, wiring: &EventWiring) -> HtmlPage {
    let mut text = String::from(concat!(
        "<!DOCTYPE html><html><head><meta charset=\"utf-8\">",
        "<meta name=\"viewport\" content=\"width=device-width,initial-scale=1\">",
        "</head>\n<body style=\"margin:0;font:16px sans-serif\">\n"
    ));
    let mut has_carousel = false;
    for el in doc.elements() {
        if el.kind() == ElementKind::Script {
            continue;
        }
        has_carousel |= el.kind() == ElementKind::Carousel;
        text.push_str(&render_element(el));
        text.push('\n');
    }
    text.push_str("<script>");
    text.push_str(&render_runtime_with(&ScaleModel::new(doc.viewport_width()), wiring, has_carousel));
    text.push_str("</script>\n</body></html>\n");
    HtmlPage { text, asset_manifest: asset_manifest(doc) }
}

fn asset_manifest(doc: &MamlDocument) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for el in doc.elements() {
        let urls: Vec<&str> = match el.kind() {
            ElementKind::Image | ElementKind::Video => el.get_str("src").into_iter().collect(),
            ElementKind::Carousel => el.get_list("srcs").unwrap_or_default().iter().map(String::as_str).collect(),
            _ => vec![],
        };
        for url in urls {
            if seen.insert(url) {
                out.push(url.to_owned());
            }
        }
    }
    out
}

/// Script text for the page runtime. Carousel helpers are left out.
pub fn render_runtime(scale: &ScaleModel, wiring: &EventWiring) -> String {
    render_runtime_with(scale, wiring, false)
}

pub fn render_runtime_with(scale: &ScaleModel, wiring: &EventWiring, carousel: bool) -> String {
    let mut js = String::from(RUNTIME_SCALE.trim_end());
    if !wiring.is_empty() {
        js.push_str(RUNTIME_EVENTS.trim_end());
    }
    if carousel {
        js.push_str(RUNTIME_CAROUSEL.trim_end());
    }
    write!(js, "MAML.init({}", scale.viewport_width_original).unwrap();
    if !wiring.is_empty() {
        js.push(',');
        js.push_str(&script_safe(&wiring.to_json().to_string()));
    }
    js.push_str(");");
    js
}

/// Keeps JSON from closing the surrounding script element.
fn script_safe(json: &str) -> String {
    json.replace("</", "<\\/").replace("<!", "<\\!")
}

fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
    out
}

fn escape_attr(s: &str) -> String {
    escape_text(s).replace('"', "&quot;")
}

/// Strips characters that would let a value escape its CSS declaration.
fn css_value(s: &str) -> String {
    s.chars().filter(|c| !matches!(c, ';' | '{' | '}' | '\\' | '<' | '>')).collect()
}

struct Style(String);

impl Style {
    fn geometry(g: &Geometry) -> Self {
        Style(format!(
            "position:absolute;left:{}px;top:{}px;z-index:{};width:{}px;height:{}px",
            px(g.x),
            px(g.y),
            g.z,
            px(g.w),
            px(g.h)
        ))
    }

    fn push(&mut self, prop: &str, value: impl AsRef<str>) {
        write!(self.0, ";{prop}:{}", css_value(value.as_ref())).unwrap();
    }

    fn prop_value(&mut self, el: &MamlElement, name: &str, css: &str) {
        if let Some(v) = el.get_str(name) {
            self.push(css, v);
        } else if let Some(n) = el.get_number(name) {
            self.push(css, n.to_string());
        }
    }

    fn px_prop(&mut self, el: &MamlElement, name: &str, css: &str) {
        if let Some(n) = el.get_number(name) {
            self.push(css, format!("{n}px"));
        }
    }
}

fn px(v: f64) -> String {
    Number::new(v).map(|n| n.to_string()).unwrap_or_else(|| "0".into())
}

fn attr(out: &mut String, name: &str, value: &str) {
    write!(out, " {name}=\"{}\"", escape_attr(value)).unwrap();
}

/// Markup for one element. Script elements render to nothing.
pub fn render_element(el: &MamlElement) -> String {
    let Some(g) = el.geometry() else {
        return String::new();
    };
    let mut style = Style::geometry(&g);
    match el.kind() {
        ElementKind::Text => {
            style.prop_value(el, "color", "color");
            style.prop_value(el, "fontFamily", "font-family");
            style.px_prop(el, "fontSize", "font-size");
            style.prop_value(el, "fontStyle", "font-style");
            style.prop_value(el, "fontWeight", "font-weight");
            style.prop_value(el, "textAlign", "text-align");
        }
        ElementKind::Shape => {
            style.prop_value(el, "backgroundColor", "background-color");
            style.px_prop(el, "borderRadius", "border-radius");
        }
        ElementKind::TextField => style.prop_value(el, "backgroundColor", "background-color"),
        ElementKind::Image => style.prop_value(el, "fit", "object-fit"),
        ElementKind::Carousel => style.push("overflow", "hidden"),
        _ => {}
    }
    if !el.display() {
        style.push("display", "none");
    }

    let mut head = String::new();
    if let Some(id) = el.id() {
        attr(&mut head, "id", id);
    }
    attr(&mut head, "style", &style.0);
    let text = || escape_text(el.get_str("text").unwrap_or_default());

    match el.kind() {
        ElementKind::Text => format!("<div{head}>{}</div>", text()),
        ElementKind::Shape => format!("<div{head}></div>"),
        ElementKind::Button => format!("<button{head}>{}</button>", text()),
        ElementKind::TextField => {
            let mut out = format!("<input type=\"text\"{head}");
            if let Some(p) = el.get_str("placeholder") {
                attr(&mut out, "placeholder", p);
            }
            out.push('>');
            out
        }
        ElementKind::Dropdown => {
            let mut out = format!("<select{head}>");
            for opt in el.get_list("options").unwrap_or_default() {
                write!(out, "<option>{}</option>", escape_text(opt)).unwrap();
            }
            out.push_str("</select>");
            out
        }
        ElementKind::Image => {
            let mut out = format!("<img{head}");
            attr(&mut out, "src", el.get_str("src").unwrap_or_default());
            if let Some(alt) = el.get_str("alt") {
                attr(&mut out, "alt", alt);
            }
            out.push('>');
            out
        }
        ElementKind::Carousel => {
            let mut out = format!("<div{head}>");
            for (i, src) in el.get_list("srcs").unwrap_or_default().iter().enumerate() {
                let hidden = if i == 0 { "" } else { ";display:none" };
                write!(
                    out,
                    "<img src=\"{}\" style=\"width:100%;height:100%;object-fit:cover{hidden}\">",
                    escape_attr(src)
                )
                .unwrap();
            }
            out.push_str(concat!(
                "<button onclick=\"MAML.car(this,-1)\" style=\"position:absolute;left:0;top:45%\">&lsaquo;</button>",
                "<button onclick=\"MAML.car(this,1)\" style=\"position:absolute;right:0;top:45%\">&rsaquo;</button></div>"
            ));
            out
        }
        ElementKind::Video => {
            let mut out = format!("<video controls{head}");
            if let Some(src) = el.get_str("src") {
                attr(&mut out, "src", src);
            }
            out.push_str("></video>");
            out
        }
        ElementKind::Script => String::new(),
    }
}
