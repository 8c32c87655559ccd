//! Layout snapshot → MAML.
//!
//! The snapshot tree is walked depth-first. Each visible node is
//! classified into at most one element kind (a text node with a visible
//! background yields a shape and a text element at the same rect);
//! container-only nodes contribute nothing but their children are still
//! visited. Geometry is copied from the node's rect unchanged.

mod snapshot;

use std::collections::HashSet;

pub use snapshot::{ComputedStyle, LayoutSnapshot, Rect, SnapshotError, SnapshotNode, Viewport, SCHEMA_VERSION};

use crate::model::{is_valid_id, ElementKind, MamlDocument, MamlElement, PropValue, FIT_VALUES, FONT_STYLE_VALUES};
use crate::number::Number;

#[derive(Debug, Clone, PartialEq)]
pub struct Translation {
    pub document: MamlDocument,
    pub warnings: Vec<String>,
}

const IGNORED_TAGS: &[&str] =
    &["head", "script", "style", "link", "meta", "title", "noscript", "template", "option", "source", "br"];

const TEXT_INPUT_TYPES: &[&str] = &["text", "search", "email", "url", "tel", "password", "number"];

/// Tags whose children are folded into the element itself.
const CONSUMES_CHILDREN: &[&str] = &["select", "video"];

pub fn is_rendered(node: &SnapshotNode) -> bool {
    node.style.display_kind.as_deref() != Some("none")
        && node.style.visibility.as_deref() != Some("hidden")
        && node.rect.area() > 0.0
}

fn own_text(node: &SnapshotNode) -> String {
    node.text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Maps a node to the element kind it becomes, or `None` to skip it.
pub fn classify_node(node: &SnapshotNode) -> Option<ElementKind> {
    if !is_rendered(node) {
        return None;
    }
    let tag = node.tag.to_ascii_lowercase();
    match tag.as_str() {
        t if IGNORED_TAGS.contains(&t) => None,
        "img" => Some(ElementKind::Image),
        "input" => {
            let ty = node.attr("type").unwrap_or("text").to_ascii_lowercase();
            if TEXT_INPUT_TYPES.contains(&ty.as_str()) {
                Some(ElementKind::TextField)
            } else if matches!(ty.as_str(), "button" | "submit" | "reset") {
                Some(ElementKind::Button)
            } else {
                None
            }
        }
        "button" => Some(ElementKind::Button),
        "select" => Some(ElementKind::Dropdown),
        "video" => Some(ElementKind::Video),
        _ if !own_text(node).is_empty() => Some(ElementKind::Text),
        _ if has_background(node) => Some(ElementKind::Shape),
        _ => None,
    }
}

fn has_background(node: &SnapshotNode) -> bool {
    visible_color(node.style.background_color.as_deref()).is_some()
        || px_length(node.style.border_radius.as_deref()).is_some_and(|r| r > 0.0)
}

/// z for each emitted element in DFS order: explicit values are kept,
/// the rest get their position in emission order.
pub fn assign_z(explicit: &[Option<i64>]) -> Vec<i64> {
    explicit.iter().enumerate().map(|(rank, z)| z.unwrap_or(rank as i64)).collect()
}

struct Pending {
    kind: ElementKind,
    props: Vec<(&'static str, PropValue)>,
    rect: Rect,
    z: Option<i64>,
    id: String,
}

struct Walker {
    pending: Vec<Pending>,
    warnings: Vec<String>,
}

pub fn translate_snapshot(snap: &LayoutSnapshot) -> Translation {
    let mut w = Walker { pending: Vec::new(), warnings: Vec::new() };
    w.visit(&snap.root);

    let explicit: Vec<Option<i64>> = w.pending.iter().map(|p| p.z).collect();
    let zs = assign_z(&explicit);
    let mut used = HashSet::new();
    let mut elements = Vec::with_capacity(w.pending.len());
    for (p, z) in w.pending.into_iter().zip(zs) {
        let id = unique_id(&p.id, &mut used);
        let mut props = vec![
            ("x", num(p.rect.x)),
            ("y", num(p.rect.y)),
            ("z", PropValue::Number(Number::from(z))),
            ("w", num(p.rect.w)),
            ("h", num(p.rect.h)),
            ("display", PropValue::Bool(true)),
            ("id", PropValue::Text(id)),
        ];
        props.extend(p.props);
        match MamlElement::new(p.kind, props) {
            Ok(el) => elements.push(el),
            Err(e) => w.warnings.push(format!("dropped {} element: {e}", p.kind)),
        }
    }
    if elements.is_empty() {
        w.warnings.push("snapshot contains no renderable nodes".into());
    }
    Translation { document: MamlDocument::new(snap.viewport.width, elements), warnings: w.warnings }
}

fn unique_id(base: &str, used: &mut HashSet<String>) -> String {
    let mut candidate = base.to_owned();
    let mut n = 2;
    while used.contains(&candidate) {
        candidate = format!("{base}-{n}");
        n += 1;
    }
    used.insert(candidate.clone());
    candidate
}

fn num(v: f64) -> PropValue {
    PropValue::Number(Number::new(v).unwrap_or(Number::from(0i64)))
}

impl Walker {
    fn visit(&mut self, node: &SnapshotNode) {
        if node.style.display_kind.as_deref() == Some("none") {
            return;
        }
        if let Some(kind) = classify_node(node) {
            if node.rect.x < 0.0 || node.rect.y < 0.0 || !node.rect.x.is_finite() || !node.rect.y.is_finite() {
                self.warnings
                    .push(format!("skipped <{}> #{} at negative page coordinates", node.tag, node.paint_index));
            } else {
                self.emit(node, kind);
            }
        }
        let tag = node.tag.to_ascii_lowercase();
        if !CONSUMES_CHILDREN.contains(&tag.as_str()) {
            for child in &node.children {
                self.visit(child);
            }
        }
    }

    fn emit(&mut self, node: &SnapshotNode, kind: ElementKind) {
        let base_id = node
            .attr("id")
            .filter(|id| is_valid_id(id))
            .map(str::to_owned)
            .unwrap_or_else(|| format!("el{}", node.paint_index));
        let z = node.style.z_index.as_deref().and_then(|z| z.trim().parse::<i64>().ok());
        for (kind, props, id) in self.element_parts(node, kind, base_id) {
            self.pending.push(Pending { kind, props, rect: node.rect, z, id });
        }
    }

    fn element_parts(&mut self, node: &SnapshotNode, kind: ElementKind, base_id: String) -> Vec<Part> {
        let tag = node.tag.to_ascii_lowercase();
        let props = match kind {
            ElementKind::Image => {
                let Some(src) = node.attr("currentSrc").or_else(|| node.attr("src")) else {
                    self.warnings.push(format!("skipped <img> #{} without a source", node.paint_index));
                    return vec![];
                };
                let mut props = vec![("src", PropValue::from(src))];
                if let Some(alt) = node.attrs.get("alt") {
                    props.push(("alt", PropValue::from(alt.as_str())));
                }
                if let Some(fit) = node.style.object_fit.as_deref().filter(|f| FIT_VALUES.contains(f) && *f != "fill") {
                    props.push(("fit", PropValue::from(fit)));
                }
                props
            }
            ElementKind::TextField => {
                let mut props = Vec::new();
                if let Some(p) = node.attr("placeholder") {
                    props.push(("placeholder", PropValue::from(p)));
                }
                if let Some(bg) = visible_color(node.style.background_color.as_deref()) {
                    props.push(("backgroundColor", PropValue::Text(bg)));
                }
                props
            }
            ElementKind::Button => {
                let text =
                    if tag == "input" { node.attrs.get("value").cloned().unwrap_or_default() } else { own_text(node) };
                vec![("text", PropValue::Text(text))]
            }
            ElementKind::Dropdown => {
                let options: Vec<String> =
                    node.children.iter().filter(|c| c.tag.eq_ignore_ascii_case("option")).map(own_text).collect();
                if options.is_empty() {
                    self.warnings.push(format!("skipped <select> #{} without options", node.paint_index));
                    return vec![];
                }
                vec![("options", PropValue::List(options))]
            }
            ElementKind::Video => {
                let src = node.attr("currentSrc").or_else(|| node.attr("src")).or_else(|| {
                    node.children.iter().find(|c| c.tag.eq_ignore_ascii_case("source")).and_then(|c| c.attr("src"))
                });
                src.map(|s| ("src", PropValue::from(s))).into_iter().collect()
            }
            ElementKind::Text => {
                let mut parts = Vec::new();
                if has_background(node) {
                    parts.push((ElementKind::Shape, shape_props(node), format!("{base_id}-bg")));
                }
                if tag == "a" && node.attr("href").is_some() {
                    self.warnings.push(format!("dropped link target of <a> #{}", node.paint_index));
                }
                let mut props = vec![("text", PropValue::Text(own_text(node)))];
                props.extend(text_style(&node.style));
                parts.push((kind, props, base_id));
                return parts;
            }
            ElementKind::Shape => shape_props(node),
            ElementKind::Carousel | ElementKind::Script => return vec![],
        };
        vec![(kind, props, base_id)]
    }
}

type Part = (ElementKind, Vec<(&'static str, PropValue)>, String);

fn shape_props(node: &SnapshotNode) -> Vec<(&'static str, PropValue)> {
    let mut props = Vec::new();
    if let Some(bg) = visible_color(node.style.background_color.as_deref()) {
        props.push(("backgroundColor", PropValue::Text(bg)));
    }
    if let Some(r) = px_length(node.style.border_radius.as_deref()).filter(|r| *r > 0.0) {
        props.push(("borderRadius", num(r)));
    }
    props
}

fn text_style(style: &ComputedStyle) -> Vec<(&'static str, PropValue)> {
    let mut props = Vec::new();
    if let Some(c) = visible_color(style.color.as_deref()).filter(|c| c != "#000000") {
        props.push(("color", PropValue::Text(c)));
    }
    if let Some(f) = style.font_family.as_deref().map(str::trim).filter(|f| !f.is_empty() && *f != "sans-serif") {
        props.push(("fontFamily", PropValue::from(f)));
    }
    if let Some(size) = px_length(style.font_size.as_deref()).filter(|s| *s > 0.0 && *s != 16.0) {
        props.push(("fontSize", num(size)));
    }
    if let Some(fs) = style.font_style.as_deref().and_then(|s| s.split_whitespace().next()) {
        if fs != "normal" && FONT_STYLE_VALUES.contains(&fs) {
            props.push(("fontStyle", PropValue::from(fs)));
        }
    }
    if let Some(fw) = style.font_weight.as_deref().map(str::trim) {
        match fw.parse::<i64>() {
            Ok(n) if (1..=1000).contains(&n) && n != 400 => {
                props.push(("fontWeight", PropValue::Number(Number::from(n))))
            }
            Ok(_) => {}
            Err(_) if matches!(fw, "bold" | "lighter" | "bolder") => props.push(("fontWeight", PropValue::from(fw))),
            Err(_) => {}
        }
    }
    if let Some(align) = style.text_align.as_deref() {
        if matches!(align, "right" | "center" | "justify" | "end") {
            props.push(("textAlign", PropValue::from(align)));
        }
    }
    props
}

/// Parses `Npx` (first token of a shorthand) into pixels.
pub fn px_length(value: Option<&str>) -> Option<f64> {
    let first = value?.split_whitespace().next()?;
    let n = match first.strip_suffix("px") {
        Some(n) => n,
        None if first == "0" => "0",
        None => return None,
    };
    n.parse::<f64>().ok().filter(|v| v.is_finite() && *v >= 0.0)
}

/// Normalizes a CSS color to `#rrggbb` / `#rrggbbaa`, or `None` when it is
/// fully transparent or unparseable.
pub fn visible_color(value: Option<&str>) -> Option<String> {
    let (r, g, b, a) = parse_color(value?.trim())?;
    match a {
        0 => None,
        255 => Some(format!("#{r:02x}{g:02x}{b:02x}")),
        a => Some(format!("#{r:02x}{g:02x}{b:02x}{a:02x}")),
    }
}

fn parse_color(s: &str) -> Option<(u8, u8, u8, u8)> {
    let lower = s.to_ascii_lowercase();
    if lower == "transparent" {
        return Some((0, 0, 0, 0));
    }
    if let Some(hex) = lower.strip_prefix('#') {
        let digits: Vec<u8> = hex.chars().map(|c| c.to_digit(16).map(|d| d as u8)).collect::<Option<_>>()?;
        return match digits.len() {
            3 | 4 => {
                let d = |i: usize| digits.get(i).map_or(255, |v| v * 17);
                Some((d(0), d(1), d(2), d(3)))
            }
            6 | 8 => {
                let d = |i: usize| digits.get(i * 2).map_or(255, |hi| hi * 16 + digits[i * 2 + 1]);
                Some((d(0), d(1), d(2), d(3)))
            }
            _ => None,
        };
    }
    let inner = lower.strip_prefix("rgba(").or_else(|| lower.strip_prefix("rgb("))?.strip_suffix(')')?;
    let parts: Vec<&str> = inner.split([',', ' ', '/']).map(str::trim).filter(|p| !p.is_empty()).collect();
    if !(3..=4).contains(&parts.len()) {
        return None;
    }
    let channel = |p: &str| -> Option<u8> {
        let v = match p.strip_suffix('%') {
            Some(pct) => pct.parse::<f64>().ok()? * 2.55,
            None => p.parse::<f64>().ok()?,
        };
        Some(v.round().clamp(0.0, 255.0) as u8)
    };
    let alpha = match parts.get(3) {
        None => 255,
        Some(p) => {
            let v = match p.strip_suffix('%') {
                Some(pct) => pct.parse::<f64>().ok()? / 100.0,
                None => p.parse::<f64>().ok()?,
            };
            (v.clamp(0.0, 1.0) * 255.0).round() as u8
        }
    };
    Some((channel(parts[0])?, channel(parts[1])?, channel(parts[2])?, alpha))
}
