//! Layout snapshot file format, version 1.
//!
//! ```json
//! {"schema":1,"viewport":{"width":1200,"height":800},"root":{
//!   "tag":"html","attrs":{},"rect":{"x":0,"y":0,"w":1200,"h":900},
//!   "style":{"displayKind":"block"},"text":"","children":[],"paint_index":0}}
//! ```
//!
//! Absent attributes and style entries are omitted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub fn area(&self) -> f64 {
        self.w.max(0.0) * self.h.max(0.0)
    }
}

/// The computed-style subset recorded per node, as browser strings.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComputedStyle {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub background_color: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub border_radius: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub font_family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub font_size: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub font_style: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub font_weight: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text_align: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_index: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub display_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub visibility: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object_fit: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotNode {
    pub tag: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attrs: BTreeMap<String, String>,
    pub rect: Rect,
    #[serde(default)]
    pub style: ComputedStyle,
    /// The node's own text, not including descendants.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub text: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<SnapshotNode>,
    pub paint_index: u64,
}

impl SnapshotNode {
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs.get(name).map(String::as_str).filter(|s| !s.is_empty())
    }

    /// Pre-order traversal.
    pub fn walk(&self, f: &mut impl FnMut(&SnapshotNode)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutSnapshot {
    pub schema: u64,
    pub viewport: Viewport,
    pub root: SnapshotNode,
}

#[derive(Debug, thiserror::Error)]
pub enum SnapshotError {
    #[error("invalid snapshot JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported snapshot schema {found:?}, expected {SCHEMA_VERSION}")]
    SchemaMismatch { found: Option<u64> },
    #[error("viewport width must be positive")]
    ZeroViewport,
    #[error("paint_index must strictly increase in depth-first order (node `{tag}` has {index})")]
    PaintOrder { tag: String, index: u64 },
}

impl LayoutSnapshot {
    pub fn from_json(text: &str) -> Result<Self, SnapshotError> {
        let value: Value = serde_json::from_str(text)?;
        let found = value.get("schema").and_then(Value::as_u64);
        if found != Some(SCHEMA_VERSION) {
            return Err(SnapshotError::SchemaMismatch { found });
        }
        let snap: LayoutSnapshot = serde_json::from_value(value)?;
        snap.check()?;
        Ok(snap)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("snapshot serializes")
    }

    pub fn check(&self) -> Result<(), SnapshotError> {
        if self.viewport.width == 0 {
            return Err(SnapshotError::ZeroViewport);
        }
        let mut last: Option<u64> = None;
        let mut bad = None;
        self.root.walk(&mut |n| {
            if bad.is_none() && last.is_some_and(|l| n.paint_index <= l) {
                bad = Some(SnapshotError::PaintOrder { tag: n.tag.clone(), index: n.paint_index });
            }
            last = Some(n.paint_index);
        });
        bad.map_or(Ok(()), Err)
    }
}
