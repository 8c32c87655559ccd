//! Page complexity metrics for an HTML document. Referenced URLs are
//! counted, never fetched.

use std::collections::BTreeSet;
use std::fmt;

use scraper::{ElementRef, Html, Node};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalyzeError {
    #[error("malformed HTML: {0}")]
    MalformedHtml(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ByteCounts {
    /// Markup bytes: everything that is not inline CSS or script.
    pub html: u64,
    /// `<style>` contents plus `style` attribute values.
    pub css: u64,
    /// Inline `<script>` contents plus `on*` handler attributes.
    pub script: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PageReport {
    pub element_count: u64,
    /// Depth of the deepest element, with the root element at depth 1.
    pub max_dom_depth: u64,
    pub bytes: ByteCounts,
    /// Distinct external URLs of any kind.
    pub external_requests: u64,
    #[serde(skip)]
    pub external_scripts: u64,
    #[serde(skip)]
    pub external_stylesheets: u64,
}

impl PageReport {
    pub fn bytes_total(&self) -> u64 {
        self.bytes.html + self.bytes.css + self.bytes.script
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Analyzes raw bytes; non-UTF-8 input is malformed.
pub fn report_bytes(bytes: &[u8]) -> Result<PageReport, AnalyzeError> {
    let text = std::str::from_utf8(bytes).map_err(|e| AnalyzeError::MalformedHtml(format!("not valid UTF-8: {e}")))?;
    report_page(text)
}

fn has_markup(html: &str) -> bool {
    html.as_bytes().windows(2).any(|w| w[0] == b'<' && (w[1].is_ascii_alphabetic() || w[1] == b'!'))
}

pub fn report_page(html: &str) -> Result<PageReport, AnalyzeError> {
    if !has_markup(html) {
        return Err(AnalyzeError::MalformedHtml("no markup found".into()));
    }
    let doc = Html::parse_document(html);
    let mut report = PageReport::default();
    let mut urls = BTreeSet::new();
    let mut scripts = BTreeSet::new();
    let mut sheets = BTreeSet::new();
    let (mut css, mut script) = (0u64, 0u64);

    let root = doc.root_element();
    let mut stack: Vec<(ElementRef, u64)> = vec![(root, 1)];
    while let Some((el, depth)) = stack.pop() {
        report.element_count += 1;
        report.max_dom_depth = report.max_dom_depth.max(depth);
        let v = el.value();
        let name = v.name();

        for (attr, value) in v.attrs() {
            if attr == "style" {
                css += value.len() as u64;
                collect_css_urls(value, &mut urls);
            } else if attr.len() > 2 && attr.starts_with("on") {
                script += value.len() as u64;
            }
        }
        let inline_text = || -> u64 {
            el.children()
                .filter_map(|c| match c.value() {
                    Node::Text(t) => Some(t.len() as u64),
                    _ => None,
                })
                .sum()
        };
        match name {
            "style" => {
                css += inline_text();
                let text: String = el.text().collect();
                collect_css_urls(&text, &mut urls);
            }
            "script" => match v.attr("src").filter(|s| is_external(s)) {
                Some(src) => {
                    urls.insert(src.to_owned());
                    scripts.insert(src.to_owned());
                }
                None => script += inline_text(),
            },
            "link" => {
                if let Some(href) = v.attr("href").filter(|s| is_external(s)) {
                    let rel = v.attr("rel").unwrap_or_default().to_ascii_lowercase();
                    if rel.split_whitespace().any(|r| {
                        matches!(r, "stylesheet" | "icon" | "preload" | "modulepreload" | "prefetch" | "manifest")
                    }) {
                        urls.insert(href.to_owned());
                        if rel.contains("stylesheet") {
                            sheets.insert(href.to_owned());
                        }
                    }
                }
            }
            _ => {}
        }
        for attr in ["src", "poster", "data"] {
            if name == "script" && attr == "src" {
                continue;
            }
            if let Some(u) = v.attr(attr).filter(|s| is_external(s)) {
                if matches!(
                    name,
                    "img" | "video" | "audio" | "source" | "iframe" | "embed" | "object" | "track" | "input"
                ) {
                    urls.insert(u.to_owned());
                }
            }
        }

        let children: Vec<ElementRef> = el.children().filter_map(ElementRef::wrap).collect();
        for child in children.into_iter().rev() {
            stack.push((child, depth + 1));
        }
    }

    let total = html.len() as u64;
    report.bytes = ByteCounts { html: total.saturating_sub(css + script), css, script };
    report.external_requests = urls.len() as u64;
    report.external_scripts = scripts.len() as u64;
    report.external_stylesheets = sheets.len() as u64;
    Ok(report)
}

fn is_external(url: &str) -> bool {
    let u = url.trim();
    !u.is_empty() && !u.starts_with("data:") && !u.starts_with('#') && !u.starts_with("javascript:")
}

fn collect_css_urls(css: &str, urls: &mut BTreeSet<String>) {
    let mut rest = css;
    while let Some(i) = rest.find("url(") {
        rest = &rest[i + 4..];
        let Some(end) = rest.find(')') else { break };
        let u = rest[..end].trim().trim_matches(|c| c == '"' || c == '\'');
        if is_external(u) {
            urls.insert(u.to_owned());
        }
        rest = &rest[end..];
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Metrics<T> {
    pub element_count: T,
    pub max_dom_depth: T,
    pub bytes_html: T,
    pub bytes_css: T,
    pub bytes_script: T,
    pub bytes_total: T,
    pub external_requests: T,
}

impl<T: Copy> Metrics<T> {
    pub fn rows(&self) -> [(&'static str, T); 7] {
        [
            ("element_count", self.element_count),
            ("max_dom_depth", self.max_dom_depth),
            ("bytes_html", self.bytes_html),
            ("bytes_css", self.bytes_css),
            ("bytes_script", self.bytes_script),
            ("bytes_total", self.bytes_total),
            ("external_requests", self.external_requests),
        ]
    }
}

fn metrics(r: &PageReport) -> Metrics<u64> {
    Metrics {
        element_count: r.element_count,
        max_dom_depth: r.max_dom_depth,
        bytes_html: r.bytes.html,
        bytes_css: r.bytes.css,
        bytes_script: r.bytes.script,
        bytes_total: r.bytes_total(),
        external_requests: r.external_requests,
    }
}

/// Differences `original - maml` and percentage reductions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub original: PageReport,
    pub maml: PageReport,
    pub delta: Metrics<i64>,
    pub pct: Metrics<f64>,
}

impl DeltaReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Percentage reduction of total bytes.
    pub fn size_reduction_pct(&self) -> f64 {
        self.pct.bytes_total
    }
}

fn reduction_pct(original: u64, maml: u64) -> f64 {
    if original == 0 {
        0.0
    } else {
        (original as f64 - maml as f64) / original as f64 * 100.0
    }
}

pub fn compare(original: &PageReport, maml: &PageReport) -> DeltaReport {
    let (a, b) = (metrics(original), metrics(maml));
    let d = |x: u64, y: u64| x as i64 - y as i64;
    DeltaReport {
        original: original.clone(),
        maml: maml.clone(),
        delta: Metrics {
            element_count: d(a.element_count, b.element_count),
            max_dom_depth: d(a.max_dom_depth, b.max_dom_depth),
            bytes_html: d(a.bytes_html, b.bytes_html),
            bytes_css: d(a.bytes_css, b.bytes_css),
            bytes_script: d(a.bytes_script, b.bytes_script),
            bytes_total: d(a.bytes_total, b.bytes_total),
            external_requests: d(a.external_requests, b.external_requests),
        },
        pct: Metrics {
            element_count: reduction_pct(a.element_count, b.element_count),
            max_dom_depth: reduction_pct(a.max_dom_depth, b.max_dom_depth),
            bytes_html: reduction_pct(a.bytes_html, b.bytes_html),
            bytes_css: reduction_pct(a.bytes_css, b.bytes_css),
            bytes_script: reduction_pct(a.bytes_script, b.bytes_script),
            bytes_total: reduction_pct(a.bytes_total, b.bytes_total),
            external_requests: reduction_pct(a.external_requests, b.external_requests),
        },
    }
}

/// Aligned text table.
impl fmt::Display for DeltaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<18} {:>12} {:>12} {:>12} {:>10}", "metric", "original", "maml", "delta", "reduction")?;
        let (a, b) = (metrics(&self.original), metrics(&self.maml));
        for (((name, x), (_, y)), ((_, d), (_, p))) in
            a.rows().into_iter().zip(b.rows()).zip(self.delta.rows().into_iter().zip(self.pct.rows()))
        {
            writeln!(f, "{name:<18} {x:>12} {y:>12} {d:>12} {p:>9.1}%")?;
        }
        Ok(())
    }
}
