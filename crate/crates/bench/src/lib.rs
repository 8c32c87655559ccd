//! Inputs for the pipeline benchmarks.

use std::path::{Path, PathBuf};

use maml_core::{ElementKind, MamlDocument, MamlElement, Number, PropValue};

/// The committed fixture corpus shared with the core tests.
pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

/// A document of `n` text elements in a vertical stack with a script
/// that wires a click on every tenth element.
pub fn synthetic_document(n: usize) -> MamlDocument {
    let mut elements: Vec<MamlElement> = (0..n)
        .map(|i| {
            let num = |v: f64| PropValue::Number(Number::new(v).expect("finite"));
            MamlElement::new(
                ElementKind::Text,
                [
                    ("x", num(10.0)),
                    ("y", num(i as f64 * 24.0)),
                    ("z", PropValue::Number(Number::from(i as i64))),
                    ("w", num(400.0)),
                    ("h", num(20.0)),
                    ("id", PropValue::Text(format!("t{i}"))),
                    ("text", PropValue::Text(format!("line {i}"))),
                ],
            )
            .expect("valid element")
        })
        .collect();
    let code: String = (0..n)
        .step_by(10)
        .map(|i| format!("on(\"click\",\"t{i}\"){{hide(\"t{i}\");swap(\"done\",\"t{}\");}}\n", (i + 1) % n))
        .collect();
    elements.push(MamlElement::new(ElementKind::Script, [("code", PropValue::Text(code))]).expect("valid script"));
    MamlDocument::new(1200, elements)
}
