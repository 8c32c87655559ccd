use std::collections::HashMap;

use super::ast::{Arg, ListenerEvent, ScriptAst, Subject, TriggerCall, TriggerName};
use crate::diag::{Diagnostic, DiagnosticKind};
use crate::model::{ElementKind, MamlDocument};

/// Resolves every element id the script mentions and checks that each
/// trigger is applied to a compatible element kind.
pub fn check_script(ast: &ScriptAst, doc: &MamlDocument) -> Vec<Diagnostic> {
    let kinds: HashMap<&str, ElementKind> =
        doc.elements().iter().filter_map(|e| e.id().map(|id| (id, e.kind()))).collect();
    let mut checker = Checker { kinds, out: Vec::new(), at: doc.script_index() };

    for listener in &ast.listeners {
        if let Subject::Element(id) = &listener.subject {
            let op = listener.event.as_str();
            match listener.event {
                ListenerEvent::Change => checker.expect(op, id, &[ElementKind::TextField, ElementKind::Dropdown]),
                _ => checker.expect(op, id, &[]),
            }
        }
        for call in &listener.body {
            checker.call(call);
        }
    }
    checker.out
}

struct Checker<'a> {
    kinds: HashMap<&'a str, ElementKind>,
    out: Vec<Diagnostic>,
    at: Option<usize>,
}

impl Checker<'_> {
    /// An empty `allowed` list accepts any kind.
    fn expect(&mut self, op: &str, id: &str, allowed: &[ElementKind]) {
        let kind = match self.kinds.get(id) {
            Some(k) => *k,
            None => return self.push(DiagnosticKind::UnresolvedId(id.to_owned())),
        };
        if !allowed.is_empty() && !allowed.contains(&kind) {
            self.push(DiagnosticKind::TypeMismatch { operation: op.to_owned(), id: id.to_owned() });
        }
    }

    fn push(&mut self, kind: DiagnosticKind) {
        let mut d = Diagnostic::error(kind).on_property("code");
        d.element = self.at;
        self.out.push(d);
    }

    fn call(&mut self, call: &TriggerCall) {
        let op = call.name.as_str();
        for (i, arg) in call.args.iter().enumerate() {
            match (call.name, i, arg) {
                (_, _, Arg::Call(inner)) => self.call(inner),
                (TriggerName::Swap, 0, Arg::Literal(_)) => {}
                (TriggerName::Val, _, Arg::Literal(id)) => {
                    self.expect(op, id, &[ElementKind::TextField, ElementKind::Dropdown])
                }
                (TriggerName::Swap, _, Arg::Literal(id)) => {
                    self.expect(op, id, &[ElementKind::Text, ElementKind::Button, ElementKind::TextField])
                }
                (TriggerName::Show | TriggerName::Hide, _, Arg::Literal(id)) => self.expect(op, id, &[]),
            }
        }
    }
}
