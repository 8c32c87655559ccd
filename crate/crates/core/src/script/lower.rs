use serde_json::{json, Value};

use super::ast::{Arg, ListenerEvent, ScriptAst, Subject, TriggerCall, TriggerName};
use crate::number::Number;

#[derive(Debug, Clone, PartialEq)]
pub enum ValueExpr {
    Literal(String),
    Val(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    Show(String),
    Hide(String),
    Swap(ValueExpr, String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum WiredEvent {
    Click(String),
    Change(String),
    Keydown { id: String, key: String },
    Reach(String),
    Timer { seconds: Number },
}

impl WiredEvent {
    pub fn subject(&self) -> Option<&str> {
        match self {
            WiredEvent::Click(id) | WiredEvent::Change(id) | WiredEvent::Reach(id) => Some(id),
            WiredEvent::Keydown { id, .. } => Some(id),
            WiredEvent::Timer { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WiringEntry {
    pub event: WiredEvent,
    pub ops: Vec<Op>,
}

/// Target-agnostic event wiring: one entry per listener, in source order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EventWiring {
    pub entries: Vec<WiringEntry>,
}

impl EventWiring {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn op_count(&self) -> usize {
        self.entries.iter().map(|e| e.ops.len()).sum()
    }

    /// The wiring table literal read by the page runtime.
    ///
    /// Each entry is `{"on":event,"id":subject,"key":k?,"every":s?,"do":[op...]}`
    /// where an op is `["show",id]`, `["hide",id]` or `["swap",value,id]`
    /// and a value is a plain string or `["val",id]`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.entries.iter().map(entry_json).collect())
    }
}

fn entry_json(entry: &WiringEntry) -> Value {
    let ops: Vec<Value> = entry.ops.iter().map(op_json).collect();
    match &entry.event {
        WiredEvent::Click(id) => json!({"on": "click", "id": id, "do": ops}),
        WiredEvent::Change(id) => json!({"on": "change", "id": id, "do": ops}),
        WiredEvent::Reach(id) => json!({"on": "reach", "id": id, "do": ops}),
        WiredEvent::Keydown { id, key } => json!({"on": "keydown", "id": id, "key": key, "do": ops}),
        WiredEvent::Timer { seconds } => {
            let every = match seconds.as_i64() {
                Some(i) => json!(i),
                None => json!(seconds.get()),
            };
            json!({"on": "timer", "every": every, "do": ops})
        }
    }
}

fn op_json(op: &Op) -> Value {
    match op {
        Op::Show(id) => json!(["show", id]),
        Op::Hide(id) => json!(["hide", id]),
        Op::Swap(ValueExpr::Literal(s), id) => json!(["swap", s, id]),
        Op::Swap(ValueExpr::Val(src), id) => json!(["swap", ["val", src], id]),
    }
}

/// Lowers a parsed script. Statements whose shape the parser would have
/// rejected are skipped.
pub fn lower_script(ast: &ScriptAst) -> EventWiring {
    let entries = ast
        .listeners
        .iter()
        .filter_map(|l| {
            let event = match (&l.event, &l.subject) {
                (ListenerEvent::Timer, Subject::Seconds(s)) => WiredEvent::Timer { seconds: *s },
                (ListenerEvent::Click, Subject::Element(id)) => WiredEvent::Click(id.clone()),
                (ListenerEvent::Change, Subject::Element(id)) => WiredEvent::Change(id.clone()),
                (ListenerEvent::Reach, Subject::Element(id)) => WiredEvent::Reach(id.clone()),
                (ListenerEvent::Keydown, Subject::Element(id)) => {
                    WiredEvent::Keydown { id: id.clone(), key: l.key_name.clone()? }
                }
                _ => return None,
            };
            Some(WiringEntry { event, ops: l.body.iter().filter_map(lower_call).collect() })
        })
        .collect();
    EventWiring { entries }
}

fn literal(arg: Option<&Arg>) -> Option<String> {
    match arg? {
        Arg::Literal(s) => Some(s.clone()),
        Arg::Call(_) => None,
    }
}

fn lower_call(call: &TriggerCall) -> Option<Op> {
    match call.name {
        TriggerName::Show => Some(Op::Show(literal(call.args.first())?)),
        TriggerName::Hide => Some(Op::Hide(literal(call.args.first())?)),
        TriggerName::Swap => {
            let value = match call.args.first()? {
                Arg::Literal(s) => ValueExpr::Literal(s.clone()),
                Arg::Call(inner) if inner.name == TriggerName::Val => ValueExpr::Val(literal(inner.args.first())?),
                Arg::Call(_) => return None,
            };
            Some(Op::Swap(value, literal(call.args.get(1))?))
        }
        TriggerName::Val => None,
    }
}
