use std::fmt;

use crate::model::json_string;
use crate::number::Number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ListenerEvent {
    Click,
    Change,
    Keydown,
    Reach,
    Timer,
}

impl ListenerEvent {
    pub const ALL: [ListenerEvent; 5] = [
        ListenerEvent::Click,
        ListenerEvent::Change,
        ListenerEvent::Keydown,
        ListenerEvent::Reach,
        ListenerEvent::Timer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ListenerEvent::Click => "click",
            ListenerEvent::Change => "change",
            ListenerEvent::Keydown => "keydown",
            ListenerEvent::Reach => "reach",
            ListenerEvent::Timer => "timer",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.as_str() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriggerName {
    Val,
    Show,
    Hide,
    Swap,
}

impl TriggerName {
    pub const ALL: [TriggerName; 4] = [TriggerName::Val, TriggerName::Show, TriggerName::Hide, TriggerName::Swap];

    pub fn as_str(self) -> &'static str {
        match self {
            TriggerName::Val => "val",
            TriggerName::Show => "show",
            TriggerName::Hide => "hide",
            TriggerName::Swap => "swap",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.as_str() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            TriggerName::Swap => 2,
            _ => 1,
        }
    }

    /// Whether the trigger produces a value and may therefore be nested.
    pub fn returns_value(self) -> bool {
        self == TriggerName::Val
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Subject {
    Element(String),
    Seconds(Number),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Literal(String),
    Call(TriggerCall),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriggerCall {
    pub name: TriggerName,
    pub args: Vec<Arg>,
}

impl TriggerCall {
    pub fn new(name: TriggerName, args: Vec<Arg>) -> Self {
        TriggerCall { name, args }
    }

    /// Element ids this call and its nested calls refer to, in source order.
    pub fn referenced_ids(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_ids(&mut out);
        out
    }

    fn collect_ids<'a>(&'a self, out: &mut Vec<&'a str>) {
        for (i, arg) in self.args.iter().enumerate() {
            match arg {
                Arg::Call(inner) => inner.collect_ids(out),
                // swap's first argument is content, not an id
                Arg::Literal(_) if self.name == TriggerName::Swap && i == 0 => {}
                Arg::Literal(id) => out.push(id),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Listener {
    pub event: ListenerEvent,
    pub subject: Subject,
    /// Present iff `event` is keydown.
    pub key_name: Option<String>,
    pub body: Vec<TriggerCall>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScriptAst {
    pub listeners: Vec<Listener>,
}

impl ScriptAst {
    pub fn statement_count(&self) -> usize {
        self.listeners.iter().map(|l| l.body.len()).sum()
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Literal(s) => f.write_str(&json_string(s)),
            Arg::Call(c) => c.fmt(f),
        }
    }
}

impl fmt::Display for TriggerCall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name.as_str())?;
        for (i, arg) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            arg.fmt(f)?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Listener {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "on({},", json_string(self.event.as_str()))?;
        match &self.subject {
            Subject::Element(id) => f.write_str(&json_string(id))?,
            Subject::Seconds(n) => write!(f, "{n}")?,
        }
        if let Some(key) = &self.key_name {
            write!(f, ",{}", json_string(key))?;
        }
        f.write_str("){")?;
        for call in &self.body {
            write!(f, "{call};")?;
        }
        f.write_str("}")
    }
}

/// Canonical MAMLScript: one listener per line, no optional whitespace.
impl fmt::Display for ScriptAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.listeners.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            l.fmt(f)?;
        }
        Ok(())
    }
}
