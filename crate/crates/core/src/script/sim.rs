//! Executes an [`EventWiring`] against a minimal element-state model.
//!
//! The model tracks what the embedded page runtime changes in the DOM:
//! visibility plus the text or value of each element.

use std::collections::BTreeMap;

use super::lower::{EventWiring, Op, ValueExpr, WiredEvent};
use crate::model::{ElementKind, MamlDocument};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementState {
    pub kind: ElementKind,
    pub visible: bool,
    /// Text content, or the current value for text fields and dropdowns.
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PageEvent {
    Click(String),
    /// The user sets an input's value, which then fires `change`.
    Change {
        id: String,
        value: String,
    },
    Keydown {
        id: String,
        key: String,
    },
    /// The element's top edge scrolls into view.
    Reach(String),
    /// Advance the clock.
    Advance {
        ms: u64,
    },
}

#[derive(Debug, Clone)]
pub struct PageSim {
    wiring: EventWiring,
    elements: BTreeMap<String, ElementState>,
    reached: Vec<bool>,
    now_ms: u64,
    skipped: usize,
}

pub fn initial_state(doc: &MamlDocument) -> BTreeMap<String, ElementState> {
    doc.elements()
        .iter()
        .filter_map(|el| {
            let text = match el.kind() {
                ElementKind::Text | ElementKind::Button => el.get_str("text").unwrap_or_default().to_owned(),
                ElementKind::Dropdown => el.get_list("options").and_then(|o| o.first()).cloned().unwrap_or_default(),
                _ => String::new(),
            };
            Some((el.id()?.to_owned(), ElementState { kind: el.kind(), visible: el.display(), text }))
        })
        .collect()
}

/// Timer period in milliseconds, as handed to a recurring interval.
pub fn timer_period_ms(seconds: f64) -> u64 {
    ((seconds * 1000.0).round() as u64).max(1)
}

impl PageSim {
    pub fn new(doc: &MamlDocument, wiring: EventWiring) -> Self {
        let reached = vec![false; wiring.entries.len()];
        PageSim { wiring, elements: initial_state(doc), reached, now_ms: 0, skipped: 0 }
    }

    pub fn state(&self) -> &BTreeMap<String, ElementState> {
        &self.elements
    }

    pub fn now_ms(&self) -> u64 {
        self.now_ms
    }

    /// Statements skipped because their target did not exist.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn dispatch(&mut self, event: &PageEvent) {
        let fire: Vec<usize> = match event {
            PageEvent::Click(id) => self.matching(|e| matches!(e, WiredEvent::Click(s) if s == id)),
            PageEvent::Change { id, value } => {
                if let Some(el) = self.elements.get_mut(id) {
                    if matches!(el.kind, ElementKind::TextField | ElementKind::Dropdown) {
                        el.text = value.clone();
                    }
                }
                self.matching(|e| matches!(e, WiredEvent::Change(s) if s == id))
            }
            PageEvent::Keydown { id, key } => {
                self.matching(|e| matches!(e, WiredEvent::Keydown { id: s, key: k } if s == id && k == key))
            }
            PageEvent::Reach(id) => {
                let hits = self.matching(|e| matches!(e, WiredEvent::Reach(s) if s == id));
                let fresh: Vec<usize> = hits.into_iter().filter(|i| !self.reached[*i]).collect();
                for i in &fresh {
                    self.reached[*i] = true;
                }
                fresh
            }
            PageEvent::Advance { ms } => self.due_timers(*ms),
        };
        for i in fire {
            self.run(i);
        }
    }

    fn matching(&self, pred: impl Fn(&WiredEvent) -> bool) -> Vec<usize> {
        self.wiring.entries.iter().enumerate().filter(|(_, e)| pred(&e.event)).map(|(i, _)| i).collect()
    }

    /// Entries due in `(now, now + ms]`, ordered by fire time and then by
    /// source order.
    fn due_timers(&mut self, ms: u64) -> Vec<usize> {
        let start = self.now_ms;
        let end = start + ms;
        let mut due = Vec::new();
        for (i, entry) in self.wiring.entries.iter().enumerate() {
            if let WiredEvent::Timer { seconds } = entry.event {
                let period = timer_period_ms(seconds.get());
                let mut t = (start / period + 1) * period;
                while t <= end {
                    due.push((t, i));
                    t += period;
                }
            }
        }
        due.sort();
        self.now_ms = end;
        due.into_iter().map(|(_, i)| i).collect()
    }

    fn run(&mut self, entry: usize) {
        let ops = self.wiring.entries[entry].ops.clone();
        for op in &ops {
            if !self.apply(op) {
                self.skipped += 1;
            }
        }
    }

    fn read(&self, id: &str) -> Option<String> {
        let el = self.elements.get(id)?;
        Some(match el.kind {
            ElementKind::Image | ElementKind::Video | ElementKind::Carousel => String::new(),
            _ => el.text.clone(),
        })
    }

    fn apply(&mut self, op: &Op) -> bool {
        match op {
            Op::Show(id) | Op::Hide(id) => match self.elements.get_mut(id) {
                Some(el) => {
                    el.visible = matches!(op, Op::Show(_));
                    true
                }
                None => false,
            },
            Op::Swap(value, id) => {
                let value = match value {
                    ValueExpr::Literal(s) => s.clone(),
                    ValueExpr::Val(src) => match self.read(src) {
                        Some(v) => v,
                        None => return false,
                    },
                };
                match self.elements.get_mut(id) {
                    Some(el) => {
                        if matches!(
                            el.kind,
                            ElementKind::Text | ElementKind::Button | ElementKind::Shape | ElementKind::TextField
                        ) {
                            el.text = value;
                        }
                        true
                    }
                    None => false,
                }
            }
        }
    }
}
