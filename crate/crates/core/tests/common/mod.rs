//! Generators and reference models shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use maml_core::model::{PropSpec, ValueDomain};
use maml_core::script::sim::PageEvent;
use maml_core::script::{Arg, ListenerEvent, ScriptAst, Subject, TriggerName};
use maml_core::{ElementKind, MamlDocument, MamlElement, Number, PropValue};
use proptest::prelude::*;
use proptest::sample::select;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

/// `n` values drawn from `strategy` with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, n: usize, seed: u8) -> Vec<S::Value> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..n).map(|_| strategy.new_tree(&mut runner).expect("strategy generates").current()).collect()
}

// ------------------------------------------------------------- documents

/// Strings that exercise JSON and HTML escaping.
pub fn arb_text(min: usize) -> impl Strategy<Value = String> {
    let ch = prop_oneof![
        6 => any::<char>(),
        1 => select(vec!['"', '\\', '\n', '\t', '\u{0}', '\u{1f}', '\u{2028}', '<', '/', '&', '\u{1F600}']),
    ];
    proptest::collection::vec(ch, min..min + 12).prop_map(String::from_iter)
}

pub fn num(v: f64) -> PropValue {
    PropValue::Number(Number::new(v).expect("finite"))
}

fn arb_number(min: f64, integral_min: u32) -> impl Strategy<Value = PropValue> {
    prop_oneof![
        (integral_min..5000u32).prop_map(|n| PropValue::Number(Number::from(n))),
        (min..1e6f64).prop_map(|v| PropValue::Number(Number::new(v).unwrap())),
    ]
}

pub fn arb_value(domain: ValueDomain) -> BoxedStrategy<PropValue> {
    match domain {
        ValueDomain::Bool => any::<bool>().prop_map(PropValue::Bool).boxed(),
        ValueDomain::NonNegative => arb_number(0.0, 0).boxed(),
        ValueDomain::Positive => arb_number(1e-3, 1).boxed(),
        ValueDomain::Integer => (-1000i64..1000).prop_map(|n| PropValue::Number(Number::from(n))).boxed(),
        ValueDomain::Text => arb_text(0).prop_map(PropValue::Text).boxed(),
        ValueDomain::NonEmptyText => arb_text(1).prop_map(PropValue::Text).boxed(),
        ValueDomain::Id => "[A-Za-z_][A-Za-z0-9_-]{0,6}".prop_map(PropValue::Text).boxed(),
        ValueDomain::Color => "#[0-9a-fA-F]{6}([0-9a-fA-F]{2})?".prop_map(PropValue::Text).boxed(),
        ValueDomain::OneOf(values) => select(values.to_vec()).prop_map(PropValue::from).boxed(),
        ValueDomain::FontWeight => prop_oneof![
            (1i64..=1000).prop_map(|n| PropValue::Number(Number::from(n))),
            select(vec!["normal", "bold", "lighter", "bolder"]).prop_map(PropValue::from),
        ]
        .boxed(),
        ValueDomain::NonEmptyList => proptest::collection::vec(arb_text(0), 1..4).prop_map(PropValue::List).boxed(),
        ValueDomain::Kind => unreachable!("type is set by the element constructor"),
    }
}

/// Every required property plus a random subset of optional ones.
pub fn arb_element(kind: ElementKind) -> impl Strategy<Value = MamlElement> {
    let schema = kind.schema();
    let specs: Vec<(&'static PropSpec, bool)> = schema
        .required
        .iter()
        .map(|s| (s, true))
        .chain(schema.optional.iter().map(|s| (s, false)))
        .filter(|(s, _)| s.domain != ValueDomain::Kind)
        .collect();
    let parts: Vec<BoxedStrategy<Option<(&'static str, PropValue)>>> = specs
        .into_iter()
        .map(|(spec, required)| {
            let value = arb_value(spec.domain).prop_map(move |v| (spec.name, v));
            if required {
                value.prop_map(Some).boxed()
            } else {
                proptest::option::of(value).boxed()
            }
        })
        .collect();
    parts.prop_map(move |props| MamlElement::new(kind, props.into_iter().flatten()).expect("schema-valid element"))
}

fn non_script_kind() -> impl Strategy<Value = ElementKind> {
    select(ElementKind::ALL.iter().copied().filter(|k| *k != ElementKind::Script).collect::<Vec<_>>())
}

/// Renames ids so they are unique, keeping the generated stem.
fn dedupe_ids(elements: Vec<MamlElement>) -> Vec<MamlElement> {
    elements
        .into_iter()
        .enumerate()
        .map(|(i, el)| match el.id() {
            Some(id) => with_prop(&el, "id", PropValue::Text(format!("{id}-{i}"))),
            None => el,
        })
        .collect()
}

pub fn with_prop(el: &MamlElement, name: &str, value: PropValue) -> MamlElement {
    let mut props: Vec<(String, PropValue)> =
        el.canonical_entries().into_iter().map(|(k, v)| (k.to_owned(), v.clone())).collect();
    props.retain(|(k, _)| k != name);
    props.push((name.to_owned(), value));
    MamlElement::new(el.kind(), props).expect("still valid")
}

/// Valid documents: unique ids and, sometimes, a trailing script that
/// swaps a literal into the first identified text element.
pub fn arb_document(max_elements: usize) -> impl Strategy<Value = MamlDocument> {
    (
        1u32..4000,
        proptest::collection::vec(non_script_kind().prop_flat_map(arb_element), 0..max_elements),
        proptest::option::of(arb_text(0)),
        1u32..20,
    )
        .prop_map(|(viewport, elements, script_literal, tenths)| {
            let mut elements = dedupe_ids(elements);
            let target =
                elements.iter().find(|e| e.kind() == ElementKind::Text).and_then(|e| e.id()).map(str::to_owned);
            if let Some(literal) = script_literal {
                let code = match target {
                    Some(id) => format!(
                        "on(\"timer\",{}){{swap({},{});}}",
                        f64::from(tenths) / 10.0,
                        serde_json::to_string(&literal).unwrap(),
                        serde_json::to_string(&id).unwrap()
                    ),
                    None => String::new(),
                };
                elements.push(MamlElement::new(ElementKind::Script, [("code", PropValue::Text(code))]).unwrap());
            }
            MamlDocument::new(viewport, elements)
        })
}

/// `n` elements cycling through every non-script kind, ids `e0..`.
pub fn document_of_size(n: usize) -> MamlDocument {
    let kinds: Vec<ElementKind> = ElementKind::ALL.iter().copied().filter(|k| *k != ElementKind::Script).collect();
    let elements = (0..n)
        .map(|i| {
            let kind = kinds[i % kinds.len()];
            let mut props: Vec<(&str, PropValue)> = vec![
                ("x", num(i as f64 % 1000.0)),
                ("y", num((i * 20) as f64)),
                ("z", PropValue::Number(Number::from(i as i64))),
                ("w", num(100.0)),
                ("h", num(18.0)),
                ("display", PropValue::Bool(true)),
            ];
            match kind {
                ElementKind::Text | ElementKind::Button => props.push(("text", PropValue::from("label"))),
                ElementKind::Dropdown => {
                    props.push(("options", PropValue::List(vec!["a".into(), "b".into(), "c".into()])))
                }
                ElementKind::Image => props.push(("src", PropValue::from(format!("/img/{i}.png").as_str()))),
                ElementKind::Carousel => {
                    props.push(("srcs", PropValue::List((0..3).map(|k| format!("/c/{i}-{k}.png")).collect())))
                }
                _ => {}
            }
            let mut el = MamlElement::new(kind, props).expect("valid element");
            el = with_prop(&el, "id", PropValue::Text(format!("e{i}")));
            el
        })
        .collect();
    MamlDocument::new(1200, elements)
}

// --------------------------------------------------------- script oracle

/// A random script over a 20-element document plus an event sequence.
#[derive(Debug, Clone)]
pub struct ScriptCase {
    pub doc: MamlDocument,
    pub source: String,
    pub events: Vec<PageEvent>,
}

const CASE_KINDS: [ElementKind; 6] = [
    ElementKind::Text,
    ElementKind::Button,
    ElementKind::TextField,
    ElementKind::Dropdown,
    ElementKind::Image,
    ElementKind::Shape,
];

const KEYS: [&str; 3] = ["Enter", "a", "Escape"];
const TIMER_SECONDS: [&str; 5] = ["0.25", "0.5", "1", "1.5", "2"];
const HOT_IDS: usize = 5;
/// An id the documents never define.
const GHOST: &str = "ghost";

fn case_element(i: usize, kind: ElementKind, visible: bool) -> MamlElement {
    let mut props: Vec<(&str, PropValue)> = vec![
        ("x", num(0.0)),
        ("y", num((i * 30) as f64)),
        ("z", PropValue::Number(Number::from(0i64))),
        ("w", num(100.0)),
        ("h", num(20.0)),
        ("display", PropValue::Bool(visible)),
        ("id", PropValue::Text(format!("e{i}"))),
    ];
    match kind {
        ElementKind::Text | ElementKind::Button => props.push(("text", PropValue::Text(format!("t{i}")))),
        ElementKind::Dropdown => props.push(("options", PropValue::List(vec![format!("o{i}"), "x".into()]))),
        ElementKind::Image => props.push(("src", PropValue::from("a.png"))),
        _ => {}
    }
    MamlElement::new(kind, props).expect("valid element")
}

fn lit(s: &str) -> String {
    serde_json::to_string(s).unwrap()
}

pub fn arb_script_case() -> impl Strategy<Value = ScriptCase> {
    // The first four kinds are fixed so every pool below is non-empty.
    let kinds = proptest::collection::vec(select(CASE_KINDS.to_vec()), 16).prop_map(|rest| {
        let mut k = vec![ElementKind::Text, ElementKind::Button, ElementKind::TextField, ElementKind::Dropdown];
        k.extend(rest);
        k
    });
    (kinds, proptest::collection::vec(any::<bool>(), 20)).prop_flat_map(|(kinds, visible)| {
        let ids_of = |pred: &dyn Fn(ElementKind) -> bool| -> Vec<String> {
            kinds.iter().enumerate().filter(|(_, k)| pred(**k)).map(|(i, _)| format!("e{i}")).collect()
        };
        let mut any_id = ids_of(&|_| true);
        any_id.push(GHOST.into());
        let mut inputs = ids_of(&|k| matches!(k, ElementKind::TextField | ElementKind::Dropdown));
        let targets = ids_of(&|k| matches!(k, ElementKind::Text | ElementKind::Button | ElementKind::TextField));
        let input_ids = inputs.clone();
        inputs.push(GHOST.into());

        let content = prop_oneof![
            "[a-z \"\\\\é]{0,6}".prop_map(|s| lit(&s)),
            select(inputs).prop_map(|id| format!("val({})", lit(&id))),
        ];
        let statement = prop_oneof![
            select(any_id.clone()).prop_map(|id| format!("show({});", lit(&id))),
            select(any_id.clone()).prop_map(|id| format!("hide({});", lit(&id))),
            (content, select(targets)).prop_map(|(c, t)| format!("swap({c},{});", lit(&t))),
        ];
        // Subjects and events favour a few ids so listeners actually fire,
        // repeatedly.
        let hot: Vec<String> = (0..HOT_IDS).map(|i| format!("e{i}")).collect();
        let subject = prop_oneof![3 => select(hot), 1 => select(any_id.clone())].boxed();
        let header = prop_oneof![
            subject.clone().prop_map(|id| format!("on(\"click\",{})", lit(&id))),
            select(input_ids.clone()).prop_map(|id| format!("on(\"change\",{})", lit(&id))),
            (subject.clone(), select(KEYS.to_vec())).prop_map(|(id, k)| format!(
                "on(\"keydown\",{},{})",
                lit(&id),
                lit(k)
            )),
            subject.clone().prop_map(|id| format!("on(\"reach\",{})", lit(&id))),
            select(TIMER_SECONDS.to_vec()).prop_map(|s| format!("on(\"timer\",{s})")),
        ];
        let listener = (header, proptest::collection::vec(statement, 1..5))
            .prop_map(|(h, body)| format!("{h}{{{}}}", body.concat()));
        let source = proptest::collection::vec(listener, 1..6).prop_map(|ls| ls.join("\n"));

        // Clock steps include exact timer boundaries and off-by-one neighbours.
        let step =
            prop_oneof![1u64..300, select(vec![249u64, 250, 251, 500, 999, 1000, 1001, 1500, 2000]), 300u64..2500,];
        let event = prop_oneof![
            subject.clone().prop_map(PageEvent::Click),
            (select(input_ids), "[a-z]{0,4}").prop_map(|(id, value)| PageEvent::Change { id, value }),
            (subject.clone(), select(KEYS.to_vec()))
                .prop_map(|(id, key)| PageEvent::Keydown { id, key: key.to_owned() }),
            subject.prop_map(PageEvent::Reach),
            step.prop_map(|ms| PageEvent::Advance { ms }),
        ];
        let events = proptest::collection::vec(event, 5..30);

        let elements: Vec<MamlElement> =
            kinds.iter().zip(&visible).enumerate().map(|(i, (k, v))| case_element(i, *k, *v)).collect();
        (Just(elements), source, events).prop_map(|(mut elements, source, events)| {
            elements.push(MamlElement::new(ElementKind::Script, [("code", PropValue::Text(source.clone()))]).unwrap());
            ScriptCase { doc: MamlDocument::new(1200, elements), source, events }
        })
    })
}

/// Observable state of one element: visibility and its text or value.
pub type RefState = BTreeMap<String, (bool, String)>;

/// Walks the AST directly, advancing time one millisecond at a time.
pub struct RefInterpreter<'a> {
    ast: &'a ScriptAst,
    kinds: BTreeMap<String, ElementKind>,
    pub state: RefState,
    fired_reach: Vec<bool>,
    now: u64,
}

impl<'a> RefInterpreter<'a> {
    pub fn new(doc: &MamlDocument, ast: &'a ScriptAst) -> Self {
        let mut kinds = BTreeMap::new();
        let mut state = BTreeMap::new();
        for el in doc.elements() {
            let Some(id) = el.id() else { continue };
            let text = match el.kind() {
                ElementKind::Text | ElementKind::Button => el.get_str("text").unwrap().to_owned(),
                ElementKind::Dropdown => el.get_list("options").unwrap()[0].clone(),
                _ => String::new(),
            };
            kinds.insert(id.to_owned(), el.kind());
            state.insert(id.to_owned(), (el.display(), text));
        }
        RefInterpreter { ast, kinds, state, fired_reach: vec![false; ast.listeners.len()], now: 0 }
    }

    pub fn dispatch(&mut self, event: &PageEvent) {
        match event {
            PageEvent::Click(id) => self.fire(|l| l.event == ListenerEvent::Click && subject_is(l, id)),
            PageEvent::Change { id, value } => {
                if matches!(self.kinds.get(id), Some(ElementKind::TextField | ElementKind::Dropdown)) {
                    self.state.get_mut(id).unwrap().1 = value.clone();
                }
                self.fire(|l| l.event == ListenerEvent::Change && subject_is(l, id))
            }
            PageEvent::Keydown { id, key } => self.fire(|l| {
                l.event == ListenerEvent::Keydown && subject_is(l, id) && l.key_name.as_deref() == Some(key.as_str())
            }),
            PageEvent::Reach(id) => {
                for i in 0..self.ast.listeners.len() {
                    let l = &self.ast.listeners[i];
                    if l.event == ListenerEvent::Reach && subject_is(l, id) && !self.fired_reach[i] {
                        self.fired_reach[i] = true;
                        self.run(i);
                    }
                }
            }
            PageEvent::Advance { ms } => {
                for _ in 0..*ms {
                    self.now += 1;
                    let now = self.now;
                    self.fire(|l| match (&l.event, &l.subject) {
                        (ListenerEvent::Timer, Subject::Seconds(s)) => {
                            let period = ((s.get() * 1000.0).round() as u64).max(1);
                            now % period == 0
                        }
                        _ => false,
                    });
                }
            }
        }
    }

    fn fire(&mut self, pred: impl Fn(&maml_core::script::Listener) -> bool) {
        let hits: Vec<usize> = (0..self.ast.listeners.len()).filter(|i| pred(&self.ast.listeners[*i])).collect();
        for i in hits {
            self.run(i);
        }
    }

    fn run(&mut self, listener: usize) {
        for call in &self.ast.listeners[listener].body {
            let id_arg = |n: usize| match &call.args[n] {
                Arg::Literal(s) => s.clone(),
                Arg::Call(_) => unreachable!("only swap content may be a call"),
            };
            match call.name {
                TriggerName::Show | TriggerName::Hide => {
                    if let Some(s) = self.state.get_mut(&id_arg(0)) {
                        s.0 = call.name == TriggerName::Show;
                    }
                }
                TriggerName::Swap => {
                    let content = match &call.args[0] {
                        Arg::Literal(s) => Some(s.clone()),
                        Arg::Call(inner) => match &inner.args[0] {
                            Arg::Literal(src) => self.read(src),
                            Arg::Call(_) => unreachable!(),
                        },
                    };
                    let target = id_arg(1);
                    if let (Some(content), true) = (content, self.state.contains_key(&target)) {
                        let writable = matches!(
                            self.kinds[&target],
                            ElementKind::Text | ElementKind::Button | ElementKind::Shape | ElementKind::TextField
                        );
                        if writable {
                            self.state.get_mut(&target).unwrap().1 = content;
                        }
                    }
                }
                TriggerName::Val => unreachable!("val is never a statement"),
            }
        }
    }

    fn read(&self, id: &str) -> Option<String> {
        let kind = self.kinds.get(id)?;
        Some(match kind {
            ElementKind::Image | ElementKind::Video | ElementKind::Carousel => String::new(),
            _ => self.state[id].1.clone(),
        })
    }
}

fn subject_is(l: &maml_core::script::Listener, id: &str) -> bool {
    matches!(&l.subject, Subject::Element(s) if s == id)
}

/// Projects simulator state onto the reference shape.
pub fn sim_state(sim: &maml_core::script::sim::PageSim) -> RefState {
    sim.state().iter().map(|(id, s)| (id.clone(), (s.visible, s.text.clone()))).collect()
}

/// Runs one case through both models; returns the first divergence.
pub fn check_script_case(case: &ScriptCase) -> Result<(), String> {
    let ast = maml_core::parse_script(&case.source).map_err(|e| format!("generated script rejected: {e}"))?;
    let wiring = maml_core::lower_script(&ast);
    let mut sim = maml_core::script::sim::PageSim::new(&case.doc, wiring);
    let mut reference = RefInterpreter::new(&case.doc, &ast);
    if sim_state(&sim) != reference.state {
        return Err("initial states differ".into());
    }
    for (step, event) in case.events.iter().enumerate() {
        sim.dispatch(event);
        reference.dispatch(event);
        if sim_state(&sim) != reference.state {
            return Err(format!("diverged after event {step} ({event:?})"));
        }
    }
    Ok(())
}
