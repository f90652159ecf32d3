//! JSON file formats.
//!
//! Automaton files have the shape
//!
//! ```json
//! { "input_size": 2, "output_size": 2, "states": ["q0"],
//!   "transitions": [ { "state": 0, "letter": 0, "next": 0, "emit": [0] } ] }
//! ```
//!
//! where `transitions` covers every (state, letter) pair exactly once and an
//! empty `emit` array is the empty word.

use serde::Serialize;
use serde_json::Value;

use crate::automaton::{AsyncAutomaton, Transition};
use crate::decide::{DecisionWitness, Property, Verdict};
use crate::error::{Error, Result};
use crate::word::{Alphabet, FiniteWord, Letter};

#[derive(Serialize)]
struct TransitionRecord<'a> {
    state: usize,
    letter: Letter,
    next: usize,
    emit: &'a [Letter],
}

#[derive(Serialize)]
struct AutomatonRecord<'a> {
    input_size: u32,
    output_size: u32,
    states: &'a [String],
    transitions: Vec<TransitionRecord<'a>>,
}

/// Pretty-printed JSON with transitions in state-major, letter-minor order.
pub fn save(a: &AsyncAutomaton) -> Vec<u8> {
    let transitions = a
        .states()
        .flat_map(|q| {
            a.input().letters().map(move |x| TransitionRecord {
                state: q.0,
                letter: x,
                next: a.next_state(q, x).0,
                emit: a.emission(q, x).letters(),
            })
        })
        .collect();
    let record = AutomatonRecord {
        input_size: a.input().size(),
        output_size: a.output().size(),
        states: a.names(),
        transitions,
    };
    let mut bytes = serde_json::to_vec_pretty(&record).expect("automaton serializes");
    bytes.push(b'\n');
    bytes
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{path}.{key}"), "missing field"))
}

fn uint(value: &Value, path: &str) -> Result<u64> {
    value.as_u64().ok_or_else(|| {
        schema(
            path,
            format!("expected a non-negative integer, found {value}"),
        )
    })
}

fn small(value: &Value, path: &str) -> Result<u32> {
    u32::try_from(uint(value, path)?).map_err(|_| schema(path, "integer too large"))
}

fn array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| schema(path, format!("expected an array, found {value}")))
}

/// Parses and validates an automaton file.
pub fn load(bytes: &[u8]) -> Result<AsyncAutomaton> {
    let root: Value = serde_json::from_slice(bytes)?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("$", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(
            key.as_str(),
            "input_size" | "output_size" | "states" | "transitions"
        ) {
            return Err(schema(format!("$.{key}"), "unknown field"));
        }
    }
    let input_size = small(field(obj, "$", "input_size")?, "$.input_size")?;
    let output_size = small(field(obj, "$", "output_size")?, "$.output_size")?;
    let input =
        Alphabet::new(input_size).map_err(|_| schema("$.input_size", "must be at least 1"))?;
    let output =
        Alphabet::new(output_size).map_err(|_| schema("$.output_size", "must be at least 1"))?;

    let names = array(field(obj, "$", "states")?, "$.states")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| schema(format!("$.states[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>>>()?;
    if names.is_empty() {
        return Err(schema("$.states", "at least one state is required"));
    }

    let records = array(field(obj, "$", "transitions")?, "$.transitions")?;
    let mut transitions = Vec::with_capacity(records.len());
    for (i, record) in records.iter().enumerate() {
        let path = format!("$.transitions[{i}]");
        let t = record
            .as_object()
            .ok_or_else(|| schema(&path, "expected an object"))?;
        let state = uint(field(t, &path, "state")?, &format!("{path}.state"))? as usize;
        let letter = small(field(t, &path, "letter")?, &format!("{path}.letter"))?;
        let next = uint(field(t, &path, "next")?, &format!("{path}.next"))? as usize;
        let emit_path = format!("{path}.emit");
        let emit = array(field(t, &path, "emit")?, &emit_path)?
            .iter()
            .enumerate()
            .map(|(j, v)| small(v, &format!("{emit_path}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        if state >= names.len() {
            return Err(schema(format!("{path}.state"), format!("no state {state}")));
        }
        if next >= names.len() {
            return Err(schema(format!("{path}.next"), format!("no state {next}")));
        }
        if !input.contains(letter) {
            return Err(schema(
                format!("{path}.letter"),
                format!("letter out of range: {letter} (input size {input_size})"),
            ));
        }
        if let Some(j) = emit.iter().position(|&y| !output.contains(y)) {
            return Err(schema(
                format!("{emit_path}[{j}]"),
                format!(
                    "letter out of range: {} (output size {output_size})",
                    emit[j]
                ),
            ));
        }
        transitions.push(Transition {
            state,
            letter,
            next,
            emit: FiniteWord::new(emit),
        });
    }
    AsyncAutomaton::from_transitions(input, output, names, transitions).map_err(|e| match e {
        Error::NonTotal { .. } | Error::DuplicateTransition { .. } => {
            schema("$.transitions", e.to_string())
        }
        other => other,
    })
}

/// `{property, verdict, witness}` as written by the `check` command.
#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport<'a> {
    pub property: Property,
    pub verdict: bool,
    pub witness: Option<&'a DecisionWitness>,
}

impl<'a> VerdictReport<'a> {
    pub fn new(property: Property, verdict: &'a Verdict) -> Self {
        VerdictReport {
            property,
            verdict: verdict.holds,
            witness: verdict.witness.as_ref(),
        }
    }
}
