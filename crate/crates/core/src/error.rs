use thiserror::Error;

use crate::word::Letter;

/// Errors raised by automaton construction, evaluation and analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("non-total transition: no entry for state {state}, letter {letter}")]
    NonTotal { state: usize, letter: Letter },
    #[error("duplicate transition for state {state}, letter {letter}")]
    DuplicateTransition { state: usize, letter: Letter },
    #[error("dangling state id {state} in {context} ({count} states declared)")]
    DanglingState {
        state: usize,
        count: usize,
        context: String,
    },
    #[error("letter out of range: {letter} in {context} (alphabet size {size})")]
    LetterOutOfRange {
        letter: Letter,
        size: u32,
        context: String,
    },
    #[error("inconsistent Mealy flag")]
    MealyFlag,
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("alphabet mismatch: left outputs {left} letters, right reads {right}")]
    AlphabetMismatch { left: u32, right: u32 },
    #[error("degenerate run: {0}")]
    DegenerateRun(String),
    #[error("not a Mealy automaton")]
    NotMealy,
    #[error("empty word")]
    EmptyWord,
    #[error("empty emission present at state {state}, letter {letter}")]
    EmptyEmission { state: usize, letter: Letter },
    #[error("depth exceeded: colouring defined to depth {depth}, requested {requested}")]
    DepthExceeded { depth: usize, requested: usize },
    #[error("period of an infinite word must be non-empty")]
    EmptyPeriod,
    #[error("longest common prefix of an empty set")]
    EmptySet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search space too large: {candidates} candidates exceed the limit of {limit}")]
    SearchSpaceTooLarge { candidates: String, limit: u64 },
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
