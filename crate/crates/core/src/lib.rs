//! Finite-state transducers over Cantor spaces.
//!
//! An [`AsyncAutomaton`] reads one input letter at a time and emits a
//! (possibly empty) output word; Mealy automata emit exactly one letter.
//! The crate provides exact evaluation on finite and eventually periodic
//! infinite words, composition, the automata `A_n`, `B_m` and `C` whose
//! composite defines a bijective short map `{0..n}^ω → {0..m}^ω` when
//! `n ≥ m`, the correspondence between Mealy automata and colourings of the
//! Cantor tree, and decision procedures for injectivity and surjectivity.
//!
//! ```
//! use cantor_core::{build_a, build_b, EventuallyPeriodicWord, StateId};
//!
//! let ab = build_a(3)?.compose(&build_b(3)?)?;
//! let w = EventuallyPeriodicWord::new(vec![3, 1], vec![0, 2])?;
//! assert_eq!(ab.run_omega_exact(StateId(0), &w)?, w);
//! # Ok::<(), cantor_core::Error>(())
//! ```

pub mod automaton;
pub mod colouring;
pub mod constructions;
pub mod decide;
pub mod error;
pub mod metric;
mod omega;
pub mod search;
pub mod serial;
pub mod word;

pub use automaton::{identity, AsyncAutomaton, RunResult, StateId, Transition};
pub use colouring::{
    colour_of, colour_tree, l_prefix, mealy_from_colouring, mealyfy, tilde_c, BufferedMealy,
    BufferedMealyState, ColourTable, Colouring, ColouringMealy, LazyMealy,
};
pub use constructions::{
    b_closed_form, build_a, build_b, build_c, eta, expected_ab_tables, expected_ba_tables, SIGMA,
};
pub use decide::{
    check_short_map, decide, decide_bijective, decide_injective, decide_surjective, random_pairs,
    random_word, verify_collision, verify_unreachable, AutomatonMap, DecisionWitness, OmegaMap,
    Property, ShortMapReport, ShortMapViolation, Verdict,
};
pub use error::{Error, Result};
pub use metric::{distance, MetricParams};
pub use search::{
    candidate, candidate_count, enumerate_and_decide, SearchSummary, CANDIDATE_LIMIT,
};
pub use serial::{load, save, VerdictReport};
pub use word::{lcp, Alphabet, AnyWord, CommonPrefix, EventuallyPeriodicWord, FiniteWord, Letter};
