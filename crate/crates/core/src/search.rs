//! Exhaustive enumeration of small Mealy automata.
//!
//! Candidates with `k` states are numbered `0..(k·|Y|)^(k·|X|)`. The index is
//! read little-endian in base `k·|Y|`, one digit per table entry in
//! state-major order; a digit `d` encodes next state `d % k` and output
//! letter `d / k`. No isomorphism reduction is applied.

use rayon::prelude::*;
use serde::Serialize;

use crate::automaton::AsyncAutomaton;
use crate::decide::{decide, Property};
use crate::error::{Error, Result};
use crate::word::{Alphabet, FiniteWord};

/// Upper bound on the number of candidate automata in one search.
pub const CANDIDATE_LIMIT: u64 = 10_000_000;

/// Number of Mealy automata with `1..=max_states` states, or `None` on overflow.
pub fn candidate_count(x_size: u32, y_size: u32, max_states: u32) -> Option<u128> {
    (1..=max_states).try_fold(0u128, |acc, k| {
        let base = u128::from(k) * u128::from(y_size);
        let exp = k.checked_mul(x_size)?;
        acc.checked_add(base.checked_pow(exp)?)
    })
}

pub fn candidates_with_states(x_size: u32, y_size: u32, states: u32) -> u64 {
    let base = u64::from(states) * u64::from(y_size);
    base.pow(states * x_size)
}

/// The candidate with `states` states and the given index.
pub fn candidate(x_size: u32, y_size: u32, states: u32, index: u64) -> Result<AsyncAutomaton> {
    let base = u64::from(states) * u64::from(y_size);
    let mut rest = index;
    let names = (0..states).map(|i| format!("q{i}")).collect();
    AsyncAutomaton::from_fn(
        Alphabet::new(x_size)?,
        Alphabet::new(y_size)?,
        names,
        |_, _| {
            let digit = rest % base;
            rest /= base;
            let next = (digit % u64::from(states)) as usize;
            let out = (digit / u64::from(states)) as u32;
            (next, FiniteWord::new(vec![out]))
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StartSummary {
    pub states: u32,
    pub start: usize,
    pub automata: u64,
    pub holding: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub states: u32,
    pub index: u64,
    pub start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub x_size: u32,
    pub y_size: u32,
    pub max_states: u32,
    pub property: Property,
    pub candidates: u64,
    pub runs: u64,
    pub holding: u64,
    /// Whether the property is expected to fail on every candidate.
    pub expected_none: bool,
    pub by_start: Vec<StartSummary>,
    pub counterexamples: Vec<Counterexample>,
}

/// Counterexamples are listed up to this many.
const MAX_COUNTEREXAMPLES: usize = 32;

fn expected_none(property: Property, x: u32, y: u32) -> bool {
    match property {
        Property::Injective => x > y,
        Property::Surjective => x < y,
        Property::Bijective => x != y,
        _ => false,
    }
}

/// Decides `property` for every candidate with at most `max_states` states
/// from every start state.
pub fn enumerate_and_decide(
    x_size: u32,
    y_size: u32,
    max_states: u32,
    property: Property,
) -> Result<SearchSummary> {
    if !matches!(
        property,
        Property::Injective | Property::Surjective | Property::Bijective
    ) {
        return Err(Error::InvalidParameter(format!(
            "search supports injective, surjective or bijective, not {property}"
        )));
    }
    if x_size == 0 || y_size == 0 || max_states == 0 {
        return Err(Error::InvalidParameter("sizes must be positive".into()));
    }
    let total = candidate_count(x_size, y_size, max_states);
    let candidates = match total {
        Some(n) if n <= u128::from(CANDIDATE_LIMIT) => n as u64,
        other => {
            return Err(Error::SearchSpaceTooLarge {
                candidates: other.map_or_else(|| "more than 2^128".to_string(), |n| n.to_string()),
                limit: CANDIDATE_LIMIT,
            })
        }
    };
    let expect_none = expected_none(property, x_size, y_size);
    let mut by_start = Vec::new();
    let mut counterexamples = Vec::new();
    let mut runs = 0;
    for states in 1..=max_states {
        let count = candidates_with_states(x_size, y_size, states);
        // Indexed parallel collect keeps results in enumeration order.
        let verdicts: Vec<Vec<bool>> = (0..count)
            .into_par_iter()
            .map(|index| {
                let a = candidate(x_size, y_size, states, index)?;
                a.states()
                    .map(|q| Ok(decide(&a, q, property)?.holds))
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<_>>()?;
        for start in 0..states as usize {
            let holding = verdicts.iter().filter(|v| v[start]).count() as u64;
            by_start.push(StartSummary {
                states,
                start,
                automata: count,
                holding,
            });
        }
        runs += count * u64::from(states);
        if expect_none {
            for (index, v) in verdicts.iter().enumerate() {
                for (start, &h) in v.iter().enumerate() {
                    if h && counterexamples.len() < MAX_COUNTEREXAMPLES {
                        counterexamples.push(Counterexample {
                            states,
                            index: index as u64,
                            start,
                        });
                    }
                }
            }
        }
    }
    let holding = by_start.iter().map(|s| s.holding).sum();
    Ok(SearchSummary {
        x_size,
        y_size,
        max_states,
        property,
        candidates,
        runs,
        holding,
        expected_none: expect_none,
        by_start,
        counterexamples,
    })
}
