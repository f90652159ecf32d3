//! Brute-force oracles shared by the integration tests. None of these go
//! through the deciders or closed forms they are used to check.

#![allow(dead_code)]

use std::collections::HashSet;

use cantor_core::{AsyncAutomaton, FiniteWord, Letter, StateId};

/// All words of length exactly `len` over `{0..size}`, in lexicographic order.
pub fn words_of_len(size: u32, len: usize) -> impl Iterator<Item = Vec<Letter>> {
    let total = (size as u64).pow(len as u32);
    (0..total).map(move |mut i| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = (i % size as u64) as Letter;
            i /= size as u64;
        }
        w
    })
}

/// All words of length `0..=max_len`.
pub fn words_up_to(size: u32, max_len: usize) -> impl Iterator<Item = Vec<Letter>> {
    (0..=max_len).flat_map(move |len| words_of_len(size, len))
}

/// Step-by-step simulation, independent of `run_finite`.
pub fn simulate(a: &AsyncAutomaton, q: StateId, word: &[Letter]) -> (StateId, Vec<Letter>) {
    let mut state = q;
    let mut out = Vec::new();
    for &x in word {
        out.extend_from_slice(a.emission(state, x));
        state = a.next_state(state, x);
    }
    (state, out)
}

/// Non-injectivity by exhaustive search over pairs of equal-length input
/// words of length at most `|Q|² + |Q|` with equal outputs, looking for a
/// pair state that repeats after the inputs first differ.
pub fn brute_injective(a: &AsyncAutomaton, q0: StateId) -> bool {
    let n = a.state_count();
    let bound = n * n + n;
    !collides(a, (q0, q0), None, &mut Vec::new(), bound)
}

fn collides(
    a: &AsyncAutomaton,
    pair: (StateId, StateId),
    diverged: Option<()>,
    after: &mut Vec<(StateId, StateId)>,
    budget: usize,
) -> bool {
    if diverged.is_some() {
        if after.contains(&pair) {
            return true;
        }
        after.push(pair);
    }
    let mut found = false;
    if budget > 0 {
        'outer: for x1 in a.input().letters() {
            for x2 in a.input().letters() {
                if a.mealy_output(pair.0, x1) != a.mealy_output(pair.1, x2) {
                    continue;
                }
                let next = (a.next_state(pair.0, x1), a.next_state(pair.1, x2));
                let div = if diverged.is_some() || x1 != x2 {
                    Some(())
                } else {
                    None
                };
                let mut fresh = Vec::new();
                let trail = if diverged.is_some() {
                    &mut *after
                } else {
                    &mut fresh
                };
                if collides(a, next, div, trail, budget - 1) {
                    found = true;
                    break 'outer;
                }
            }
        }
    }
    if diverged.is_some() {
        after.pop();
    }
    found
}

/// Surjectivity: every output word of length `2^|Q| + 1` is produced by some
/// input word of the same length.
pub fn brute_surjective(a: &AsyncAutomaton, q0: StateId) -> bool {
    let len = (1usize << a.state_count()) + 1;
    let produced: HashSet<Vec<Letter>> = words_of_len(a.input().size(), len)
        .map(|w| simulate(a, q0, &w).1)
        .collect();
    produced.len() as u64 == (a.output().size() as u64).pow(len as u32)
}

/// No input word of the right length produces `word`.
pub fn brute_unreachable(a: &AsyncAutomaton, q0: StateId, word: &FiniteWord) -> bool {
    words_of_len(a.input().size(), word.len()).all(|w| simulate(a, q0, &w).1 != word.letters())
}
