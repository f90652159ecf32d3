//! Exact injectivity and surjectivity deciders for the ω-functions of finite
//! Mealy automata, with re-checkable witnesses, and sampled short-map checks.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::automaton::{AsyncAutomaton, StateId};
use crate::colouring::LazyMealy;
use crate::error::{Error, Result};
use crate::word::{common_prefix_len, Alphabet, EventuallyPeriodicWord, FiniteWord, Letter};

/// Certificate accompanying a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DecisionWitness {
    /// Transitions `(state, letter)` with empty output forming a cycle.
    EpsilonCycle { cycle: Vec<(StateId, Letter)> },
    /// Two distinct inputs with the same image.
    CollisionPair {
        left: EventuallyPeriodicWord,
        right: EventuallyPeriodicWord,
    },
    /// An output word no input prefix produces.
    UnreachableOutput { word: FiniteWord },
}

impl Serialize for StateId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0 as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<DecisionWitness>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fails(witness: DecisionWitness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Nondegenerate,
    Injective,
    Surjective,
    Bijective,
    Shortmap,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::Nondegenerate => "nondegenerate",
            Property::Injective => "injective",
            Property::Surjective => "surjective",
            Property::Bijective => "bijective",
            Property::Shortmap => "shortmap",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "nondegenerate" => Property::Nondegenerate,
            "injective" => Property::Injective,
            "surjective" => Property::Surjective,
            "bijective" => Property::Bijective,
            "shortmap" => Property::Shortmap,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown property {other:?}"
                )))
            }
        })
    }
}

/// Decides one of the structural properties from `q0`. `Shortmap` is a
/// sampled check and is not handled here; see [`check_short_map`].
pub fn decide(a: &AsyncAutomaton, q0: StateId, property: Property) -> Result<Verdict> {
    match property {
        Property::Nondegenerate => Ok(a.is_nondegenerate()),
        Property::Injective => decide_injective(a, q0),
        Property::Surjective => decide_surjective(a, q0),
        Property::Bijective => decide_bijective(a, q0),
        Property::Shortmap => Err(Error::InvalidParameter(
            "shortmap is checked by sampling, not decided".into(),
        )),
    }
}

fn check_start(a: &AsyncAutomaton, q0: StateId) -> Result<()> {
    a.require_mealy()?;
    if q0.0 >= a.state_count() {
        return Err(Error::UnknownState(q0.0.to_string()));
    }
    Ok(())
}

/// Node of the pair graph: two runs with equal outputs so far, and whether
/// their inputs have already differed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct PairNode {
    left: StateId,
    right: StateId,
    diverged: bool,
}

type PairEdge = (PairNode, Letter, Letter);

fn pair_successors(a: &AsyncAutomaton, node: PairNode) -> impl Iterator<Item = PairEdge> + '_ {
    let letters = a.input().letters();
    let pairs = letters
        .clone()
        .flat_map(move |x1| letters.clone().map(move |x2| (x1, x2)));
    // Differing letter pairs first: witnesses then tend to repeat the
    // diverging letters, e.g. (0^ω, 1^ω) rather than (0^ω, 10^ω).
    let differing = pairs.clone().filter(|(x1, x2)| x1 != x2);
    let equal = pairs.filter(|(x1, x2)| x1 == x2);
    differing.chain(equal).filter_map(move |(x1, x2)| {
        if a.mealy_output(node.left, x1) != a.mealy_output(node.right, x2) {
            return None;
        }
        let next = PairNode {
            left: a.next_state(node.left, x1),
            right: a.next_state(node.right, x2),
            diverged: node.diverged || x1 != x2,
        };
        Some((next, x1, x2))
    })
}

/// Breadth-first search for the shortest non-empty path from `from` to a
/// node satisfying `goal`, returning the letters read by each run.
fn pair_path(
    a: &AsyncAutomaton,
    from: PairNode,
    goal: impl Fn(PairNode) -> bool,
) -> Option<(PairNode, Vec<Letter>, Vec<Letter>)> {
    let mut parent: HashMap<PairNode, PairEdge> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(node) = queue.pop_front() {
        for (next, x1, x2) in pair_successors(a, node) {
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, (node, x1, x2));
            if goal(next) {
                let (mut left, mut right) = (Vec::new(), Vec::new());
                let mut cur = next;
                loop {
                    let (prev, x1, x2) = parent[&cur];
                    left.push(x1);
                    right.push(x2);
                    cur = prev;
                    if cur == from {
                        break;
                    }
                }
                left.reverse();
                right.reverse();
                return Some((next, left, right));
            }
            queue.push_back(next);
        }
    }
    None
}

/// Decides injectivity of `f_{ω,q0}` on a Mealy automaton.
///
/// The map is not injective iff the pair graph has a path from `(q0,q0)`
/// that takes an edge with different input letters and then reaches a cycle.
pub fn decide_injective(a: &AsyncAutomaton, q0: StateId) -> Result<Verdict> {
    check_start(a, q0)?;
    // Diverged nodes lying on a cycle of the diverged layer.
    let mut on_cycle = HashSet::new();
    for left in a.states() {
        for right in a.states() {
            let node = PairNode {
                left,
                right,
                diverged: true,
            };
            if pair_path(a, node, |n| n == node).is_some() {
                on_cycle.insert(node);
            }
        }
    }
    let root = PairNode {
        left: q0,
        right: q0,
        diverged: false,
    };
    let Some((hit, left, right)) = pair_path(a, root, |n| on_cycle.contains(&n)) else {
        return Ok(Verdict::holds());
    };
    let (_, cycle_left, cycle_right) =
        pair_path(a, hit, |n| n == hit).expect("node lies on a cycle");
    Ok(Verdict::fails(DecisionWitness::CollisionPair {
        left: EventuallyPeriodicWord::new(left, cycle_left)?,
        right: EventuallyPeriodicWord::new(right, cycle_right)?,
    }))
}

/// Decides surjectivity of `f_{ω,q0}` on a Mealy automaton.
///
/// An ω-word has a producing run iff every finite prefix does (the run tree
/// is finitely branching), so it suffices to search the subset construction
/// over the output-labelled graph for a subset with no successor on some
/// output letter.
pub fn decide_surjective(a: &AsyncAutomaton, q0: StateId) -> Result<Verdict> {
    check_start(a, q0)?;
    let start = vec![q0];
    let mut parent: HashMap<Vec<StateId>, (Vec<StateId>, Letter)> = HashMap::new();
    let mut seen: HashSet<Vec<StateId>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(set) = queue.pop_front() {
        for y in a.output().letters() {
            let mut next: Vec<StateId> = set
                .iter()
                .flat_map(|&q| {
                    a.input()
                        .letters()
                        .filter(move |&x| a.mealy_output(q, x) == y)
                        .map(move |x| a.next_state(q, x))
                })
                .collect();
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                let mut word = vec![y];
                let mut cur = &set;
                while let Some((prev, letter)) = parent.get(cur) {
                    word.push(*letter);
                    cur = prev;
                }
                word.reverse();
                return Ok(Verdict::fails(DecisionWitness::UnreachableOutput {
                    word: FiniteWord::new(word),
                }));
            }
            if seen.insert(next.clone()) {
                parent.insert(next.clone(), (set.clone(), y));
                queue.push_back(next);
            }
        }
    }
    Ok(Verdict::holds())
}

/// Injectivity then surjectivity; the first failing witness is returned.
pub fn decide_bijective(a: &AsyncAutomaton, q0: StateId) -> Result<Verdict> {
    let injective = decide_injective(a, q0)?;
    if !injective.holds {
        return Ok(injective);
    }
    decide_surjective(a, q0)
}

/// Re-checks a collision witness: distinct inputs whose images agree on the
/// first `depth` letters.
pub fn verify_collision(
    a: &AsyncAutomaton,
    q0: StateId,
    left: &EventuallyPeriodicWord,
    right: &EventuallyPeriodicWord,
    depth: usize,
) -> Result<bool> {
    if left == right {
        return Ok(false);
    }
    let l = a.run_omega_prefix(q0, left, depth)?;
    let r = a.run_omega_prefix(q0, right, depth)?;
    Ok(l == r)
}

/// Re-checks an unreachable-output witness by breadth-first search over
/// (state, matched length) pairs.
pub fn verify_unreachable(a: &AsyncAutomaton, q0: StateId, word: &[Letter]) -> Result<bool> {
    check_start(a, q0)?;
    let mut seen = HashSet::from([(q0, 0usize)]);
    let mut queue = VecDeque::from([(q0, 0usize)]);
    while let Some((q, pos)) = queue.pop_front() {
        if pos == word.len() {
            return Ok(false);
        }
        for x in a.input().letters() {
            if a.emission(q, x).letters() == [word[pos]] {
                let node = (a.next_state(q, x), pos + 1);
                if seen.insert(node) {
                    queue.push_back(node);
                }
            }
        }
    }
    Ok(true)
}

/// A function `X^ω → Y^ω` that can be evaluated on prefixes.
pub trait OmegaMap {
    fn image_prefix(&self, word: &EventuallyPeriodicWord, k: usize) -> Result<FiniteWord>;
}

impl<T: LazyMealy> OmegaMap for T {
    fn image_prefix(&self, word: &EventuallyPeriodicWord, k: usize) -> Result<FiniteWord> {
        self.run_omega_prefix(word, k)
    }
}

/// `f_{ω,q}` of an arbitrary nondegenerate asynchronous automaton.
#[derive(Clone, Copy, Debug)]
pub struct AutomatonMap<'a> {
    pub automaton: &'a AsyncAutomaton,
    pub state: StateId,
}

impl OmegaMap for AutomatonMap<'_> {
    fn image_prefix(&self, word: &EventuallyPeriodicWord, k: usize) -> Result<FiniteWord> {
        self.automaton.run_omega_prefix(self.state, word, k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortMapViolation {
    pub left: EventuallyPeriodicWord,
    pub right: EventuallyPeriodicWord,
    pub input_lcp: usize,
    pub output_lcp: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortMapReport {
    pub pairs: usize,
    pub depth: usize,
    pub violations: Vec<ShortMapViolation>,
}

impl ShortMapReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `|lcp(f(u), f(v))| ≥ |lcp(u, v)|` on each pair, both sides capped at `depth`.
pub fn check_short_map<F: OmegaMap + ?Sized>(
    pairs: &[(EventuallyPeriodicWord, EventuallyPeriodicWord)],
    f: &F,
    depth: usize,
) -> Result<ShortMapReport> {
    let mut violations = Vec::new();
    for (u, v) in pairs {
        let input_lcp = u.common_prefix_len(v).unwrap_or(usize::MAX).min(depth);
        let fu = f.image_prefix(u, depth)?;
        let fv = f.image_prefix(v, depth)?;
        let output_lcp = common_prefix_len(&fu, &fv);
        if output_lcp < input_lcp {
            violations.push(ShortMapViolation {
                left: u.clone(),
                right: v.clone(),
                input_lcp,
                output_lcp,
            });
        }
    }
    Ok(ShortMapReport {
        pairs: pairs.len(),
        depth,
        violations,
    })
}

/// A random eventually periodic word with short preperiod and period.
pub fn random_word<R: Rng + ?Sized>(alphabet: Alphabet, rng: &mut R) -> EventuallyPeriodicWord {
    let pre: Vec<Letter> = (0..rng.random_range(0..8))
        .map(|_| rng.random_range(0..alphabet.size()))
        .collect();
    let per: Vec<Letter> = (0..rng.random_range(1..6))
        .map(|_| rng.random_range(0..alphabet.size()))
        .collect();
    EventuallyPeriodicWord::new(pre, per).expect("non-empty period")
}

/// Random pairs sharing a random-length common prefix, so that the
/// short-map inequality is exercised at varying depths.
pub fn random_pairs<R: Rng + ?Sized>(
    alphabet: Alphabet,
    count: usize,
    rng: &mut R,
) -> Vec<(EventuallyPeriodicWord, EventuallyPeriodicWord)> {
    (0..count)
        .map(|_| {
            let u = random_word(alphabet, rng);
            if rng.random_range(0..20) == 0 {
                return (u.clone(), u);
            }
            let shared = rng.random_range(0..24);
            let mut pre = u.prefix(shared).into_letters();
            if alphabet.size() > 1 {
                let skip = rng.random_range(1..alphabet.size());
                pre.push((u.letter_at(shared) + skip) % alphabet.size());
            }
            let tail = random_word(alphabet, rng);
            pre.extend_from_slice(tail.preperiod());
            let v =
                EventuallyPeriodicWord::new(pre, tail.period().clone()).expect("non-empty period");
            (u, v)
        })
        .collect()
}
