//! Finite asynchronous automata: letter-to-word transducers with a total
//! transition table and a total output table.

use std::fmt;

use crate::decide::{DecisionWitness, Verdict};
use crate::error::{Error, Result};
use crate::word::{Alphabet, FiniteWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One entry of the transition/output table, as it appears in the JSON file format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub state: usize,
    pub letter: Letter,
    pub next: usize,
    pub emit: FiniteWord,
}

/// End state and emitted word of a finite run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub end_state: StateId,
    pub output: FiniteWord,
}

/// A finite asynchronous automaton `(X, Q, Y, φ, ψ)`.
///
/// Tables are stored row-major by state. A value of this type always
/// satisfies the invariants checked by [`AsyncAutomaton::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsyncAutomaton {
    input: Alphabet,
    output: Alphabet,
    names: Vec<String>,
    next: Vec<StateId>,
    emit: Vec<FiniteWord>,
    mealy: bool,
}

impl AsyncAutomaton {
    /// Builds an automaton by evaluating `table(q, x) = (φ(q,x), ψ(q,x))` on
    /// every state and letter.
    pub fn from_fn<F>(
        input: Alphabet,
        output: Alphabet,
        names: Vec<String>,
        mut table: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, Letter) -> (usize, FiniteWord),
    {
        let mut next = Vec::with_capacity(names.len() * input.len());
        let mut emit = Vec::with_capacity(names.len() * input.len());
        for q in 0..names.len() {
            for x in input.letters() {
                let (s, v) = table(q, x);
                next.push(StateId(s));
                emit.push(v);
            }
        }
        Self::from_parts(input, output, names, next, emit)
    }

    /// Builds an automaton from an unordered list of table entries, which
    /// must cover every (state, letter) pair exactly once.
    pub fn from_transitions(
        input: Alphabet,
        output: Alphabet,
        names: Vec<String>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self> {
        let q = names.len();
        let width = input.len();
        let mut slots: Vec<Option<(StateId, FiniteWord)>> = vec![None; q * width];
        for t in transitions {
            if t.state >= q {
                return Err(Error::DanglingState {
                    state: t.state,
                    count: q,
                    context: "transition source".into(),
                });
            }
            if !input.contains(t.letter) {
                return Err(Error::LetterOutOfRange {
                    letter: t.letter,
                    size: input.size(),
                    context: format!("input letter of state {}", t.state),
                });
            }
            let slot = &mut slots[t.state * width + t.letter as usize];
            if slot.is_some() {
                return Err(Error::DuplicateTransition {
                    state: t.state,
                    letter: t.letter,
                });
            }
            *slot = Some((StateId(t.next), t.emit));
        }
        let mut next = Vec::with_capacity(slots.len());
        let mut emit = Vec::with_capacity(slots.len());
        for (i, slot) in slots.into_iter().enumerate() {
            let (s, v) = slot.ok_or(Error::NonTotal {
                state: i / width,
                letter: (i % width) as Letter,
            })?;
            next.push(s);
            emit.push(v);
        }
        Self::from_parts(input, output, names, next, emit)
    }

    fn from_parts(
        input: Alphabet,
        output: Alphabet,
        names: Vec<String>,
        next: Vec<StateId>,
        emit: Vec<FiniteWord>,
    ) -> Result<Self> {
        let mealy = emit.iter().all(|v| v.len() == 1);
        let a = AsyncAutomaton {
            input,
            output,
            names,
            next,
            emit,
            mealy,
        };
        a.validate()?;
        Ok(a)
    }

    /// Checks every structural invariant, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        if self.input.size() == 0 || self.output.size() == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if self.names.is_empty() {
            return Err(Error::NoStates);
        }
        let expected = self.names.len() * self.input.len();
        if self.next.len() != expected || self.emit.len() != expected {
            let missing = self.next.len().min(self.emit.len());
            return Err(Error::NonTotal {
                state: missing / self.input.len(),
                letter: (missing % self.input.len()) as Letter,
            });
        }
        for (i, (s, v)) in self.next.iter().zip(&self.emit).enumerate() {
            let (q, x) = (i / self.input.len(), i % self.input.len());
            if s.0 >= self.names.len() {
                return Err(Error::DanglingState {
                    state: s.0,
                    count: self.names.len(),
                    context: format!("transition from state {q} on letter {x}"),
                });
            }
            self.output
                .check(v, || format!("output of state {q} on letter {x}"))?;
        }
        if self.mealy != self.emit.iter().all(|v| v.len() == 1) {
            return Err(Error::MealyFlag);
        }
        Ok(())
    }

    pub fn input(&self) -> Alphabet {
        self.input
    }

    pub fn output(&self) -> Alphabet {
        self.output
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.names.len()).map(StateId)
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_mealy(&self) -> bool {
        self.mealy
    }

    /// Whether every output entry is non-empty.
    pub fn has_nonempty_emissions(&self) -> bool {
        self.emit.iter().all(|v| !v.is_empty())
    }

    pub(crate) fn require_nonempty_emissions(&self) -> Result<()> {
        match self.emit.iter().position(|v| v.is_empty()) {
            Some(i) => Err(Error::EmptyEmission {
                state: i / self.input.len(),
                letter: (i % self.input.len()) as Letter,
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn require_mealy(&self) -> Result<()> {
        if self.mealy {
            Ok(())
        } else {
            Err(Error::NotMealy)
        }
    }

    /// Looks a state up by display name, falling back to a numeric id.
    pub fn resolve_state(&self, key: &str) -> Result<StateId> {
        if let Some(i) = self.names.iter().position(|n| n == key) {
            return Ok(StateId(i));
        }
        match key.parse::<usize>() {
            Ok(i) if i < self.names.len() => Ok(StateId(i)),
            _ => Err(Error::UnknownState(key.to_string())),
        }
    }

    #[inline]
    pub fn next_state(&self, q: StateId, x: Letter) -> StateId {
        self.next[q.0 * self.input.len() + x as usize]
    }

    #[inline]
    pub fn emission(&self, q: StateId, x: Letter) -> &FiniteWord {
        &self.emit[q.0 * self.input.len() + x as usize]
    }

    /// For Mealy automata, the single letter emitted on `(q, x)`.
    #[inline]
    pub fn mealy_output(&self, q: StateId, x: Letter) -> Letter {
        self.emission(q, x)[0]
    }

    /// Table entries in state-major, letter-minor order.
    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.states().flat_map(move |q| {
            self.input.letters().map(move |x| Transition {
                state: q.0,
                letter: x,
                next: self.next_state(q, x).0,
                emit: self.emission(q, x).clone(),
            })
        })
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q.0 < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(q.0.to_string()))
        }
    }

    /// `(φ̄(q,w), ψ̄(q,w))`.
    pub fn run_finite(&self, q: StateId, word: &[Letter]) -> Result<RunResult> {
        self.check_state(q)?;
        self.input.check(word, || "input word".into())?;
        let mut state = q;
        let mut output = FiniteWord::empty();
        for &x in word {
            output.extend_from(self.emission(state, x));
            state = self.next_state(state, x);
        }
        Ok(RunResult {
            end_state: state,
            output,
        })
    }

    /// `φ̄(q,w)` without collecting output.
    pub fn end_state(&self, q: StateId, word: &[Letter]) -> StateId {
        word.iter().fold(q, |s, &x| self.next_state(s, x))
    }

    /// `ψ̄(s, w)` for callers that already validated `w`.
    pub(crate) fn run_unchecked(
        &self,
        q: StateId,
        word: &[Letter],
        out: &mut FiniteWord,
    ) -> StateId {
        let mut state = q;
        for &x in word {
            out.extend_from(self.emission(state, x));
            state = self.next_state(state, x);
        }
        state
    }

    /// Decides nondegeneracy exactly: the automaton is degenerate iff the
    /// transitions with empty output contain a cycle. The witness is such a cycle.
    pub fn is_nondegenerate(&self) -> Verdict {
        match self.epsilon_cycle() {
            Some(cycle) => Verdict::fails(DecisionWitness::EpsilonCycle { cycle }),
            None => Verdict::holds(),
        }
    }

    pub(crate) fn epsilon_cycle(&self) -> Option<Vec<(StateId, Letter)>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        let n = self.names.len();
        let mut mark = vec![Mark::White; n];
        // Iterative DFS; the stack holds (state, next letter to try).
        for root in 0..n {
            if mark[root] != Mark::White {
                continue;
            }
            let mut stack: Vec<(usize, Letter)> = vec![(root, 0)];
            mark[root] = Mark::Grey;
            while let Some(&mut (q, ref mut x)) = stack.last_mut() {
                if *x >= self.input.size() {
                    mark[q] = Mark::Black;
                    stack.pop();
                    continue;
                }
                let letter = *x;
                *x += 1;
                if !self.emission(StateId(q), letter).is_empty() {
                    continue;
                }
                let s = self.next_state(StateId(q), letter).0;
                match mark[s] {
                    Mark::White => {
                        mark[s] = Mark::Grey;
                        stack.push((s, 0));
                    }
                    Mark::Grey => {
                        let start = stack
                            .iter()
                            .position(|&(p, _)| p == s)
                            .expect("grey on stack");
                        return Some(
                            stack[start..]
                                .iter()
                                .map(|&(p, next)| (StateId(p), next - 1))
                                .collect(),
                        );
                    }
                    Mark::Black => {}
                }
            }
        }
        None
    }

    /// Composition `self ∘ other` under the right-action convention: the
    /// result first applies `self`, then feeds its output into `other`.
    pub fn compose(&self, other: &AsyncAutomaton) -> Result<AsyncAutomaton> {
        if self.output != other.input {
            return Err(Error::AlphabetMismatch {
                left: self.output.size(),
                right: other.input.size(),
            });
        }
        let width = other.state_count();
        let names = self
            .names
            .iter()
            .flat_map(|a| other.names.iter().map(move |b| format!("({a},{b})")))
            .collect();
        AsyncAutomaton::from_fn(self.input, other.output, names, |pair, x| {
            let (q, s) = (StateId(pair / width), StateId(pair % width));
            let mut out = FiniteWord::empty();
            let s2 = other.run_unchecked(s, self.emission(q, x), &mut out);
            (self.next_state(q, x).0 * width + s2.0, out)
        })
    }

    /// Graphviz rendering of the Moore diagram.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for q in self.states() {
            out.push_str(&format!(
                "  s{} [label=\"{}\"];\n",
                q.0,
                escape(self.name(q))
            ));
        }
        for t in self.transitions() {
            let v = if t.emit.is_empty() {
                "ε".to_string()
            } else {
                self.output.format(&t.emit)
            };
            let x = self.input.format(&[t.letter]);
            out.push_str(&format!(
                "  s{} -> s{} [label=\"{}|{}\"];\n",
                t.state,
                t.next,
                escape(&x),
                escape(&v)
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The one-state automaton reproducing its input letter by letter.
pub fn identity(size: u32) -> Result<AsyncAutomaton> {
    let a = Alphabet::new(size)?;
    AsyncAutomaton::from_fn(a, a, vec!["q0".into()], |_, x| {
        (0, FiniteWord::new(vec![x]))
    })
}
