//! Colourings `c: X^+ → Y` of the Cantor tree and their correspondence with
//! Mealy automata.
//!
//! A colouring is either an explicit table to a fixed depth or backed by an
//! automaton. Backed colourings read `c(w)` as the `|w|`-th letter of
//! `ψ̄(q, w)`, which requires every emission to be non-empty. The infinite
//! automaton whose states are the words of `X^*` is never materialised;
//! [`ColouringMealy`] steps through it lazily.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::automaton::{escape, AsyncAutomaton, StateId};
use crate::error::{Error, Result};
use crate::word::{Alphabet, EventuallyPeriodicWord, FiniteWord, Letter};

/// A deterministic letter-to-letter machine whose states are produced on demand.
pub trait LazyMealy {
    type State: Clone;

    fn start(&self) -> Self::State;

    fn step(&self, state: &Self::State, letter: Letter) -> Result<(Self::State, Letter)>;

    /// Runs a finite word from the start state.
    fn run(&self, word: &[Letter]) -> Result<(Self::State, FiniteWord)> {
        let mut state = self.start();
        let mut out = FiniteWord::empty();
        for &x in word {
            let (next, y) = self.step(&state, x)?;
            out.push(y);
            state = next;
        }
        Ok((state, out))
    }

    /// First `k` output letters on an ω-word.
    fn run_omega_prefix(&self, word: &EventuallyPeriodicWord, k: usize) -> Result<FiniteWord> {
        let prefix = word.prefix(k);
        Ok(self.run(&prefix)?.1)
    }
}

#[derive(Clone, Debug)]
enum Source {
    Table {
        depth: usize,
        colours: HashMap<FiniteWord, Letter>,
    },
    Automaton {
        automaton: AsyncAutomaton,
        start: StateId,
    },
}

#[derive(Clone, Debug)]
pub struct Colouring {
    input: Alphabet,
    output: Alphabet,
    source: Source,
}

impl Colouring {
    /// A table colouring; `colours` must cover every word of length `1..=depth`.
    pub fn from_table(
        input: Alphabet,
        output: Alphabet,
        depth: usize,
        colours: impl IntoIterator<Item = (FiniteWord, Letter)>,
    ) -> Result<Self> {
        let colours: HashMap<FiniteWord, Letter> = colours.into_iter().collect();
        for (w, &c) in &colours {
            if w.is_empty() || w.len() > depth {
                return Err(Error::InvalidParameter(format!(
                    "colour table entry {w} outside lengths 1..={depth}"
                )));
            }
            input.check(w, || format!("colour table key {w}"))?;
            output.check(&[c], || format!("colour of {w}"))?;
        }
        let expected: usize = (1..=depth).map(|l| input.len().pow(l as u32)).sum();
        if colours.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "colour table has {} entries, depth {depth} needs {expected}",
                colours.len()
            )));
        }
        Ok(Colouring {
            input,
            output,
            source: Source::Table { depth, colours },
        })
    }

    /// The colouring of a Mealy automaton, or of an asynchronous automaton
    /// with non-empty emissions, from state `start`.
    pub fn from_automaton(automaton: AsyncAutomaton, start: StateId) -> Result<Self> {
        automaton.require_nonempty_emissions()?;
        if start.0 >= automaton.state_count() {
            return Err(Error::UnknownState(start.0.to_string()));
        }
        Ok(Colouring {
            input: automaton.input(),
            output: automaton.output(),
            source: Source::Automaton { automaton, start },
        })
    }

    /// `c(w) = last letter of w`, whose path map is the identity.
    pub fn last_letter(size: u32) -> Result<Self> {
        Self::from_automaton(crate::automaton::identity(size)?, StateId(0))
    }

    pub fn input(&self) -> Alphabet {
        self.input
    }

    pub fn output(&self) -> Alphabet {
        self.output
    }

    /// Depth to which the colouring is defined; `None` when unbounded.
    pub fn depth(&self) -> Option<usize> {
        match &self.source {
            Source::Table { depth, .. } => Some(*depth),
            Source::Automaton { .. } => None,
        }
    }

    pub fn colour(&self, word: &[Letter]) -> Result<Letter> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.input.check(word, || "coloured word".into())?;
        match &self.source {
            Source::Table { depth, colours } => {
                if word.len() > *depth {
                    return Err(Error::DepthExceeded {
                        depth: *depth,
                        requested: word.len(),
                    });
                }
                Ok(colours[word])
            }
            Source::Automaton { automaton, start } => {
                Ok(l_prefix(automaton, *start, word)?[word.len() - 1])
            }
        }
    }

    /// First `k` letters of `c̃(w) = c(x₁) c(x₁x₂) …`.
    pub fn tilde(&self, word: &EventuallyPeriodicWord, k: usize) -> Result<FiniteWord> {
        let prefix = word.prefix(k);
        match &self.source {
            Source::Automaton { automaton, start } => l_prefix(automaton, *start, &prefix),
            Source::Table { .. } => (1..=k).map(|l| self.colour(&prefix[..l])).collect(),
        }
    }

    /// The lazy Mealy automaton with states `X^*`, `φ(w,x) = wx`, `ψ(w,x) = c(wx)`.
    pub fn mealy(&self) -> ColouringMealy<'_> {
        ColouringMealy { colouring: self }
    }
}

/// See [`Colouring::tilde`].
pub fn tilde_c(c: &Colouring, word: &EventuallyPeriodicWord, k: usize) -> Result<FiniteWord> {
    c.tilde(word, k)
}

pub fn mealy_from_colouring(c: &Colouring) -> ColouringMealy<'_> {
    c.mealy()
}

pub struct ColouringMealy<'a> {
    colouring: &'a Colouring,
}

impl LazyMealy for ColouringMealy<'_> {
    type State = FiniteWord;

    fn start(&self) -> FiniteWord {
        FiniteWord::empty()
    }

    fn step(&self, state: &FiniteWord, letter: Letter) -> Result<(FiniteWord, Letter)> {
        let next = state.concat(&[letter]);
        let colour = self.colouring.colour(&next)?;
        Ok((next, colour))
    }
}

/// The colour of `w` in a Mealy automaton: `ψ(φ̄(q, w'), x)` for `w = w'x`.
pub fn colour_of(a: &AsyncAutomaton, q: StateId, word: &[Letter]) -> Result<Letter> {
    a.require_mealy()?;
    let (&last, init) = word.split_last().ok_or(Error::EmptyWord)?;
    a.input().check(word, || "coloured word".into())?;
    let state = a.run_finite(q, init)?.end_state;
    Ok(a.mealy_output(state, last))
}

/// `L_f(w)`: the length-`|w|` prefix of `ψ̄(q, w)`.
pub fn l_prefix(a: &AsyncAutomaton, q: StateId, word: &[Letter]) -> Result<FiniteWord> {
    a.require_nonempty_emissions()?;
    let mut out = a.run_finite(q, word)?.output;
    out.truncate(word.len());
    Ok(out)
}

/// A state of a [`BufferedMealy`]: the backing automaton's state plus
/// output produced ahead of the input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BufferedMealyState {
    pub base: StateId,
    pub surplus: FiniteWord,
}

/// Letter-to-letter simulation of an asynchronous automaton with non-empty
/// emissions: each step appends `ψ(q,x)` to the buffer and emits its head.
#[derive(Clone, Copy, Debug)]
pub struct BufferedMealy<'a> {
    automaton: &'a AsyncAutomaton,
    start: StateId,
}

impl<'a> BufferedMealy<'a> {
    pub fn automaton(&self) -> &'a AsyncAutomaton {
        self.automaton
    }
}

pub fn mealyfy(a: &AsyncAutomaton, q0: StateId) -> Result<BufferedMealy<'_>> {
    a.require_nonempty_emissions()?;
    if q0.0 >= a.state_count() {
        return Err(Error::UnknownState(q0.0.to_string()));
    }
    Ok(BufferedMealy {
        automaton: a,
        start: q0,
    })
}

impl LazyMealy for BufferedMealy<'_> {
    type State = BufferedMealyState;

    fn start(&self) -> BufferedMealyState {
        BufferedMealyState {
            base: self.start,
            surplus: FiniteWord::empty(),
        }
    }

    fn step(
        &self,
        state: &BufferedMealyState,
        letter: Letter,
    ) -> Result<(BufferedMealyState, Letter)> {
        let a = self.automaton;
        if !a.input().contains(letter) {
            return Err(Error::LetterOutOfRange {
                letter,
                size: a.input().size(),
                context: "mealyfied input".into(),
            });
        }
        let pending = state.surplus.concat(a.emission(state.base, letter));
        let (&head, rest) = pending.split_first().expect("non-empty emissions");
        Ok((
            BufferedMealyState {
                base: a.next_state(state.base, letter),
                surplus: FiniteWord::from(rest),
            },
            head,
        ))
    }
}

/// Complete colour table to a fixed depth, in breadth-first order with
/// letters ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourTable {
    pub input: Alphabet,
    pub output: Alphabet,
    pub depth: usize,
    pub entries: Vec<(FiniteWord, Letter)>,
}

/// Colours every vertex of the tree down to `depth`. Asynchronous automata
/// are routed through [`mealyfy`]; for Mealy automata this is the plain
/// colouring since the buffer stays empty.
pub fn colour_tree(a: &AsyncAutomaton, q: StateId, depth: usize) -> Result<ColourTable> {
    let machine = mealyfy(a, q)?;
    let mut entries = Vec::new();
    let mut frontier = vec![(FiniteWord::empty(), machine.start())];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * a.input().len());
        for (word, state) in &frontier {
            for x in a.input().letters() {
                let (s, c) = machine.step(state, x)?;
                let w = word.concat(&[x]);
                entries.push((w.clone(), c));
                next.push((w, s));
            }
        }
        frontier = next;
    }
    Ok(ColourTable {
        input: a.input(),
        output: a.output(),
        depth,
        entries,
    })
}

impl ColourTable {
    pub fn get(&self, word: &[Letter]) -> Option<Letter> {
        self.entries
            .iter()
            .find(|(w, _)| w.letters() == word)
            .map(|&(_, c)| c)
    }

    pub fn into_colouring(self) -> Result<Colouring> {
        Colouring::from_table(self.input, self.output, self.depth, self.entries)
    }

    /// The decorated tree as a DOT digraph, vertices labelled `w / c(w)`.
    pub fn to_dot(&self) -> String {
        let mut out =
            String::from("digraph colouring {\n  node [shape=box];\n  n0 [label=\"ε\"];\n");
        let mut ids: HashMap<&[Letter], usize> = HashMap::new();
        ids.insert(&[], 0);
        for (i, (w, c)) in self.entries.iter().enumerate() {
            let id = i + 1;
            ids.insert(w.letters(), id);
            let parent = ids[&w[..w.len() - 1]];
            let label = format!("{} / {}", self.input.format(w), self.output.format(&[*c]));
            let _ = writeln!(out, "  n{id} [label=\"{}\"];", escape(&label));
            let _ = writeln!(out, "  n{parent} -> n{id};");
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for ColourTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Colours<'a>(&'a ColourTable);

        impl Serialize for Colours<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.entries.len()))?;
                for (w, c) in &self.0.entries {
                    map.serialize_entry(&self.0.input.format(w), c)?;
                }
                map.end()
            }
        }

        let mut s = serializer.serialize_struct("ColourTable", 2)?;
        s.serialize_field("depth", &self.depth)?;
        s.serialize_field("colours", &Colours(self))?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::identity;
    use crate::constructions::{build_a, build_c, expected_ab_tables};

    fn w(v: &[Letter]) -> FiniteWord {
        FiniteWord::from(v)
    }

    fn ep(pre: &[Letter], per: &[Letter]) -> EventuallyPeriodicWord {
        EventuallyPeriodicWord::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn colour_of_examples() {
        let id = identity(2).unwrap();
        assert_eq!(colour_of(&id, StateId(0), &[0, 1, 1]).unwrap(), 1);
        let a1 = build_a(1).unwrap();
        assert_eq!(colour_of(&a1, StateId(0), &[0, 1]).unwrap(), 0);
        let c22 = build_c(2, 2).unwrap();
        assert_eq!(colour_of(&c22, StateId(0), &[1, 0]).unwrap(), 0);
        assert!(matches!(
            colour_of(&id, StateId(0), &[]),
            Err(Error::EmptyWord)
        ));
        let a2 = build_a(2).unwrap();
        assert!(matches!(
            colour_of(&a2, StateId(0), &[0]),
            Err(Error::NotMealy)
        ));
    }

    #[test]
    fn tilde_examples() {
        let last = Colouring::last_letter(3).unwrap();
        let u = ep(&[2, 0], &[1, 2]);
        assert_eq!(last.tilde(&u, 9).unwrap(), u.prefix(9));
        assert!(last.tilde(&u, 0).unwrap().is_empty());

        // C(3,2) on 3^ω: ψ^C alternates "2" and "22", so the image is 2^ω.
        let c = Colouring::from_automaton(build_c(3, 2).unwrap(), StateId(0)).unwrap();
        assert_eq!(c.tilde(&ep(&[], &[3]), 3).unwrap(), w(&[2, 2, 2]));
    }

    #[test]
    fn table_colouring_depth() {
        let table = colour_tree(&build_c(3, 2).unwrap(), StateId(0), 3).unwrap();
        let c = table.into_colouring().unwrap();
        let u = ep(&[1], &[3, 0]);
        let lazy = c.mealy();
        let (state, out) = lazy.run(&u.prefix(3)).unwrap();
        assert_eq!(state, u.prefix(3));
        assert_eq!(out, c.tilde(&u, 3).unwrap());
        assert!(matches!(
            c.tilde(&u, 4),
            Err(Error::DepthExceeded {
                depth: 3,
                requested: 4
            })
        ));
        assert!(matches!(
            lazy.run(&u.prefix(4)),
            Err(Error::DepthExceeded { .. })
        ));
    }

    #[test]
    fn last_letter_lazy_identity() {
        let last = Colouring::last_letter(2).unwrap();
        let (_, out) = last.mealy().run(&[1, 0, 0, 1]).unwrap();
        assert_eq!(out, w(&[1, 0, 0, 1]));
    }

    #[test]
    fn l_prefix_examples() {
        let id = identity(2).unwrap();
        assert_eq!(l_prefix(&id, StateId(0), &[1, 0]).unwrap(), w(&[1, 0]));
        let ab = expected_ab_tables(3, 2).unwrap();
        assert_eq!(l_prefix(&ab, StateId(0), &[3]).unwrap(), w(&[2]));
        assert!(l_prefix(&ab, StateId(0), &[]).unwrap().is_empty());
        let ab12 = expected_ab_tables(1, 2).unwrap();
        assert!(matches!(
            l_prefix(&ab12, StateId(0), &[1]),
            Err(Error::EmptyEmission { .. })
        ));
    }

    #[test]
    fn mealyfy_examples() {
        let ab = expected_ab_tables(3, 2).unwrap();
        let m = mealyfy(&ab, StateId(0)).unwrap();
        let (state, out) = m.run(&[3, 3]).unwrap();
        assert_eq!(out, w(&[2, 2]));
        assert_eq!(ab.name(state.base), "(σ,0)");
        assert_eq!(state.surplus, w(&[2]));

        let id = identity(3).unwrap();
        let m = mealyfy(&id, StateId(0)).unwrap();
        let (state, out) = m.run(&[2, 1, 0]).unwrap();
        assert!(state.surplus.is_empty());
        assert_eq!(out, w(&[2, 1, 0]));

        let a2 = build_a(2).unwrap();
        let m = mealyfy(&a2, StateId(0)).unwrap();
        let input = [2, 0, 1, 2, 2];
        let (_, out) = m.run(&input).unwrap();
        assert!(out.is_prefix_of(&a2.run_finite(StateId(0), &input).unwrap().output));
    }

    #[test]
    fn colour_tree_examples() {
        let id = identity(2).unwrap();
        let t = colour_tree(&id, StateId(0), 2).unwrap();
        let expect: Vec<(FiniteWord, Letter)> = vec![
            (w(&[0]), 0),
            (w(&[1]), 1),
            (w(&[0, 0]), 0),
            (w(&[0, 1]), 1),
            (w(&[1, 0]), 0),
            (w(&[1, 1]), 1),
        ];
        assert_eq!(t.entries, expect);

        let t = colour_tree(&build_c(3, 2).unwrap(), StateId(0), 1).unwrap();
        let colours: Vec<Letter> = t.entries.iter().map(|&(_, c)| c).collect();
        assert_eq!(colours, vec![0, 1, 2, 2]);

        assert!(colour_tree(&id, StateId(0), 0).unwrap().entries.is_empty());
    }

    #[test]
    fn colour_table_json_and_dot() {
        let t = colour_tree(&identity(2).unwrap(), StateId(0), 1).unwrap();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"depth":1,"colours":{"0":0,"1":1}}"#
        );
        let dot = t.to_dot();
        assert!(dot.contains("n2 [label=\"1 / 1\"]"));
        assert!(dot.contains("n0 -> n2;"));
    }
}
