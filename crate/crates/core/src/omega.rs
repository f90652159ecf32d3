//! Evaluation of automata on eventually periodic infinite words.

use std::collections::HashMap;

use crate::automaton::{AsyncAutomaton, StateId};
use crate::error::{Error, Result};
use crate::word::{EventuallyPeriodicWord, FiniteWord};

impl AsyncAutomaton {
    /// Default bound on consumed input letters for [`Self::run_omega_prefix`].
    pub fn default_fuel(&self, k: usize) -> usize {
        let q = self.state_count();
        10 * k * q + q + k
    }

    /// First `k` letters of `f_{ω,q}(w)`, streaming input until enough output
    /// has been produced.
    pub fn run_omega_prefix(
        &self,
        q: StateId,
        w: &EventuallyPeriodicWord,
        k: usize,
    ) -> Result<FiniteWord> {
        self.run_omega_prefix_with_fuel(q, w, k, self.default_fuel(k))
    }

    pub fn run_omega_prefix_with_fuel(
        &self,
        q: StateId,
        w: &EventuallyPeriodicWord,
        k: usize,
        fuel: usize,
    ) -> Result<FiniteWord> {
        self.check_omega_input(q, w)?;
        let mut out = FiniteWord::empty();
        let mut state = q;
        let mut letters = w.iter();
        let mut consumed = 0;
        while out.len() < k {
            if consumed == fuel {
                return Err(Error::DegenerateRun(format!(
                    "{} of {k} letters after {fuel} input letters",
                    out.len()
                )));
            }
            let x = letters.next().expect("infinite word");
            out.extend_from(self.emission(state, x));
            state = self.next_state(state, x);
            consumed += 1;
        }
        out.truncate(k);
        Ok(out)
    }

    /// Exact image `f_{ω,q}(w)` as an eventually periodic word.
    ///
    /// After the preperiod, the run visits states `s_0, s_1, …` at the start
    /// of each period pass. The first repeated `s_i = s_j` fixes the output
    /// period as the concatenated emissions of passes `i..j`.
    pub fn run_omega_exact(
        &self,
        q: StateId,
        w: &EventuallyPeriodicWord,
    ) -> Result<EventuallyPeriodicWord> {
        self.check_omega_input(q, w)?;
        let mut head = FiniteWord::empty();
        let mut state = self.run_unchecked(q, w.preperiod(), &mut head);
        let mut seen: HashMap<StateId, usize> = HashMap::new();
        let mut passes: Vec<FiniteWord> = Vec::new();
        while !seen.contains_key(&state) {
            seen.insert(state, passes.len());
            let mut out = FiniteWord::empty();
            state = self.run_unchecked(state, w.period(), &mut out);
            passes.push(out);
        }
        let start = seen[&state];
        for pass in &passes[..start] {
            head.extend_from(pass);
        }
        let mut period = FiniteWord::empty();
        for pass in &passes[start..] {
            period.extend_from(pass);
        }
        if period.is_empty() {
            return Err(Error::DegenerateRun(format!(
                "period passes from state {} emit nothing",
                self.name(state)
            )));
        }
        EventuallyPeriodicWord::new(head, period)
    }

    fn check_omega_input(&self, q: StateId, w: &EventuallyPeriodicWord) -> Result<()> {
        if q.0 >= self.state_count() {
            return Err(Error::UnknownState(q.0.to_string()));
        }
        self.input().check(w.preperiod(), || "preperiod".into())?;
        self.input().check(w.period(), || "period".into())
    }
}
