//! The automata `A_n`, `B_m`, the subautomaton `C`, and closed-form tables
//! for their compositions.
//!
//! The closed-form builders here do not go through
//! [`AsyncAutomaton::compose`]; the two routes check each other in tests.

use crate::automaton::{AsyncAutomaton, RunResult, StateId};
use crate::error::{Error, Result};
use crate::word::{Alphabet, FiniteWord, Letter};

pub const SIGMA: &str = "σ";

fn positive(name: &str, value: u32) -> Result<()> {
    if value == 0 {
        Err(Error::InvalidParameter(format!(
            "{name} must be at least 1"
        )))
    } else {
        Ok(())
    }
}

/// `[t]_m`.
fn rem(t: u64, m: u32) -> u32 {
    (t % u64::from(m)) as u32
}

fn floor_div(t: u64, m: u32) -> usize {
    (t / u64::from(m)) as usize
}

fn zeros_then(count: usize, last: Option<Letter>) -> FiniteWord {
    let mut w = FiniteWord::repeat(0, count);
    if let Some(l) = last {
        w.push(l);
    }
    w
}

/// `A_n`: one state σ over `{0..n}` → `{0,1}`, emitting `0^x 1` for `x < n`
/// and `0^n` for `x = n`.
pub fn build_a(n: u32) -> Result<AsyncAutomaton> {
    positive("n", n)?;
    AsyncAutomaton::from_fn(
        Alphabet::up_to(n),
        Alphabet::new(2)?,
        vec![SIGMA.into()],
        |_, x| {
            let emit = if x < n {
                zeros_then(x as usize, Some(1))
            } else {
                zeros_then(n as usize, None)
            };
            (0, emit)
        },
    )
}

/// `B_m`: states `0..m` over `{0,1}` → `{0..m}`. Reading 1 emits the current
/// state and resets to 0; reading 0 advances mod `m`, emitting `m` only when
/// wrapping from `m-1`.
pub fn build_b(m: u32) -> Result<AsyncAutomaton> {
    positive("m", m)?;
    let names = (0..m).map(|q| q.to_string()).collect();
    AsyncAutomaton::from_fn(Alphabet::new(2)?, Alphabet::up_to(m), names, |q, x| {
        let q = q as u32;
        if x == 1 {
            (0, FiniteWord::new(vec![q]))
        } else if q == m - 1 {
            (0, FiniteWord::new(vec![m]))
        } else {
            ((q + 1) as usize, FiniteWord::empty())
        }
    })
}

/// Closed form of `B_m` on `0^t` (or `0^t 1` when `trailing_one`).
pub fn b_closed_form(m: u32, q: u32, t: u64, trailing_one: bool) -> Result<RunResult> {
    positive("m", m)?;
    if q >= m {
        return Err(Error::InvalidParameter(format!(
            "state {q} out of range for B_{m}"
        )));
    }
    let copies = floor_div(u64::from(q) + t, m);
    let reached = rem(u64::from(q) + t, m);
    let mut output = FiniteWord::repeat(m, copies);
    let end = if trailing_one {
        output.push(reached);
        0
    } else {
        reached
    };
    Ok(RunResult {
        end_state: StateId(end as usize),
        output,
    })
}

/// Output of `A_n∘B_m` (equivalently of `C`) in the `B_m` state `r` on letter `x`.
fn ab_emission(n: u32, m: u32, r: u32, x: Letter) -> FiniteWord {
    let sum = u64::from(r) + u64::from(x);
    let mut w = FiniteWord::repeat(m, floor_div(sum, m));
    if x < n {
        w.push(rem(sum, m));
    }
    w
}

/// `A_n∘B_m` built directly from its closed-form tables.
pub fn expected_ab_tables(n: u32, m: u32) -> Result<AsyncAutomaton> {
    positive("n", n)?;
    positive("m", m)?;
    let names = (0..m).map(|q| format!("({SIGMA},{q})")).collect();
    AsyncAutomaton::from_fn(Alphabet::up_to(n), Alphabet::up_to(m), names, |q, x| {
        let r = q as u32;
        let next = if x < n {
            0
        } else {
            rem(u64::from(r) + u64::from(n), m)
        };
        (next as usize, ab_emission(n, m, r, x))
    })
}

/// `B_n∘A_n` built directly from its closed-form tables.
pub fn expected_ba_tables(n: u32) -> Result<AsyncAutomaton> {
    positive("n", n)?;
    let names = (0..n).map(|q| format!("({q},{SIGMA})")).collect();
    AsyncAutomaton::from_fn(Alphabet::new(2)?, Alphabet::new(2)?, names, |q, x| {
        let r = q as u32;
        let next = if x == 0 { rem(u64::from(r) + 1, n) } else { 0 };
        let emit = if x == 0 && r != n - 1 {
            FiniteWord::empty()
        } else {
            zeros_then(q, Some(x))
        };
        (next as usize, emit)
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `m / gcd(n, m)`, the number of states of [`build_c`].
pub fn eta(n: u32, m: u32) -> Result<u32> {
    positive("n", n)?;
    positive("m", m)?;
    Ok(m / gcd(n, m))
}

/// The subautomaton `C` of `A_n∘B_m` reachable from `(σ,0)`; its state `q`
/// stands for `(σ, [qn]_m)`.
pub fn build_c(n: u32, m: u32) -> Result<AsyncAutomaton> {
    let states = eta(n, m)?;
    let names = (0..states).map(|q| q.to_string()).collect();
    AsyncAutomaton::from_fn(Alphabet::up_to(n), Alphabet::up_to(m), names, |q, x| {
        let r = rem(q as u64 * u64::from(n), m);
        let next = if x < n { 0 } else { (q + 1) % states as usize };
        (next, ab_emission(n, m, r, x))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[Letter]) -> FiniteWord {
        FiniteWord::from(v)
    }

    #[test]
    fn a_tables() {
        let a2 = build_a(2).unwrap();
        let s = StateId(0);
        assert_eq!(a2.emission(s, 0), &w(&[1]));
        assert_eq!(a2.emission(s, 1), &w(&[0, 1]));
        assert_eq!(a2.emission(s, 2), &w(&[0, 0]));
        let a1 = build_a(1).unwrap();
        assert_eq!(a1.emission(s, 0), &w(&[1]));
        assert_eq!(a1.emission(s, 1), &w(&[0]));
        assert!(a1.is_mealy());
        assert!(build_a(3).unwrap().is_nondegenerate().holds);
        assert!(matches!(build_a(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn b_tables() {
        let b2 = build_b(2).unwrap();
        assert_eq!(b2.emission(StateId(0), 0), &FiniteWord::empty());
        assert_eq!(b2.emission(StateId(1), 0), &w(&[2]));
        assert_eq!(b2.emission(StateId(0), 1), &w(&[0]));
        assert_eq!(b2.emission(StateId(1), 1), &w(&[1]));
        let b1 = build_b(1).unwrap();
        assert_eq!(b1.state_count(), 1);
        assert_eq!(b1.emission(StateId(0), 0), &w(&[1]));
        assert_eq!(b1.emission(StateId(0), 1), &w(&[0]));
        assert!(build_b(4).unwrap().is_nondegenerate().holds);
        assert!(build_b(0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let r = b_closed_form(2, 1, 3, false).unwrap();
        assert_eq!((r.end_state, r.output), (StateId(0), w(&[2, 2])));
        let r = b_closed_form(3, 0, 0, true).unwrap();
        assert_eq!((r.end_state, r.output), (StateId(0), w(&[0])));
        let r = b_closed_form(2, 0, 3, true).unwrap();
        assert_eq!((r.end_state, r.output), (StateId(0), w(&[2, 1])));
        assert!(b_closed_form(2, 2, 0, false).is_err());
    }

    #[test]
    fn ab_table_examples() {
        let c = expected_ab_tables(3, 2).unwrap();
        assert_eq!(c.emission(StateId(0), 3), &w(&[2]));
        assert_eq!(c.next_state(StateId(0), 3), StateId(1));
        assert_eq!(c.name(StateId(1)), "(σ,1)");

        let c = expected_ab_tables(1, 1).unwrap();
        assert!(c.is_mealy());
        assert_eq!(c.emission(StateId(0), 0), &w(&[0]));
        assert_eq!(c.emission(StateId(0), 1), &w(&[1]));

        let c = expected_ab_tables(1, 2).unwrap();
        assert!(c.emission(StateId(0), 1).is_empty());
    }

    #[test]
    fn ba_table_examples() {
        let c = expected_ba_tables(2).unwrap();
        assert_eq!(c.emission(StateId(1), 0), &w(&[0, 0]));
        assert_eq!(c.emission(StateId(1), 1), &w(&[0, 1]));
        assert!(c.emission(StateId(0), 0).is_empty());
        assert_eq!(c.name(StateId(1)), "(1,σ)");

        let c = expected_ba_tables(3).unwrap();
        let r = c.run_finite(StateId(0), &[0, 0, 0]).unwrap();
        assert_eq!((r.end_state, r.output), (StateId(0), w(&[0, 0, 0])));
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta(6, 4).unwrap(), 2);
        assert_eq!(eta(5, 5).unwrap(), 1);
        assert_eq!(eta(2, 5).unwrap(), 5);
    }

    #[test]
    fn c_examples() {
        let c = build_c(2, 4).unwrap();
        assert_eq!(c.state_count(), 2);
        assert_eq!(c.emission(StateId(1), 0), &w(&[2]));

        for n in 1..=5 {
            let c = build_c(n, n).unwrap();
            assert_eq!(c.state_count(), 1);
            for x in 0..=n {
                assert_eq!(c.emission(StateId(0), x), &w(&[x]));
                assert_eq!(c.next_state(StateId(0), x), StateId(0));
            }
        }
    }
}
