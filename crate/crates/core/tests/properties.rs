mod common;

use cantor_core::{
    build_a, build_b, build_c, colour_of, colour_tree, distance, l_prefix, load, mealyfy, save,
    Alphabet, AsyncAutomaton, AutomatonMap, Colouring, Error, EventuallyPeriodicWord, FiniteWord,
    LazyMealy, Letter, MetricParams, OmegaMap, StateId,
};
use common::simulate;
use proptest::prelude::*;

/// A raw table: (input size, output size, states, entries in state-major order).
type Table = (u32, u32, usize, Vec<(usize, Vec<Letter>)>);

fn table(min_emit: usize, max_emit: usize) -> impl Strategy<Value = Table> {
    (1u32..=3, 1u32..=3, 1usize..=3).prop_flat_map(move |(x, y, k)| {
        let entry = (0..k, prop::collection::vec(0..y, min_emit..=max_emit));
        prop::collection::vec(entry, k * x as usize).prop_map(move |entries| (x, y, k, entries))
    })
}

fn build((x, y, k, entries): &Table) -> AsyncAutomaton {
    let mut it = entries.iter();
    let names = (0..*k).map(|i| format!("s{i}")).collect();
    AsyncAutomaton::from_fn(
        Alphabet::new(*x).unwrap(),
        Alphabet::new(*y).unwrap(),
        names,
        |_, _| {
            let (next, emit) = it.next().unwrap();
            (*next, FiniteWord::new(emit.clone()))
        },
    )
    .unwrap()
}

fn async_automaton() -> impl Strategy<Value = AsyncAutomaton> {
    table(0, 3).prop_map(|t| build(&t))
}

fn nonempty_automaton() -> impl Strategy<Value = AsyncAutomaton> {
    table(1, 3).prop_map(|t| build(&t))
}

fn mealy_automaton() -> impl Strategy<Value = AsyncAutomaton> {
    table(1, 1).prop_map(|t| build(&t))
}

fn word(size: u32, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0..size, 0..=max_len)
}

fn with_words(
    a: AsyncAutomaton,
    count: usize,
) -> impl Strategy<Value = (AsyncAutomaton, Vec<Vec<Letter>>)> {
    let x = a.input().size();
    (Just(a), prop::collection::vec(word(x, 12), count))
}

fn ep_word(size: u32) -> impl Strategy<Value = EventuallyPeriodicWord> {
    (word(size, 6), prop::collection::vec(0..size, 1..=4))
        .prop_map(|(pre, per)| EventuallyPeriodicWord::new(pre, per).unwrap())
}

proptest! {
    #[test]
    fn run_splits_over_concatenation((a, ws) in async_automaton().prop_flat_map(|a| with_words(a, 2))) {
        let q = StateId(0);
        let (u, v) = (&ws[0], &ws[1]);
        let uv = [u.as_slice(), v.as_slice()].concat();
        let whole = a.run_finite(q, &uv).unwrap();
        let first = a.run_finite(q, u).unwrap();
        let second = a.run_finite(first.end_state, v).unwrap();
        prop_assert_eq!(whole.end_state, second.end_state);
        prop_assert_eq!(whole.output, first.output.concat(&second.output));
        prop_assert_eq!(simulate(&a, q, &uv).1, whole_output(&a, q, &uv));
    }

    #[test]
    fn mealy_runs_preserve_length((a, ws) in mealy_automaton().prop_flat_map(|a| with_words(a, 1))) {
        for q in a.states() {
            prop_assert_eq!(a.run_finite(q, &ws[0]).unwrap().output.len(), ws[0].len());
        }
    }

    #[test]
    fn composition_runs_in_sequence(
        (f, g, ws) in async_automaton().prop_flat_map(|f| {
            let y = f.output().size();
            let g = table(0, 2).prop_filter_map("input size", move |t| (t.0 == y).then(|| build(&t)));
            (Just(f), g).prop_flat_map(|(f, g)| {
                let x = f.input().size();
                (Just(f), Just(g), prop::collection::vec(word(x, 10), 1))
            })
        })
    ) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.state_count(), f.state_count() * g.state_count());
        let w = &ws[0];
        for p in f.states() {
            for s in g.states() {
                let first = f.run_finite(p, w).unwrap();
                let second = g.run_finite(s, &first.output).unwrap();
                let pair = StateId(p.0 * g.state_count() + s.0);
                let both = fg.run_finite(pair, w).unwrap();
                prop_assert_eq!(both.output, second.output);
                prop_assert_eq!(both.end_state, StateId(first.end_state.0 * g.state_count() + second.end_state.0));
            }
        }
    }

    #[test]
    fn exact_omega_run_matches_prefix(a in nonempty_automaton(), seed in any::<u64>()) {
        let w = seeded_word(a.input(), seed);
        for q in a.states() {
            let exact = a.run_omega_exact(q, &w).unwrap();
            let prefix = a.run_omega_prefix(q, &w, 40).unwrap();
            prop_assert_eq!(exact.prefix(40), prefix);
        }
    }

    #[test]
    fn nondegenerate_automata_never_stall(a in async_automaton(), seed in any::<u64>()) {
        let w = seeded_word(a.input(), seed);
        let nondegenerate = a.is_nondegenerate().holds;
        for q in a.states() {
            match a.run_omega_prefix(q, &w, 20) {
                Ok(out) => prop_assert_eq!(out.len(), 20),
                Err(Error::DegenerateRun(_)) => prop_assert!(!nondegenerate),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
            if nondegenerate {
                let exact = a.run_omega_exact(q, &w).unwrap();
                prop_assert_eq!(exact.prefix(20), a.run_omega_prefix(q, &w, 20).unwrap());
            }
        }
    }

    #[test]
    fn l_prefix_is_monotone((a, ws) in nonempty_automaton().prop_flat_map(|a| with_words(a, 2))) {
        let q = StateId(0);
        let uv = [ws[0].as_slice(), ws[1].as_slice()].concat();
        let short = l_prefix(&a, q, &ws[0]).unwrap();
        let long = l_prefix(&a, q, &uv).unwrap();
        prop_assert_eq!(short.len(), ws[0].len());
        prop_assert!(short.is_prefix_of(&long));
    }

    #[test]
    fn mealyfy_buffers_the_surplus((a, ws) in nonempty_automaton().prop_flat_map(|a| with_words(a, 1))) {
        let w = &ws[0];
        let q = StateId(0);
        let machine = mealyfy(&a, q).unwrap();
        let (state, out) = machine.run(w).unwrap();
        let full = a.run_finite(q, w).unwrap();
        prop_assert_eq!(out.concat(&state.surplus), full.output);
        prop_assert_eq!(state.base, full.end_state);
        prop_assert_eq!(out, l_prefix(&a, q, w).unwrap());
    }

    #[test]
    fn nonempty_emissions_give_short_maps(a in nonempty_automaton(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let u = seeded_word(a.input(), s1);
        let v = seeded_word(a.input(), s2);
        let map = AutomatonMap { automaton: &a, state: StateId(0) };
        let depth = 48;
        let input = u.common_prefix_len(&v).unwrap_or(depth).min(depth);
        let fu = map.image_prefix(&u, depth).unwrap();
        let fv = map.image_prefix(&v, depth).unwrap();
        let output = fu.iter().zip(fv.iter()).take_while(|(a, b)| a == b).count();
        prop_assert!(output >= input);
    }

    #[test]
    fn distance_is_an_ultrametric(u in ep_word(2), v in ep_word(2), w in ep_word(2)) {
        let p = MetricParams::default();
        let (uv, vw, uw) = (distance(&u, &v, &p), distance(&v, &w, &p), distance(&u, &w, &p));
        prop_assert_eq!(uv.clone(), distance(&v, &u, &p));
        prop_assert_eq!(uv == num_zero(), u == v);
        prop_assert!(uw <= uv.clone().max(vw));
    }

    #[test]
    fn nonempty_maps_are_1_lipschitz(a in nonempty_automaton(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let u = seeded_word(a.input(), s1);
        let v = seeded_word(a.input(), s2);
        let p = MetricParams::new(1, 3).unwrap();
        let fu = a.run_omega_exact(StateId(0), &u).unwrap();
        let fv = a.run_omega_exact(StateId(0), &v).unwrap();
        prop_assert!(distance(&fu, &fv, &p) <= distance(&u, &v, &p));
    }

    #[test]
    fn save_load_round_trip(a in async_automaton()) {
        let bytes = save(&a);
        let back = load(&bytes).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(save(&back), bytes);
    }

    #[test]
    fn colour_table_reproduces_the_automaton((a, ws) in mealy_automaton().prop_flat_map(|a| with_words(a, 4))) {
        let q = StateId(0);
        let table = colour_tree(&a, q, 4).unwrap();
        let from_table = table.clone().into_colouring().unwrap();
        let from_automaton = Colouring::from_automaton(a.clone(), q).unwrap();
        for w in ws.iter().filter(|w| !w.is_empty()) {
            let w = &w[..w.len().min(4)];
            let c = colour_of(&a, q, w).unwrap();
            prop_assert_eq!(table.get(w), Some(c));
            prop_assert_eq!(from_table.colour(w).unwrap(), c);
            prop_assert_eq!(from_automaton.colour(w).unwrap(), c);
        }
        let (_, out) = from_table.mealy().run(&ws[0][..ws[0].len().min(4)]).unwrap();
        prop_assert_eq!(out, a.run_finite(q, &ws[0][..ws[0].len().min(4)]).unwrap().output);
    }

    #[test]
    fn c_is_closed_under_its_transitions(n in 1u32..=6, m in 1u32..=6, w in word(7, 16)) {
        let c = build_c(n, m).unwrap();
        let w: Vec<Letter> = w.into_iter().map(|x| x % (n + 1)).collect();
        let ab = build_a(n).unwrap().compose(&build_b(m).unwrap()).unwrap();
        // Every state of C corresponds to (σ, [qn]_m) in A_n∘B_m.
        for q in c.states() {
            let r = ((q.0 as u64 * u64::from(n)) % u64::from(m)) as usize;
            let end = c.end_state(q, &w);
            let end_ab = ab.end_state(StateId(r), &w);
            prop_assert_eq!(end_ab, StateId((end.0 as u64 * u64::from(n) % u64::from(m)) as usize));
            prop_assert_eq!(c.run_finite(q, &w).unwrap().output, ab.run_finite(StateId(r), &w).unwrap().output);
        }
    }
}

fn whole_output(a: &AsyncAutomaton, q: StateId, w: &[Letter]) -> Vec<Letter> {
    a.run_finite(q, w).unwrap().output.into_letters()
}

fn num_zero() -> num_rational::BigRational {
    num_rational::BigRational::from_integer(0.into())
}

fn seeded_word(alphabet: Alphabet, seed: u64) -> EventuallyPeriodicWord {
    use rand::SeedableRng;
    cantor_core::random_word(alphabet, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
}

#[test]
fn buffer_grows_when_n_exceeds_m() {
    for (n, m) in [(2u32, 1u32), (3, 2), (5, 3), (6, 2)] {
        let ab = build_a(n).unwrap().compose(&build_b(m).unwrap()).unwrap();
        let machine = mealyfy(&ab, StateId(0)).unwrap();
        let mut state = machine.start();
        let mut last = 0;
        for t in 1..=100 {
            state = machine.step(&state, n).unwrap().0;
            assert!(state.surplus.len() >= last, "n={n} m={m} t={t}");
            last = state.surplus.len();
        }
        assert!(
            last >= 100 * (n / m) as usize - 100,
            "n={n} m={m}: buffer {last}"
        );
        assert!(last > 0);
    }
}
