use automatic_complexity::complexity::{Analyzer, DoubletonQuery};
use automatic_complexity::constructions::{chambers_hyde, kayleigh};
use automatic_complexity::counting::{count_paths_for_word, count_paths_total, count_words};
use automatic_complexity::{Error, Mode, Nfa, Transition, Word};
use num_bigint::BigUint;
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 1..=max_len).prop_map(Word::new)
}

fn nfa() -> impl Strategy<Value = Nfa> {
    (1usize..=4).prop_flat_map(|q| {
        let edge = (0..q, 0u8..2, 0..q).prop_map(|(f, a, t)| Transition::new(f, a, t));
        (0..q, prop::collection::btree_set(edge, 0..=12))
            .prop_map(move |(accept, edges)| Nfa::new(q, 2, accept, edges).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn path_counts_split_over_words(m in nfa(), n in 0usize..=7) {
        let per_word: BigUint = Word::all(2, n).map(|x| count_paths_for_word(&m, &x).unwrap()).sum();
        prop_assert_eq!(&per_word, &count_paths_total(&m, n));
        let words = count_words(&m, n).unwrap();
        prop_assert!(words <= per_word);
        let accepted = Word::all(2, n).filter(|x| m.accepts(x).unwrap()).count();
        prop_assert_eq!(words, BigUint::from(accepted));
    }

    #[test]
    fn canonical_form_ignores_labels(m in nfa(), seed in any::<u64>()) {
        let q = m.state_count();
        let mut rest: Vec<usize> = (1..q).collect();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..rest.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            rest.swap(i, (s >> 33) as usize % (i + 1));
        }
        let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
        let relabeled = m.relabeled(&perm);
        prop_assert_eq!(relabeled.canonical_form(), m.canonical_form());
        prop_assert_eq!(count_paths_total(&relabeled, 5), count_paths_total(&m, 5));
    }

    #[test]
    fn reversal_preserves_counts(m in nfa(), n in 0usize..=6) {
        let r = m.reversed();
        prop_assert_eq!(count_paths_total(&r, n), count_paths_total(&m, n));
        prop_assert_eq!(count_words(&r, n).unwrap(), count_words(&m, n).unwrap());
    }

    #[test]
    fn frontier_symmetries(x in word(9)) {
        let a = Analyzer::default();
        for mode in [Mode::Delta, Mode::Pi, Mode::Omega] {
            let f = a.structure_frontier(&x, 2, mode).unwrap();
            let c = a.structure_frontier(&x.complement(), 2, mode).unwrap();
            prop_assert_eq!(&f.points, &c.points);
            if mode != Mode::Delta {
                let r = a.structure_frontier(&x.reversed(), 2, mode).unwrap();
                prop_assert_eq!(&f.points, &r.points);
            }
        }
    }

    #[test]
    fn complexity_orderings(x in word(10)) {
        let a = Analyzer::default();
        let pi = a.a_pi(&x).unwrap();
        let omega = a.a_omega(&x).unwrap();
        let minus = a.a_minus(&x).unwrap();
        prop_assert!(omega <= pi);
        prop_assert!(pi <= minus);
        prop_assert!(pi <= x.len() / 2 + 1);
        match a.a_dagger(&x) {
            Ok(d) => prop_assert!(d <= pi),
            Err(Error::SearchBudgetExceeded { lower, upper }) => {
                prop_assert!(lower <= upper);
                prop_assert!(upper <= pi);
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn doubleton_orderings(x in word(6), flips in prop::collection::vec(any::<bool>(), 6)) {
        let y = Word::new(x.symbols().iter().zip(&flips).map(|(&s, &f)| s ^ f as u8).collect());
        let mut words = vec![x, y];
        words.dedup();
        let q = DoubletonQuery::new(words, 2).unwrap();
        let a = Analyzer::default();
        let omega = a.doubleton_complexity(&q, Mode::Omega).unwrap();
        let pi = a.doubleton_complexity(&q, Mode::Pi).unwrap();
        let bound = chambers_hyde(&q).unwrap();
        prop_assert!(omega <= pi);
        prop_assert!(pi <= bound.state_count());
        for w in q.words() {
            prop_assert!(bound.accepts(w).unwrap());
        }
        prop_assert_eq!(count_words(&bound, q.len()).unwrap(), BigUint::from(q.cardinality()));
    }
}

#[test]
fn kayleigh_graphs_sampled_to_sixteen() {
    for n in 13..=16 {
        for i in 0..64u64 {
            let x = Word::from_bits(i.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> (64 - n), n);
            let k = kayleigh(&x).unwrap();
            assert_eq!(k.state_count(), n / 2 + 1);
            assert!(k.accepts(&x).unwrap());
            assert_eq!(count_paths_total(&k, n), BigUint::from(1u32));
        }
    }
}
