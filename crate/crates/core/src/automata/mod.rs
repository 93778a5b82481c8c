//! Deterministic finite automata and the regular constructions built on them.

mod dfa;
mod nfa;
mod regex;

pub use dfa::{BoolOp, Decision, Dfa, Pump};
pub use regex::Regex;

use crate::error::Result;
use crate::word::{Alphabet, Word};

pub fn regex_to_dfa(r: &Regex, alphabet: &Alphabet) -> Result<Dfa> {
    r.to_dfa(alphabet)
}

/// Parses and compiles a regex in one go.
pub fn compile(text: &str, alphabet: &Alphabet) -> Result<Dfa> {
    Regex::parse(text)?.to_dfa(alphabet)
}

pub fn dfa_boolean(op: BoolOp, a: &Dfa, b: &Dfa) -> Result<Dfa> {
    a.boolean(op, b)
}

pub fn dfa_complement(a: &Dfa) -> Dfa {
    a.complement()
}

pub fn dfa_subset(a: &Dfa, b: &Dfa) -> Result<Decision> {
    a.subset(b)
}

pub fn dfa_equivalent(a: &Dfa, b: &Dfa) -> Result<Decision> {
    a.equivalent(b)
}

pub fn dfa_empty(a: &Dfa) -> Decision {
    a.is_empty()
}

pub fn dfa_is_finite(a: &Dfa) -> Decision {
    a.is_finite()
}

pub fn state_languages(d: &Dfa, q: usize) -> Result<(Dfa, Dfa)> {
    d.state_languages(q)
}

pub fn conjugacy_closure(d: &Dfa) -> Dfa {
    d.conjugacy_closure()
}

pub fn enumerate_dfa(d: &Dfa, n: usize) -> Vec<Word> {
    d.enumerate(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::conjugates;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn ab() -> Alphabet {
        Alphabet::parse("a b").unwrap()
    }

    fn re(s: &str) -> Dfa {
        compile(s, &ab()).unwrap()
    }

    fn words(ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|s| Word::from(*s)).collect()
    }

    fn all_words(alphabet: &Alphabet, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &layer {
                for &c in alphabet.letters() {
                    let mut v = w.letters().to_vec();
                    v.push(c);
                    next.push(Word::new(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn minimal_sizes() {
        assert_eq!(re("(ab)*").num_states(), 3);
        let empty = re("");
        assert_eq!(empty.num_states(), 1);
        assert_eq!(empty.finals().count(), 0);
        assert_eq!(re("a|b").enumerate(3), words(&["a", "b"]));
    }

    #[test]
    fn unknown_letter_is_rejected() {
        assert!(compile("ac", &ab()).is_err());
    }

    #[test]
    fn boolean_operations() {
        assert_eq!(re("a*").intersect(&re("b*")).unwrap(), re("_"));
        assert_eq!(re("(ab)+").difference(&re("")).unwrap(), re("(ab)+"));
        let both = re("a(a|b)*").intersect(&re("(a|b)*b")).unwrap();
        assert_eq!(both.enumerate(3), words(&["ab", "aab", "abb"]));
        assert_eq!(re("a").union(&re("b")).unwrap(), re("a|b"));
        assert_eq!(re("a*").complement().complement(), re("a*"));
    }

    #[test]
    fn alphabet_mismatch() {
        let other = compile("a", &Alphabet::parse("a").unwrap()).unwrap();
        assert!(re("a").intersect(&other).is_err());
    }

    #[test]
    fn decisions() {
        assert!(re("(ab)+").subset(&re("(ab)*")).unwrap().holds);
        let no = re("(ab)*").subset(&re("(ab)+")).unwrap();
        assert_eq!(no.witness, Some(Word::empty()));
        assert!(re("a*").equivalent(&re("a*a*")).unwrap().holds);
        assert!(re("").is_empty().holds);
        assert_eq!(re("b*a").is_empty().witness, Some(Word::from("a")));
        let fin = re("a*b").is_finite();
        assert!(!fin.holds);
        let pump = re("a*b").infinite_witness().unwrap();
        assert_eq!(pump.cycle, Word::from("a"));
        assert!(re("a*b").accepts(&pump.prefix.concat(&pump.cycle).concat(&pump.cycle).concat(&pump.suffix)));
        assert!(re("ab|ba|a").is_finite().holds);
    }

    #[test]
    fn state_languages_of_astar_b() {
        let d = re("a*b");
        let start = d.start();
        let (g, dq) = d.state_languages(start).unwrap();
        assert_eq!(g, re("a*"));
        assert_eq!(dq, re("a*b"));
        let acc = d.finals().next().unwrap();
        let (g, dq) = d.state_languages(acc).unwrap();
        assert_eq!(g, re("a*b"));
        assert_eq!(dq, re("_"));
        let live = d.live_states();
        let sink = (0..d.num_states()).find(|&q| !live[q]).unwrap();
        assert_eq!(d.state_languages(sink).unwrap().1, re(""));
        assert!(d.state_languages(17).is_err());
    }

    #[test]
    fn conjugacy_closures() {
        assert_eq!(re("ab").conjugacy_closure(), re("ab|ba"));
        assert_eq!(re("a*").conjugacy_closure(), re("a*"));
        assert_eq!(re("(ab)+").conjugacy_closure(), re("(ab)+|(ba)+"));
    }

    #[test]
    fn enumeration() {
        assert_eq!(re("(ab)+").enumerate(4), words(&["ab", "abab"]));
        assert!(re("").enumerate(10).is_empty());
        assert_eq!(re("a*b").enumerate(3), words(&["b", "ab", "aab"]));
    }

    #[test]
    fn regex_round_trip_through_state_elimination() {
        for s in ["(ab)*", "a*b", "", "_", "a(a|b)*b", "(a|b)*aba?"] {
            let d = re(s);
            assert_eq!(Regex::from_dfa(&d).to_dfa(&ab()).unwrap(), d, "{s}");
        }
    }

    fn regex_strategy() -> impl Strategy<Value = Regex> {
        let leaf = prop_oneof![
            Just(Regex::Letter('a')),
            Just(Regex::Letter('b')),
            Just(Regex::Epsilon),
            Just(Regex::empty()),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 2..3).prop_map(Regex::Union),
                proptest::collection::vec(inner.clone(), 2..3).prop_map(Regex::Concat),
                inner.clone().prop_map(|r| Regex::Star(Box::new(r))),
                inner.clone().prop_map(|r| Regex::Plus(Box::new(r))),
                inner.prop_map(|r| Regex::Optional(Box::new(r))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn enumeration_matches_direct_matcher(r in regex_strategy()) {
            let d = r.to_dfa(&ab()).unwrap();
            let expect: Vec<Word> = all_words(&ab(), 6).into_iter().filter(|w| r.matches(w)).collect();
            let mut got = d.enumerate(6);
            got.sort();
            prop_assert_eq!(got, expect);
        }

        #[test]
        fn equivalence_agrees_with_bounded_enumeration(r1 in regex_strategy(), r2 in regex_strategy()) {
            let (a, b) = (r1.to_dfa(&ab()).unwrap(), r2.to_dfa(&ab()).unwrap());
            let bound = a.num_states() * b.num_states();
            let same = a.enumerate(bound) == b.enumerate(bound);
            prop_assert_eq!(a.equivalent(&b).unwrap().holds, same);
        }

        #[test]
        fn conjugacy_closure_is_a_closure(r in regex_strategy()) {
            let d = r.to_dfa(&ab()).unwrap();
            let c = d.conjugacy_closure();
            prop_assert!(d.subset(&c).unwrap().holds);
            prop_assert_eq!(c.conjugacy_closure(), c.clone());
            let expect: BTreeSet<Word> = d.enumerate(5).iter().flat_map(conjugates).collect();
            let got: BTreeSet<Word> = c.enumerate(5).into_iter().collect();
            prop_assert_eq!(got, expect);
        }

        #[test]
        fn state_languages_compose_inside(r in regex_strategy()) {
            let d = r.to_dfa(&ab()).unwrap();
            let live = d.live_states();
            for q in (0..d.num_states()).filter(|&q| live[q]) {
                let (g, dq) = d.state_languages(q).unwrap();
                for x in g.enumerate(3) {
                    for y in dq.enumerate(3) {
                        prop_assert!(d.accepts(&x.concat(&y)));
                    }
                }
            }
        }
    }
}
