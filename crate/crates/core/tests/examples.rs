mod common;

use std::collections::BTreeSet;

use common::*;
use splicing::automata::compile;
use splicing::closure::{closure_bounded, member, witness};
use splicing::decider::{alphabetic_generability, decide_equal};
use splicing::fixtures;
use splicing::grammar::{enumerate_words, Cfg};
use splicing::production::replay_sequence;
use splicing::synthesis::{concat_grammar, synthesize};
use splicing::system::Mode;
use splicing::transform::circular_to_flat;
use splicing::word::{Alphabet, Word};

fn lang(g: &Cfg, n: usize) -> BTreeSet<Word> {
    enumerate_words(g, n).into_iter().collect()
}

#[test]
fn every_fixture_matches_brute_force() {
    for (name, s, bound) in fixtures::all() {
        let n = bound.min(10);
        assert_eq!(closure_bounded(&s, n), brute_closure(&s, n), "{name}");
    }
}

#[test]
fn anbn_flat_and_circular() {
    let s = fixtures::anbn();
    assert_eq!(closure_bounded(&s, 12), anbn(12));
    assert_eq!(lang(&synthesize(&s).unwrap(), 12), anbn(12));

    let c = fixtures::anbn_circular();
    let lin = linearize(&closure_bounded(&c, 10));
    assert_eq!(lin, linearize(&anbn(10)));
    assert_eq!(lang(&synthesize(&c).unwrap(), 10), lin);
}

#[test]
fn dyck_counts() {
    let s = fixtures::dyck();
    let k = closure_bounded(&s, 8);
    assert!(k.iter().all(|x| is_balanced(x, 'a', 'ā')));
    let counts = balanced_counts(8);
    for len in [2, 4, 6, 8] {
        assert_eq!(k.iter().filter(|x| x.len() == len).count(), counts[&len]);
    }
    assert_eq!(counts.values().copied().collect::<Vec<_>>(), [1, 2, 5, 14]);
    assert_eq!(lang(&synthesize(&s).unwrap(), 8), k);
}

#[test]
fn circular_dyck_is_equal_counts() {
    let s = fixtures::dyck_circular();
    let lin = linearize(&closure_bounded(&s, 8));
    let ab = Alphabet::parse("a ā").unwrap();
    let all = compile("(a|ā)+", &ab).unwrap().enumerate(8);
    let equal: BTreeSet<Word> = all
        .into_iter()
        .filter(|x| x.letters().iter().filter(|&&c| c == 'a').count() * 2 == x.len())
        .collect();
    assert_eq!(lin, equal);
}

#[test]
fn doubling_reaches_powers_of_two_only() {
    let s = fixtures::doubling();
    let k = closure_bounded(&s, 14);
    let u = "0123";
    assert!(k.contains(&w(&format!("▶{u}◀"))));
    assert!(k.contains(&w(&format!("▶{u}{u}◀"))));
    assert!(!k.contains(&w(&format!("▶{u}{u}{u}◀"))));
    assert!(member(&s, &w(&format!("▶{u}{u}◀"))).unwrap());
}

#[test]
fn pure_cab_language() {
    let s = fixtures::pure_cab();
    let n = 10;
    let l = anbn(n);
    let c = words(["c"]);
    let c_or_l: BTreeSet<Word> = c.union(&l).cloned().collect();
    let mut star = plus_set(&c_or_l, n);
    star.insert(Word::empty());
    let mut expect = concat_sets(&concat_sets(&c, &star, n), &l, n);
    expect.extend(l.iter().cloned());
    expect.insert(w("c"));
    assert_eq!(closure_bounded(&s, n), expect);
    assert_eq!(lang(&synthesize(&s).unwrap(), n), expect);
    assert_eq!(closure_bounded(&fixtures::mixed_cab(), n), expect);
    assert_eq!(lang(&synthesize(&fixtures::mixed_cab()).unwrap(), n), expect);
}

#[test]
fn concatenation_languages() {
    let s = fixtures::concat_cab();
    let mut expect: BTreeSet<Word> = (0..=6).map(|k| w(&("c".repeat(k) + "ab"))).collect();
    expect.insert(w("c"));
    assert_eq!(lang(&concat_grammar(&s).unwrap(), 8), expect);

    let s = fixtures::concat_nonregular();
    let n = 10;
    let l: BTreeSet<Word> = (0..=2)
        .map(|k| w(&("ac".repeat(k) + "ab" + &"db".repeat(k))))
        .collect();
    let mut expect = BTreeSet::new();
    for x in &l {
        for (pre, post) in [("", ""), ("c", ""), ("c", "d"), ("ac", "d")] {
            let y = w(&format!("{pre}{x}{post}"));
            if y.len() <= n {
                expect.insert(y);
            }
        }
    }
    expect.extend(words(["a", "b", "c", "d"]));
    assert_eq!(lang(&concat_grammar(&s).unwrap(), n), expect);
    assert_eq!(closure_bounded(&s, n), expect);
}

#[test]
fn circular_rule_as_flat_rules() {
    let flat = circular_to_flat(&fixtures::anbn_circular()).unwrap();
    assert_eq!(flat.mode, Mode::Flat);
    let n = 8;
    let mut expect = BTreeSet::new();
    for i in 0..=n {
        for j in 0..=n {
            if i + j >= 1 && 2 * (i + j) <= n {
                let s = |x: &str, y: &str| w(&(x.repeat(i) + &y.repeat(i + j) + &x.repeat(j)));
                expect.insert(s("a", "b"));
                expect.insert(s("b", "a"));
            }
        }
    }
    assert_eq!(closure_bounded(&flat, n), expect);
}

#[test]
fn witnesses_replay() {
    for (name, s, bound) in fixtures::all() {
        if s.mode == Mode::Circular {
            continue;
        }
        for x in closure_bounded(&s, bound.min(8)) {
            let seq = witness(&s, &x, bound.min(8)).unwrap();
            assert_eq!(replay_sequence(&s, &seq).unwrap(), x, "{name}");
        }
    }
}

#[test]
fn regular_verdicts_on_fixtures() {
    let ab = Alphabet::parse("a b").unwrap();
    let v = decide_equal(&fixtures::anbn(), &compile("(ab)+", &ab).unwrap()).unwrap();
    assert_eq!(v.to_string(), "NOT-EQUAL 2 aabb");
    let a = Alphabet::parse("a").unwrap();
    for re in ["a+", "(aa)+"] {
        let k = compile(re, &a).unwrap();
        let s = alphabetic_generability(&k).unwrap().unwrap();
        assert!(decide_equal(&s, &k).unwrap().equal, "{re}");
    }
    assert!(alphabetic_generability(&compile("a*b", &ab).unwrap()).unwrap().is_none());
}
