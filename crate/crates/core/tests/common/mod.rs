//! Independent oracles shared by the integration tests. Nothing here calls
//! the closure engine, the decider or the grammar compilers.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use splicing::grammar::{enumerate_cfg, GeneralizedCfg, Terminal};
use splicing::production::{production_outcome, Cut, Operand, Production, ProductionSequence};
use splicing::rule::{SplicingRule, Usage};
use splicing::system::{InitialSet, Mode, SplicingSystem};
use splicing::word::{canonical_circular, conjugates, Alphabet, Word};

pub fn w(s: &str) -> Word {
    Word::from(s)
}

pub fn words<'a>(ws: impl IntoIterator<Item = &'a str>) -> BTreeSet<Word> {
    ws.into_iter().map(Word::from).collect()
}

fn fits(w: &Word, prefix: &Word, suffix: &Word) -> bool {
    w.len() >= prefix.len() + suffix.len() && w.starts_with(prefix) && w.ends_with(suffix)
}

fn canon(w: &Word) -> Word {
    canonical_circular(w).unwrap().representative().clone()
}

/// Every word one rule makes from `u` and `v`, straight from the definition.
pub fn products(mode: Mode, r: &SplicingRule, u: &Word, v: &Word) -> Vec<Word> {
    let mut out = Vec::new();
    match (mode, r.usage) {
        (Mode::Flat, Usage::Splice) => {
            if fits(v, &r.gamma, &r.delta) {
                for i in 0..=u.len() {
                    let (x, y) = (u.slice(0, i), u.slice(i, u.len()));
                    if x.ends_with(&r.alpha) && y.starts_with(&r.beta) {
                        out.push(x.concat(v).concat(&y));
                    }
                }
            }
        }
        (Mode::Flat, Usage::Concat) => {
            if fits(u, &r.alpha, &r.beta) && fits(v, &r.gamma, &r.delta) {
                out.push(u.concat(v));
            }
        }
        (Mode::Circular, _) => {
            for i in 0..u.len() {
                let ru = u.rotate(i);
                if !fits(&ru, &r.beta, &r.alpha) {
                    continue;
                }
                for j in 0..v.len() {
                    let rv = v.rotate(j);
                    if fits(&rv, &r.gamma, &r.delta) {
                        out.push(canon(&ru.concat(&rv)));
                    }
                }
            }
        }
    }
    out
}

/// Naive saturation of the initial words up to length `n`. Circular words
/// are kept as least rotations.
pub fn brute_closure(s: &SplicingSystem, n: usize) -> BTreeSet<Word> {
    let mut set: BTreeSet<Word> = s.initial.enumerate(n).into_iter().collect();
    if s.mode == Mode::Circular {
        set = set.iter().map(canon).collect();
    }
    loop {
        let mut fresh = BTreeSet::new();
        for u in &set {
            for v in &set {
                if u.len() + v.len() > n {
                    continue;
                }
                for r in &s.rules {
                    for x in products(s.mode, r, u, v) {
                        if !set.contains(&x) {
                            fresh.insert(x);
                        }
                    }
                }
            }
        }
        if fresh.is_empty() {
            return set;
        }
        set.extend(fresh);
    }
}

pub fn linearize(set: &BTreeSet<Word>) -> BTreeSet<Word> {
    set.iter().flat_map(conjugates).collect()
}

pub fn is_balanced(w: &Word, open: char, close: char) -> bool {
    let mut depth = 0i64;
    for &c in w.letters() {
        depth += if c == open { 1 } else if c == close { -1 } else { return false };
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// Number of nonempty balanced words of each even length up to `n`,
/// counted by height.
pub fn balanced_counts(n: usize) -> BTreeMap<usize, usize> {
    let mut ways = vec![0usize; n + 2];
    ways[0] = 1;
    let mut out = BTreeMap::new();
    for len in 1..=n {
        let mut next = vec![0usize; n + 2];
        for h in 0..=n {
            if ways[h] == 0 {
                continue;
            }
            next[h + 1] += ways[h];
            if h > 0 {
                next[h - 1] += ways[h];
            }
        }
        ways = next;
        if len % 2 == 0 {
            out.insert(len, ways[0]);
        }
    }
    out
}

/// Words of length at most `n` of a generalized grammar, found by
/// expanding each right-hand side over the current languages of the named
/// variables until nothing changes. Assumes no variable derives ε.
pub fn expand_generalized(g: &GeneralizedCfg, n: usize) -> BTreeSet<Word> {
    let mut lang: BTreeMap<String, BTreeSet<Word>> = g.variables().iter().map(|v| (v.clone(), BTreeSet::new())).collect();
    loop {
        let mut changed = false;
        for v in g.variables() {
            let m = g.rhs(v).unwrap();
            for sentence in enumerate_cfg(m, n) {
                let mut partial: BTreeSet<Word> = [Word::empty()].into();
                for t in &sentence {
                    let options: Vec<Word> = match t {
                        Terminal::Letter(c) => vec![Word::new(vec![*c])],
                        Terminal::Named(x) => lang[x].iter().cloned().collect(),
                        Terminal::Marker(..) => panic!("marker in generalized grammar"),
                    };
                    partial = partial
                        .iter()
                        .flat_map(|p| options.iter().map(move |o| p.concat(o)))
                        .filter(|x| x.len() <= n)
                        .collect();
                }
                for x in partial {
                    changed |= lang.get_mut(v).unwrap().insert(x);
                }
            }
        }
        if !changed {
            return lang.remove(g.start()).unwrap();
        }
    }
}

/// `{uv : u ∈ a, v ∈ b, |uv| ≤ n}`.
pub fn concat_sets(a: &BTreeSet<Word>, b: &BTreeSet<Word>, n: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for u in a {
        for v in b {
            if u.len() + v.len() <= n {
                out.insert(u.concat(v));
            }
        }
    }
    out
}

/// `a⁺` up to length `n`, for sets of nonempty words.
pub fn plus_set(a: &BTreeSet<Word>, n: usize) -> BTreeSet<Word> {
    let mut out = a.iter().filter(|x| x.len() <= n).cloned().collect::<BTreeSet<_>>();
    loop {
        let more = concat_sets(&out, a, n);
        let before = out.len();
        out.extend(more);
        if out.len() == before {
            return out;
        }
    }
}

/// `{aᵏbᵏ | 1 ≤ k}` up to length `n`.
pub fn anbn(n: usize) -> BTreeSet<Word> {
    (1..=n / 2).map(|k| w(&("a".repeat(k) + &"b".repeat(k)))).collect()
}

pub fn random_handle(rng: &mut impl Rng, letters: &[char]) -> Word {
    if rng.gen_bool(0.4) {
        Word::empty()
    } else {
        Word::new(vec![*letters.choose(rng).unwrap()])
    }
}

pub fn random_word(rng: &mut impl Rng, letters: &[char], min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    Word::new((0..len).map(|_| *letters.choose(rng).unwrap()).collect())
}

pub struct Shape {
    pub letters: usize,
    pub initial: usize,
    pub rules: usize,
    pub max_word: usize,
    pub concat_rules: bool,
}

/// A random alphabetic system with at most the given numbers of letters,
/// initial words and rules.
pub fn random_system(rng: &mut impl Rng, shape: &Shape, mode: Mode) -> SplicingSystem {
    let letters: Vec<char> = "abc".chars().take(rng.gen_range(1..=shape.letters)).collect();
    let initial: BTreeSet<Word> = (0..rng.gen_range(1..=shape.initial))
        .map(|_| random_word(rng, &letters, 1, shape.max_word))
        .collect();
    let rules: Vec<SplicingRule> = (0..rng.gen_range(1..=shape.rules))
        .map(|_| {
            let usage = if shape.concat_rules && mode == Mode::Flat && rng.gen_bool(0.25) {
                Usage::Concat
            } else {
                Usage::Splice
            };
            let handles = [(); 4].map(|_| random_handle(rng, &letters));
            SplicingRule::from_handles(usage, handles)
        })
        .collect();
    SplicingSystem::new(Alphabet::new(letters).unwrap(), InitialSet::Finite(initial), rules, mode).unwrap()
}

/// A random regex over `letters` in the command-line syntax.
pub fn random_regex(rng: &mut impl Rng, letters: &[char], depth: usize) -> String {
    let atom = |rng: &mut dyn rand::RngCore| letters[rng.gen_range(0..letters.len())].to_string();
    if depth == 0 {
        return atom(rng);
    }
    match rng.gen_range(0..6) {
        0 => atom(rng),
        1 => format!("{}{}", random_regex(rng, letters, depth - 1), random_regex(rng, letters, depth - 1)),
        2 => format!("({}|{})", random_regex(rng, letters, depth - 1), random_regex(rng, letters, depth - 1)),
        3 => format!("({})*", random_regex(rng, letters, depth - 1)),
        4 => format!("({})+", random_regex(rng, letters, depth - 1)),
        _ => format!("{}({})*", atom(rng), random_regex(rng, letters, depth - 1)),
    }
}

/// A random flat production sequence that replays by construction: each
/// step picks operands among the initial words and earlier results, then
/// a rule and a legal cut, retrying until `len` steps are built.
pub fn random_sequence(rng: &mut impl Rng, s: &SplicingSystem, len: usize, max_word: usize) -> Option<ProductionSequence> {
    let initial: Vec<Word> = s.initial.enumerate(max_word);
    let rules: Vec<&SplicingRule> = s.rules.iter().collect();
    if initial.is_empty() || rules.is_empty() {
        return None;
    }
    let mut steps: Vec<Production> = Vec::new();
    let mut tries = 0;
    while steps.len() < len {
        tries += 1;
        if tries > 400 {
            return None;
        }
        let pick = |rng: &mut dyn rand::RngCore, steps: &[Production]| -> (Operand, Word) {
            if !steps.is_empty() && rng.gen_bool(0.6) {
                let j = rng.gen_range(0..steps.len());
                (Operand::Step(j), steps[j].result.clone())
            } else {
                let x = initial[rng.gen_range(0..initial.len())].clone();
                (Operand::Initial(x.clone()), x)
            }
        };
        let (lo, u) = pick(rng, &steps);
        let (ro, v) = pick(rng, &steps);
        if u.len() + v.len() > max_word {
            continue;
        }
        let r = rules[rng.gen_range(0..rules.len())];
        let cuts: Vec<usize> = (0..=u.len())
            .filter(|&c| production_outcome(Mode::Flat, r, &u, &v, Cut::Flat(c)).is_some())
            .collect();
        let Some(&c) = cuts.choose(rng) else { continue };
        let result = production_outcome(Mode::Flat, r, &u, &v, Cut::Flat(c)).unwrap();
        steps.push(Production {
            rule: r.clone(),
            left: lo,
            right: ro,
            cut: Cut::Flat(c),
            result,
        });
    }
    Some(ProductionSequence::new(steps))
}

/// Whether every concatenation comes before every proper insertion.
pub fn concatenations_first(seq: &ProductionSequence) -> bool {
    let lens: Vec<usize> = seq
        .steps
        .iter()
        .map(|p| match &p.left {
            Operand::Initial(x) => x.len(),
            Operand::Step(j) => seq.steps[*j].result.len(),
        })
        .collect();
    let proper: Vec<bool> = seq.steps.iter().zip(&lens).map(|(p, &l)| p.is_proper_insertion(l)).collect();
    proper.windows(2).all(|x| !(x[0] && !x[1]))
}
