//! Splicing rules and the production semantics.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Alphabet, CircularWord, Word};

/// How a rule may be used: as a general splice or only as a concatenation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Usage {
    Splice,
    Concat,
}

/// A rule `α#β$γ#δ`. A splice inserts a word of `γA*δ` between `α` and
/// `β`; a concatenation rule glues `u ∈ αA*β` in front of `v ∈ γA*δ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplicingRule {
    pub usage: Usage,
    pub alpha: Word,
    pub beta: Word,
    pub gamma: Word,
    pub delta: Word,
}

impl SplicingRule {
    pub fn splice(alpha: &str, beta: &str, gamma: &str, delta: &str) -> Self {
        SplicingRule::with_usage(Usage::Splice, alpha, beta, gamma, delta)
    }

    pub fn concat(alpha: &str, beta: &str, gamma: &str, delta: &str) -> Self {
        SplicingRule::with_usage(Usage::Concat, alpha, beta, gamma, delta)
    }

    /// Handles written as words; `""` or `"-"` denote ε.
    pub fn with_usage(usage: Usage, alpha: &str, beta: &str, gamma: &str, delta: &str) -> Self {
        let h = |s: &str| if s == "-" { Word::empty() } else { Word::from(s) };
        SplicingRule {
            usage,
            alpha: h(alpha),
            beta: h(beta),
            gamma: h(gamma),
            delta: h(delta),
        }
    }

    pub fn from_handles(usage: Usage, handles: [Word; 4]) -> Self {
        let [alpha, beta, gamma, delta] = handles;
        SplicingRule {
            usage,
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    pub fn handles(&self) -> [&Word; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    /// Single-letter handle or `None` for ε. Only meaningful on alphabetic rules.
    pub fn letter(&self, i: usize) -> Option<char> {
        self.handles()[i].first()
    }

    pub fn is_alphabetic(&self) -> bool {
        self.handles().iter().all(|h| h.len() <= 1)
    }

    pub fn is_pure(&self) -> bool {
        !self.alpha.is_empty() && !self.beta.is_empty()
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        self.handles().into_iter().try_for_each(|h| alphabet.check_word(h))
    }

    pub(crate) fn require(&self, usage: Usage) -> Result<()> {
        if self.usage == usage {
            Ok(())
        } else {
            let what = match usage {
                Usage::Splice => "expected a splice rule",
                Usage::Concat => "expected a concatenation rule",
            };
            Err(Error::RuleUsage(self.to_string(), what))
        }
    }

    /// Positions `i` with `u[..i]` ending in α and `u[i..]` starting with β.
    pub fn cut_points(&self, u: &Word) -> Vec<usize> {
        let (a, b) = (self.alpha.letters(), self.beta.letters());
        let l = u.letters();
        (a.len()..=l.len().saturating_sub(b.len()))
            .filter(|&i| l[..i].ends_with(a) && l[i..].starts_with(b))
            .collect()
    }

    pub fn accepts_inserted(&self, v: &Word) -> bool {
        v.matches_pattern(&self.gamma, &self.delta)
    }
}

fn handle(w: &Word) -> String {
    if w.is_empty() {
        "-".to_string()
    } else {
        w.to_string()
    }
}

impl fmt::Display for SplicingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kw = match self.usage {
            Usage::Splice => "splice",
            Usage::Concat => "concat",
        };
        write!(
            f,
            "{kw} {}#{}${}#{}",
            handle(&self.alpha),
            handle(&self.beta),
            handle(&self.gamma),
            handle(&self.delta)
        )
    }
}

impl fmt::Debug for SplicingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Every word `xα·v·βy` for `u = xα·βy` and `v ∈ γA*δ`.
pub fn apply_splice(r: &SplicingRule, u: &Word, v: &Word) -> Result<BTreeSet<Word>> {
    r.require(Usage::Splice)?;
    Ok(splice_unchecked(r, u, v))
}

pub(crate) fn splice_unchecked(r: &SplicingRule, u: &Word, v: &Word) -> BTreeSet<Word> {
    if !r.accepts_inserted(v) {
        return BTreeSet::new();
    }
    r.cut_points(u).into_iter().map(|i| u.insert_at(i, v)).collect()
}

/// `uv` when `u ∈ αA*β` and `v ∈ γA*δ`.
pub fn apply_concat(r: &SplicingRule, u: &Word, v: &Word) -> Result<Option<Word>> {
    r.require(Usage::Concat)?;
    Ok(concat_unchecked(r, u, v))
}

pub(crate) fn concat_unchecked(r: &SplicingRule, u: &Word, v: &Word) -> Option<Word> {
    (u.matches_pattern(&r.alpha, &r.beta) && v.matches_pattern(&r.gamma, &r.delta))
        .then(|| u.concat(v))
}

/// Outcomes of one production, whatever the rule's usage.
pub fn apply_rule(r: &SplicingRule, u: &Word, v: &Word) -> BTreeSet<Word> {
    match r.usage {
        Usage::Splice => splice_unchecked(r, u, v),
        Usage::Concat => concat_unchecked(r, u, v).into_iter().collect(),
    }
}

/// Conjugates of `cu` read as `βxα`: returns the rotation offsets.
pub(crate) fn circular_left_rotations(r: &SplicingRule, cu: &CircularWord) -> Vec<usize> {
    let w = cu.representative();
    (0..w.len())
        .filter(|&k| w.rotate(k).matches_pattern(&r.beta, &r.alpha))
        .collect()
}

pub(crate) fn circular_right_rotations(r: &SplicingRule, cv: &CircularWord) -> Vec<usize> {
    let w = cv.representative();
    (0..w.len())
        .filter(|&k| w.rotate(k).matches_pattern(&r.gamma, &r.delta))
        .collect()
}

/// All classes `⟲(βxα·γyδ)` with `cu ∋ βxα` and `cv ∋ γyδ`.
pub fn apply_splice_circular(
    r: &SplicingRule,
    cu: &CircularWord,
    cv: &CircularWord,
) -> Result<BTreeSet<CircularWord>> {
    r.require(Usage::Splice)?;
    Ok(splice_circular_unchecked(r, cu, cv))
}

pub(crate) fn splice_circular_unchecked(
    r: &SplicingRule,
    cu: &CircularWord,
    cv: &CircularWord,
) -> BTreeSet<CircularWord> {
    let lefts = circular_left_rotations(r, cu);
    if lefts.is_empty() {
        return BTreeSet::new();
    }
    let rights = circular_right_rotations(r, cv);
    let mut out = BTreeSet::new();
    for &i in &lefts {
        let u = cu.representative().rotate(i);
        for &j in &rights {
            let v = cv.representative().rotate(j);
            out.insert(CircularWord::new(&u.concat(&v)).expect("nonempty"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{canonical_circular, conjugates};
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    fn words(ws: &[&str]) -> BTreeSet<Word> {
        ws.iter().map(|s| w(s)).collect()
    }

    fn circ(s: &str) -> CircularWord {
        canonical_circular(&w(s)).unwrap()
    }

    #[test]
    fn splice_with_two_letter_handles() {
        let r = SplicingRule::splice("ab", "c", "aa", "b");
        assert_eq!(apply_splice(&r, &w("babcc"), &w("aaccb")).unwrap(), words(&["babaaccbcc"]));
    }

    #[test]
    fn single_letter_needs_an_empty_handle() {
        let strict = SplicingRule::splice("b", "b", "a", "a");
        assert!(apply_splice(&strict, &w("bb"), &w("a")).unwrap().is_empty());
        let loose = SplicingRule::splice("b", "b", "-", "a");
        assert_eq!(apply_splice(&loose, &w("bb"), &w("a")).unwrap(), words(&["bab"]));
    }

    #[test]
    fn splice_ab_into_ab() {
        let r = SplicingRule::splice("a", "b", "a", "b");
        assert_eq!(apply_splice(&r, &w("ab"), &w("ab")).unwrap(), words(&["aabb"]));
    }

    #[test]
    fn splice_rejects_concat_rule() {
        let r = SplicingRule::concat("a", "b", "a", "b");
        assert!(matches!(apply_splice(&r, &w("ab"), &w("ab")), Err(Error::RuleUsage(..))));
    }

    #[test]
    fn concatenations() {
        let r = SplicingRule::concat("-", "c", "a", "b");
        assert_eq!(apply_concat(&r, &w("c"), &w("ab")).unwrap(), Some(w("cab")));
        assert_eq!(apply_concat(&r, &w("ab"), &w("ab")).unwrap(), None);
        let r = SplicingRule::concat("a", "b", "b", "a");
        assert_eq!(apply_concat(&r, &w("ab"), &w("ba")).unwrap(), Some(w("abba")));
    }

    #[test]
    fn circular_splices() {
        let r = SplicingRule::splice("a", "b", "a", "b");
        let expect: BTreeSet<_> = [circ("aabb")].into();
        assert_eq!(apply_splice_circular(&r, &circ("ab"), &circ("ab")).unwrap(), expect);
        assert_eq!(apply_splice_circular(&r, &circ("ba"), &circ("ab")).unwrap(), expect);
        let free = SplicingRule::splice("-", "-", "-", "-");
        let expect: BTreeSet<_> = [circ("aabb"), circ("abab")].into();
        assert_eq!(apply_splice_circular(&free, &circ("ab"), &circ("ab")).unwrap(), expect);
    }

    #[test]
    fn epsilon_operands_are_useless() {
        let free = SplicingRule::splice("-", "-", "-", "-");
        assert_eq!(apply_splice(&free, &Word::empty(), &w("ab")).unwrap(), words(&["ab"]));
        assert_eq!(apply_splice(&free, &w("ab"), &Word::empty()).unwrap(), words(&["ab"]));
    }

    fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(prop_oneof![Just('a'), Just('b')], 0..=max).prop_map(Word::new)
    }

    fn handle_strategy() -> impl Strategy<Value = Word> {
        prop_oneof![Just(Word::empty()), Just(w("a")), Just(w("b"))]
    }

    fn rule_strategy(usage: Usage) -> impl Strategy<Value = SplicingRule> {
        [handle_strategy(), handle_strategy(), handle_strategy(), handle_strategy()]
            .prop_map(move |hs| SplicingRule::from_handles(usage, hs))
    }

    /// Circular semantics through linear splices on every pair of conjugates:
    /// a cut inside `x α · β y` closes into the circle `β y x α`.
    fn circular_by_brute_force(r: &SplicingRule, u: &Word, v: &Word) -> BTreeSet<CircularWord> {
        let mut out = BTreeSet::new();
        for u2 in conjugates(u) {
            for v2 in conjugates(v) {
                for w in apply_splice(r, &u2, &v2).unwrap() {
                    out.insert(canonical_circular(&w).unwrap());
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn splice_is_length_additive(r in rule_strategy(Usage::Splice), u in word_strategy(6), v in word_strategy(6)) {
            for out in apply_splice(&r, &u, &v).unwrap() {
                prop_assert_eq!(out.len(), u.len() + v.len());
                if out.len() == 1 {
                    prop_assert!(out == u || out == v);
                }
            }
        }

        #[test]
        fn concat_result_is_uv(r in rule_strategy(Usage::Concat), u in word_strategy(5), v in word_strategy(5)) {
            if let Some(out) = apply_concat(&r, &u, &v).unwrap() {
                prop_assert_eq!(out, u.concat(&v));
            }
        }

        #[test]
        fn circular_matches_brute_force(r in rule_strategy(Usage::Splice), u in word_strategy(6), v in word_strategy(6)) {
            prop_assume!(!u.is_empty() && !v.is_empty());
            let got = apply_splice_circular(&r, &circ(&u.to_string()), &circ(&v.to_string())).unwrap();
            prop_assert_eq!(got, circular_by_brute_force(&r, &u, &v));
        }
    }
}
