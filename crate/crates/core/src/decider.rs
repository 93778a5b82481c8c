//! Deciding whether a regular splicing system generates a given regular
//! language, and whether a regular language is generated by some finite
//! alphabetic system.
//!
//! With `P` the set of words obtained by splicing two words of `K`,
//! `L(S) = K` holds exactly when `I ⊆ K`, `P ⊆ K` and `K ∖ P ⊆ I`.

use std::collections::BTreeSet;
use std::fmt;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::rule::{SplicingRule, Usage};
use crate::system::{InitialSet, Mode, SplicingSystem};
use crate::word::{Alphabet, Word};

/// `K_r`: the words obtained from two words of `K` by one production of `r`.
pub fn rule_image(k: &Dfa, r: &SplicingRule) -> Result<Dfa> {
    let a = k.alphabet();
    let in_k = |prefix: &Word, suffix: &Word| -> Result<Dfa> { k.intersect(&Dfa::pattern(a, prefix, suffix)?) };
    let inserted = in_k(&r.gamma, &r.delta)?;
    if r.usage == Usage::Concat {
        return in_k(&r.alpha, &r.beta)?.concat(&inserted);
    }
    let ends_alpha = Dfa::pattern(a, &Word::empty(), &r.alpha)?;
    let starts_beta = Dfa::pattern(a, &r.beta, &Word::empty())?;
    let mut image = Dfa::empty(a);
    let live = k.live_states();
    for q in (0..k.num_states()).filter(|&q| live[q]) {
        let (g, d) = k.state_languages(q)?;
        let left = g.intersect(&ends_alpha)?;
        let right = d.intersect(&starts_beta)?;
        if left.is_empty().holds || right.is_empty().holds {
            continue;
        }
        image = image.union(&Dfa::concat_all(a, &[&left, &inserted, &right]))?;
    }
    Ok(image)
}

/// `P = ⋃_r K_r`.
pub fn splice_image<'a>(k: &Dfa, rules: impl IntoIterator<Item = &'a SplicingRule>) -> Result<Dfa> {
    let mut p = Dfa::empty(k.alphabet());
    for r in rules {
        p = p.union(&rule_image(k, r)?)?;
    }
    Ok(p)
}

/// Which of the three inclusions fails; circular systems also need `K`
/// closed under conjugacy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inclusion {
    NotConjugacyClosed,
    /// `I ⊆ K`
    Initial,
    /// `P ⊆ K`
    Image,
    /// `K ∖ P ⊆ I`
    Residue,
}

impl Inclusion {
    /// 1, 2, 3 for the three inclusions, 0 for the conjugacy check.
    pub fn number(self) -> u8 {
        match self {
            Inclusion::NotConjugacyClosed => 0,
            Inclusion::Initial => 1,
            Inclusion::Image => 2,
            Inclusion::Residue => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub equal: bool,
    pub failing: Option<Inclusion>,
    /// A shortest word certifying the failure.
    pub witness: Option<Word>,
}

impl Verdict {
    fn equal() -> Verdict {
        Verdict {
            equal: true,
            failing: None,
            witness: None,
        }
    }

    fn fails(which: Inclusion, witness: Word) -> Verdict {
        Verdict {
            equal: false,
            failing: Some(which),
            witness: Some(witness),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.failing, &self.witness) {
            (Some(i), Some(w)) => write!(f, "NOT-EQUAL {} {w}", i.number()),
            _ => f.write_str("EQUAL"),
        }
    }
}

fn failing_word(a: &Dfa, b: &Dfa) -> Result<Option<Word>> {
    Ok(a.subset(b)?.witness)
}

/// Decides `L(s) = L(k)` for a system with a finite or regular initial set.
pub fn decide_equal(s: &SplicingSystem, k: &Dfa) -> Result<Verdict> {
    if k.alphabet() != &s.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let i = s
        .initial
        .as_dfa(&s.alphabet)
        .ok_or(Error::Unsupported("deciding equality for a context-free initial set"))?;
    let eps = Dfa::epsilon(&s.alphabet);
    let k_has_eps = k.accepts(&Word::empty());
    if s.epsilon && !k_has_eps {
        return Ok(Verdict::fails(Inclusion::Initial, Word::empty()));
    }
    if k_has_eps && !s.epsilon {
        return Ok(Verdict::fails(Inclusion::Residue, Word::empty()));
    }
    let k = k.difference(&eps)?;
    let (i, p) = match s.mode {
        Mode::Flat => (i, splice_image(&k, &s.rules)?),
        Mode::Circular => {
            let closed = k.conjugacy_closure();
            if let Some(w) = failing_word(&closed, &k)? {
                return Ok(Verdict::fails(Inclusion::NotConjugacyClosed, w));
            }
            let mut p = Dfa::empty(&s.alphabet);
            for r in &s.rules {
                p = p.union(&rule_image(&k, r)?.conjugacy_closure())?;
            }
            (i.conjugacy_closure(), p)
        }
    };
    if let Some(w) = failing_word(&i, &k)? {
        return Ok(Verdict::fails(Inclusion::Initial, w));
    }
    if let Some(w) = failing_word(&p, &k)? {
        return Ok(Verdict::fails(Inclusion::Image, w));
    }
    if let Some(w) = failing_word(&k.difference(&p)?, &i)? {
        return Ok(Verdict::fails(Inclusion::Residue, w));
    }
    Ok(Verdict::equal())
}

/// Every alphabetic splice rule over `alphabet`.
pub fn alphabetic_rules(alphabet: &Alphabet) -> Vec<SplicingRule> {
    let handles: Vec<Word> = std::iter::once(Word::empty())
        .chain(alphabet.letters().iter().map(|&c| Word::new(vec![c])))
        .collect();
    let mut out = Vec::new();
    for a in &handles {
        for b in &handles {
            for g in &handles {
                for d in &handles {
                    out.push(SplicingRule::from_handles(
                        Usage::Splice,
                        [a.clone(), b.clone(), g.clone(), d.clone()],
                    ));
                }
            }
        }
    }
    out
}

/// A finite alphabetic flat system generating `L(k)`, if one exists.
///
/// Uses the largest admissible rule set `R* = {r : K_r ⊆ K}`: the image
/// `P` only grows with the rule set, so if any rule set leaves a finite
/// residue `K ∖ P`, so does `R*`.
pub fn alphabetic_generability(k: &Dfa) -> Result<Option<SplicingSystem>> {
    let alphabet = k.alphabet().clone();
    let epsilon = k.accepts(&Word::empty());
    let k = k.difference(&Dfa::epsilon(&alphabet))?;
    let mut admissible = BTreeSet::new();
    let mut p = Dfa::empty(&alphabet);
    for r in alphabetic_rules(&alphabet) {
        let image = rule_image(&k, &r)?;
        if image.subset(&k)?.holds {
            p = p.union(&image)?;
            admissible.insert(r);
        }
    }
    let Some(residue) = k.difference(&p)?.finite_language() else {
        return Ok(None);
    };
    let mut s = SplicingSystem::new(alphabet, InitialSet::Finite(residue), admissible, Mode::Flat)?;
    s.epsilon = epsilon;
    Ok(Some(s))
}
