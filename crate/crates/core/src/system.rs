//! Splicing systems: alphabet, initial language, rules and mode.

use std::collections::BTreeSet;

use crate::automata::{Dfa, Regex};
use crate::error::{Error, Result};
use crate::grammar::{bar_hillel, enumerate_words, Cfg, Terminal};
use crate::rule::SplicingRule;
use crate::word::{canonical_circular, conjugates, Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Flat,
    Circular,
}

/// The initial language `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialSet {
    Finite(BTreeSet<Word>),
    Regular(Dfa),
    ContextFree(Cfg),
}

impl InitialSet {
    pub fn finite<'a>(words: impl IntoIterator<Item = &'a str>) -> InitialSet {
        InitialSet::Finite(words.into_iter().map(Word::from).collect())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InitialSet::Finite(_) => "finite",
            InitialSet::Regular(_) => "regular",
            InitialSet::ContextFree(_) => "contextfree",
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        match self {
            InitialSet::Finite(ws) => ws.contains(w),
            InitialSet::Regular(d) => d.accepts(w),
            InitialSet::ContextFree(g) => g.accepts(w),
        }
    }

    /// Words of length at most `n`, length-lexicographic.
    pub fn enumerate(&self, n: usize) -> Vec<Word> {
        match self {
            InitialSet::Finite(ws) => ws.iter().filter(|w| w.len() <= n).cloned().collect(),
            InitialSet::Regular(d) => d.enumerate(n),
            InitialSet::ContextFree(g) => enumerate_words(g, n),
        }
    }

    /// The same language as a DFA, when it is regular by construction.
    pub fn as_dfa(&self, alphabet: &Alphabet) -> Option<Dfa> {
        match self {
            InitialSet::Finite(ws) => Dfa::from_words(alphabet, ws).ok(),
            InitialSet::Regular(d) => Some(d.clone()),
            InitialSet::ContextFree(_) => None,
        }
    }

    fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            InitialSet::Finite(ws) => ws.iter().try_for_each(|w| alphabet.check_word(w)),
            InitialSet::Regular(d) if d.alphabet() != alphabet => Err(Error::AlphabetMismatch),
            InitialSet::Regular(_) => Ok(()),
            InitialSet::ContextFree(g) => g.terminals().into_iter().try_for_each(|t| match t {
                Terminal::Letter(c) if alphabet.contains(c) => Ok(()),
                Terminal::Letter(c) => Err(Error::UnknownLetter(c)),
                other => Err(Error::NotInitial(format!("terminal {other} in initial grammar"))),
            }),
        }
    }

    /// Removes ε, reporting whether it was present.
    fn strip_epsilon(self, alphabet: &Alphabet) -> Result<(InitialSet, bool)> {
        Ok(match self {
            InitialSet::Finite(mut ws) => {
                let had = ws.remove(&Word::empty());
                (InitialSet::Finite(ws), had)
            }
            InitialSet::Regular(d) => {
                let had = d.accepts(&Word::empty());
                let d = if had { d.difference(&Dfa::epsilon(alphabet))? } else { d };
                (InitialSet::Regular(d), had)
            }
            InitialSet::ContextFree(g) => {
                let had = g.accepts(&Word::empty());
                let g = if had {
                    let plus = Regex::parse(&format!("({})+", alphabet_union(alphabet)))?.to_dfa(alphabet)?;
                    bar_hillel(&g, &plus)?
                } else {
                    g.trim()
                };
                (InitialSet::ContextFree(g), had)
            }
        })
    }
}

fn alphabet_union(alphabet: &Alphabet) -> String {
    alphabet
        .letters()
        .iter()
        .map(char::to_string)
        .collect::<Vec<_>>()
        .join("|")
}

/// A splicing system `(A, I, R)`. The initial set never holds ε; whether the
/// input had it is kept in `epsilon`, since ε takes part in no production.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplicingSystem {
    pub alphabet: Alphabet,
    pub initial: InitialSet,
    pub rules: BTreeSet<SplicingRule>,
    pub mode: Mode,
    pub epsilon: bool,
}

impl SplicingSystem {
    /// Validates letters and strips ε from the initial set. In circular mode
    /// finite initial words are stored as canonical representatives.
    pub fn new(
        alphabet: Alphabet,
        initial: InitialSet,
        rules: impl IntoIterator<Item = SplicingRule>,
        mode: Mode,
    ) -> Result<SplicingSystem> {
        let rules: BTreeSet<SplicingRule> = rules.into_iter().collect();
        for r in &rules {
            r.check_alphabet(&alphabet)?;
            if mode == Mode::Circular {
                r.require(crate::rule::Usage::Splice)?;
            }
        }
        initial.check_alphabet(&alphabet)?;
        let (mut initial, epsilon) = initial.strip_epsilon(&alphabet)?;
        if mode == Mode::Circular {
            if let InitialSet::Finite(ws) = &initial {
                let reps = ws
                    .iter()
                    .map(|w| canonical_circular(w).map(|c| c.representative().clone()))
                    .collect::<Result<_>>()?;
                initial = InitialSet::Finite(reps);
            }
        }
        Ok(SplicingSystem {
            alphabet,
            initial,
            rules,
            mode,
            epsilon,
        })
    }

    pub fn flat(alphabet: &str, initial: InitialSet, rules: impl IntoIterator<Item = SplicingRule>) -> Result<Self> {
        SplicingSystem::new(Alphabet::parse(alphabet)?, initial, rules, Mode::Flat)
    }

    pub fn circular(
        alphabet: &str,
        initial: InitialSet,
        rules: impl IntoIterator<Item = SplicingRule>,
    ) -> Result<Self> {
        SplicingSystem::new(Alphabet::parse(alphabet)?, initial, rules, Mode::Circular)
    }

    /// Initial membership, up to conjugacy in circular mode.
    pub fn is_initial(&self, w: &Word) -> bool {
        match self.mode {
            Mode::Flat => self.initial.contains(w),
            Mode::Circular => conjugates(w).iter().any(|c| self.initial.contains(c)),
        }
    }

    pub fn is_alphabetic(&self) -> bool {
        self.rules.iter().all(SplicingRule::is_alphabetic)
    }
}
