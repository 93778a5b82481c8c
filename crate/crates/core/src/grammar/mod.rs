//! Context-free grammars, generalized grammars and the closure
//! constructions used by the synthesis pipeline.

mod enumerate;
mod ins;
mod kral;
mod ops;
mod text;

pub use enumerate::{enumerate_cfg, enumerate_words};
pub use ins::{ins_image, split_first_last, word_ins, Split};
pub use kral::{flatten_by_grafting, kral_eliminate, kral_single, GeneralizedCfg};
pub use ops::{bar_hillel, cfg_from_dfa, substitute};
pub use text::{parse_grammar, serialize_grammar};
pub(crate) use text::parse_lines;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::word::Word;

/// Terminal symbols. Besides plain letters there are the insertion markers
/// `⟨a,b⟩` and named pseudo-terminals, which stand either for substitution
/// targets or for variables of an enclosing generalized grammar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Terminal {
    Letter(char),
    Marker(char, char),
    Named(String),
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terminal::Letter(c) => write!(f, "{c}"),
            Terminal::Marker(a, b) => write!(f, "<{a},{b}>"),
            Terminal::Named(n) => write!(f, "@{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Var(String),
    Term(Terminal),
}

impl Symbol {
    pub fn var(name: &str) -> Symbol {
        Symbol::Var(name.to_string())
    }

    pub fn letter(c: char) -> Symbol {
        Symbol::Term(Terminal::Letter(c))
    }

    pub fn named(name: &str) -> Symbol {
        Symbol::Term(Terminal::Named(name.to_string()))
    }
}

/// A sequence of terminals; what grammars generate.
pub type Sentence = Vec<Terminal>;

pub fn sentence_of(w: &Word) -> Sentence {
    w.letters().iter().map(|&c| Terminal::Letter(c)).collect()
}

/// The letters of a sentence, or `None` if it holds any other terminal.
pub fn word_of(s: &[Terminal]) -> Option<Word> {
    s.iter()
        .map(|t| match t {
            Terminal::Letter(c) => Some(*c),
            _ => None,
        })
        .collect::<Option<Vec<char>>>()
        .map(Word::new)
}

/// An ordinary context-free grammar. Every variable that occurs anywhere has
/// an entry in the rule map, possibly with no alternatives.
#[derive(Clone, PartialEq, Eq)]
pub struct Cfg {
    start: String,
    rules: BTreeMap<String, BTreeSet<Vec<Symbol>>>,
}

impl Cfg {
    pub fn new(start: &str) -> Cfg {
        let mut rules = BTreeMap::new();
        rules.insert(start.to_string(), BTreeSet::new());
        Cfg {
            start: start.to_string(),
            rules,
        }
    }

    /// Grammar generating exactly the given words.
    pub fn from_words<'a>(start: &str, words: impl IntoIterator<Item = &'a Word>) -> Cfg {
        let mut g = Cfg::new(start);
        for w in words {
            g.add_rule(start, w.letters().iter().map(|&c| Symbol::letter(c)).collect());
        }
        g
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn set_start(&mut self, start: &str) {
        self.start = start.to_string();
        self.declare(start);
    }

    pub fn declare(&mut self, var: &str) {
        self.rules.entry(var.to_string()).or_default();
    }

    pub fn add_rule(&mut self, lhs: &str, rhs: Vec<Symbol>) {
        for s in &rhs {
            if let Symbol::Var(v) = s {
                self.declare(v);
            }
        }
        self.rules.entry(lhs.to_string()).or_default().insert(rhs);
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.rules.keys().map(String::as_str)
    }

    pub fn has_variable(&self, v: &str) -> bool {
        self.rules.contains_key(v)
    }

    pub fn alternatives(&self, v: &str) -> impl Iterator<Item = &Vec<Symbol>> {
        self.rules.get(v).into_iter().flatten()
    }

    pub fn rules(&self) -> impl Iterator<Item = (&str, &Vec<Symbol>)> {
        self.rules
            .iter()
            .flat_map(|(v, alts)| alts.iter().map(move |rhs| (v.as_str(), rhs)))
    }

    pub fn num_rules(&self) -> usize {
        self.rules.values().map(BTreeSet::len).sum()
    }

    pub fn terminals(&self) -> BTreeSet<Terminal> {
        self.rules()
            .flat_map(|(_, rhs)| rhs.iter())
            .filter_map(|s| match s {
                Symbol::Term(t) => Some(t.clone()),
                Symbol::Var(_) => None,
            })
            .collect()
    }

    /// Variables that derive at least one terminal sentence.
    pub fn generating(&self) -> BTreeSet<String> {
        let mut gen = BTreeSet::new();
        loop {
            let before = gen.len();
            for (v, rhs) in self.rules() {
                if !gen.contains(v)
                    && rhs.iter().all(|s| match s {
                        Symbol::Var(x) => gen.contains(x),
                        Symbol::Term(_) => true,
                    })
                {
                    gen.insert(v.to_string());
                }
            }
            if gen.len() == before {
                return gen;
            }
        }
    }

    /// Variables that derive ε.
    pub fn nullable(&self) -> BTreeSet<String> {
        let mut null = BTreeSet::new();
        loop {
            let before = null.len();
            for (v, rhs) in self.rules() {
                if !null.contains(v)
                    && rhs
                        .iter()
                        .all(|s| matches!(s, Symbol::Var(x) if null.contains(x)))
                {
                    null.insert(v.to_string());
                }
            }
            if null.len() == before {
                return null;
            }
        }
    }

    pub fn reachable(&self) -> BTreeSet<String> {
        let mut seen = BTreeSet::from([self.start.clone()]);
        let mut stack = vec![self.start.clone()];
        while let Some(v) = stack.pop() {
            for rhs in self.alternatives(&v) {
                for s in rhs {
                    if let Symbol::Var(x) = s {
                        if seen.insert(x.clone()) {
                            stack.push(x.clone());
                        }
                    }
                }
            }
        }
        seen
    }

    /// Removes non-generating, then unreachable variables.
    pub fn trim(&self) -> Cfg {
        let gen = self.generating();
        let mut g = Cfg::new(&self.start);
        for (v, rhs) in self.rules() {
            let useful = gen.contains(v)
                && rhs
                    .iter()
                    .all(|s| !matches!(s, Symbol::Var(x) if !gen.contains(x)));
            if useful {
                g.add_rule(v, rhs.clone());
            }
        }
        let reach = g.reachable();
        g.rules.retain(|v, _| reach.contains(v));
        g
    }

    pub fn is_empty(&self) -> bool {
        !self.generating().contains(&self.start)
    }

    /// Name derived from `base` that is not in `taken`; records it as taken.
    pub(crate) fn fresh(base: &str, taken: &mut BTreeSet<String>) -> String {
        if taken.insert(base.to_string()) {
            return base.to_string();
        }
        let mut k = 1;
        loop {
            let cand = format!("{base}_{k}");
            if taken.insert(cand.clone()) {
                return cand;
            }
            k += 1;
        }
    }

    pub(crate) fn names(&self) -> BTreeSet<String> {
        self.rules.keys().cloned().collect()
    }

    /// Copies `guest` into `self` under fresh names; returns the guest's new start.
    pub fn graft(&mut self, guest: &Cfg) -> String {
        let mut taken = self.names();
        let rename: BTreeMap<&str, String> = guest
            .variables()
            .map(|v| (v, Cfg::fresh(v, &mut taken)))
            .collect();
        for v in rename.values() {
            self.declare(v);
        }
        for (v, rhs) in guest.rules() {
            let rhs = rhs
                .iter()
                .map(|s| match s {
                    Symbol::Var(x) => Symbol::Var(rename[x.as_str()].clone()),
                    t => t.clone(),
                })
                .collect();
            self.add_rule(&rename[v], rhs);
        }
        rename[guest.start()].clone()
    }

    /// Applies `f` to every symbol of every right-hand side.
    pub fn map_symbols(&self, mut f: impl FnMut(&Symbol) -> Symbol) -> Cfg {
        let mut g = Cfg::new(&self.start);
        for v in self.variables() {
            g.declare(v);
        }
        for (v, rhs) in self.rules() {
            g.add_rule(v, rhs.iter().map(&mut f).collect());
        }
        g
    }

    /// Splits right-hand sides longer than two symbols into chains.
    pub fn binarize(&self) -> Cfg {
        let mut taken = self.names();
        let mut g = Cfg::new(&self.start);
        for v in self.variables() {
            g.declare(v);
        }
        for (v, rhs) in self.rules() {
            if rhs.len() <= 2 {
                g.add_rule(v, rhs.clone());
                continue;
            }
            let mut lhs = v.to_string();
            for (i, s) in rhs.iter().enumerate().take(rhs.len() - 2) {
                let next = Cfg::fresh(&format!("{v}_{}", i + 1), &mut taken);
                g.add_rule(&lhs, vec![s.clone(), Symbol::Var(next.clone())]);
                lhs = next;
            }
            g.add_rule(&lhs, rhs[rhs.len() - 2..].to_vec());
        }
        g
    }

    /// Replaces each non-start variable whose only rule is `X → Y` by `Y`.
    pub fn collapse_unit_chains(&self) -> Cfg {
        let mut g = self.clone();
        loop {
            let found = g.rules.iter().find_map(|(v, alts)| {
                if *v == g.start || alts.len() != 1 {
                    return None;
                }
                match alts.iter().next().unwrap().as_slice() {
                    [Symbol::Var(y)] if y != v => Some((v.clone(), y.clone())),
                    _ => None,
                }
            });
            let Some((x, y)) = found else {
                return g;
            };
            g.rules.remove(&x);
            g = g.map_symbols(|s| match s {
                Symbol::Var(v) if *v == x => Symbol::Var(y.clone()),
                s => s.clone(),
            });
        }
    }

    /// Renames every variable through `f`; `f` must be injective.
    pub fn rename_variables(&self, f: impl Fn(&str) -> String) -> Cfg {
        let mut g = Cfg::new(&f(&self.start));
        for v in self.variables() {
            g.declare(&f(v));
        }
        for (v, rhs) in self.rules() {
            let rhs = rhs
                .iter()
                .map(|s| match s {
                    Symbol::Var(x) => Symbol::Var(f(x)),
                    t => t.clone(),
                })
                .collect();
            g.add_rule(&f(v), rhs);
        }
        g
    }
}

pub fn cfg_trim(g: &Cfg) -> Cfg {
    g.trim()
}

pub fn cfg_empty(g: &Cfg) -> bool {
    g.is_empty()
}

impl fmt::Debug for Cfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_grammar(self))
    }
}
