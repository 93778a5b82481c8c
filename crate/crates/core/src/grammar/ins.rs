use std::collections::{BTreeMap, BTreeSet};

use super::{bar_hillel, cfg_from_dfa, Cfg, Sentence, Symbol, Terminal};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::system::InitialSet;
use crate::word::{Alphabet, Word};

/// `a1 ⟨a1,a2⟩ a2 ⟨a2,a3⟩ … an`: the word with a marker at every seam.
pub fn word_ins(w: &Word) -> Result<Sentence> {
    let ls = w.letters();
    if ls.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = vec![Terminal::Letter(ls[0])];
    for pair in ls.windows(2) {
        out.push(Terminal::Marker(pair[0], pair[1]));
        out.push(Terminal::Letter(pair[1]));
    }
    Ok(out)
}

type Piece = Option<(char, char, Symbol)>;

/// All ways to read a right-hand side as a concatenation of nonempty pieces
/// with known first and last letters, markers placed between pieces.
fn readings(
    rhs: &[Symbol],
    null: &BTreeSet<String>,
    fl: &BTreeMap<String, BTreeSet<(char, char)>>,
    name: &dyn Fn(&str, char, char) -> String,
) -> Vec<(char, char, Vec<Symbol>)> {
    let options: Vec<Vec<Piece>> = rhs
        .iter()
        .map(|s| match s {
            Symbol::Term(Terminal::Letter(c)) => vec![Some((*c, *c, s.clone()))],
            Symbol::Var(y) => {
                let mut opts: Vec<Piece> = Vec::new();
                if null.contains(y) {
                    opts.push(None);
                }
                for &(f, l) in fl.get(y).into_iter().flatten() {
                    opts.push(Some((f, l, Symbol::Var(name(y, f, l)))));
                }
                opts
            }
            Symbol::Term(_) => unreachable!("checked by caller"),
        })
        .collect();
    let mut acc: Vec<Option<(char, char, Vec<Symbol>)>> = vec![None];
    for opts in &options {
        let mut next = Vec::new();
        for a in &acc {
            for o in opts {
                next.push(match (a, o) {
                    (a, None) => a.clone(),
                    (None, Some((f, l, s))) => Some((*f, *l, vec![s.clone()])),
                    (Some((f, l, body)), Some((f2, l2, s))) => {
                        let mut body = body.clone();
                        body.push(Symbol::Term(Terminal::Marker(*l, *f2)));
                        body.push(s.clone());
                        Some((*f, *l2, body))
                    }
                });
            }
        }
        acc = next;
    }
    acc.into_iter().flatten().collect()
}

/// Grammar for `Ins(L(g))`: every word with the seam markers inserted.
/// Fails if `ε ∈ L(g)` or `g` has non-letter terminals.
pub fn ins_image(g: &Cfg) -> Result<Cfg> {
    if g.terminals().iter().any(|t| !matches!(t, Terminal::Letter(_))) {
        return Err(Error::Unsupported("insertion image of a grammar with non-letter terminals"));
    }
    let g = g.trim();
    if g.is_empty() {
        return Ok(Cfg::new("Ins"));
    }
    if g.nullable().contains(g.start()) {
        return Err(Error::ContainsEpsilon);
    }
    let b = g.binarize();
    let null = b.nullable();
    let mut fl: BTreeMap<String, BTreeSet<(char, char)>> = BTreeMap::new();
    let placeholder = |_: &str, _: char, _: char| String::new();
    loop {
        let mut changed = false;
        for (v, rhs) in b.rules() {
            for (f, l, _) in readings(rhs, &null, &fl, &placeholder) {
                changed |= fl.entry(v.to_string()).or_default().insert((f, l));
            }
        }
        if !changed {
            break;
        }
    }
    let mut taken = b.names();
    let mut names: BTreeMap<(String, char, char), String> = BTreeMap::new();
    for (v, pairs) in &fl {
        for &(f, l) in pairs {
            names.insert((v.clone(), f, l), Cfg::fresh(&format!("{v}_{f}{l}"), &mut taken));
        }
    }
    let start = Cfg::fresh("Ins", &mut taken);
    let name = |v: &str, f: char, l: char| names[&(v.to_string(), f, l)].clone();
    let mut out = Cfg::new(&start);
    for (v, rhs) in b.rules() {
        for (f, l, body) in readings(rhs, &null, &fl, &name) {
            out.add_rule(&name(v, f, l), body);
        }
    }
    for &(f, l) in fl.get(b.start()).into_iter().flatten() {
        out.add_rule(&start, vec![Symbol::Var(name(b.start(), f, l))]);
    }
    Ok(out.trim())
}

/// `I` split as `⋃ (I ∩ aA*b) ∪ (I ∩ A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    /// Nonempty parts `I ∩ aA*b`, keyed by `(a, b)`.
    pub parts: BTreeMap<(char, char), Cfg>,
    /// The one-letter words of `I`.
    pub singletons: BTreeSet<char>,
}

pub fn split_first_last(initial: &InitialSet, alphabet: &Alphabet) -> Result<Split> {
    let mut parts = BTreeMap::new();
    let letters = alphabet.letters();
    if let InitialSet::Finite(ws) = initial {
        let mut grouped: BTreeMap<(char, char), Vec<&Word>> = BTreeMap::new();
        for w in ws.iter().filter(|w| w.len() >= 2) {
            grouped.entry((w.first().unwrap(), w.last().unwrap())).or_default().push(w);
        }
        for (k, group) in grouped {
            parts.insert(k, Cfg::from_words("I", group));
        }
    } else {
        for &a in letters {
            for &b in letters {
                let pat = Dfa::pattern(alphabet, &Word::new(vec![a]), &Word::new(vec![b]))?;
                let part = match initial {
                    InitialSet::Regular(d) => cfg_from_dfa(&d.intersect(&pat)?),
                    InitialSet::ContextFree(g) => bar_hillel(g, &pat)?,
                    InitialSet::Finite(_) => unreachable!(),
                };
                if !part.is_empty() {
                    parts.insert((a, b), part);
                }
            }
        }
    }
    let singletons = letters
        .iter()
        .copied()
        .filter(|&c| initial.contains(&Word::new(vec![c])))
        .collect();
    Ok(Split { parts, singletons })
}
