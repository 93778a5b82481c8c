//! Grammars for alphabetic splicing languages.
//!
//! Concatenations can always be done before proper insertions, so a flat
//! alphabetic system is handled in two stages: a grammar for the closure of
//! `I` under the concatenation rules, then a grammar for the closure of that
//! language under the pure rules. Circular systems are first turned into
//! flat ones generating their full linearization.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::grammar::{
    flatten_by_grafting, ins_image, split_first_last, substitute, Cfg, GeneralizedCfg, Split, Symbol, Terminal,
};
use crate::rule::{SplicingRule, Usage};
use crate::system::{InitialSet, Mode, SplicingSystem};
use crate::transform::{circular_to_flat, complete, to_heterogeneous};
use crate::word::Word;

fn w_name(a: char, b: char) -> String {
    format!("W_{a}_{b}")
}

fn s_name(a: char) -> String {
    format!("S_{a}")
}

fn m_name(a: char, b: char) -> String {
    format!("M_{a}_{b}")
}

fn letter(c: char) -> Word {
    Word::new(vec![c])
}

/// Does every word of `aA*b` (length at least 2) match `prefix·A*·suffix`?
/// For alphabetic handles the class is either entirely inside or disjoint.
fn pair_fits(a: char, b: char, prefix: &Word, suffix: &Word) -> bool {
    (prefix.is_empty() || *prefix == letter(a)) && (suffix.is_empty() || *suffix == letter(b))
}

fn single_fits(a: char, prefix: &Word, suffix: &Word) -> bool {
    letter(a).matches_pattern(prefix, suffix)
}

fn require_alphabetic(s: &SplicingSystem) -> Result<()> {
    match s.rules.iter().find(|r| !r.is_alphabetic()) {
        Some(r) => Err(Error::NotAlphabetic(r.to_string())),
        None => Ok(()),
    }
}

fn one(rhs: Vec<Symbol>) -> Cfg {
    let mut g = Cfg::new("R");
    g.add_rule("R", rhs);
    g
}

/// The generalized grammar for a pure system: `W_a_b` derives the words of
/// the language in `aA*b`, `S_a` the letter `a`, and `M_a_b` the words that
/// can be inserted between a letter `a` and a letter `b`. Right-hand sides of
/// `W_a_b` are `Ins(I ∩ aA*b)` with each marker read as the variable `M_a_b`.
pub fn pure_generalized_grammar(s: &SplicingSystem) -> Result<GeneralizedCfg> {
    if s.mode != Mode::Flat {
        return Err(Error::Unsupported("pure grammar of a circular system"));
    }
    require_alphabetic(s)?;
    if let Some(r) = s.rules.iter().find(|r| r.usage != Usage::Splice || !r.is_pure()) {
        return Err(Error::NotPure(r.to_string()));
    }
    let completed = complete(&s.rules, &s.alphabet)?;
    if let Some(r) = completed.iter().find(|r| !s.rules.contains(r)) {
        return Err(Error::Incomplete(r.to_string()));
    }
    let Split { parts, singletons } = split_first_last(&s.initial, &s.alphabet)?;
    let letters = s.alphabet.letters();
    let mut g = GeneralizedCfg::new("S");

    let mut start = Cfg::new("R");
    for &(a, b) in parts.keys() {
        start.add_rule("R", vec![Symbol::named(&w_name(a, b))]);
    }
    for &a in &singletons {
        start.add_rule("R", vec![Symbol::named(&s_name(a))]);
    }
    g.define("S", start);

    for (&(a, b), part) in &parts {
        let image = ins_image(part)?.map_symbols(|sym| match sym {
            Symbol::Term(Terminal::Marker(x, y)) => Symbol::named(&m_name(*x, *y)),
            sym => sym.clone(),
        });
        g.define(&w_name(a, b), image);
    }
    for &a in &singletons {
        g.define(&s_name(a), one(vec![Symbol::letter(a)]));
    }
    for &a in letters {
        for &b in letters {
            let mut m = one(Vec::new());
            for r in s.rules.iter().filter(|r| r.alpha == letter(a) && r.beta == letter(b)) {
                for &(c, d) in parts.keys() {
                    if pair_fits(c, d, &r.gamma, &r.delta) {
                        m.add_rule(
                            "R",
                            vec![
                                Symbol::named(&m_name(a, c)),
                                Symbol::named(&w_name(c, d)),
                                Symbol::named(&m_name(d, b)),
                            ],
                        );
                    }
                }
                for &c in &singletons {
                    if single_fits(c, &r.gamma, &r.delta) {
                        m.add_rule(
                            "R",
                            vec![
                                Symbol::named(&m_name(a, c)),
                                Symbol::named(&s_name(c)),
                                Symbol::named(&m_name(c, b)),
                            ],
                        );
                    }
                }
            }
            g.define(&m_name(a, b), m);
        }
    }
    Ok(g)
}

/// Grammar for a complete pure alphabetic flat system.
pub fn pure_grammar(s: &SplicingSystem) -> Result<Cfg> {
    let g = pure_generalized_grammar(s)?;
    Ok(flatten_by_grafting(&g)?.trim())
}

/// The grammar over the pseudo-terminals `@WI_a_b` and `@SI_a` for an
/// alphabetic concatenation system, before substitution.
pub fn concat_skeleton(s: &SplicingSystem, split: &Split) -> Result<Cfg> {
    require_alphabetic(s)?;
    if let Some(r) = s.rules.iter().find(|r| r.usage != Usage::Concat) {
        return Err(Error::RuleUsage(r.to_string(), "expected a concatenation rule"));
    }
    let letters = s.alphabet.letters();
    let mut g = Cfg::new("S");
    for &a in letters {
        for &b in letters {
            g.add_rule("S", vec![Symbol::var(&w_name(a, b))]);
        }
        g.add_rule("S", vec![Symbol::var(&s_name(a))]);
    }
    for &(a, b) in split.parts.keys() {
        g.add_rule(&w_name(a, b), vec![Symbol::named(&format!("WI_{a}_{b}"))]);
    }
    for &a in &split.singletons {
        g.add_rule(&s_name(a), vec![Symbol::named(&format!("SI_{a}"))]);
    }
    for r in &s.rules {
        let (al, be, ga, de) = (&r.alpha, &r.beta, &r.gamma, &r.delta);
        for &a in letters {
            for &b in letters {
                let lhs = w_name(a, b);
                if single_fits(a, al, be) && single_fits(b, ga, de) {
                    g.add_rule(&lhs, vec![Symbol::var(&s_name(a)), Symbol::var(&s_name(b))]);
                }
                for &c in letters {
                    if single_fits(a, al, be) && pair_fits(c, b, ga, de) {
                        g.add_rule(&lhs, vec![Symbol::var(&s_name(a)), Symbol::var(&w_name(c, b))]);
                    }
                    if pair_fits(a, c, al, be) && single_fits(b, ga, de) {
                        g.add_rule(&lhs, vec![Symbol::var(&w_name(a, c)), Symbol::var(&s_name(b))]);
                    }
                    for &d in letters {
                        if pair_fits(a, c, al, be) && pair_fits(d, b, ga, de) {
                            g.add_rule(&lhs, vec![Symbol::var(&w_name(a, c)), Symbol::var(&w_name(d, b))]);
                        }
                    }
                }
            }
        }
    }
    Ok(g.trim())
}

/// Grammar for an alphabetic concatenation system: the skeleton with each
/// pseudo-terminal replaced by its part of `I`.
pub fn concat_grammar(s: &SplicingSystem) -> Result<Cfg> {
    let split = split_first_last(&s.initial, &s.alphabet)?;
    let skeleton = concat_skeleton(s, &split)?;
    let mut sigma = BTreeMap::new();
    for (&(a, b), part) in &split.parts {
        sigma.insert(Terminal::Named(format!("WI_{a}_{b}")), part.clone());
    }
    for &a in &split.singletons {
        sigma.insert(Terminal::Named(format!("SI_{a}")), one(vec![Symbol::letter(a)]));
    }
    Ok(substitute(&skeleton, &sigma).trim())
}

/// Grammar for the language of an alphabetic system, flat or circular. For
/// a circular system the grammar generates the full linearization.
pub fn synthesize(s: &SplicingSystem) -> Result<Cfg> {
    require_alphabetic(s)?;
    let flat = match s.mode {
        Mode::Flat => s.clone(),
        Mode::Circular => circular_to_flat(s)?,
    };
    let completed = SplicingSystem {
        rules: complete(&flat.rules, &flat.alphabet)?,
        ..flat
    };
    let het = to_heterogeneous(&completed)?;
    let (concat, pure): (Vec<SplicingRule>, Vec<SplicingRule>) =
        het.rules.iter().cloned().partition(|r| r.usage == Usage::Concat);
    let concat_stage = SplicingSystem {
        rules: concat.into_iter().collect(),
        epsilon: false,
        ..het.clone()
    };
    let l1 = concat_grammar(&concat_stage)?;
    let pure_stage = SplicingSystem::new(het.alphabet.clone(), InitialSet::ContextFree(l1), pure, Mode::Flat)?;
    let mut g = pure_grammar(&pure_stage)?;
    if s.epsilon {
        let mut taken = g.names();
        let start = Cfg::fresh("Start", &mut taken);
        let old = g.start().to_string();
        g.set_start(&start);
        g.add_rule(&start, vec![Symbol::Var(old)]);
        g.add_rule(&start, Vec::new());
    }
    Ok(g)
}
