use std::collections::BTreeMap;

use super::{Cfg, Symbol, Terminal};
use crate::automata::Dfa;
use crate::error::{Error, Result};

/// Right-linear grammar of a DFA: `Qp → a Qq` per live transition and
/// `Qp → ε` for accepting `p`.
pub fn cfg_from_dfa(d: &Dfa) -> Cfg {
    let live = d.live_states();
    let name = |q: usize| format!("Q{q}");
    let mut g = Cfg::new(&name(d.start()));
    if !live[d.start()] {
        return g;
    }
    for (p, c, q) in d.edges() {
        if live[p] && live[q] {
            g.add_rule(&name(p), vec![Symbol::letter(c), Symbol::Var(name(q))]);
        }
    }
    for q in d.finals() {
        g.add_rule(&name(q), Vec::new());
    }
    g.trim()
}

/// Grammar for `L(g) ∩ L(d)` by the triple construction.
pub fn bar_hillel(g: &Cfg, d: &Dfa) -> Result<Cfg> {
    let mut letter_of = BTreeMap::new();
    for t in g.terminals() {
        match t {
            Terminal::Letter(c) => {
                let i = d.alphabet().index_of(c).ok_or(Error::UnknownLetter(c))?;
                letter_of.insert(c, i);
            }
            other => {
                return Err(Error::Unsupported(match other {
                    Terminal::Marker(..) => "intersection of a grammar with markers",
                    _ => "intersection of a grammar with named terminals",
                }))
            }
        }
    }
    let b = g.trim().binarize();
    let n = d.num_states();
    let mut taken = b.names();
    let mut triple: BTreeMap<(String, usize, usize), String> = BTreeMap::new();
    for v in b.variables() {
        for p in 0..n {
            for q in 0..n {
                let name = Cfg::fresh(&format!("{v}_{p}_{q}"), &mut taken);
                triple.insert((v.to_string(), p, q), name);
            }
        }
    }
    let start = Cfg::fresh("Start", &mut taken);
    let mut out = Cfg::new(&start);
    for (v, rhs) in b.rules() {
        for p in 0..n {
            // partial right-hand sides with the state reached so far
            let mut partial: Vec<(usize, Vec<Symbol>)> = vec![(p, Vec::new())];
            for s in rhs {
                let mut next = Vec::new();
                for (st, body) in partial {
                    match s {
                        Symbol::Term(Terminal::Letter(c)) => {
                            let mut body = body;
                            body.push(s.clone());
                            next.push((d.step(st, letter_of[c]), body));
                        }
                        Symbol::Var(y) => {
                            for r in 0..n {
                                let mut body = body.clone();
                                body.push(Symbol::Var(triple[&(y.clone(), st, r)].clone()));
                                next.push((r, body));
                            }
                        }
                        Symbol::Term(_) => unreachable!(),
                    }
                }
                partial = next;
            }
            for (q, body) in partial {
                out.add_rule(&triple[&(v.to_string(), p, q)], body);
            }
        }
    }
    for f in d.finals() {
        let s = triple[&(b.start().to_string(), d.start(), f)].clone();
        out.add_rule(&start, vec![Symbol::Var(s)]);
    }
    Ok(out.trim())
}

/// Replaces each terminal in the domain of `sigma` by the language of its
/// grammar. Each image is grafted once under fresh names.
pub fn substitute(g: &Cfg, sigma: &BTreeMap<Terminal, Cfg>) -> Cfg {
    let used = g.terminals();
    let mut out = g.clone();
    let mut starts: BTreeMap<&Terminal, String> = BTreeMap::new();
    for (t, image) in sigma {
        if used.contains(t) {
            starts.insert(t, out.graft(image));
        }
    }
    let mut result = Cfg::new(out.start());
    for v in out.variables() {
        result.declare(v);
    }
    for (v, rhs) in out.rules() {
        let rhs = rhs
            .iter()
            .map(|s| match s {
                Symbol::Term(t) => match starts.get(t) {
                    Some(st) => Symbol::Var(st.clone()),
                    None => s.clone(),
                },
                s => s.clone(),
            })
            .collect();
        result.add_rule(v, rhs);
    }
    result
}
