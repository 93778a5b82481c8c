use std::collections::BTreeMap;

use super::{substitute, Cfg, Symbol, Terminal};
use crate::error::{Error, Result};

/// A grammar whose variables each own a context-free language of right-hand
/// sides. Inside those languages a variable `X` of the outer grammar appears
/// as the named terminal `@X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedCfg {
    start: String,
    order: Vec<String>,
    rhs: BTreeMap<String, Cfg>,
}

impl GeneralizedCfg {
    pub fn new(start: &str) -> GeneralizedCfg {
        GeneralizedCfg {
            start: start.to_string(),
            order: Vec::new(),
            rhs: BTreeMap::new(),
        }
    }

    /// Declares `var` with right-hand-side language `m`; a second call for the
    /// same variable replaces the language but keeps the declaration slot.
    pub fn define(&mut self, var: &str, m: Cfg) {
        if !self.rhs.contains_key(var) {
            self.order.push(var.to_string());
        }
        self.rhs.insert(var.to_string(), m);
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    /// Variables in declaration order.
    pub fn variables(&self) -> &[String] {
        &self.order
    }

    pub fn rhs(&self, var: &str) -> Option<&Cfg> {
        self.rhs.get(var)
    }

    fn named(var: &str) -> Terminal {
        Terminal::Named(var.to_string())
    }
}

/// One grafted copy per variable, with `@X` wired to the copy of `X`.
pub fn flatten_by_grafting(g: &GeneralizedCfg) -> Result<Cfg> {
    if !g.rhs.contains_key(&g.start) {
        return Ok(Cfg::new(&g.start));
    }
    let mut out = Cfg::new(&g.start);
    let mut entry = BTreeMap::new();
    for v in &g.order {
        entry.insert(GeneralizedCfg::named(v), out.graft(&g.rhs[v]));
    }
    let start = entry[&GeneralizedCfg::named(&g.start)].clone();
    let mut wired = out.map_symbols(|s| match s {
        Symbol::Term(t) => match entry.get(t) {
            Some(v) => Symbol::Var(v.clone()),
            None => s.clone(),
        },
        s => s.clone(),
    });
    wired.set_start(&start);
    Ok(wired.trim())
}

/// Kräl's construction for a generalized grammar with a single variable `S`:
/// `S → H.start`, the rules of the right-hand-side grammar `H` under fresh
/// names, and every `@S` replaced by `S`.
pub fn kral_single(g: &GeneralizedCfg) -> Result<Cfg> {
    if g.order.len() != 1 {
        return Err(Error::NotSingleVariable(g.order.len()));
    }
    let s = &g.order[0];
    let mut out = Cfg::new(s);
    let h = out.graft(&g.rhs[s]);
    out.add_rule(s, vec![Symbol::Var(h)]);
    let me = GeneralizedCfg::named(s);
    Ok(out.map_symbols(|sym| match sym {
        Symbol::Term(t) if *t == me => Symbol::Var(s.clone()),
        sym => sym.clone(),
    }))
}

/// Eliminates the non-start variables one at a time in declaration order:
/// each is closed off with [`kral_single`] and substituted into the
/// remaining right-hand-side languages. Unit chains are collapsed at the end.
pub fn kral_eliminate(g: &GeneralizedCfg) -> Result<Cfg> {
    let mut rhs = g.rhs.clone();
    if !rhs.contains_key(&g.start) {
        return Ok(Cfg::new(&g.start));
    }
    for x in g.order.iter().filter(|v| **v != g.start) {
        let mut single = GeneralizedCfg::new(x);
        single.define(x, rhs[x].clone());
        let closed = kral_single(&single)?;
        rhs.remove(x);
        let sigma = BTreeMap::from([(GeneralizedCfg::named(x), closed)]);
        for m in rhs.values_mut() {
            *m = substitute(m, &sigma);
        }
    }
    let mut last = GeneralizedCfg::new(&g.start);
    last.define(&g.start, rhs.remove(&g.start).unwrap());
    Ok(kral_single(&last)?.trim().collapse_unit_chains())
}
