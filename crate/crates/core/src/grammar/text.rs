//! Plain-text grammar format.
//!
//! ```text
//! # comment
//! start S
//! S -> a S b | _
//! S -> <a,b> @Name
//! ```
//!
//! Tokens beginning with an uppercase letter are variables, `_` is ε,
//! `<a,b>` is a marker, `@Name` a named terminal; any other token is read
//! letter by letter. Without a `start` line the first left-hand side is the
//! start variable.

use super::{Cfg, Symbol, Terminal};
use crate::error::{Error, Result};

fn parse_token(tok: &str, line: usize, out: &mut Vec<Symbol>) -> Result<()> {
    let first = tok.chars().next().unwrap();
    if first.is_uppercase() {
        out.push(Symbol::Var(tok.to_string()));
    } else if tok == "_" {
    } else if let Some(name) = tok.strip_prefix('@') {
        if name.is_empty() {
            return Err(Error::parse(line, "empty named terminal"));
        }
        out.push(Symbol::named(name));
    } else if let Some(inner) = tok.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        let parts: Vec<char> = inner.chars().collect();
        match parts.as_slice() {
            [a, ',', b] => out.push(Symbol::Term(Terminal::Marker(*a, *b))),
            _ => return Err(Error::parse(line, format!("bad marker '{tok}'"))),
        }
    } else {
        for c in tok.chars() {
            if crate::word::RESERVED.contains(&c) {
                return Err(Error::parse(line, format!("unexpected '{c}' in grammar")));
            }
            out.push(Symbol::letter(c));
        }
    }
    Ok(())
}

/// Parses grammar lines; `first_line` offsets reported line numbers.
pub(crate) fn parse_lines<'a>(lines: impl Iterator<Item = &'a str>, first_line: usize) -> Result<Cfg> {
    let mut start: Option<String> = None;
    let mut rules: Vec<(String, Vec<Symbol>)> = Vec::new();
    let mut declared: Vec<String> = Vec::new();
    for (i, raw) in lines.enumerate() {
        let line = first_line + i;
        let text = raw.split('#').next().unwrap().trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("start ") {
            let name = rest.trim();
            if !name.chars().next().is_some_and(char::is_uppercase) || name.contains(' ') {
                return Err(Error::parse(line, format!("bad start variable '{name}'")));
            }
            start = Some(name.to_string());
            continue;
        }
        let (lhs, rhs) = text
            .split_once("->")
            .ok_or_else(|| Error::parse(line, "expected 'X -> ...'"))?;
        let lhs = lhs.trim();
        if lhs.contains(char::is_whitespace) || !lhs.chars().next().is_some_and(char::is_uppercase) {
            return Err(Error::parse(line, format!("bad left-hand side '{lhs}'")));
        }
        declared.push(lhs.to_string());
        for alt in rhs.split('|') {
            let mut body = Vec::new();
            for tok in alt.split_whitespace() {
                parse_token(tok, line, &mut body)?;
            }
            if alt.trim().is_empty() {
                return Err(Error::parse(line, "empty alternative; write '_' for ε"));
            }
            rules.push((lhs.to_string(), body));
        }
    }
    let start = start
        .or_else(|| declared.first().cloned())
        .ok_or_else(|| Error::parse(first_line, "grammar has no rules and no start"))?;
    let mut g = Cfg::new(&start);
    for v in &declared {
        g.declare(v);
    }
    for (lhs, rhs) in rules {
        g.add_rule(&lhs, rhs);
    }
    Ok(g)
}

pub fn parse_grammar(text: &str) -> Result<Cfg> {
    parse_lines(text.lines(), 1)
}

fn write_symbol(s: &Symbol, out: &mut String) {
    match s {
        Symbol::Var(v) => out.push_str(v),
        Symbol::Term(t) => out.push_str(&t.to_string()),
    }
}

pub fn serialize_grammar(g: &Cfg) -> String {
    let mut out = format!("start {}\n", g.start());
    let order = std::iter::once(g.start()).chain(g.variables().filter(|v| *v != g.start()));
    for v in order {
        let alts: Vec<String> = g
            .alternatives(v)
            .map(|rhs| {
                if rhs.is_empty() {
                    return "_".to_string();
                }
                let mut s = String::new();
                for (i, sym) in rhs.iter().enumerate() {
                    if i > 0 {
                        s.push(' ');
                    }
                    write_symbol(sym, &mut s);
                }
                s
            })
            .collect();
        if !alts.is_empty() {
            out.push_str(&format!("{v} -> {}\n", alts.join(" | ")));
        }
    }
    out
}
