use std::fmt;

use super::nfa::Nfa;
use super::Dfa;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Regular expression syntax tree.
///
/// Concrete syntax: letters, `|`, juxtaposition, `*`, `+`, `?`, parentheses
/// and `_` for ε. An empty expression (or `()`) denotes the empty language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    Letter(char),
    Epsilon,
    Union(Vec<Regex>),
    Concat(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Optional(Box<Regex>),
}

impl Regex {
    pub fn empty() -> Regex {
        Regex::Union(Vec::new())
    }

    pub fn parse(text: &str) -> Result<Regex> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars, pos: 0 };
        let r = p.union()?;
        if p.pos < p.chars.len() {
            return Err(Error::parse(1, format!("unexpected '{}' in regex", p.chars[p.pos])));
        }
        Ok(r)
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            Regex::Letter(c) if !alphabet.contains(*c) => Err(Error::UnknownLetter(*c)),
            Regex::Letter(_) | Regex::Epsilon => Ok(()),
            Regex::Union(rs) | Regex::Concat(rs) => rs.iter().try_for_each(|r| r.check_alphabet(alphabet)),
            Regex::Star(r) | Regex::Plus(r) | Regex::Optional(r) => r.check_alphabet(alphabet),
        }
    }

    /// Thompson construction, subset construction, minimization.
    pub fn to_dfa(&self, alphabet: &Alphabet) -> Result<Dfa> {
        self.check_alphabet(alphabet)?;
        let mut nfa = Nfa::new(alphabet.clone());
        let (s, f) = self.build(&mut nfa, alphabet);
        nfa.starts.push(s);
        nfa.finals[f] = true;
        Ok(nfa.determinize())
    }

    fn build(&self, nfa: &mut Nfa, alphabet: &Alphabet) -> (usize, usize) {
        let s = nfa.add_state(false);
        let f = nfa.add_state(false);
        match self {
            Regex::Letter(c) => nfa.add_edge(s, alphabet.index_of(*c), f),
            Regex::Epsilon => nfa.add_edge(s, None, f),
            Regex::Union(rs) => {
                for r in rs {
                    let (rs_, rf) = r.build(nfa, alphabet);
                    nfa.add_edge(s, None, rs_);
                    nfa.add_edge(rf, None, f);
                }
            }
            Regex::Concat(rs) => {
                let mut cur = s;
                for r in rs {
                    let (rs_, rf) = r.build(nfa, alphabet);
                    nfa.add_edge(cur, None, rs_);
                    cur = rf;
                }
                nfa.add_edge(cur, None, f);
            }
            Regex::Star(r) | Regex::Plus(r) | Regex::Optional(r) => {
                let (rs_, rf) = r.build(nfa, alphabet);
                nfa.add_edge(s, None, rs_);
                nfa.add_edge(rf, None, f);
                if !matches!(self, Regex::Plus(_)) {
                    nfa.add_edge(s, None, f);
                }
                if !matches!(self, Regex::Optional(_)) {
                    nfa.add_edge(rf, None, rs_);
                }
            }
        }
        (s, f)
    }

    /// State elimination; the result is correct but not pretty.
    pub fn from_dfa(dfa: &Dfa) -> Regex {
        let n = dfa.num_states();
        let live = dfa.live_states();
        // generalized automaton on states 0..n plus fresh start n and final n+1
        let (start, fin) = (n, n + 1);
        let mut edge: Vec<Vec<Option<Regex>>> = vec![vec![None; n + 2]; n + 2];
        let add = |edge: &mut Vec<Vec<Option<Regex>>>, p: usize, q: usize, r: Regex| {
            edge[p][q] = Some(match edge[p][q].take() {
                None => r,
                Some(old) => union2(old, r),
            });
        };
        add(&mut edge, start, dfa.start(), Regex::Epsilon);
        for (p, c, q) in dfa.edges() {
            if live[p] && live[q] {
                add(&mut edge, p, q, Regex::Letter(c));
            }
        }
        for q in dfa.finals() {
            add(&mut edge, q, fin, Regex::Epsilon);
        }
        for k in 0..n {
            let self_loop = edge[k][k].take().map(|r| Regex::Star(Box::new(r)));
            let ins: Vec<usize> = (0..n + 2).filter(|&p| p != k && edge[p][k].is_some()).collect();
            let outs: Vec<usize> = (0..n + 2).filter(|&q| q != k && edge[k][q].is_some()).collect();
            for &p in &ins {
                for &q in &outs {
                    let mut parts = vec![edge[p][k].clone().unwrap()];
                    if let Some(l) = &self_loop {
                        parts.push(l.clone());
                    }
                    parts.push(edge[k][q].clone().unwrap());
                    add(&mut edge, p, q, concat_n(parts));
                }
            }
            for p in 0..n + 2 {
                edge[p][k] = None;
                edge[k][p] = None;
            }
        }
        edge[start][fin].take().unwrap_or_else(Regex::empty)
    }

    /// Direct recursive matcher; independent of the automaton route.
    pub fn matches(&self, w: &Word) -> bool {
        self.ends(w.letters(), 0).contains(&w.len())
    }

    /// Positions reachable after matching from `from`.
    fn ends(&self, s: &[char], from: usize) -> Vec<usize> {
        let mut out: Vec<usize> = match self {
            Regex::Letter(c) => {
                if s.get(from) == Some(c) {
                    vec![from + 1]
                } else {
                    vec![]
                }
            }
            Regex::Epsilon => vec![from],
            Regex::Union(rs) => rs.iter().flat_map(|r| r.ends(s, from)).collect(),
            Regex::Concat(rs) => {
                let mut cur = vec![from];
                for r in rs {
                    let mut next: Vec<usize> = cur.iter().flat_map(|&p| r.ends(s, p)).collect();
                    next.sort_unstable();
                    next.dedup();
                    cur = next;
                }
                cur
            }
            Regex::Optional(r) => {
                let mut v = r.ends(s, from);
                v.push(from);
                v
            }
            Regex::Star(r) | Regex::Plus(r) => {
                let mut reached = vec![false; s.len() + 1];
                let mut frontier = r.ends(s, from);
                if matches!(self, Regex::Star(_)) {
                    frontier.push(from);
                }
                let mut out = Vec::new();
                while let Some(p) = frontier.pop() {
                    if reached[p] {
                        continue;
                    }
                    reached[p] = true;
                    out.push(p);
                    frontier.extend(r.ends(s, p));
                }
                out
            }
        };
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn union2(a: Regex, b: Regex) -> Regex {
    match a {
        Regex::Union(mut rs) => {
            rs.push(b);
            Regex::Union(rs)
        }
        a => Regex::Union(vec![a, b]),
    }
}

fn concat_n(parts: Vec<Regex>) -> Regex {
    let mut flat = Vec::new();
    for p in parts {
        match p {
            Regex::Epsilon => {}
            Regex::Concat(rs) => flat.extend(rs),
            other => flat.push(other),
        }
    }
    match flat.len() {
        0 => Regex::Epsilon,
        1 => flat.pop().unwrap(),
        _ => Regex::Concat(flat),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<Regex> {
        let mut alts = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            alts.push(self.concat()?);
        }
        // `()` and the empty string both mean ∅
        alts.retain(|r| !matches!(r, Regex::Concat(v) if v.is_empty()));
        Ok(if alts.len() == 1 {
            alts.pop().unwrap()
        } else {
            Regex::Union(alts)
        })
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            items.push(self.postfix()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Regex::Concat(items)
        })
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while let Some(c) = self.peek() {
            r = match c {
                '*' => Regex::Star(Box::new(r)),
                '+' => Regex::Plus(Box::new(r)),
                '?' => Regex::Optional(Box::new(r)),
                _ => break,
            };
            self.pos += 1;
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        let c = self.peek().ok_or_else(|| Error::parse(1, "unexpected end of regex"))?;
        self.pos += 1;
        match c {
            '(' => {
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse(1, "missing ')' in regex"));
                }
                self.pos += 1;
                Ok(r)
            }
            '_' => Ok(Regex::Epsilon),
            '*' | '+' | '?' | ')' | '|' => Err(Error::parse(1, format!("unexpected '{c}' in regex"))),
            c => Ok(Regex::Letter(c)),
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Letter(c) => write!(f, "{c}"),
            Regex::Epsilon => f.write_str("_"),
            Regex::Union(rs) if rs.is_empty() => f.write_str("()"),
            Regex::Union(rs) => {
                f.write_str("(")?;
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write!(f, "{r}")?;
                }
                f.write_str(")")
            }
            Regex::Concat(rs) => {
                if rs.is_empty() {
                    return f.write_str("_");
                }
                f.write_str("(")?;
                for r in rs {
                    write!(f, "{r}")?;
                }
                f.write_str(")")
            }
            Regex::Star(r) => write!(f, "({r})*"),
            Regex::Plus(r) => write!(f, "({r})+"),
            Regex::Optional(r) => write!(f, "({r})?"),
        }
    }
}
