//! Text formats for systems and automata.
//!
//! A system file:
//!
//! ```text
//! # comment
//! alphabet a b c
//! mode flat
//! initial finite: ab c
//! rules:
//! splice a#b$a#b
//! concat -#c$a#b
//! ```
//!
//! The initial set may instead be `initial regular: <regex>`, or
//! `initial contextfree:` followed by grammar lines up to `rules:`. Handles
//! are written `-` for ε, and spaces inside a rule are ignored. A line
//! `epsilon yes` records that the language contains the empty word.
//!
//! An automaton file lists `alphabet`, `start q`, `final q...` and one
//! `p x q` line per transition; missing transitions go to a sink.

use std::collections::BTreeSet;

use crate::automata::{Dfa, Regex};
use crate::error::{Error, Result};
use crate::grammar::{parse_lines, serialize_grammar};
use crate::rule::{SplicingRule, Usage};
use crate::system::{InitialSet, Mode, SplicingSystem};
use crate::word::{Alphabet, Word};

fn is_comment(line: &str) -> bool {
    line.is_empty() || line.starts_with('#')
}

/// Parses `a#b$c#d`, spaces allowed, `-` for ε.
pub fn parse_rule_body(usage: Usage, body: &str, line: usize) -> Result<SplicingRule> {
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::parse(line, format!("malformed rule '{}'", body.trim()));
    let (left, right) = compact.split_once('$').ok_or_else(bad)?;
    let (a, b) = left.split_once('#').ok_or_else(bad)?;
    let (c, d) = right.split_once('#').ok_or_else(bad)?;
    let mut handles = Vec::new();
    for h in [a, b, c, d] {
        if h.is_empty() || h.contains(['#', '$']) || (h.len() > 1 && h.contains('-')) {
            return Err(bad());
        }
        handles.push(if h == "-" { Word::empty() } else { Word::from(h) });
    }
    let [a, b, c, d]: [Word; 4] = handles.try_into().map_err(|_| bad())?;
    Ok(SplicingRule::from_handles(usage, [a, b, c, d]))
}

/// Parses a rule line starting with `splice` or `concat`.
pub fn parse_rule(text: &str, line: usize) -> Result<SplicingRule> {
    let text = text.trim();
    if let Some(body) = text.strip_prefix("splice") {
        parse_rule_body(Usage::Splice, body, line)
    } else if let Some(body) = text.strip_prefix("concat") {
        parse_rule_body(Usage::Concat, body, line)
    } else {
        Err(Error::parse(line, format!("expected a rule, found '{text}'")))
    }
}

fn located(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}

enum PendingInitial {
    Finite(Vec<String>),
    Regular(String),
    ContextFree(Vec<String>, usize),
}

pub fn parse_system(text: &str) -> Result<SplicingSystem> {
    let lines: Vec<&str> = text.lines().collect();
    let mut alphabet: Option<Alphabet> = None;
    let mut mode = Mode::Flat;
    let mut epsilon = false;
    let mut initial: Option<(PendingInitial, usize)> = None;
    let mut rules = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = i + 1;
        let t = lines[i].trim();
        i += 1;
        if is_comment(t) || t == "rules:" {
            continue;
        }
        let (key, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest = rest.trim();
        match key {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::parse(line, "alphabet given twice"));
                }
                alphabet = Some(Alphabet::parse(rest).map_err(|e| located(line, e))?);
            }
            "mode" => {
                mode = match rest {
                    "flat" => Mode::Flat,
                    "circular" => Mode::Circular,
                    _ => return Err(Error::parse(line, format!("unknown mode '{rest}'"))),
                }
            }
            "epsilon" => {
                epsilon = match rest {
                    "yes" => true,
                    "no" => false,
                    _ => return Err(Error::parse(line, "expected 'epsilon yes' or 'epsilon no'")),
                }
            }
            "initial" => {
                if initial.is_some() {
                    return Err(Error::parse(line, "initial set given twice"));
                }
                let (kind, body) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line, "expected 'initial <kind>: ...'"))?;
                let body = body.trim();
                let pending = match kind.trim() {
                    "finite" => PendingInitial::Finite(body.split_whitespace().map(str::to_string).collect()),
                    "regular" => PendingInitial::Regular(body.to_string()),
                    "contextfree" => {
                        if !body.is_empty() {
                            return Err(Error::parse(line, "grammar lines start on the next line"));
                        }
                        let from = i;
                        while i < lines.len() && lines[i].trim() != "rules:" {
                            i += 1;
                        }
                        PendingInitial::ContextFree(lines[from..i].iter().map(|s| s.to_string()).collect(), from + 1)
                    }
                    other => return Err(Error::parse(line, format!("unknown initial set kind '{other}'"))),
                };
                initial = Some((pending, line));
            }
            "splice" | "concat" => rules.push((parse_rule(t, line)?, line)),
            _ => return Err(Error::parse(line, format!("unexpected line '{t}'"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::parse(1, "missing 'alphabet' line"))?;
    let (pending, line) = initial.ok_or_else(|| Error::parse(lines.len().max(1), "missing 'initial' line"))?;
    let initial = match pending {
        PendingInitial::Finite(ws) => {
            let mut set = BTreeSet::new();
            for w in ws {
                if w == "_" {
                    return Err(Error::parse(
                        line,
                        "the empty word cannot be an initial word: it takes part in no production; \
                         write 'epsilon yes' instead",
                    ));
                }
                set.insert(alphabet.word(&w).map_err(|e| located(line, e))?);
            }
            InitialSet::Finite(set)
        }
        PendingInitial::Regular(re) => {
            let d = Regex::parse(&re)
                .and_then(|r| r.to_dfa(&alphabet))
                .map_err(|e| located(line, e))?;
            InitialSet::Regular(d)
        }
        PendingInitial::ContextFree(body, first) => {
            InitialSet::ContextFree(parse_lines(body.iter().map(String::as_str), first)?)
        }
    };
    for (r, line) in &rules {
        r.check_alphabet(&alphabet).map_err(|e| located(*line, e))?;
    }
    let rules = rules.into_iter().map(|(r, _)| r);
    let mut s = SplicingSystem::new(alphabet, initial, rules, mode).map_err(|e| located(line, e))?;
    s.epsilon |= epsilon;
    Ok(s)
}

pub fn serialize_system(s: &SplicingSystem) -> String {
    let mut out = format!("alphabet {}\n", s.alphabet);
    out.push_str(match s.mode {
        Mode::Flat => "mode flat\n",
        Mode::Circular => "mode circular\n",
    });
    if s.epsilon {
        out.push_str("epsilon yes\n");
    }
    match &s.initial {
        InitialSet::Finite(ws) => {
            out.push_str("initial finite:");
            for w in ws {
                out.push(' ');
                out.push_str(&w.to_string());
            }
            out.push('\n');
        }
        InitialSet::Regular(d) => out.push_str(&format!("initial regular: {}\n", Regex::from_dfa(d))),
        InitialSet::ContextFree(g) => {
            out.push_str("initial contextfree:\n");
            out.push_str(&serialize_grammar(g));
        }
    }
    out.push_str("rules:\n");
    for r in &s.rules {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut alphabet = None;
    let mut start = None;
    let mut finals = Vec::new();
    let mut edges = Vec::new();
    let mut states = 0;
    let state = |tok: &str, line: usize| -> Result<usize> {
        tok.parse::<usize>()
            .map_err(|_| Error::parse(line, format!("bad state '{tok}'")))
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if is_comment(t) {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match toks[0] {
            "alphabet" => alphabet = Some(Alphabet::new(toks[1..].iter().flat_map(|s| s.chars())).map_err(|e| located(line, e))?),
            "start" if toks.len() == 2 => {
                let q = state(toks[1], line)?;
                states = states.max(q + 1);
                start = Some(q);
            }
            "final" => {
                for tok in &toks[1..] {
                    let q = state(tok, line)?;
                    states = states.max(q + 1);
                    finals.push(q);
                }
            }
            _ if toks.len() == 3 => {
                let mut letters = toks[1].chars();
                let (Some(c), None) = (letters.next(), letters.next()) else {
                    return Err(Error::parse(line, format!("bad letter '{}'", toks[1])));
                };
                let (p, q) = (state(toks[0], line)?, state(toks[2], line)?);
                states = states.max(p + 1).max(q + 1);
                edges.push((p, c, q, line));
            }
            _ => return Err(Error::parse(line, format!("unexpected line '{t}'"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::parse(1, "missing 'alphabet' line"))?;
    let start = start.ok_or_else(|| Error::parse(1, "missing 'start' line"))?;
    let mut seen = BTreeSet::new();
    for &(p, c, _, line) in &edges {
        if !alphabet.contains(c) {
            return Err(Error::parse(line, format!("letter '{c}' is not in the alphabet")));
        }
        if !seen.insert((p, c)) {
            return Err(Error::parse(line, format!("second transition from {p} on '{c}'")));
        }
    }
    let edges: Vec<(usize, char, usize)> = edges.into_iter().map(|(p, c, q, _)| (p, c, q)).collect();
    Dfa::from_partial(alphabet, start, &finals, &edges, states)
}

/// Writes the automaton without its sink state.
pub fn serialize_dfa(d: &Dfa) -> String {
    let live = d.live_states();
    let mut out = format!("alphabet {}\nstart {}\nfinal", d.alphabet(), d.start());
    for q in d.finals() {
        out.push_str(&format!(" {q}"));
    }
    out.push('\n');
    for (p, c, q) in d.edges() {
        if live[p] && live[q] {
            out.push_str(&format!("{p} {c} {q}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile;

    const SIR: &str = "alphabet a b\nmode flat\ninitial finite: ab\nrules:\nsplice a#b$a#b\n";

    #[test]
    fn parses_and_round_trips() {
        let s = parse_system(SIR).unwrap();
        let expect =
            SplicingSystem::flat("a b", InitialSet::finite(["ab"]), [SplicingRule::splice("a", "b", "a", "b")]).unwrap();
        assert_eq!(s, expect);
        assert_eq!(serialize_system(&s), SIR);
    }

    #[test]
    fn rule_lines() {
        let r = parse_rule("splice b # - $ - # a", 1).unwrap();
        assert_eq!(r, SplicingRule::splice("b", "-", "-", "a"));
        let r = parse_rule("concat - # c $ a # b", 1).unwrap();
        assert_eq!(r.usage, Usage::Concat);
        assert!(parse_rule("splice a#b$a", 3).is_err());
        assert!(parse_rule("splice a##b$a#b", 3).is_err());
    }

    #[test]
    fn regular_and_context_free_initial_sets() {
        let text = "alphabet a b c\ninitial regular: c*ab|c\nrules:\nsplice a#b$a#b\n";
        let s = parse_system(text).unwrap();
        let ab = Alphabet::parse("a b c").unwrap();
        assert_eq!(s.initial, InitialSet::Regular(compile("c*ab|c", &ab).unwrap()));
        assert_eq!(parse_system(&serialize_system(&s)).unwrap(), s);

        let text = "alphabet a b\ninitial contextfree:\nstart S\nS -> a S b | a b\nrules:\nsplice -#-$-#-\n";
        let s = parse_system(text).unwrap();
        assert_eq!(s.initial.enumerate(4), vec![Word::from("ab"), Word::from("aabb")]);
        assert_eq!(parse_system(&serialize_system(&s)).unwrap(), s);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_system("alphabet a b\ninitial finite: ab _\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_system("alphabet a b\ninitial finite: ac\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_system("alphabet a b\ninitial finite: ab\nsplice a#b$a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        assert!(parse_system("alphabet a b\nmode round\ninitial finite: ab\n").is_err());
    }

    #[test]
    fn circular_and_epsilon() {
        let s = parse_system("alphabet a b\nmode circular\nepsilon yes\ninitial finite: ba\n").unwrap();
        assert_eq!(s.mode, Mode::Circular);
        assert!(s.epsilon);
        assert_eq!(s.initial, InitialSet::finite(["ab"]));
        assert_eq!(parse_system(&serialize_system(&s)).unwrap(), s);
    }

    #[test]
    fn automaton_files() {
        let d = parse_dfa("alphabet a b\nstart 0\nfinal 1\n0 a 1\n1 b 0\n").unwrap();
        let ab = Alphabet::parse("a b").unwrap();
        assert_eq!(d, compile("a(ba)*", &ab).unwrap());
        assert_eq!(parse_dfa(&serialize_dfa(&d)).unwrap(), d);
        assert!(parse_dfa("alphabet a\nstart 0\n0 a 1\n0 a 0\n").is_err());
    }
}
