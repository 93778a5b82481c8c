//! Productions, production sequences and their replay.

use std::fmt;

use crate::error::{Error, Result};
use crate::rule::{SplicingRule, Usage};
use crate::system::{Mode, SplicingSystem};
use crate::word::{canonical_circular, Word};

/// Where an operand comes from: an initial word, or the result of an
/// earlier step (0-based index into the sequence).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Operand {
    Initial(Word),
    Step(usize),
}

/// How the operands were cut. For a flat production the position in the
/// left operand where the right one goes (`|u|` for a concatenation); for
/// a circular one the rotations turning `u` into `βxα` and `v` into `γyδ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cut {
    Flat(usize),
    Circular { left: usize, right: usize },
}

/// `(u, v) ⊢_r w`. In circular mode `result` is a canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub rule: SplicingRule,
    pub left: Operand,
    pub right: Operand,
    pub cut: Cut,
    pub result: Word,
}

impl Production {
    /// A proper insertion cuts strictly inside the left operand.
    pub fn is_proper_insertion(&self, left_len: usize) -> bool {
        self.rule.usage == Usage::Splice && matches!(self.cut, Cut::Flat(c) if c > 0 && c < left_len)
    }
}

/// `[π1; …; πn]`. A sequence of length 0 just names an initial word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionSequence {
    pub seed: Option<Word>,
    pub steps: Vec<Production>,
}

impl ProductionSequence {
    pub fn trivial(w: Word) -> Self {
        ProductionSequence {
            seed: Some(w),
            steps: Vec::new(),
        }
    }

    pub fn new(steps: Vec<Production>) -> Self {
        ProductionSequence { seed: None, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The result as recorded, without checking anything.
    pub fn result(&self) -> Option<&Word> {
        match self.steps.last() {
            Some(p) => Some(&p.result),
            None => self.seed.as_ref(),
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Initial(w) => write!(f, "{w}"),
            Operand::Step(i) => write!(f, "#{}", i + 1),
        }
    }
}

impl fmt::Display for ProductionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            if let Some(w) = &self.seed {
                writeln!(f, "{w}")?;
            }
        }
        for (i, p) in self.steps.iter().enumerate() {
            let cut = match p.cut {
                Cut::Flat(c) => format!("at {c}"),
                Cut::Circular { left, right } => format!("rotations {left},{right}"),
            };
            writeln!(f, "{}. ({}, {}) |- {} by {} {}", i + 1, p.left, p.right, p.result, p.rule, cut)?;
        }
        Ok(())
    }
}

fn illegal(step: usize, reason: impl Into<String>) -> Error {
    Error::IllegalStep {
        step: step + 1,
        reason: reason.into(),
    }
}

/// What `rule` yields on `u` and `v` at `cut`, if the production is legal.
pub fn production_outcome(mode: Mode, rule: &SplicingRule, u: &Word, v: &Word, cut: Cut) -> Option<Word> {
    match (mode, cut, rule.usage) {
        (Mode::Flat, Cut::Flat(c), Usage::Splice) => {
            (rule.accepts_inserted(v) && rule.cut_points(u).contains(&c)).then(|| u.insert_at(c, v))
        }
        (Mode::Flat, Cut::Flat(c), Usage::Concat) => {
            (c == u.len() && u.matches_pattern(&rule.alpha, &rule.beta) && rule.accepts_inserted(v))
                .then(|| u.concat(v))
        }
        (Mode::Circular, Cut::Circular { left, right }, Usage::Splice) => {
            if u.is_empty() || v.is_empty() || left >= u.len() || right >= v.len() {
                return None;
            }
            let (ru, rv) = (u.rotate(left), v.rotate(right));
            (ru.matches_pattern(&rule.beta, &rule.alpha) && rv.matches_pattern(&rule.gamma, &rule.delta))
                .then(|| canonical_circular(&ru.concat(&rv)).unwrap().representative().clone())
        }
        _ => None,
    }
}

/// Checks every step and returns the result of the last one.
pub fn replay_sequence(s: &SplicingSystem, seq: &ProductionSequence) -> Result<Word> {
    if seq.steps.is_empty() {
        let w = seq.seed.as_ref().ok_or_else(|| illegal(0, "empty sequence without a seed word"))?;
        if !s.is_initial(w) {
            return Err(Error::NotInitial(w.to_string()));
        }
        return Ok(match s.mode {
            Mode::Flat => w.clone(),
            Mode::Circular => canonical_circular(w)?.representative().clone(),
        });
    }
    let mut results: Vec<Word> = Vec::with_capacity(seq.steps.len());
    for (i, p) in seq.steps.iter().enumerate() {
        let resolve = |op: &Operand| -> Result<Word> {
            match op {
                Operand::Initial(w) if s.is_initial(w) => Ok(w.clone()),
                Operand::Initial(w) => Err(Error::NotInitial(w.to_string())),
                Operand::Step(j) if *j < i => Ok(results[*j].clone()),
                Operand::Step(j) => Err(Error::DanglingRef(*j + 1)),
            }
        };
        let (u, v) = (resolve(&p.left)?, resolve(&p.right)?);
        if !s.rules.contains(&p.rule) {
            return Err(illegal(i, format!("rule {} is not in the system", p.rule)));
        }
        match production_outcome(s.mode, &p.rule, &u, &v, p.cut) {
            Some(w) if w == p.result => results.push(w),
            Some(w) => return Err(illegal(i, format!("({u}, {v}) yields {w}, not {}", p.result))),
            None => return Err(illegal(i, format!("{} does not apply to ({u}, {v}) as recorded", p.rule))),
        }
    }
    Ok(results.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::InitialSet;

    fn sir() -> SplicingSystem {
        SplicingSystem::flat("a b", InitialSet::finite(["ab"]), [SplicingRule::splice("a", "b", "a", "b")]).unwrap()
    }

    fn step(left: Operand, right: Operand, cut: usize, result: &str) -> Production {
        Production {
            rule: SplicingRule::splice("a", "b", "a", "b"),
            left,
            right,
            cut: Cut::Flat(cut),
            result: Word::from(result),
        }
    }

    #[test]
    fn doubling_sequence() {
        let ab = || Operand::Initial(Word::from("ab"));
        let seq = ProductionSequence::new(vec![
            step(ab(), ab(), 1, "aabb"),
            step(Operand::Step(0), Operand::Step(0), 2, "aaaabbbb"),
        ]);
        assert_eq!(replay_sequence(&sir(), &seq).unwrap(), Word::from("aaaabbbb"));
    }

    #[test]
    fn zero_length_sequence() {
        let seq = ProductionSequence::trivial(Word::from("ab"));
        assert_eq!(replay_sequence(&sir(), &seq).unwrap(), Word::from("ab"));
        assert!(replay_sequence(&sir(), &ProductionSequence::trivial(Word::from("ba"))).is_err());
    }

    #[test]
    fn illegal_step_is_reported_by_number() {
        let ab = || Operand::Initial(Word::from("ab"));
        let seq = ProductionSequence::new(vec![step(ab(), ab(), 1, "abab")]);
        assert!(matches!(replay_sequence(&sir(), &seq), Err(Error::IllegalStep { step: 1, .. })));
        let seq = ProductionSequence::new(vec![step(ab(), ab(), 2, "abab")]);
        assert!(matches!(replay_sequence(&sir(), &seq), Err(Error::IllegalStep { step: 1, .. })));
    }

    #[test]
    fn forward_references_dangle() {
        let ab = || Operand::Initial(Word::from("ab"));
        let seq = ProductionSequence::new(vec![step(ab(), Operand::Step(0), 1, "aabb")]);
        assert!(matches!(replay_sequence(&sir(), &seq), Err(Error::DanglingRef(1))));
    }

    #[test]
    fn circular_replay() {
        let s = SplicingSystem::circular("a b", InitialSet::finite(["ab"]), [SplicingRule::splice("a", "b", "a", "b")])
            .unwrap();
        let p = Production {
            rule: SplicingRule::splice("a", "b", "a", "b"),
            left: Operand::Initial(Word::from("ba")),
            right: Operand::Initial(Word::from("ab")),
            cut: Cut::Circular { left: 0, right: 0 },
            result: Word::from("aabb"),
        };
        assert_eq!(replay_sequence(&s, &ProductionSequence::new(vec![p])).unwrap(), Word::from("aabb"));
    }
}
