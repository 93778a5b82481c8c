//! Bounded closure by saturation, backtracking membership and witnesses.
//!
//! Every production has `|w| = |u| + |v|`, so a word of length at most `n`
//! only ever needs operands shorter than itself and the bounded fixpoint is
//! exactly `L ∩ A^{≤n}`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::production::{Cut, Operand, Production, ProductionSequence};
use crate::rule::{apply_rule, SplicingRule, Usage};
use crate::system::{Mode, SplicingSystem};
use crate::word::{canonical_circular, Word};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// How a word first entered the closure.
#[derive(Debug, Clone)]
struct Parent {
    rule: SplicingRule,
    left: Word,
    right: Word,
    cut: Cut,
}

fn canonical(w: &Word) -> Word {
    canonical_circular(w).expect("nonempty").representative().clone()
}

/// Every production on `(u, v)` with its cut and result.
fn productions(s: &SplicingSystem, r: &SplicingRule, u: &Word, v: &Word) -> Vec<(Cut, Word)> {
    match s.mode {
        Mode::Flat => match r.usage {
            Usage::Splice if r.accepts_inserted(v) => r
                .cut_points(u)
                .into_iter()
                .map(|c| (Cut::Flat(c), u.insert_at(c, v)))
                .collect(),
            Usage::Splice => Vec::new(),
            Usage::Concat => apply_rule(r, u, v)
                .into_iter()
                .map(|w| (Cut::Flat(u.len()), w))
                .collect(),
        },
        Mode::Circular => {
            let mut out = Vec::new();
            let rights: Vec<usize> = (0..v.len())
                .filter(|&j| v.rotate(j).matches_pattern(&r.gamma, &r.delta))
                .collect();
            if rights.is_empty() {
                return out;
            }
            for i in (0..u.len()).filter(|&i| u.rotate(i).matches_pattern(&r.beta, &r.alpha)) {
                for &j in &rights {
                    let w = canonical(&u.rotate(i).concat(&v.rotate(j)));
                    out.push((Cut::Circular { left: i, right: j }, w));
                }
            }
            out
        }
    }
}

struct Saturation {
    words: BTreeSet<Word>,
    parents: HashMap<Word, Parent>,
}

fn saturate(s: &SplicingSystem, n: usize) -> Saturation {
    let mut words: BTreeSet<Word> = s
        .initial
        .enumerate(n)
        .into_iter()
        .map(|w| if s.mode == Mode::Circular { canonical(&w) } else { w })
        .collect();
    let mut parents = HashMap::new();
    // by_len[l]: accepted words of length l
    let mut by_len: Vec<Vec<Word>> = vec![Vec::new(); n + 1];
    let mut queue: Vec<Word> = words.iter().cloned().collect();
    while let Some(w) = queue.pop() {
        let mut found = Vec::new();
        by_len[w.len()].push(w.clone());
        for len in 1..=n.saturating_sub(w.len()) {
            for x in &by_len[len] {
                for r in &s.rules {
                    for (u, v) in [(&w, x), (x, &w)] {
                        for (cut, res) in productions(s, r, u, v) {
                            if !words.contains(&res) && !parents.contains_key(&res) {
                                let p = Parent {
                                    rule: r.clone(),
                                    left: u.clone(),
                                    right: v.clone(),
                                    cut,
                                };
                                parents.insert(res.clone(), p);
                                found.push(res);
                            }
                        }
                    }
                }
            }
        }
        for res in found {
            if words.insert(res.clone()) {
                queue.push(res);
            }
        }
    }
    Saturation { words, parents }
}

/// `L(s) ∩ A^{≤n}`; canonical representatives in circular mode. ε is never
/// included, see [`SplicingSystem::epsilon`].
pub fn closure_bounded(s: &SplicingSystem, n: usize) -> BTreeSet<Word> {
    saturate(s, n).words
}

/// A production sequence producing `w`, found among the words of length
/// at most `n`.
pub fn witness(s: &SplicingSystem, w: &Word, n: usize) -> Result<ProductionSequence> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let target = if s.mode == Mode::Circular { canonical(w) } else { w.clone() };
    let sat = saturate(s, n.max(w.len()));
    if !sat.words.contains(&target) {
        return Err(Error::NotInClosure(w.to_string()));
    }
    if !sat.parents.contains_key(&target) {
        return Ok(ProductionSequence::trivial(target));
    }
    let mut steps = Vec::new();
    let mut index: HashMap<Word, usize> = HashMap::new();
    build(&sat.parents, &target, &mut steps, &mut index);
    Ok(ProductionSequence::new(steps))
}

fn build(
    parents: &HashMap<Word, Parent>,
    w: &Word,
    steps: &mut Vec<Production>,
    index: &mut HashMap<Word, usize>,
) -> Operand {
    let Some(p) = parents.get(w) else {
        return Operand::Initial(w.clone());
    };
    if let Some(&i) = index.get(w) {
        return Operand::Step(i);
    }
    let left = build(parents, &p.left, steps, index);
    let right = build(parents, &p.right, steps, index);
    steps.push(Production {
        rule: p.rule.clone(),
        left,
        right,
        cut: p.cut,
        result: w.clone(),
    });
    index.insert(w.clone(), steps.len() - 1);
    Operand::Step(steps.len() - 1)
}

/// One backward move of the tape procedure.
#[derive(Debug, Clone)]
enum Move {
    /// The last segment is an initial word and is removed.
    Delete(Word),
    /// The last segment `w` is undone into `left` and the appended `right`.
    Split {
        rule: SplicingRule,
        left: Word,
        right: Word,
        cut: Cut,
        whole: Word,
    },
}

struct Search<'a> {
    s: &'a SplicingSystem,
    failed: HashSet<Vec<Word>>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    /// Ways to undo one production on `w`.
    fn undo(&self, w: &Word) -> Vec<Move> {
        let mut out = Vec::new();
        let l = w.letters();
        match self.s.mode {
            Mode::Flat => {
                for r in &self.s.rules {
                    match r.usage {
                        Usage::Splice => {
                            for i in 0..l.len() {
                                for j in i + 1..=l.len() {
                                    if j - i == l.len() {
                                        continue;
                                    }
                                    let v = w.slice(i, j);
                                    let mut rest = l[..i].to_vec();
                                    rest.extend_from_slice(&l[j..]);
                                    let u = Word::new(rest);
                                    if r.accepts_inserted(&v) && r.cut_points(&u).contains(&i) {
                                        out.push(Move::Split {
                                            rule: r.clone(),
                                            left: u,
                                            right: v,
                                            cut: Cut::Flat(i),
                                            whole: w.clone(),
                                        });
                                    }
                                }
                            }
                        }
                        Usage::Concat => {
                            for i in 1..l.len() {
                                let (u, v) = (w.slice(0, i), w.slice(i, l.len()));
                                if u.matches_pattern(&r.alpha, &r.beta) && r.accepts_inserted(&v) {
                                    out.push(Move::Split {
                                        rule: r.clone(),
                                        left: u,
                                        right: v,
                                        cut: Cut::Flat(i),
                                        whole: w.clone(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
            Mode::Circular => {
                for k in 0..l.len() {
                    let c = w.rotate(k);
                    for i in 1..l.len() {
                        let (u, v) = (c.slice(0, i), c.slice(i, l.len()));
                        for r in &self.s.rules {
                            if u.matches_pattern(&r.beta, &r.alpha) && v.matches_pattern(&r.gamma, &r.delta) {
                                out.push(Move::Split {
                                    rule: r.clone(),
                                    left: u.clone(),
                                    right: v.clone(),
                                    cut: Cut::Circular { left: 0, right: 0 },
                                    whole: w.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn normal(&self, w: Word) -> Word {
        match self.s.mode {
            Mode::Flat => w,
            Mode::Circular => canonical(&w),
        }
    }

    fn run(&mut self, tape: &mut Vec<Word>, moves: &mut Vec<Move>) -> Result<bool> {
        let Some(last) = tape.last().cloned() else {
            return Ok(true);
        };
        if self.failed.contains(tape) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if self.s.is_initial(&last) {
            tape.pop();
            moves.push(Move::Delete(last.clone()));
            if self.run(tape, moves)? {
                return Ok(true);
            }
            moves.pop();
            tape.push(last.clone());
        }
        for m in self.undo(&last) {
            let Move::Split { left, right, .. } = &m else { unreachable!() };
            let (left, right) = (self.normal(left.clone()), self.normal(right.clone()));
            tape.pop();
            tape.push(left);
            tape.push(right);
            moves.push(m);
            let ok = self.run(tape, moves)?;
            tape.pop();
            tape.pop();
            tape.push(last.clone());
            if ok {
                return Ok(true);
            }
            moves.pop();
        }
        self.failed.insert(tape.clone());
        Ok(false)
    }
}

/// Turns the backward moves into a forward production sequence.
fn moves_to_sequence(s: &SplicingSystem, moves: &[Move]) -> ProductionSequence {
    let mut stack: Vec<(Operand, Word)> = Vec::new();
    let mut steps = Vec::new();
    for m in moves.iter().rev() {
        match m {
            Move::Delete(w) => stack.push((Operand::Initial(w.clone()), w.clone())),
            Move::Split { rule, cut, whole, .. } => {
                let (right, _) = stack.pop().expect("right operand");
                let (left, _) = stack.pop().expect("left operand");
                steps.push(Production {
                    rule: rule.clone(),
                    left,
                    right,
                    cut: *cut,
                    result: match s.mode {
                        Mode::Flat => whole.clone(),
                        Mode::Circular => canonical(whole),
                    },
                });
                let w = steps.last().unwrap().result.clone();
                stack.push((Operand::Step(steps.len() - 1), w));
            }
        }
    }
    match stack.pop() {
        Some((Operand::Initial(w), _)) if steps.is_empty() => ProductionSequence::trivial(w),
        _ => ProductionSequence::new(steps),
    }
}

/// Circular segments are stored canonically, so the rotations recorded
/// during the search are recomputed against the operands as replayed.
fn fix_circular_rotations(s: &SplicingSystem, seq: &mut ProductionSequence) {
    if s.mode != Mode::Circular {
        return;
    }
    let results: Vec<Word> = seq.steps.iter().map(|p| p.result.clone()).collect();
    for p in &mut seq.steps {
        let word = |op: &Operand| match op {
            Operand::Initial(w) => w.clone(),
            Operand::Step(j) => results[*j].clone(),
        };
        let (u, v) = (word(&p.left), word(&p.right));
        let r = &p.rule;
        let cut = (0..u.len())
            .filter(|&i| u.rotate(i).matches_pattern(&r.beta, &r.alpha))
            .flat_map(|i| {
                (0..v.len())
                    .filter(|&j| v.rotate(j).matches_pattern(&r.gamma, &r.delta))
                    .map(move |j| (i, j))
            })
            .find(|&(i, j)| canonical(&u.rotate(i).concat(&v.rotate(j))) == p.result);
        if let Some((left, right)) = cut {
            p.cut = Cut::Circular { left, right };
        }
    }
}

/// Result of a membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// The word is in the language; the sequence derives it (ε has none).
    Member(Option<ProductionSequence>),
    NotMember,
}

impl Membership {
    pub fn holds(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// Tape-decomposition membership with backtracking. Fails with
/// [`Error::BudgetExceeded`] when more than `budget` tapes are expanded.
pub fn member_with_budget(s: &SplicingSystem, w: &Word, budget: usize) -> Result<Membership> {
    if w.is_empty() {
        return Ok(if s.epsilon { Membership::Member(None) } else { Membership::NotMember });
    }
    let mut search = Search {
        s,
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    let start = search.normal(w.clone());
    let mut tape = vec![start];
    let mut moves = Vec::new();
    if search.run(&mut tape, &mut moves)? {
        let mut seq = moves_to_sequence(s, &moves);
        fix_circular_rotations(s, &mut seq);
        Ok(Membership::Member(Some(seq)))
    } else {
        Ok(Membership::NotMember)
    }
}

pub fn member(s: &SplicingSystem, w: &Word) -> Result<bool> {
    Ok(member_with_budget(s, w, DEFAULT_BUDGET)?.holds())
}

/// Closure words grouped by length, for reporting.
pub fn by_length(words: &BTreeSet<Word>) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for w in words {
        *out.entry(w.len()).or_insert(0) += 1;
    }
    out
}
