use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::nfa::Nfa;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// A complete deterministic automaton.
///
/// Every constructor returns the minimal complete automaton with states
/// numbered in breadth-first order from the start (letters in alphabet
/// order), so two automata over the same alphabet are equal exactly when
/// their languages are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    start: usize,
    finals: Vec<bool>,
    trans: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Intersect,
    Union,
    Difference,
}

/// Answer of a decision query with an optional length-lex-least witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<Word>,
}

/// An accepting run `prefix · cycle* · suffix` through a nonempty cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pump {
    pub prefix: Word,
    pub cycle: Word,
    pub suffix: Word,
}

impl Dfa {
    /// Builds and normalizes from raw parts. `trans` must be total.
    pub fn from_parts(alphabet: Alphabet, start: usize, finals: Vec<bool>, trans: Vec<Vec<usize>>) -> Dfa {
        let raw = Dfa {
            alphabet,
            start,
            finals,
            trans,
        };
        raw.minimize()
    }

    /// Builds from a possibly partial transition table; missing moves go to a sink.
    pub fn from_partial(
        alphabet: Alphabet,
        start: usize,
        finals: &[usize],
        edges: &[(usize, char, usize)],
        num_states: usize,
    ) -> Result<Dfa> {
        let k = alphabet.len();
        let sink = num_states;
        let mut trans = vec![vec![sink; k]; num_states + 1];
        for &(p, c, q) in edges {
            let l = alphabet.index_of(c).ok_or(Error::UnknownLetter(c))?;
            if p >= num_states {
                return Err(Error::UnknownState(p));
            }
            if q >= num_states {
                return Err(Error::UnknownState(q));
            }
            trans[p][l] = q;
        }
        if start >= num_states {
            return Err(Error::UnknownState(start));
        }
        let mut fin = vec![false; num_states + 1];
        for &f in finals {
            if f >= num_states {
                return Err(Error::UnknownState(f));
            }
            fin[f] = true;
        }
        Ok(Dfa::from_parts(alphabet, start, fin, trans))
    }

    pub fn empty(alphabet: &Alphabet) -> Dfa {
        Dfa::from_parts(alphabet.clone(), 0, vec![false], vec![vec![0; alphabet.len()]])
    }

    pub fn universal(alphabet: &Alphabet) -> Dfa {
        Dfa::from_parts(alphabet.clone(), 0, vec![true], vec![vec![0; alphabet.len()]])
    }

    pub fn epsilon(alphabet: &Alphabet) -> Dfa {
        Dfa::from_parts(
            alphabet.clone(),
            0,
            vec![true, false],
            vec![vec![1; alphabet.len()], vec![1; alphabet.len()]],
        )
    }

    /// Accepts exactly the given words.
    pub fn from_words<'a>(alphabet: &Alphabet, words: impl IntoIterator<Item = &'a Word>) -> Result<Dfa> {
        // trie, state 0 is the root, state 1 the sink
        let k = alphabet.len();
        let mut trans = vec![vec![1; k], vec![1; k]];
        let mut finals = vec![false, false];
        for w in words {
            let mut q = 0;
            for &c in w.letters() {
                let l = alphabet.index_of(c).ok_or(Error::UnknownLetter(c))?;
                if trans[q][l] == 1 {
                    trans.push(vec![1; k]);
                    finals.push(false);
                    let n = trans.len() - 1;
                    trans[q][l] = n;
                }
                q = trans[q][l];
            }
            finals[q] = true;
        }
        Ok(Dfa::from_parts(alphabet.clone(), 0, finals, trans))
    }

    /// `prefix · A* · suffix`, with the handles not allowed to overlap.
    pub fn pattern(alphabet: &Alphabet, prefix: &Word, suffix: &Word) -> Result<Dfa> {
        let p = Dfa::from_words(alphabet, [prefix])?;
        let s = Dfa::from_words(alphabet, [suffix])?;
        let all = Dfa::universal(alphabet);
        Ok(Dfa::concat_all(alphabet, &[&p, &all, &s]))
    }

    pub fn concat_all(alphabet: &Alphabet, parts: &[&Dfa]) -> Dfa {
        Nfa::concatenation(alphabet, parts).determinize()
    }

    pub fn concat(&self, other: &Dfa) -> Result<Dfa> {
        self.same_alphabet(other)?;
        Ok(Dfa::concat_all(&self.alphabet, &[self, other]))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&q| self.finals[q])
    }

    /// Transition on a letter index.
    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.trans[q][letter]
    }

    /// State reached from `q` by `w`; `None` if `w` leaves the alphabet.
    pub fn run_from(&self, q: usize, w: &Word) -> Option<usize> {
        w.letters()
            .iter()
            .try_fold(q, |q, &c| self.alphabet.index_of(c).map(|l| self.trans[q][l]))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.run_from(self.start, w).is_some_and(|q| self.finals[q])
    }

    /// States from which some final state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev = vec![Vec::new(); n];
        for (p, row) in self.trans.iter().enumerate() {
            for &q in row {
                rev[q].push(p);
            }
        }
        let mut live = self.finals.clone();
        let mut stack: Vec<usize> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    fn same_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn complement(&self) -> Dfa {
        let finals = self.finals.iter().map(|f| !f).collect();
        Dfa::from_parts(self.alphabet.clone(), self.start, finals, self.trans.clone())
    }

    pub fn boolean(&self, op: BoolOp, other: &Dfa) -> Result<Dfa> {
        self.same_alphabet(other)?;
        let k = self.alphabet.len();
        let mut index = BTreeMap::new();
        let mut pairs = vec![(self.start, other.start)];
        index.insert((self.start, other.start), 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for l in 0..k {
                let next = (self.trans[p][l], other.trans[q][l]);
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row.push(id);
            }
            trans.push(row);
            i += 1;
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| {
                let (a, b) = (self.finals[p], other.finals[q]);
                match op {
                    BoolOp::Intersect => a && b,
                    BoolOp::Union => a || b,
                    BoolOp::Difference => a && !b,
                }
            })
            .collect();
        Ok(Dfa::from_parts(self.alphabet.clone(), 0, finals, trans))
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.boolean(BoolOp::Intersect, other)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.boolean(BoolOp::Union, other)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.boolean(BoolOp::Difference, other)
    }

    /// Length-lex-least accepted word.
    pub fn shortest_word(&self) -> Option<Word> {
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.start] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut letters = Vec::new();
                let mut cur = q;
                while let Some((p, l)) = parent[cur] {
                    letters.push(self.alphabet.letters()[l]);
                    cur = p;
                }
                letters.reverse();
                return Some(Word::new(letters));
            }
            for l in 0..self.alphabet.len() {
                let t = self.trans[q][l];
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, l));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> Decision {
        let w = self.shortest_word();
        Decision {
            holds: w.is_none(),
            witness: w,
        }
    }

    /// `L(self) ⊆ L(other)`; the witness lies in `L(self) ∖ L(other)`.
    pub fn subset(&self, other: &Dfa) -> Result<Decision> {
        let w = self.difference(other)?.shortest_word();
        Ok(Decision {
            holds: w.is_none(),
            witness: w,
        })
    }

    /// Language equality; the witness lies in the symmetric difference.
    pub fn equivalent(&self, other: &Dfa) -> Result<Decision> {
        let a = self.difference(other)?.shortest_word();
        let b = other.difference(self)?.shortest_word();
        let w = match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        Ok(Decision {
            holds: w.is_none(),
            witness: w,
        })
    }

    /// `None` when the language is finite, otherwise a pumpable run.
    pub fn infinite_witness(&self) -> Option<Pump> {
        let live = self.live_states();
        let n = self.num_states();
        // access words in BFS order
        let mut access: Vec<Option<Word>> = vec![None; n];
        access[self.start] = Some(Word::empty());
        let mut queue = VecDeque::from([self.start]);
        let mut order = Vec::new();
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for l in 0..self.alphabet.len() {
                let t = self.trans[q][l];
                if access[t].is_none() {
                    let mut w = access[q].clone().unwrap().letters().to_vec();
                    w.push(self.alphabet.letters()[l]);
                    access[t] = Some(Word::new(w));
                    queue.push_back(t);
                }
            }
        }
        for &q in &order {
            if !live[q] {
                continue;
            }
            if let Some(cycle) = self.path_between(q, q, &live, true) {
                let suffix = self.path_to_final(q)?;
                return Some(Pump {
                    prefix: access[q].clone().unwrap(),
                    cycle,
                    suffix,
                });
            }
        }
        None
    }

    pub fn is_finite(&self) -> Decision {
        match self.infinite_witness() {
            None => Decision {
                holds: true,
                witness: None,
            },
            Some(p) => Decision {
                holds: false,
                witness: Some(p.prefix.concat(&p.cycle).concat(&p.suffix)),
            },
        }
    }

    /// Shortest nonempty (if `nonempty`) path from `from` to `to` through live states.
    fn path_between(&self, from: usize, to: usize, live: &[bool], nonempty: bool) -> Option<Word> {
        if !nonempty && from == to {
            return Some(Word::empty());
        }
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for l in 0..self.alphabet.len() {
            let t = self.trans[from][l];
            if live[t] && !seen[t] {
                seen[t] = true;
                parent[t] = Some((from, l));
                queue.push_back(t);
            }
        }
        while let Some(q) = queue.pop_front() {
            if q == to {
                let mut letters = Vec::new();
                let mut cur = q;
                loop {
                    let (p, l) = parent[cur].unwrap();
                    letters.push(self.alphabet.letters()[l]);
                    if p == from {
                        break;
                    }
                    cur = p;
                }
                letters.reverse();
                return Some(Word::new(letters));
            }
            for l in 0..self.alphabet.len() {
                let t = self.trans[q][l];
                if live[t] && !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, l));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    fn path_to_final(&self, q: usize) -> Option<Word> {
        self.rerooted(q).shortest_word()
    }

    fn rerooted(&self, q: usize) -> Dfa {
        Dfa::from_parts(self.alphabet.clone(), q, self.finals.clone(), self.trans.clone())
    }

    /// `(G_q, D_q)`: words leading from the start to `q`, and from `q` to a final state.
    pub fn state_languages(&self, q: usize) -> Result<(Dfa, Dfa)> {
        if q >= self.num_states() {
            return Err(Error::UnknownState(q));
        }
        let mut finals = vec![false; self.num_states()];
        finals[q] = true;
        let left = Dfa::from_parts(self.alphabet.clone(), self.start, finals, self.trans.clone());
        Ok((left, self.rerooted(q)))
    }

    /// `{ yx : xy ∈ L }`.
    pub fn conjugacy_closure(&self) -> Dfa {
        // states (phase, current, guessed split state) flattened into one index
        let n = self.num_states();
        let k = self.alphabet.len();
        let id = |phase: usize, cur: usize, guess: usize| (phase * n + cur) * n + guess;
        let mut nfa = Nfa::new(self.alphabet.clone());
        for phase in 0..2 {
            for cur in 0..n {
                for guess in 0..n {
                    nfa.add_state(phase == 1 && cur == guess);
                }
            }
        }
        for guess in 0..n {
            nfa.starts.push(id(0, guess, guess));
            for cur in 0..n {
                for l in 0..k {
                    let t = self.trans[cur][l];
                    nfa.add_edge(id(0, cur, guess), Some(l), id(0, t, guess));
                    nfa.add_edge(id(1, cur, guess), Some(l), id(1, t, guess));
                }
                if self.finals[cur] {
                    nfa.add_edge(id(0, cur, guess), None, id(1, self.start, guess));
                }
            }
        }
        nfa.determinize()
    }

    /// Accepted words of length at most `n`, in length-lex order.
    pub fn enumerate(&self, n: usize) -> Vec<Word> {
        let live = self.live_states();
        let mut out = Vec::new();
        let mut layer: Vec<(usize, Vec<char>)> = vec![(self.start, Vec::new())];
        for len in 0..=n {
            for (q, w) in &layer {
                if self.finals[*q] {
                    out.push(Word::new(w.clone()));
                }
            }
            if len == n {
                break;
            }
            let mut next = Vec::new();
            for (q, w) in &layer {
                for (l, &c) in self.alphabet.letters().iter().enumerate() {
                    let t = self.trans[*q][l];
                    if live[t] {
                        let mut w2 = w.clone();
                        w2.push(c);
                        next.push((t, w2));
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// All accepted words; `None` when the language is infinite.
    pub fn finite_language(&self) -> Option<BTreeSet<Word>> {
        if self.infinite_witness().is_some() {
            return None;
        }
        Some(self.enumerate(self.num_states()).into_iter().collect())
    }

    /// Moore refinement on the reachable part, then BFS renumbering.
    fn minimize(self) -> Dfa {
        let k = self.alphabet.len();
        // reachable states in BFS order
        let mut order = vec![self.start];
        let mut idx = vec![usize::MAX; self.trans.len()];
        idx[self.start] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for l in 0..k {
                let t = self.trans[q][l];
                if idx[t] == usize::MAX {
                    idx[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        let m = order.len();
        let trans: Vec<Vec<usize>> = order
            .iter()
            .map(|&q| self.trans[q].iter().map(|&t| idx[t]).collect())
            .collect();
        let finals: Vec<bool> = order.iter().map(|&q| self.finals[q]).collect();

        let mut class: Vec<usize> = finals.iter().map(|&f| usize::from(f)).collect();
        let mut count = 0;
        loop {
            let mut sig_index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next = vec![0; m];
            for q in 0..m {
                let sig = (class[q], trans[q].iter().map(|&t| class[t]).collect());
                let len = sig_index.len();
                next[q] = *sig_index.entry(sig).or_insert(len);
            }
            let new_count = sig_index.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // renumber classes in BFS order from the start class
        let mut renum = vec![usize::MAX; count];
        let mut rep = Vec::new();
        renum[class[0]] = 0;
        rep.push(0);
        let mut i = 0;
        while i < rep.len() {
            let q = rep[i];
            for l in 0..k {
                let c = class[trans[q][l]];
                if renum[c] == usize::MAX {
                    renum[c] = rep.len();
                    rep.push(trans[q][l]);
                }
            }
            i += 1;
        }
        let new_trans = rep
            .iter()
            .map(|&q| trans[q].iter().map(|&t| renum[class[t]]).collect())
            .collect();
        let new_finals = rep.iter().map(|&q| finals[q]).collect();
        Dfa {
            alphabet: self.alphabet,
            start: 0,
            finals: new_finals,
            trans: new_trans,
        }
    }

    /// The transition table as `(from, letter, to)` triples.
    pub fn edges(&self) -> Vec<(usize, char, usize)> {
        let mut out = Vec::new();
        for (p, row) in self.trans.iter().enumerate() {
            for (l, &q) in row.iter().enumerate() {
                out.push((p, self.alphabet.letters()[l], q));
            }
        }
        out
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Dfa over {{{}}} start {}", self.alphabet, self.start)?;
        for (q, row) in self.trans.iter().enumerate() {
            let mark = if self.finals[q] { "*" } else { " " };
            write!(f, "{mark}{q}:")?;
            for (l, t) in row.iter().enumerate() {
                write!(f, " {}->{t}", self.alphabet.letters()[l])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
