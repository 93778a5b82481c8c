use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::Dfa;
use crate::word::Alphabet;

/// Automaton with ε-moves over letter indices; only used as a construction
/// intermediate before determinization.
#[derive(Debug, Clone)]
pub(crate) struct Nfa {
    pub alphabet: Alphabet,
    /// `edges[s]` holds `(letter, target)` pairs; `None` is an ε-move.
    pub edges: Vec<Vec<(Option<usize>, usize)>>,
    pub starts: Vec<usize>,
    pub finals: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            edges: Vec::new(),
            starts: Vec::new(),
            finals: Vec::new(),
        }
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.edges.push(Vec::new());
        self.finals.push(accepting);
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, letter: Option<usize>, to: usize) {
        self.edges[from].push((letter, to));
    }

    /// Copies `dfa` in, returning the offset of its states.
    pub fn embed(&mut self, dfa: &Dfa, keep_finals: bool) -> usize {
        let base = self.edges.len();
        for q in 0..dfa.num_states() {
            self.add_state(keep_finals && dfa.is_final(q));
        }
        for q in 0..dfa.num_states() {
            for l in 0..dfa.alphabet().len() {
                self.add_edge(base + q, Some(l), base + dfa.step(q, l));
            }
        }
        base
    }

    /// Language concatenation of the given automata, glued by ε-moves.
    pub fn concatenation(alphabet: &Alphabet, parts: &[&Dfa]) -> Nfa {
        let mut nfa = Nfa::new(alphabet.clone());
        let mut prev_finals: Option<Vec<usize>> = None;
        let last = parts.len().saturating_sub(1);
        for (i, d) in parts.iter().enumerate() {
            let base = nfa.embed(d, i == last);
            let start = base + d.start();
            match prev_finals {
                None => nfa.starts.push(start),
                Some(fs) => fs.into_iter().for_each(|f| nfa.add_edge(f, None, start)),
            }
            prev_finals = Some(
                (0..d.num_states())
                    .filter(|&q| d.is_final(q))
                    .map(|q| base + q)
                    .collect(),
            );
        }
        if parts.is_empty() {
            let s = nfa.add_state(true);
            nfa.starts.push(s);
        }
        nfa
    }

    fn eps_closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &(l, t) in &self.edges[s] {
                if l.is_none() && set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut init: BTreeSet<usize> = self.starts.iter().copied().collect();
        self.eps_closure(&mut init);
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut sets = vec![init.clone()];
        index.insert(init, 0);
        let mut trans: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = vec![0; k];
            for (l, slot) in row.iter_mut().enumerate() {
                let mut next = BTreeSet::new();
                for &s in &sets[i] {
                    for &(el, t) in &self.edges[s] {
                        if el == Some(l) {
                            next.insert(t);
                        }
                    }
                }
                self.eps_closure(&mut next);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        sets.push(next.clone());
                        index.insert(next, id);
                        queue.push_back(id);
                        id
                    }
                };
                *slot = id;
            }
            if trans.len() <= i {
                trans.resize(i + 1, Vec::new());
            }
            trans[i] = row;
        }
        let finals = sets
            .iter()
            .map(|s| s.iter().any(|&q| self.finals[q]))
            .collect();
        Dfa::from_parts(self.alphabet.clone(), 0, finals, trans)
    }
}
