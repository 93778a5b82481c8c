use std::collections::{BTreeMap, HashSet};

use super::{word_of, Cfg, Sentence, Symbol, Terminal};
use crate::word::Word;

#[derive(Clone, Copy)]
enum Sym {
    Var(usize),
    Term(u32),
}

/// Indexed copy of a grammar with terminals interned in their sort order, so
/// comparing id vectors compares sentences.
struct Indexed {
    terminals: Vec<Terminal>,
    rules: Vec<(usize, Vec<Sym>)>,
    num_vars: usize,
    start: usize,
}

impl Indexed {
    fn new(g: &Cfg) -> Indexed {
        let vars: BTreeMap<&str, usize> = g.variables().enumerate().map(|(i, v)| (v, i)).collect();
        let terminals: Vec<Terminal> = g.terminals().into_iter().collect();
        let tid: BTreeMap<&Terminal, u32> =
            terminals.iter().enumerate().map(|(i, t)| (t, i as u32)).collect();
        let rules = g
            .rules()
            .map(|(v, rhs)| {
                let body = rhs
                    .iter()
                    .map(|s| match s {
                        Symbol::Var(x) => Sym::Var(vars[x.as_str()]),
                        Symbol::Term(t) => Sym::Term(tid[t]),
                    })
                    .collect();
                (vars[v], body)
            })
            .collect();
        Indexed {
            rules,
            num_vars: vars.len(),
            start: vars[g.start()],
            terminals,
        }
    }

    /// Length of the shortest sentence of each variable.
    fn min_lengths(&self) -> Vec<usize> {
        let mut min = vec![usize::MAX; self.num_vars];
        loop {
            let mut changed = false;
            for (v, rhs) in &self.rules {
                let mut total = 0usize;
                for s in rhs {
                    total = total.saturating_add(match s {
                        Sym::Var(x) => min[*x],
                        Sym::Term(_) => 1,
                    });
                }
                if total < min[*v] {
                    min[*v] = total;
                    changed = true;
                }
            }
            if !changed {
                return min;
            }
        }
    }
}

/// All sentences of length at most `n`, in length-lexicographic order.
/// Markers and named terminals count as one symbol each.
pub fn enumerate_cfg(g: &Cfg, n: usize) -> Vec<Sentence> {
    let ix = Indexed::new(g);
    let min = ix.min_lengths();
    // lang[v][l]: sentences of v of length l
    let mut lang: Vec<Vec<HashSet<Vec<u32>>>> = vec![vec![HashSet::new(); n + 1]; ix.num_vars];
    let mut users: Vec<Vec<usize>> = vec![Vec::new(); ix.num_vars];
    for (i, (_, rhs)) in ix.rules.iter().enumerate() {
        for s in rhs {
            if let Sym::Var(x) = s {
                users[*x].push(i);
            }
        }
    }
    let mut queued = vec![true; ix.rules.len()];
    let mut queue: Vec<usize> = (0..ix.rules.len()).collect();
    while let Some(i) = queue.pop() {
        queued[i] = false;
        let (v, rhs) = &ix.rules[i];
        if rhs.iter().any(|s| matches!(s, Sym::Var(x) if min[*x] == usize::MAX)) {
            continue;
        }
        // minimal length still needed after position k
        let mut rest = vec![0usize; rhs.len() + 1];
        for k in (0..rhs.len()).rev() {
            rest[k] = rest[k + 1]
                + match rhs[k] {
                    Sym::Var(x) => min[x],
                    Sym::Term(_) => 1,
                };
        }
        if rest[0] > n {
            continue;
        }
        let mut partial: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n + 1];
        partial[0].push(Vec::new());
        for (k, s) in rhs.iter().enumerate() {
            let limit = n - rest[k + 1];
            let mut next: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n + 1];
            for (len, words) in partial.iter().enumerate() {
                for w in words {
                    match *s {
                        Sym::Term(t) => {
                            if len < limit {
                                let mut x = w.clone();
                                x.push(t);
                                next[len + 1].push(x);
                            }
                        }
                        Sym::Var(y) => {
                            for (l2, ys) in lang[y].iter().enumerate().take(limit.saturating_sub(len) + 1) {
                                for yw in ys {
                                    let mut x = w.clone();
                                    x.extend_from_slice(yw);
                                    next[len + l2].push(x);
                                }
                            }
                        }
                    }
                }
            }
            partial = next;
        }
        let mut grew = false;
        for (len, words) in partial.into_iter().enumerate() {
            for w in words {
                grew |= lang[*v][len].insert(w);
            }
        }
        if grew {
            for &j in &users[*v] {
                if !queued[j] {
                    queued[j] = true;
                    queue.push(j);
                }
            }
        }
    }
    let mut out: Vec<Vec<u32>> = lang[ix.start].iter().flatten().cloned().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.into_iter()
        .map(|w| w.into_iter().map(|t| ix.terminals[t as usize].clone()).collect())
        .collect()
}

/// The letter words of length at most `n`; sentences holding markers or
/// named terminals are skipped.
pub fn enumerate_words(g: &Cfg, n: usize) -> Vec<Word> {
    enumerate_cfg(g, n).iter().filter_map(|s| word_of(s)).collect()
}

impl Cfg {
    /// Membership by span saturation: works with ε- and unit rules.
    pub fn derives(&self, s: &[Terminal]) -> bool {
        let ix = Indexed::new(self);
        let ids: Option<Vec<u32>> = s
            .iter()
            .map(|t| ix.terminals.binary_search(t).ok().map(|i| i as u32))
            .collect();
        let Some(ids) = ids else {
            return false;
        };
        let n = ids.len();
        // spans[v][i][j]: v derives ids[i..j]
        let mut spans = vec![vec![vec![false; n + 1]; n + 1]; ix.num_vars];
        loop {
            let mut changed = false;
            for (v, rhs) in &ix.rules {
                for i in 0..=n {
                    let mut ends = vec![false; n + 1];
                    ends[i] = true;
                    for s in rhs {
                        let mut next = vec![false; n + 1];
                        for p in (i..=n).filter(|&p| ends[p]) {
                            match *s {
                                Sym::Term(t) => {
                                    if p < n && ids[p] == t {
                                        next[p + 1] = true;
                                    }
                                }
                                Sym::Var(y) => {
                                    for q in p..=n {
                                        if spans[y][p][q] {
                                            next[q] = true;
                                        }
                                    }
                                }
                            }
                        }
                        ends = next;
                    }
                    for j in i..=n {
                        if ends[j] && !spans[*v][i][j] {
                            spans[*v][i][j] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return spans[ix.start][0][n];
            }
        }
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.derives(&super::sentence_of(w))
    }
}
