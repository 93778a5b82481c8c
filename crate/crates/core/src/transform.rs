//! System rewrites: completion, heterogeneous splitting, circular to flat,
//! and reordering production sequences so concatenations come first.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::production::{replay_sequence, Cut, Operand, Production, ProductionSequence};
use crate::rule::{SplicingRule, Usage};
use crate::system::{InitialSet, Mode, SplicingSystem};
use crate::word::{conjugates, Alphabet, Word};

fn require_alphabetic<'a>(rules: impl IntoIterator<Item = &'a SplicingRule>) -> Result<()> {
    match rules.into_iter().find(|r| !r.is_alphabetic()) {
        Some(r) => Err(Error::NotAlphabetic(r.to_string())),
        None => Ok(()),
    }
}

/// Closes the rule set under replacing any empty handles by letters.
pub fn complete(rules: &BTreeSet<SplicingRule>, alphabet: &Alphabet) -> Result<BTreeSet<SplicingRule>> {
    require_alphabetic(rules)?;
    let mut out = BTreeSet::new();
    for r in rules {
        let mut variants: Vec<[Word; 4]> = vec![[Word::empty(), Word::empty(), Word::empty(), Word::empty()]];
        for (i, h) in r.handles().into_iter().enumerate() {
            let choices: Vec<Word> = if h.is_empty() {
                std::iter::once(Word::empty())
                    .chain(alphabet.letters().iter().map(|&c| Word::new(vec![c])))
                    .collect()
            } else {
                vec![h.clone()]
            };
            variants = variants
                .into_iter()
                .flat_map(|v| {
                    choices.iter().map(move |c| {
                        let mut v = v.clone();
                        v[i] = c.clone();
                        v
                    })
                })
                .collect();
        }
        out.extend(variants.into_iter().map(|hs| SplicingRule::from_handles(r.usage, hs)));
    }
    Ok(out)
}

/// Rule with the handles that `complete` would add but are missing, if any.
fn first_missing(rules: &BTreeSet<SplicingRule>, alphabet: &Alphabet) -> Result<Option<SplicingRule>> {
    Ok(complete(rules, alphabet)?.into_iter().find(|r| !rules.contains(r)))
}

/// Pure rules stay splice rules; every rule with an empty handle on one
/// side also yields the concatenation doing that side's job. The
/// concatenation rules are completed.
pub fn to_heterogeneous(s: &SplicingSystem) -> Result<SplicingSystem> {
    if s.mode != Mode::Flat {
        return Err(Error::Unsupported("heterogeneous form of a circular system"));
    }
    require_alphabetic(&s.rules)?;
    if let Some(r) = first_missing(&s.rules, &s.alphabet)? {
        return Err(Error::Incomplete(r.to_string()));
    }
    let (pure, concat) = heterogeneous_parts(&s.rules);
    let mut rules = pure;
    rules.extend(complete(&concat, &s.alphabet)?);
    Ok(SplicingSystem {
        rules,
        ..s.clone()
    })
}

/// The pure rules and the (uncompleted) concatenation rules of the
/// heterogeneous form. Concatenation rules already present are kept.
pub fn heterogeneous_parts(rules: &BTreeSet<SplicingRule>) -> (BTreeSet<SplicingRule>, BTreeSet<SplicingRule>) {
    let mut pure = BTreeSet::new();
    let mut concat = BTreeSet::new();
    for r in rules {
        if r.usage == Usage::Concat {
            concat.insert(r.clone());
            continue;
        }
        if r.is_pure() {
            pure.insert(r.clone());
        }
        if r.beta.is_empty() {
            concat.insert(SplicingRule::from_handles(
                Usage::Concat,
                [Word::empty(), r.alpha.clone(), r.gamma.clone(), r.delta.clone()],
            ));
        }
        if r.alpha.is_empty() {
            concat.insert(SplicingRule::from_handles(
                Usage::Concat,
                [r.gamma.clone(), r.delta.clone(), r.beta.clone(), Word::empty()],
            ));
        }
    }
    (pure, concat)
}

/// The flat expansion `{α#β$γ#δ, δ#γ$β#α, ⟨β#α$γ#δ⟩, ⟨γ#δ$β#α⟩}` of a
/// circular rule.
pub fn circular_expansion(r: &SplicingRule) -> [SplicingRule; 4] {
    let (a, b, g, d) = (r.alpha.clone(), r.beta.clone(), r.gamma.clone(), r.delta.clone());
    [
        SplicingRule::from_handles(Usage::Splice, [a.clone(), b.clone(), g.clone(), d.clone()]),
        SplicingRule::from_handles(Usage::Splice, [d.clone(), g.clone(), b.clone(), a.clone()]),
        SplicingRule::from_handles(Usage::Concat, [b.clone(), a.clone(), g.clone(), d.clone()]),
        SplicingRule::from_handles(Usage::Concat, [g, d, b, a]),
    ]
}

/// Flat heterogeneous system generating the full linearization of a
/// circular alphabetic system.
pub fn circular_to_flat(s: &SplicingSystem) -> Result<SplicingSystem> {
    if s.mode != Mode::Circular {
        return Err(Error::Unsupported("circular_to_flat needs a circular system"));
    }
    require_alphabetic(&s.rules)?;
    let initial = match &s.initial {
        InitialSet::Finite(ws) => InitialSet::Finite(ws.iter().flat_map(conjugates).collect()),
        InitialSet::Regular(d) => InitialSet::Regular(d.conjugacy_closure()),
        InitialSet::ContextFree(_) => {
            return Err(Error::Unsupported("linearization of a context-free circular initial set"))
        }
    };
    let rules = s.rules.iter().flat_map(circular_expansion).collect();
    Ok(SplicingSystem {
        alphabet: s.alphabet.clone(),
        initial,
        rules,
        mode: Mode::Flat,
        epsilon: s.epsilon,
    })
}

/// A step under a stable identity; operands refer to identities.
#[derive(Clone)]
struct Node {
    id: usize,
    p: Production,
}

fn refers_to(op: &Operand, id: usize) -> bool {
    matches!(op, Operand::Step(j) if *j == id)
}

/// Indices of the steps the last step depends on, itself included.
fn contributing_steps(steps: &[Production]) -> BTreeSet<usize> {
    let mut live = BTreeSet::new();
    if let Some(last) = steps.len().checked_sub(1) {
        live.insert(last);
    }
    for i in (0..steps.len()).rev() {
        if !live.contains(&i) {
            continue;
        }
        for op in [&steps[i].left, &steps[i].right] {
            if let Operand::Step(j) = op {
                live.insert(*j);
            }
        }
    }
    live
}

/// Reorders a production sequence of an alphabetic heterogeneous system so
/// every concatenation precedes every proper insertion, keeping the result.
/// Steps that do not contribute to the result are dropped first.
///
/// The earliest concatenation that directly follows an insertion is moved
/// one step to the left, repeatedly. When the concatenation consumes the
/// insertion's result it is rebuilt on the insertion's operand and the
/// insertion is redone afterwards (twice for a self-concatenation).
pub fn normalize_sequence(s: &SplicingSystem, seq: &ProductionSequence) -> Result<ProductionSequence> {
    require_alphabetic(&s.rules)?;
    if let Some(r) = s.rules.iter().find(|r| r.usage == Usage::Splice && !r.is_pure()) {
        return Err(Error::NotHeterogeneous(format!("rule {r} is neither pure nor a concatenation")));
    }
    replay_sequence(s, seq)?;
    let live = contributing_steps(&seq.steps);
    let mut nodes: Vec<Node> = seq
        .steps
        .iter()
        .enumerate()
        .filter(|(id, _)| live.contains(id))
        .map(|(id, p)| Node { id, p: p.clone() })
        .collect();
    let mut next_id = seq.steps.len();
    let is_concat = |n: &Node| n.p.rule.usage == Usage::Concat;
    while let Some(k) = (1..nodes.len()).find(|&k| is_concat(&nodes[k]) && !is_concat(&nodes[k - 1])) {
        let (n1, n2) = (nodes[k - 1].clone(), nodes[k].clone());
        let uses_left = refers_to(&n2.p.left, n1.id);
        let uses_right = refers_to(&n2.p.right, n1.id);
        if !uses_left && !uses_right {
            nodes.swap(k - 1, k);
            continue;
        }
        let word_of = |op: &Operand, nodes: &[Node]| -> Word {
            match op {
                Operand::Initial(w) => w.clone(),
                Operand::Step(j) => nodes.iter().find(|n| n.id == *j).unwrap().p.result.clone(),
            }
        };
        let u = word_of(&n1.p.left, &nodes);
        let v = word_of(&n1.p.right, &nodes);
        let Cut::Flat(c) = n1.p.cut else {
            return Err(Error::Unsupported("normalizing a circular production sequence"));
        };
        let r1 = n1.p.rule.clone();
        let r2 = n2.p.rule.clone();
        let insert = |id: usize, left: Operand, base: &Word, at: usize| Node {
            id,
            p: Production {
                rule: r1.clone(),
                left,
                right: n1.p.right.clone(),
                cut: Cut::Flat(at),
                result: base.insert_at(at, &v),
            },
        };
        let mut replacement = Vec::new();
        let concat_id = next_id;
        next_id += 1;
        if uses_left && uses_right {
            let uu = u.concat(&u);
            replacement.push(Node {
                id: concat_id,
                p: Production {
                    rule: r2,
                    left: n1.p.left.clone(),
                    right: n1.p.left.clone(),
                    cut: Cut::Flat(u.len()),
                    result: uu.clone(),
                },
            });
            let mid_id = next_id;
            next_id += 1;
            let mid = insert(mid_id, Operand::Step(concat_id), &uu, c);
            let mid_word = mid.p.result.clone();
            replacement.push(mid);
            replacement.push(insert(n2.id, Operand::Step(mid_id), &mid_word, c + v.len() + u.len()));
        } else {
            let (left, right, at) = if uses_left {
                (n1.p.left.clone(), n2.p.right.clone(), c)
            } else {
                (n2.p.left.clone(), n1.p.left.clone(), word_of(&n2.p.left, &nodes).len() + c)
            };
            let left_word = word_of(&left, &nodes);
            let joined = left_word.concat(&word_of(&right, &nodes));
            replacement.push(Node {
                id: concat_id,
                p: Production {
                    rule: r2,
                    left,
                    right,
                    cut: Cut::Flat(left_word.len()),
                    result: joined.clone(),
                },
            });
            replacement.push(insert(n2.id, Operand::Step(concat_id), &joined, at));
        }
        let still_used = nodes[k + 1..]
            .iter()
            .any(|n| refers_to(&n.p.left, n1.id) || refers_to(&n.p.right, n1.id));
        if still_used {
            replacement.push(n1);
        }
        nodes.splice(k - 1..=k, replacement);
    }
    let position: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
    let steps = nodes
        .into_iter()
        .map(|n| {
            let fix = |op: Operand| match op {
                Operand::Step(j) => Operand::Step(position[&j]),
                op => op,
            };
            Production {
                left: fix(n.p.left),
                right: fix(n.p.right),
                ..n.p
            }
        })
        .collect();
    Ok(ProductionSequence {
        seed: seq.seed.clone(),
        steps,
    })
}
