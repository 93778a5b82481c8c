//! Small systems with known languages, used by tests and the command line.

use crate::automata::compile;
use crate::rule::SplicingRule;
use crate::system::{InitialSet, SplicingSystem};
use crate::word::Alphabet;

fn splice(a: &str, b: &str, c: &str, d: &str) -> SplicingRule {
    SplicingRule::splice(a, b, c, d)
}

fn concat(a: &str, b: &str, c: &str, d: &str) -> SplicingRule {
    SplicingRule::concat(a, b, c, d)
}

/// `{aⁿbⁿ | n ≥ 1}` from `ab` and `a#b$a#b`.
pub fn anbn() -> SplicingSystem {
    SplicingSystem::flat("a b", InitialSet::finite(["ab"]), [splice("a", "b", "a", "b")]).unwrap()
}

/// The circular words `⟲aⁿbⁿ`.
pub fn anbn_circular() -> SplicingSystem {
    SplicingSystem::circular("a b", InitialSet::finite(["ab"]), [splice("a", "b", "a", "b")]).unwrap()
}

/// The Dyck language over `a ā`, by free insertion of `aā`.
pub fn dyck() -> SplicingSystem {
    SplicingSystem::flat("a ā", InitialSet::finite(["aā"]), [splice("-", "-", "-", "-")]).unwrap()
}

/// Circular words with as many `a` as `ā`.
pub fn dyck_circular() -> SplicingSystem {
    SplicingSystem::circular("a ā", InitialSet::finite(["aā"]), [splice("-", "-", "-", "-")]).unwrap()
}

/// Four sweeps that turn `▶uⁿ◀` into `▶u²ⁿ◀` for `u = 0123`, so the
/// language meets `▶u*◀` in `{▶u^(2^k)◀}`.
pub fn doubling() -> SplicingSystem {
    let rules = [
        splice("▶", "0123", "0", "-"),
        splice("00123", "0123", "0", "-"),
        splice("0", "0123◀", "1", "-"),
        splice("0", "0123010123", "1", "-"),
        splice("▶01", "0123", "2", "-"),
        splice("012012301", "0123", "2", "-"),
        splice("012", "0123◀", "3", "-"),
        splice("012", "012301230123", "3", "-"),
    ];
    SplicingSystem::flat("0 1 2 3 ▶ ◀", InitialSet::finite(["▶0123◀", "0", "1", "2", "3"]), rules).unwrap()
}

/// Pure rules on `I = c*ab ∪ c`, generating `L ∪ {c} ∪ c(c ∪ L)*L` with
/// `L = {aⁿbⁿ | n ≥ 1}`.
pub fn pure_cab() -> SplicingSystem {
    let alphabet = Alphabet::parse("a b c").unwrap();
    let initial = InitialSet::Regular(compile("c*ab|c", &alphabet).unwrap());
    let rules = [splice("c", "a", "-", "b"), splice("c", "c", "-", "b"), splice("a", "b", "a", "b")];
    SplicingSystem::new(alphabet, initial, rules, crate::system::Mode::Flat).unwrap()
}

/// Concatenation rules on `{ab, c}`, generating `c*ab ∪ {c}`.
pub fn concat_cab() -> SplicingSystem {
    let mut rules = vec![concat("-", "c", "-", "b")];
    for x in ["a", "b", "c"] {
        rules.push(concat("-", "c", x, "b"));
    }
    SplicingSystem::flat("a b c", InitialSet::finite(["ab", "c"]), rules).unwrap()
}

/// Concatenation rules with a finite initial set and the non-regular
/// language `L ∪ cL ∪ cLd ∪ acLd`, `L = {(ac)ⁿab(db)ⁿ | n ≥ 0}`.
pub fn concat_nonregular() -> SplicingSystem {
    let rules = [
        concat("-", "c", "a", "b"),
        concat("c", "b", "d", "-"),
        concat("-", "a", "c", "d"),
        concat("a", "d", "b", "-"),
    ];
    SplicingSystem::flat("a b c d", InitialSet::finite(["ab", "a", "b", "c", "d"]), rules).unwrap()
}

/// `a#b$a#b` and `c#-$-#b` on `{ab, c}`; a mix of pure and non-pure rules
/// with the same language as [`pure_cab`].
pub fn mixed_cab() -> SplicingSystem {
    SplicingSystem::flat("a b c", InitialSet::finite(["ab", "c"]), [splice("a", "b", "a", "b"), splice("c", "-", "-", "b")])
        .unwrap()
}

/// Every fixture with its command-line name and a length bound at which
/// the language is cheap to enumerate.
pub fn all() -> Vec<(&'static str, SplicingSystem, usize)> {
    vec![
        ("anbn", anbn(), 12),
        ("anbn_circular", anbn_circular(), 10),
        ("dyck", dyck(), 8),
        ("dyck_circular", dyck_circular(), 8),
        ("doubling", doubling(), 14),
        ("pure_cab", pure_cab(), 10),
        ("concat_cab", concat_cab(), 8),
        ("concat_nonregular", concat_nonregular(), 10),
        ("mixed_cab", mixed_cab(), 10),
    ]
}
