//! Alphabets, linear words and circular words.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Characters that carry syntax in the rule, regex and grammar notations.
pub const RESERVED: &[char] = &[
    '#', '$', '-', '_', '|', '(', ')', '*', '+', '?', '<', '>', '@', ',', ':',
];

/// A finite, ordered set of single-character letters.
///
/// Letters are kept in `char` order, which is the order used for every
/// lexicographic comparison in the crate. Uppercase letters are excluded
/// because the grammar notation reads uppercase-initial tokens as variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in letters {
            if c.is_whitespace() || RESERVED.contains(&c) || c.is_uppercase() {
                return Err(Error::ReservedLetter(c));
            }
            if !seen.insert(c) {
                return Err(Error::DuplicateLetter(c));
            }
        }
        if seen.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet {
            letters: seen.into_iter().collect(),
        })
    }

    /// Parses `"a b c"` or `"abc"`.
    pub fn parse(text: &str) -> Result<Self> {
        Alphabet::new(text.chars().filter(|c| !c.is_whitespace()))
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.letters.binary_search(&c).is_ok()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.binary_search(&c).ok()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|c| !self.contains(**c)) {
            Some(&c) => Err(Error::UnknownLetter(c)),
            None => Ok(()),
        }
    }

    /// Parses a bare letter string into a word over this alphabet.
    pub fn word(&self, text: &str) -> Result<Word> {
        let w = Word::from(text);
        self.check_word(&w)?;
        Ok(w)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite sequence of letters, ordered by length and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<char>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<char>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<char> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<char> {
        self.0.last().copied()
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self[..at] · inserted · self[at..]`
    pub fn insert_at(&self, at: usize, inserted: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + inserted.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(&inserted.0);
        v.extend_from_slice(&self.0[at..]);
        Word(v)
    }

    /// The conjugate `self[k..] · self[..k]`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Does the word belong to `prefix · A* · suffix`?
    ///
    /// When both handles are nonempty the word must be at least as long as
    /// the two handles together, so a single letter never matches `a A* a`.
    pub fn matches_pattern(&self, prefix: &Word, suffix: &Word) -> bool {
        self.len() >= prefix.len() + suffix.len()
            && self.starts_with(prefix)
            && self.ends_with(suffix)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.chars().collect())
    }
}

impl From<Vec<char>> for Word {
    fn from(v: Vec<char>) -> Self {
        Word(v)
    }
}

impl FromIterator<char> for Word {
    fn from_iter<I: IntoIterator<Item = char>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("_");
        }
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// All words `yx` with `w = xy`. The empty word has the single conjugate ε.
pub fn conjugates(w: &Word) -> BTreeSet<Word> {
    if w.is_empty() {
        return BTreeSet::from([Word::empty()]);
    }
    (0..w.len()).map(|k| w.rotate(k)).collect()
}

/// A conjugacy class of nonempty words, stored by its least conjugate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularWord(Word);

impl CircularWord {
    pub fn new(w: &Word) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyCircularWord);
        }
        Ok(CircularWord(least_rotation(w)))
    }

    pub fn representative(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Full linearization of the class.
    pub fn linearize(&self) -> BTreeSet<Word> {
        conjugates(&self.0)
    }
}

/// The least conjugate of `w` (`canonical_circular`).
pub fn canonical_circular(w: &Word) -> Result<CircularWord> {
    CircularWord::new(w)
}

fn least_rotation(w: &Word) -> Word {
    // Words here are short; the quadratic scan keeps the code obvious.
    (0..w.len())
        .map(|k| w.rotate(k))
        .min()
        .unwrap_or_default()
}

impl fmt::Display for CircularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for CircularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟲{:?}", self.0)
    }
}
