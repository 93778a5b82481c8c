use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate letter '{0}' in alphabet")]
    DuplicateLetter(char),
    #[error("'{0}' is reserved and cannot be used as a letter")]
    ReservedLetter(char),
    #[error("letter '{0}' is not in the alphabet")]
    UnknownLetter(char),
    #[error("the empty word has no circular representative")]
    EmptyCircularWord,
    #[error("empty word where a nonempty one is required")]
    EmptyWord,
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("rule {0} cannot be used here: {1}")]
    RuleUsage(String, &'static str),
    #[error("rule {0} is not alphabetic")]
    NotAlphabetic(String),
    #[error("rule set is not complete: missing {0}")]
    Incomplete(String),
    #[error("rule {0} is not pure")]
    NotPure(String),
    #[error("system is not heterogeneous: {0}")]
    NotHeterogeneous(String),
    #[error("production sequence refers to step {0}, which does not precede it")]
    DanglingRef(usize),
    #[error("step {step}: {reason}")]
    IllegalStep { step: usize, reason: String },
    #[error("initial word {0} is not in the initial set")]
    NotInitial(String),
    #[error("{0} is not in the bounded closure")]
    NotInClosure(String),
    #[error("state {0} does not exist")]
    UnknownState(usize),
    #[error("expected exactly one variable, found {0}")]
    NotSingleVariable(usize),
    #[error("the language contains the empty word")]
    ContainsEpsilon,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
