//! `splice`: command-line front end for the splicing workbench.
//!
//! Exit codes: 0 for success or a positive answer, 1 for a negative
//! answer, 2 for usage and input errors, 3 when a search budget runs out.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use splicing::automata::compile;
use splicing::closure::{closure_bounded, member_with_budget, Membership, DEFAULT_BUDGET};
use splicing::decider::{alphabetic_generability, decide_equal};
use splicing::format::{parse_dfa, parse_system, serialize_system};
use splicing::grammar::{enumerate_words, parse_grammar, serialize_grammar};
use splicing::synthesis::synthesize;
use splicing::system::{Mode, SplicingSystem};
use splicing::transform::{circular_to_flat, complete, to_heterogeneous};
use splicing::word::{conjugates, Alphabet, Word};
use splicing::Error;

#[derive(Parser)]
#[command(name = "splice", version, about = "Flat and circular splicing systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the words of the language up to a length
    Closure {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Print every rotation of each circular word
        #[arg(long)]
        linearize: bool,
    },
    /// Test whether a word is in the language
    Member {
        file: PathBuf,
        /// Bare letters, or `_` for the empty word
        word: String,
        /// Print a production sequence deriving the word
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Decide whether the language equals a regular language
    DecideEqual {
        file: PathBuf,
        #[command(flatten)]
        target: Target,
    },
    /// Find a finite alphabetic system generating a regular language
    Generable {
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        regex: String,
    },
    /// Add every completion of the rules
    Complete { file: PathBuf },
    /// Complete, then split the rules into pure and concatenation rules
    Split { file: PathBuf },
    /// Turn a circular system into a flat one generating its linearization
    ToFlat { file: PathBuf },
    /// Compile an alphabetic system to a grammar
    Synthesize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the words of a grammar up to a length
    Enumerate {
        grammar: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Compare the synthesized grammar with the closure up to a length
    Check {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(long)]
    regex: Option<String>,
    #[arg(long)]
    dfa: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SplicingSystem, Failure> {
    parse_system(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_words<'a>(words: impl IntoIterator<Item = &'a Word>) {
    for w in words {
        println!("{w}");
    }
}

/// The language up to length `n` as linear words, ε included.
fn linear_language(s: &SplicingSystem, n: usize) -> BTreeSet<Word> {
    let k = closure_bounded(s, n);
    let mut out: BTreeSet<Word> = match s.mode {
        Mode::Flat => k,
        Mode::Circular => k.iter().flat_map(conjugates).collect(),
    };
    if s.epsilon {
        out.insert(Word::empty());
    }
    out
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Closure { file, max_len, linearize } => {
            let s = load(&file)?;
            if linearize {
                print_words(&linear_language(&s, max_len));
            } else {
                if s.epsilon {
                    println!("_");
                }
                print_words(&closure_bounded(&s, max_len));
            }
            Ok(0)
        }
        Command::Member { file, word, trace, budget } => {
            let s = load(&file)?;
            let w = if word == "_" { Word::empty() } else { s.alphabet.word(&word)? };
            match member_with_budget(&s, &w, budget)? {
                Membership::Member(seq) => {
                    println!("member");
                    if let (true, Some(seq)) = (trace, seq) {
                        print!("{seq}");
                    }
                    Ok(0)
                }
                Membership::NotMember => {
                    println!("not a member");
                    Ok(1)
                }
            }
        }
        Command::DecideEqual { file, target } => {
            let s = load(&file)?;
            let k = match (target.regex, target.dfa) {
                (Some(re), _) => compile(&re, &s.alphabet)?,
                (_, Some(path)) => parse_dfa(&read(&path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                _ => unreachable!("clap requires one target"),
            };
            let v = decide_equal(&s, &k)?;
            println!("{v}");
            Ok(if v.equal { 0 } else { 1 })
        }
        Command::Generable { alphabet, regex } => {
            let alphabet = Alphabet::parse(&alphabet)?;
            match alphabetic_generability(&compile(&regex, &alphabet)?)? {
                Some(s) => {
                    print!("{}", serialize_system(&s));
                    Ok(0)
                }
                None => {
                    println!("NONE");
                    Ok(1)
                }
            }
        }
        Command::Complete { file } => {
            let s = load(&file)?;
            let rules = complete(&s.rules, &s.alphabet)?;
            print!("{}", serialize_system(&SplicingSystem { rules, ..s }));
            Ok(0)
        }
        Command::Split { file } => {
            let s = load(&file)?;
            let rules = complete(&s.rules, &s.alphabet)?;
            print!("{}", serialize_system(&to_heterogeneous(&SplicingSystem { rules, ..s })?));
            Ok(0)
        }
        Command::ToFlat { file } => {
            print!("{}", serialize_system(&circular_to_flat(&load(&file)?)?));
            Ok(0)
        }
        Command::Synthesize { file, output } => {
            let text = serialize_grammar(&synthesize(&load(&file)?)?);
            match output {
                Some(path) => fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Enumerate { grammar, max_len } => {
            let g = parse_grammar(&read(&grammar)?).map_err(|e| Failure::Input(format!("{}: {e}", grammar.display())))?;
            print_words(&enumerate_words(&g, max_len));
            Ok(0)
        }
        Command::Check { file, max_len } => {
            let s = load(&file)?;
            let g = synthesize(&s)?;
            let from_grammar: BTreeSet<Word> = enumerate_words(&g, max_len).into_iter().collect();
            let from_closure = linear_language(&s, max_len);
            match from_grammar.symmetric_difference(&from_closure).next() {
                None => {
                    println!("OK {} words up to length {max_len}", from_closure.len());
                    Ok(0)
                }
                Some(w) => {
                    let side = if from_closure.contains(w) { "closure only" } else { "grammar only" };
                    println!("MISMATCH {w} ({side})");
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
