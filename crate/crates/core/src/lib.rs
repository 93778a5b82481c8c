//! Workbench for flat and circular splicing systems.

pub mod automata;
pub mod closure;
pub mod decider;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod grammar;
pub mod production;
pub mod rule;
pub mod synthesis;
pub mod system;
pub mod transform;
pub mod word;

pub use error::{Error, Result};
