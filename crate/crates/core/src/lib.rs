//! Infinitary rational relations: lasso and block-pattern ω-words, Büchi
//! and 2-tape Büchi automata, and a rational relation over `{0, 1, A}`
//! whose section at one point is Π₃⁰-complete while all other sections are
//! the full space.

pub mod buchi;
pub mod constructions;
pub mod error;
mod graph;
pub mod grid;
pub mod oracle;
pub mod parallel;
pub mod sample;
pub mod two_tape;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use grid::GridWord;
pub use parallel::Exec;
pub use two_tape::TwoTapeAutomaton;
pub use word::{Alphabet, LassoWord, OmegaWord};
