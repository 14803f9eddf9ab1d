//! Test support: the running example, a random automaton generator, and an
//! independent inclusion oracle for small automata.

pub mod fixtures;
pub mod gen;
pub mod oracle;

pub use gen::{generate, suite_pair, GenParams};
pub use oracle::{enumerate_stems, oracle_inclusion};
