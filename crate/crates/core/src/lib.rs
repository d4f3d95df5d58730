//! Finite binary partial groups and their embeddings into (truncated)
//! partial groups in the sense of Chermak, modelled as spiny symmetric sets.
//!
//! * [`magma`]: partial Cayley tables, the inverse search and axiom checks.
//! * [`words`]: parenthesizations, evaluation and word membership.
//! * [`symset`]: truncated symmetric sets in spine encoding.
//! * [`functors`]: the big and small embeddings, the underlying binary
//!   partial group, skeleta and per-instance adjunction checks.
//! * [`enumerate`]: exhaustive generation and classification of small
//!   structures.
//! * [`serial`]: the JSON document formats.

pub mod enumerate;
pub mod error;
pub mod functors;
pub mod magma;
pub mod report;
pub mod serial;
pub mod symset;
pub mod words;

pub use error::{Error, Result};
pub use magma::{BinaryPartialGroup, Element, MagmaHom, PartialMagma};
pub use report::{Check, Format, FunctorReport, ValidationReport, Verdict, Violation};
pub use symset::{SimplexMap, SymSetHom, TruncatedPartialGroup};
pub use words::{ParenTree, Word};

/// Size bounds guarding the combinatorial blowups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest leaf count for explicit tree enumeration.
    pub max_tree_leaves: usize,
    /// Longest word accepted by membership tests.
    pub max_word_len: usize,
    /// Largest truncation level for constructions.
    pub max_level: usize,
    /// Largest structure size for enumeration.
    pub max_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_tree_leaves: 10,
            max_word_len: 8,
            max_level: 8,
            max_size: 4,
        }
    }
}

impl Limits {
    /// Raised bounds behind the CLI's `--unsafe-large`.
    pub fn unsafe_large() -> Self {
        Limits {
            max_tree_leaves: 12,
            max_word_len: 12,
            max_level: 12,
            max_size: 5,
        }
    }
}
