//! Constructive combinatorics of poset Ramsey theory on Boolean lattices.
//!
//! The crate is organized around the pipeline used by the exact engine:
//!
//! * [`poset`] / [`catalog`] — finite posets on up to 16 labeled vertices,
//!   the catalog expression language, and basic parameters (height, width,
//!   Dilworth chain covers, series-parallel recognition).
//! * [`lattice`] — Boolean-lattice colorings, layered colorings, sublattice
//!   views, symmetric chain decompositions, and the coloring file format.
//! * [`embed`] — copy/embedding search (induced, weak, colored), 2-dimension,
//!   X-good normalization, factorial trees and shrubs.
//! * [`engines`] — constructive procedures: Chain Lemma, truncated blob
//!   completion, blocker duality, Λ-free duality witnesses, phase partitions.
//! * [`search`] — the exact decision procedure and Ramsey / Erdős–Hajnal
//!   number computation with pruning, symmetry reduction and certificates.
//! * [`constructions`] — lower-bound coloring gallery plus a generic verifier.
//! * [`combinatorics`] — closed-form quantities and the known-bounds table.

pub mod catalog;
pub mod combinatorics;
pub mod constructions;
pub mod embed;
pub mod engines;
pub mod error;
pub mod lattice;
pub mod poset;
pub mod search;

/// One of the two vertex colors used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Blue => 'b',
            Color::Red => 'r',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'b' => Some(Color::Blue),
            'r' => Some(Color::Red),
            _ => None,
        }
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}
