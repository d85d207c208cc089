//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("vertex count {0} out of range 1..=16")]
    RangeCount(usize),
    #[error("vertex index {0} out of range for {1} vertices")]
    RangeIndex(usize, usize),
    #[error("relation pairs induce a directed cycle through vertex {0}")]
    Cycle(usize),
    #[error("gluing needs a unique maximal vertex on the left and a unique minimal vertex on the right")]
    GlueShape,
    #[error("operation requires a chain, but vertices {0} and {1} are incomparable")]
    NotAChain(usize, usize),
    #[error("color string has length {got}, poset has {want} vertices")]
    ColorLength { got: usize, want: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("bad arity or parameter for {0}: {1}")]
    Arity(&'static str, String),
    #[error("{0}")]
    Poset(#[from] PosetError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("layer index {0} out of range 0..={1}")]
    LayerRange(usize, usize),
    #[error("dimension {0} out of range 0..={1}")]
    DimRange(u32, u32),
    #[error("sublattice bounds not nested: {0:#x} is not a subset of {1:#x}")]
    NotNested(u64, u64),
    #[error("coloring file format error: {0}")]
    Format(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("size cap exceeded: {0}")]
    Size(String),
    #[error("map does not describe an embedding of a full Boolean lattice: {0}")]
    NotFullLattice(String),
    #[error("ground set too small: need {need} elements, have {have}")]
    GroundTooSmall { need: usize, have: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("size cap exceeded: {0}")]
    Size(String),
    #[error("volume precondition fails: image volume {vol} > {limit}")]
    Volume { vol: usize, limit: usize },
    #[error("homomorphism is not valid/Y-avoiding: {0}")]
    InvalidHomomorphism(String),
    #[error("input family is not a Y-blocker")]
    NotABlocker,
    #[error("coloring contains a blue copy of the Λ-shaped poset")]
    NotLambdaFree,
    #[error("coloring contains a copy of the forbidden colored chain")]
    NotFree,
    #[error("{0}")]
    Embed(#[from] EmbedError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("budget exceeded after {nodes} nodes / {elapsed_ms} ms")]
    BudgetExceeded { nodes: u64, elapsed_ms: u64 },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MathError {
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("entropy argument {0} outside the open interval (0,1)")]
    Domain(f64),
    #[error("orderings are not permutations of the same ground set")]
    Mismatch,
    #[error("ground set too small and no triple found")]
    TooSmall,
    #[error("no known bounds for this pattern")]
    UnknownPattern,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("S/T families violate the incomparability precondition: s={0:#x}, t={1:#x}")]
    Incomparability(u64, u64),
}
