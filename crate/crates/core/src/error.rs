//! Error types shared across the engine.

use thiserror::Error;

/// Errors raised by the symbolic layers: terms, polynomials, evaluation
/// maps, and shift operators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// A term needs at least one inner coefficient.
    #[error("a term needs at least one inner coefficient")]
    EmptyCoeffs,
    /// A term or block is longer than the ambient cap allows.
    #[error("length {len} exceeds the ambient cap {cap}")]
    CapExceeded { len: usize, cap: usize },
    /// Coefficient-wise addition was asked of two incompatible terms.
    #[error("terms are not compatible (length and head must both agree)")]
    NotCompatible,
    /// Checked integer arithmetic overflowed.
    #[error("integer overflow in checked arithmetic")]
    Overflow,
    /// A scaling vector is too short for the term it must cover.
    #[error("scaling vector of length {got} is shorter than the required {need}")]
    VectorTooShort { need: usize, got: usize },
    /// Operands live under different ambient caps.
    #[error("operands live under different ambient caps")]
    MixedCaps,
    /// A term list contains a compatible pair and is not a valid formal sum.
    #[error("terms at positions {0} and {1} are compatible; the list is not pairwise irreducible")]
    NotIrreducible(usize, usize),
    /// A polynomial needs at least one term.
    #[error("a formal sum needs at least one term")]
    EmptyTerms,
    /// Two parallel argument lists disagree in length.
    #[error("expected {need} entries, got {got}")]
    LengthMismatch { need: usize, got: usize },
    /// The caps (k, m) are outside the representable range.
    #[error("caps k={k}, m={m} are invalid (need k >= 2 and m >= 1)")]
    BadCaps { k: usize, m: usize },
    /// An integer polynomial has a nonzero constant term where a zero one is
    /// required.
    #[error("polynomial has a nonzero constant term")]
    ConstantTermNonzero,
    /// An integer polynomial's degree exceeds the requested cap.
    #[error("polynomial degree {degree} exceeds the cap {cap}")]
    DegreeExceedsCap { degree: usize, cap: usize },
    /// The zero polynomial cannot be encoded.
    #[error("the zero polynomial has no encoding")]
    ZeroPolynomial,
    /// A multivariable polynomial carries a constant monomial.
    #[error("polynomial has a constant monomial")]
    ConstantTermPresent,
    /// An index set needs at least one element.
    #[error("an index set needs at least one element")]
    EmptyIndexSet,
    /// An index set holds distinct positive integers; this value breaks that.
    #[error("index sets hold distinct positive integers; {0} is repeated or zero")]
    BadIndexSet(u64),
    /// A sequence-spec literal failed to parse.
    #[error("unrecognized sequence spec: {0}")]
    BadSequenceSpec(String),
    /// A sequence was evaluated outside its table's index range.
    #[error("sequence is undefined at index {0}")]
    UndefinedIndex(u64),
    /// A shift was applied to an element outside Ir of the shift directions.
    #[error("element is not irreducible from the shift directions")]
    NotInIr,
}

/// Errors raised by the finite partial-semigroup tables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    /// An element index is outside the table.
    #[error("element {0} is outside the table")]
    UnknownElement(usize),
    /// The pool handed to a truncation builder is empty or not contained in
    /// the common irreducible set of the directions.
    #[error("pool is empty or not contained in the common irreducible set")]
    PoolNotInIr,
    /// A table text document failed to parse.
    #[error("table parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// An algebra error surfaced while building a table.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors raised by the witness searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    /// An algebra error surfaced while evaluating polynomials.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// No scanned candidate keeps every configuration value inside the
    /// coloring's window.
    #[error("no candidate keeps all values inside the coloring window")]
    WindowTooSmall,
    /// The exhaustive oracle was asked to enumerate more candidates than its
    /// safety cap allows.
    #[error("candidate space of {candidates} exceeds the oracle safety cap {cap}")]
    BoundsTooLarge { candidates: u64, cap: u64 },
    /// A search needs at least one polynomial.
    #[error("a search needs at least one polynomial")]
    EmptyPolyList,
    /// A coloring needs at least one color cell.
    #[error("a coloring needs at least one entry")]
    EmptyColoring,
}
