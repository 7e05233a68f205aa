//! Crate error type.

use std::fmt;

/// Errors surfaced by the exact-geometry pipeline.
///
/// Contract violations (preconditions a caller broke) and algorithm failures
/// (a randomized step exhausted its retry budget) are kept distinct so the
/// CLI can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A line was given two identical anchor points.
    DegenerateLine,
    /// Circle invariant violated (zero normal, center off plane, r² ≤ 0).
    InvalidCircle(&'static str),
    /// Square root of a negative rational requested in the real tower.
    NegativeRadicand,
    /// Arithmetic between elements of Q(√d) and Q(√d') with d ≠ d'.
    IncommensurableFields,
    /// Division by zero in an exact field.
    DivisionByZero,
    /// An operation that needs at least one curve got none.
    EmptyCollection(&'static str),
    /// Vertex-edge matching requires a graph without isolated vertices.
    IsolatedVertex(usize),
    /// A probability parameter was outside [0, 1].
    ProbabilityOutOfRange,
    /// Quadric classification is defined for degrees 1 and 2 only.
    DegreeOutOfRange(u32),
    /// A named precondition of a documented contract was violated.
    Precondition(String),
    /// A sampling round could not produce a surface within its caps.
    RoundFailed {
        round: usize,
        tries: u32,
        sample_size: usize,
        degree_cap: u32,
        detail: String,
    },
    /// Invariant breach that should be unreachable; reported, never masked.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateLine => write!(f, "line anchors must be distinct"),
            Error::InvalidCircle(why) => write!(f, "invalid circle: {why}"),
            Error::NegativeRadicand => {
                write!(f, "negative radicand: real quadratic tower only")
            }
            Error::IncommensurableFields => {
                write!(f, "incommensurable fields: operands have different radicands")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::EmptyCollection(what) => write!(f, "empty collection: {what}"),
            Error::IsolatedVertex(v) => {
                write!(f, "graph has an isolated vertex (id {v})")
            }
            Error::ProbabilityOutOfRange => write!(f, "probability must lie in [0, 1]"),
            Error::DegreeOutOfRange(d) => {
                write!(f, "quadric classification needs degree 1 or 2, got {d}")
            }
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
            Error::RoundFailed {
                round,
                tries,
                sample_size,
                degree_cap,
                detail,
            } => write!(
                f,
                "covering round {round} failed after {tries} tries \
                 (last sample size {sample_size}, degree cap {degree_cap}): {detail}"
            ),
            Error::Internal(what) => write!(f, "internal invariant breach: {what}"),
        }
    }
}

impl std::error::Error for Error {}
