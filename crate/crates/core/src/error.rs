use thiserror::Error;

/// Failures reported by the core crate.
///
/// Positions are stored 0-based and rendered 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("index {} out of range 1..={bound}", .index + 1)]
    Index { index: usize, bound: usize },
    #[error("rows of a matrix must have equal length")]
    Ragged,
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("not a unit form: entry ({}, {}) violates the unit upper triangular shape", .row + 1, .col + 1)]
    NotUnitForm { row: usize, col: usize },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("arrow {} is a loop", .arrow + 1)]
    Loop { arrow: usize },
    #[error("walk breaks at step {}", .step + 1)]
    InvalidWalk { step: usize },
    #[error("flation of {} along {} leaves the unit forms (|q_ij| > 1)", .i + 1, .j + 1)]
    NonUnitResult { i: usize, j: usize },
    #[error("flation of {} along {} needs sign {expected}, got {found}", .i + 1, .j + 1)]
    WrongSign { i: usize, j: usize, expected: i8, found: i8 },
    #[error("arrows {} and {} are parallel", .i + 1, .j + 1)]
    ParallelArrows { i: usize, j: usize },
    #[error("transformation on {} and {} is not admissible", .i + 1, .j + 1)]
    NotAdmissible { i: usize, j: usize },
    #[error("quiver is not connected")]
    NotConnected,
    #[error("quiver is not a tree")]
    NotATree,
    #[error("quiver is not a 1-tree")]
    NotAOneTree,
    #[error("quiver is not a maximal star")]
    NotAStar,
    #[error("quiver is not a maximal 1-star")]
    NotAOneStar,
    #[error("vertex {} does not belong to the quiver", .vertex + 1)]
    VertexNotInQuiver { vertex: usize },
    #[error("column {} of I(Q)G^-1 is not an incidence column", .column + 1)]
    ColumnNotIncidence { column: usize },
    #[error("unit form is not non-negative")]
    NotNonNegative,
    #[error("unit form is not of Dynkin type A (search visited {states} states)")]
    NotTypeA { states: u64 },
    #[error("search budget of {budget} states exhausted")]
    SearchBudget { budget: u64 },
    #[error("expected corank {expected}, found {found}")]
    WrongCorank { expected: usize, found: usize },
    #[error("invalid 1-star shape")]
    InvalidShape,
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
