//! Discrete exterior calculus on periodic hypercubic lattices and directed
//! graphs.
//!
//! The library implements a noncommutative differential calculus in which
//! functions and coordinate differentials do not commute: moving a function
//! past a differential translates it by one lattice step,
//! `f · dXᵃ = dXᵃ · T_{eₐ}[f]`. Everything else follows from that rule:
//!
//! * [`forms`] — exterior algebra of lattice forms with right-slot
//!   coefficients, the exterior derivative `d`, the flat codifferential
//!   `d†`, and the graded form product;
//! * [`metric`] — metric operator `ĝ` (compound-matrix action on
//!   multi-indices), deformed inner products, deformed codifferential,
//!   Hodge star, volume forms, and Laplace–Beltrami operators, including
//!   the Lorentzian "light-cone" metric `g_ab = δ_ab − 2/D`;
//! * [`fermions`] — Clifford and pseudo-Clifford generators, Dirac–Kähler
//!   operators, the chirality operator, and dispersion-relation scans
//!   exhibiting (absence of) fermion doubling;
//! * [`gauge`] — matrix-algebra-valued forms, holonomy 1-forms, field
//!   strength `H²`, the Wilson plaquette action, Bianchi identity and
//!   equation-of-motion residuals;
//! * [`chains`] — the dual picture: chain fields, musical isomorphisms,
//!   integration of forms over chains, the boundary operator, and Stokes'
//!   theorem;
//! * [`graph`] — the same calculus on arbitrary directed graphs: path
//!   spaces, boundary/coboundary, admissible-chain dimensions, and the cup
//!   product;
//! * [`serial`] — CSV/JSON serialization of lattices, forms, metrics,
//!   gauge configurations, and graphs.

pub mod chains;
pub mod fermions;
pub mod forms;
pub mod gauge;
pub mod graph;
pub mod lattice;
pub mod metric;
pub mod multi_index;
pub mod serial;

pub use forms::FormField;
pub use lattice::Lattice;
pub use metric::MetricField;

/// Error type for fallible library operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("grade mismatch: expected {expected}, got {got}")]
    GradeMismatch { expected: usize, got: usize },
    #[error("invalid axis {axis} for dimension {dim}")]
    InvalidAxis { axis: usize, dim: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
