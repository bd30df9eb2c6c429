//! Exact computer algebra for Landau-Ginzburg models: matrix factorizations,
//! the cobar algebra of a curved symmetric coalgebra, Hodge-style retractions,
//! curved homological perturbation, minimal-model A-infinity transfer and
//! truncated Hochschild homology. All arithmetic is exact over the rationals
//! or a cyclotomic field; there is no floating point anywhere.

pub mod ainfty;
pub mod coalg;
pub mod fixtures;
pub mod cobar;
pub mod hodge;
pub mod hpl;
pub mod lin;
pub mod mf;
pub mod morse;
pub mod par;
pub mod poly;
pub mod scalar;
pub mod sparse;

pub use poly::{Monomial, Poly, Potential};
pub use scalar::Scalar;
pub use sparse::SparseMatrix;

use std::fmt;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A matrix or expression mixes cyclotomic scalars of different conductors.
    IncompatibleScalarFields,
    /// Two cyclotomic scalars of different conductors were combined directly.
    ConductorMismatch(u32, u32),
    /// Variable index out of range for the session's variable count.
    IndexOutOfRange(usize),
    /// A degree-capped computation ended without a verdict.
    InconclusiveAtCap(u32),
    /// The potential violates an order/homogeneity precondition.
    BadPotential(String),
    /// A splitting does not satisfy sum x_i W_i = W.
    InvalidSplitting,
    /// delta.H is not locally nilpotent on the working window.
    PerturbationNotSmall,
    /// (d + delta)^2 is not central (not equal to the prescribed curvature).
    NotCurvedPerturbation,
    /// The morphism handed to `cone` is not closed in the Hom complex.
    MorphismNotClosed,
    /// Input file could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IncompatibleScalarFields => write!(f, "incompatible scalar fields"),
            Error::ConductorMismatch(a, b) => {
                write!(f, "conductor mismatch: zeta_{a} vs zeta_{b}")
            }
            Error::IndexOutOfRange(i) => write!(f, "variable index {i} out of range"),
            Error::InconclusiveAtCap(n) => write!(f, "inconclusive at cap {n}"),
            Error::BadPotential(msg) => write!(f, "bad potential: {msg}"),
            Error::InvalidSplitting => write!(f, "invalid splitting"),
            Error::PerturbationNotSmall => write!(f, "perturbation not small"),
            Error::NotCurvedPerturbation => write!(f, "not a curved perturbation"),
            Error::MorphismNotClosed => write!(f, "morphism is not closed"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
