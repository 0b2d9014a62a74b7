//! Crate-wide error type.

use crate::rational::Rat;
use core::fmt;

/// Witness of a non-vanishing commutator: `[t(i), t(j)]` has the given
/// nonzero entry. All indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommuteWitness {
    pub i: usize,
    pub j: usize,
    pub row: usize,
    pub col: usize,
    pub value: Rat,
}

impl fmt::Display for CommuteWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[t({}), t({})] has entry {} at ({}, {})",
            self.i, self.j, self.value, self.row, self.col
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must agree in dimension (variable count, matrix
    /// size, vector length) do not.
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    /// An input form does not have the degree the operation requires.
    Degree {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    /// A matrix that must be invertible is singular.
    Singular,
    /// The characteristic polynomial in the given direction (1-based) does
    /// not split over the rationals, so an exact spectral decision is not
    /// possible without a field extension.
    NonSplit { direction: usize },
    /// A tuple fails the pairwise commutation requirement.
    NotCommuting(CommuteWitness),
    /// A size parameter exceeds the supported range.
    Bounds {
        what: &'static str,
        max: usize,
        found: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension {
                context,
                expected,
                found,
            } => write!(f, "{context}: expected dimension {expected}, found {found}"),
            Error::Degree {
                context,
                expected,
                found,
            } => write!(f, "{context}: expected degree {expected}, found {found}"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::NonSplit { direction } => write!(
                f,
                "characteristic polynomial in direction {direction} does not split over the rationals"
            ),
            Error::NotCommuting(w) => write!(f, "tuple does not commute: {w}"),
            Error::Bounds { what, max, found } => {
                write!(f, "{what} = {found} exceeds the supported bound {max}")
            }
        }
    }
}

impl core::error::Error for Error {}
