use thiserror::Error;

use crate::exactla::Rat;

/// Errors raised by the algebra toolkit.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("Jacobi identity fails at basis triple ({}, {}, {}); residual {}", .0.triple.0, .0.triple.1, .0.triple.2, fmt_vec(&.0.residual))]
    Jacobi(JacobiViolation),

    #[error("associative algebra axiom fails: {0}")]
    Assoc(AssocViolation),

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("degenerate bilinear form: {0}")]
    Degenerate(String),

    #[error("bilinear form is not invariant")]
    NotInvariant,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("invalid extension data: {0}")]
    InvalidExtension(ExtensionFailure),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("result contradicts a theorem hypothesis check: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// First failing basis triple `i < j < k` of the cyclic Jacobi sum.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AssocViolation {
    NotCommutative { a: usize, b: usize },
    NotAssociative { a: usize, b: usize, c: usize, residual: Vec<Rat> },
    NotUnit { basis: usize },
}

impl std::fmt::Display for AssocViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AssocViolation::NotCommutative { a, b } => {
                write!(f, "s{a}*s{b} != s{b}*s{a}")
            }
            AssocViolation::NotAssociative { a, b, c, residual } => write!(
                f,
                "(s{a}*s{b})*s{c} - s{a}*(s{b}*s{c}) = {}",
                fmt_vec(residual)
            ),
            AssocViolation::NotUnit { basis } => write!(f, "unit*s{basis} != s{basis}"),
        }
    }
}

/// Which defining condition of an abelian extension fails.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtensionFailure {
    /// rho([x,y]) != [rho(x), rho(y)] at the basis pair.
    RhoNotRepresentation { x: usize, y: usize },
    /// phi([x,y]) != rho(x)phi(y) - rho(y)phi(x) at the basis pair.
    PhiNotCocycle { x: usize, y: usize },
    /// d_R(lambda, mu) != 0; the first nonzero value of each component.
    NotCocycle {
        tuple: Vec<usize>,
        a_part: Vec<Rat>,
        i_part: Vec<Rat>,
    },
    Shape(String),
}

impl std::fmt::Display for ExtensionFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtensionFailure::RhoNotRepresentation { x, y } => {
                write!(f, "rho is not a representation at (x{}, x{})", x + 1, y + 1)
            }
            ExtensionFailure::PhiNotCocycle { x, y } => {
                write!(f, "phi is not a 1-cocycle at (x{}, x{})", x + 1, y + 1)
            }
            ExtensionFailure::NotCocycle {
                tuple,
                a_part,
                i_part,
            } => write!(
                f,
                "d_R(lambda, mu) != 0 at {:?}: a-part {}, i-part {}",
                tuple.iter().map(|t| t + 1).collect::<Vec<_>>(),
                fmt_vec(a_part),
                fmt_vec(i_part)
            ),
            ExtensionFailure::Shape(msg) => f.write_str(msg),
        }
    }
}

pub(crate) fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
