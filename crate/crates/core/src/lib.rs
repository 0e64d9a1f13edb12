//! Exact rational toolkit for nilpotent Lie algebras and invariant metrics.
//!
//! Everything is computed over `Q` with arbitrary precision; there is no
//! floating point anywhere in the crate.

pub mod current;
pub mod error;
pub mod exactla;
pub mod extension;
pub mod invforms;
pub mod liealg;
pub mod random;
pub mod samples;
pub mod unital;

pub use current::{AssocAlgebra, AssocConstant};
pub use error::{Error, Result};
pub use exactla::{LinearSystem, Mat, Rat, Subspace};
pub use invforms::{BilinearForm, InvariantFormSpace, MetricSearch, WittDecomposition};
pub use liealg::{CanonicalIdeals, CentralSeriesReport, LieAlgebra, StructureConstant};
pub use unital::{SimplicityVerdict, UnitalAlgebra, Verdict};
