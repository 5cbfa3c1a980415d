//! Signatures of generating sets of piecewise linear maps, their ordinal
//! ranks, and explicit realizations.

pub mod normalizer;
pub mod ordinal;
pub mod realization;
pub mod signature;

/// Exact rationals, the default scalar for realizations.
pub type Rat = num_rational::BigRational;
pub type QMap = realization::PlMap<Rat>;
pub type QMarkedFn = realization::MarkedFn<Rat>;
pub type QGenSet = realization::GenSet<Rat>;

pub use normalizer::{normalize, rho, RhoMode};
pub use ordinal::Ordinal;
pub use signature::{OscMatrix, SigTerm, Signature};
