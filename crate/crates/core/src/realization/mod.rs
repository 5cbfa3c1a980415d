//! Exact piecewise-linear realizations of signatures.
//!
//! Everything here is generic over an exact ordered field [`Scalar`];
//! [`crate::Rat`] is the intended instance.

use std::fmt;
use std::str::FromStr;

use num_traits::{FromPrimitive, Num, Signed};
use thiserror::Error;

pub mod diagram;
pub mod fixtures;
pub mod genset;
pub mod marked;
pub mod pl;
pub mod realize;
pub mod retrofit;
pub mod words;

pub use diagram::{diagram, diagram_iso, excise, DynDiagram};
pub use genset::{GenSet, PairInfo, Relation};
pub use marked::{Foot, MarkedFn};
pub use pl::{Orbital, PlMap};
pub use realize::realize;
pub use retrofit::retrofit_slopes;
pub use words::{dom_witness, pl_eval, predicates, wreath_witness, GroupWord, Predicates};

/// Exact ordered field used for breakpoints.
pub trait Scalar: Clone + Ord + Num + Signed + FromPrimitive + fmt::Display + fmt::Debug + FromStr {}

impl<T> Scalar for T where T: Clone + Ord + Num + Signed + FromPrimitive + fmt::Display + fmt::Debug + FromStr {}

/// `n / d` in any scalar type.
pub fn frac<T: Scalar>(n: i64, d: i64) -> T {
    T::from_i64(n).expect("small integer") / T::from_i64(d).expect("small integer")
}

pub(crate) fn half<T: Scalar>(x: T) -> T {
    x / (T::one() + T::one())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("invalid map: {0}")]
    BadMap(String),
    #[error("invalid marking: {0}")]
    Marker(String),
    #[error("functions {0} and {1} are not fast")]
    NotFast(usize, usize),
    #[error("functions {0} and {1} are not <-comparable")]
    NotOrdered(usize, usize),
    #[error("pair ({0}, {1}) is not standard")]
    NotStandard(usize, usize),
    #[error("function {0} is not standard")]
    NotStandardFn(usize),
    #[error("function has empty support")]
    Empty,
    #[error("no element {0} in a set of {1}")]
    NoElement(usize, usize),
    #[error("realization failed verification: {0}")]
    Verification(String),
    #[error("not a *-split: {0}")]
    NotStarSplit(String),
    #[error("no wreath interval: {0}")]
    NoWitness(String),
    #[error("malformed generating set JSON: {0}")]
    Json(String),
}
