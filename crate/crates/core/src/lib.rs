//! Exact symbolic kernel for the discrete KdV hierarchy, its extension by
//! the `t¹_d` flows, and the Miura transformations relating it to the
//! hierarchy of topological type and the DR hierarchy.

pub mod diffpoly;
pub mod error;
pub mod evenop;
pub mod expr;
pub mod genfun;
pub mod hierarchy;
pub mod linsolve;
pub mod scalar;
pub mod series;
pub mod shiftring;
pub mod verify;

pub use diffpoly::{DiffMonomial, DiffPoly, Flow, JetVariable, Ring, RingSpec};
pub use error::{Error, Result};
pub use evenop::{make_named, ConstOp, EvenOp, NamedOp};
pub use scalar::{Gauss, GaussianRational, Rational};
pub use series::TaylorSeries;
