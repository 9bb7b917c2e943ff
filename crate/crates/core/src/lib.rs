//! Exact computations for left-invariant Riemannian and Randers metrics on
//! low-dimensional Lie groups.
//!
//! Everything is evaluated at the identity of the group, i.e. on the Lie
//! algebra with a fixed basis. Structure constants, metrics, connections and
//! curvature tensors are exact rationals; floating point enters only through
//! the square root in the Randers norm and the finite-difference Hessians.
//!
//! The crate is `no_std` with `alloc` when built without the default `std`
//! feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod classify;
mod error;
pub mod flag;
pub mod hypercomplex;
pub mod linalg;
pub mod randers;
pub mod riemann;
pub mod scalar;

pub use algebra::{AlgebraVector, CatalogCase, JacobiViolation, LieAlgebra, Subspace};
pub use classify::{CaseReport, Classification, Evidence, RandersClass};
pub use error::{Error, Result};
pub use flag::{Flag, FlagCurvatureResult};
pub use hypercomplex::ComplexStructureTriple;
pub use linalg::Matrix;
pub use randers::RandersStructure;
pub use riemann::{ConnectionTable, CurvatureTable, MetricTensor, RiemannianGeometry};
pub use scalar::Scalar;
