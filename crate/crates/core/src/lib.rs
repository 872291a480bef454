//! Hypergraph states, their Mermin non-locality invariants, hyperdeterminant
//! and hyperplane-section singularity classification, and the circuits that
//! prepare and measure them.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! aliases below fix the usual double-precision instantiation. Exact
//! arithmetic is used where the quantities are exact: Mermin coefficients are
//! dyadic rationals and the hyperdeterminant of a sign vector is an integer.

pub mod circuits;
pub mod error;
pub mod hyperstate;
pub mod invariants;
pub mod mermin;
pub mod reference;
pub mod scalar;
pub mod singular;

pub use error::{Error, Result};
pub use scalar::{Cplx, Real};

pub type StateVectorF64 = hyperstate::StateVector<f64>;
pub type StateVectorF32 = hyperstate::StateVector<f32>;
pub type BlochVectorF64 = mermin::BlochVector<f64>;
pub type BlochVectorF32 = mermin::BlochVector<f32>;
pub type ObservableFamilyF64 = mermin::ObservableFamily<f64>;
pub type ObservableFamilyF32 = mermin::ObservableFamily<f32>;
pub type MuResultF64 = mermin::MuResult<f64>;
pub type MuResultF32 = mermin::MuResult<f32>;
pub type HyperdeterminantF64 = invariants::Hyperdeterminant<f64>;
pub type HyperdeterminantF32 = invariants::Hyperdeterminant<f32>;
