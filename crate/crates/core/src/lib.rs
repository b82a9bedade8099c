//! Shape-parameterized blending bases and monotone interpolation.
//!
//! An [`EnhancedBasis`] mixes a blending system `{F_{n,i}}` with an auxiliary
//! function φ under a parameter σ ∈ [0, 1]: σ = 1 reproduces the system, σ = 0
//! collapses every curve to the φ-parameterized chord `P_0 → P_n`.

// `!(a <= b)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod auxiliary;
pub mod blending;
pub mod curve;
pub mod enhanced;
pub mod error;
pub mod interp;
pub mod io;
pub mod quadrature;
pub mod report;

pub use auxiliary::{AuxKind, AuxiliaryFunction};
pub use blending::{BlendingSystem, Family};
pub use curve::{ControlPolygon, ParametricCurve, Polyline};
pub use enhanced::{BasisSpec, EnhancedBasis};
pub use error::{Error, Result};
pub use report::{PropertyCheck, PropertyReport};
