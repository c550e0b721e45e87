//! Sub-Riemannian geodesics on the Cartan group.
//!
//! Extremals, the exponential map and its Jacobian, the first Maxwell time and
//! the first conjugate time, with the closed-form Jacobian factorizations on the
//! oscillating and rotating pendulum strata.

pub mod closed_form;
pub mod conjugate;
pub mod elliptic;
pub mod error;
pub mod flow;
pub mod group;
pub mod maxwell;
pub mod ode;
pub mod qd;
pub mod real;
pub mod roots;
pub mod tables;

pub use error::{Error, Result};
