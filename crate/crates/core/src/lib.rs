//! Exact computation with rank-2 quantum cluster scattering diagrams.
//!
//! Scalars live in `ℚ(v)` with `v = q^(1/δ₀)`. Group elements are stored by
//! their logarithms in the graded Lie algebra and act on truncated quantum
//! tori; wall elements are factored into quantum dilogarithms.

pub mod error;
pub mod fixeddata;
pub mod liegroup;
pub mod pentagon;
pub mod positivity;
pub mod qtorus;
pub mod scalar;
pub mod scatter;

pub use error::{Error, Result};
