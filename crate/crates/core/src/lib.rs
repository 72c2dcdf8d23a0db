//! Compact quantum groups at desk scale.
//!
//! The algebraic layer ([`scalar`], [`linalg`], [`bialgebra`], [`functional`],
//! [`checks`]) is exact over complex rationals. The spectral layer
//! ([`spectral`], [`group`], [`suq2::rep`]) works in `f64` and only ever
//! produces lower bounds for operator norms.

pub mod bialgebra;
pub mod checks;
pub mod disc;
pub mod error;
pub mod finite;
pub mod functional;
pub mod group;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod suq2;

pub use bialgebra::{BialgebraView, Element, Tensor};
pub use error::{Error, Result};
pub use functional::LinearFunctional;
pub use scalar::ExactScalar;
