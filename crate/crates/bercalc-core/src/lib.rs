//! Berezin-transform calculus over reproducing-kernel models.
//!
//! The crate is organized around a small dense complex-matrix kernel
//! ([`mat`]), reproducing-kernel space models ([`spaces`]), interpolation
//! paths between magnitudes ([`mean`]), the transform/range/norm machinery
//! itself ([`berezin`]), sampled-range convexity diagnostics ([`convexity`]),
//! and a randomized inequality harness ([`harness`]).

pub mod berezin;
pub mod convexity;
pub mod error;
pub mod harness;
pub mod mat;
pub mod mean;
pub mod sampler;
pub mod spaces;

pub use num_complex::Complex64;

pub use berezin::OperatorModel;
pub use convexity::{ConvexityReport, SampledRange};
pub use error::{CoreError, Result};
pub use harness::{InequalityCase, InequalityReport};
pub use mat::ComplexMatrix;
pub use mean::{InterpolationPath, MeanKind};
pub use sampler::{DomainSampler, GridSpec};
pub use spaces::{DomainPoint, KernelSpace};
