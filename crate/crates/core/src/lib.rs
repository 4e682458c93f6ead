//! Exact and asymptotic statistics of random plane partitions under the
//! `q^{|π|}` measure, through the Schur process.
//!
//! - [`combin`]: partitions, plane partitions, diagonal slices, tile centers.
//! - [`schur`]: specializations, skew Schur functions, commutation constants.
//! - [`process`]: process parameters, weights, enumeration and the box sampler.
//! - [`kernel`]: correlation kernels as double contour integrals.
//! - [`asympt`]: bulk density, incomplete beta kernel and limit shape.

pub mod asympt;
pub mod combin;
pub mod error;
pub mod half;
pub mod kernel;
pub mod process;
pub mod schur;

pub use error::{Error, Result};
pub use half::Half;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/configurations.md")]
    mod configurations {}
    #[doc = include_str!("../../../book/src/schur-process.md")]
    mod schur_process {}
    #[doc = include_str!("../../../book/src/correlation-kernels.md")]
    mod correlation_kernels {}
    #[doc = include_str!("../../../book/src/bulk-asymptotics.md")]
    mod bulk_asymptotics {}
    #[doc = include_str!("../../../book/src/limit-shape.md")]
    mod limit_shape {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
}
