//! Spectral norms, best rank-one approximations and spectral-to-Frobenius
//! norm ratios of symmetric tensors, with special machinery for rank-two and
//! border-rank-two families and for real 2×2×2 tensors.
//!
//! The crate is `no_std` and only needs an allocator. All operations are pure
//! functions over immutable values; randomized routines take an explicit
//! master seed and derive one independent stream per start or per sample.
//!
//! Module map:
//!
//! * [`symtensor`]: symmetric tensor storage, inner products, polynomial view.
//! * [`spectral`]: exact binary solver, shifted power iteration, rank-one fits.
//! * [`ranktwo`]: rank-two / border constructors, the ratio objective and its
//!   gradient, case-wise bounds and the infimum search.
//! * [`cube222`]: nonsymmetric dense tensors, alternating maximization,
//!   Cayley's hyperdeterminant and the 2×2×2 normal form.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cube222;
mod error;
pub mod linalg;
pub mod nelder_mead;
pub mod ranktwo;
pub mod rng;
pub mod roots;
pub mod spectral;
pub mod symtensor;

pub use error::{Error, Result};
pub use spectral::{IterConfig, MaximizerSet, Method, RankOneApprox};
pub use symtensor::{MultiIndex, SymTensor};
