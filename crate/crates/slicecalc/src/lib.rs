//! Numerical slice Clifford analysis.
//!
//! The crate implements, over the real Clifford algebra Cl_m with
//! negative-definite generators:
//!
//! * dense multivector and paravector arithmetic ([`clifford`]),
//! * stem/slice functions and the slice Cauchy-Riemann operator G
//!   ([`slicefn`]),
//! * axially symmetric domains with slice, boundary and sphere quadrature
//!   ([`geometry`]),
//! * the slice Cauchy kernels S⁻¹ and K and their derivatives ([`kernels`]),
//! * the Teodorescu transform, boundary Cauchy operator, Plemelj
//!   principal-value operator and the residual verifiers for the identities
//!   they satisfy ([`operators`]),
//! * a discrete Hodge decomposition with a generalized Bergman projection
//!   ([`hodge`]),
//! * verification drivers and machine-readable reports ([`verify`],
//!   [`report`], [`config`]) used by the `slicecalc` binary.
//!
//! Every identity the library claims (Borel-Pompeiu, right inverse,
//! exterior monogenicity, Plemelj jump relations, the extension criterion,
//! Hodge orthogonality, empirical L^p boundedness) is exercised by the
//! `acceptance` integration test at pinned tolerances; see
//! [`tolerances`] for the table.
//!
//! All public value types are immutable after construction and all
//! operator evaluations are pure, so everything here may be shared freely
//! across threads.

pub mod clifford;
pub mod config;
pub mod error;
pub mod geometry;
pub mod hodge;
pub mod kernels;
pub mod operators;
pub mod report;
pub mod slicefn;
pub mod tolerances;
pub mod verify;

mod quad;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
