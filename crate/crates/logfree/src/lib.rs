//! Computable machinery around log-free zero density estimates for
//! Rankin-Selberg L-functions.
//!
//! The crate is organized around eight largely independent toolkits:
//!
//! - [`symmetric`]: bounded-length integer partitions, Schur polynomial
//!   evaluation on complex multisets, and Cauchy-identity pairings.
//! - [`coefficients`]: standard and Rankin-Selberg Dirichlet coefficients of
//!   representation proxies given by Satake parameters, with a brute-force
//!   Euler-product oracle.
//! - [`local`]: Bernstein-Zelevinsky induction data and the ramified
//!   Rankin-Selberg local factor, with block-coefficient extraction.
//! - [`conductor`]: slope lists of Weil-Deligne representations, Artin and
//!   Swan exponent bounds for pairs, and an exact tensor-conductor oracle
//!   built from Dirichlet characters of prime-power conductor.
//! - [`analytic`]: smoothing kernels and transforms, the Sos-Turan power-sum
//!   lemma, Selberg sieve weights, and Gallagher's mean-value transform.
//! - [`zeros`]: zero tables, zero counting, zero-free-region models and
//!   eta(x), the zero-detection window, and density bound evaluators.
//! - [`chebotarev`]: exact prime counting by Frobenius class for cyclotomic
//!   and quadratic fields, with GRH-shape error reports.
//! - [`family`]: decorated-ideal index sets, smoothed coefficient embeddings,
//!   Gram-versus-series identities, and quasi-orthogonality certification.
//!
//! All floating-point comparisons go through [`tol::Tolerance`]; conductor
//! arithmetic is exact rationals throughout.

pub mod analytic;
pub mod characters;
pub mod chebotarev;
pub mod coefficients;
pub mod conductor;
pub mod family;
pub mod local;
pub mod sieve;
pub mod symmetric;
pub mod tol;
pub mod verify;
pub mod zeros;

pub mod guide;

pub use num_complex::Complex64;
