//! The user guide, mirrored from the book chapters under `book/src/` so
//! that every embedded example compiles and runs under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/partitions-and-schur.md")]
pub mod partitions_and_schur {}

#[doc = include_str!("../../../book/src/rankin-selberg.md")]
pub mod rankin_selberg {}

#[doc = include_str!("../../../book/src/local-factors.md")]
pub mod local_factors {}

#[doc = include_str!("../../../book/src/conductor-pairs.md")]
pub mod conductor_pairs {}

#[doc = include_str!("../../../book/src/analytic-toolkit.md")]
pub mod analytic_toolkit {}

#[doc = include_str!("../../../book/src/zeros-and-detection.md")]
pub mod zeros_and_detection {}

#[doc = include_str!("../../../book/src/chebotarev.md")]
pub mod chebotarev_counting {}

#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
