//! Verification of divisibility statements about binomial coefficients through
//! per-prime valuations, without materializing the integers involved.
//!
//! - [`valuation`]: primes, `ν_p` of integers and factorials, exact rational floors.
//! - [`ratio`]: factorial ratios in `n`, divisibility claims and certificates.
//! - [`theorem`]: the concrete claims, proof replays, regressions and sweeps.
//! - [`registry`]: named claim families and valuation engines.

pub mod error;
pub mod ratio;
pub mod registry;
pub mod theorem;
pub mod valuation;

pub use error::{Error, Result};
