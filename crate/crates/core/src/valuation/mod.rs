//! Primes, p-adic valuations of integers and factorials, and exact rational floors.

mod padic;
mod rational;
mod sieve;

pub use padic::{kummer_binomial_valuation, nu_factorial, nu_int, Valuation};
pub(crate) use padic::nu_pos;
pub use rational::{lemma1_holds, ExactRational, Lemma1Outcome};
pub use sieve::{sieve, PrimeTable, SIEVE_LIMIT_GUARD};
