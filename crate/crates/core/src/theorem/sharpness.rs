use binomdiv_oracle::{big_binomial, divides, MAX_ARGUMENT};
use num_bigint::BigInt;
use num_integer::Integer;

use super::ParamTriple;
use crate::error::{Error, Result};

/// Smallest `M` with `(2bn+1)(2bn+3)C(2bn,bn) | M·C(2an,an)C(an,bn)`, computed
/// exactly as `D / gcd(D, B)`.
///
/// Errors with [`Error::TheoremViolation`] if `M` does not divide `3(a−b)(3a−b)`.
pub fn minimal_multiplier(t: &ParamTriple) -> Result<BigInt> {
    let (an, bn) = (t.an(), t.bn());
    if 2 * an > MAX_ARGUMENT {
        return Err(Error::ResourceLimit(format!(
            "2an = {} exceeds the exact-arithmetic guard {MAX_ARGUMENT}",
            2 * an
        )));
    }
    let d = BigInt::from(2 * bn + 1) * BigInt::from(2 * bn + 3) * big_binomial(2 * bn, bn)?;
    let b = big_binomial(2 * an, an)? * big_binomial(an, bn)?;
    let m = &d / d.gcd(&b);
    let bound: BigInt = t.multipliers().iter().map(|&c| BigInt::from(c)).product();
    if !divides(&m, &bound)? {
        return Err(Error::TheoremViolation(format!(
            "minimal multiplier {m} does not divide {bound} at ({}, {}, {})",
            t.a, t.b, t.n
        )));
    }
    Ok(m)
}
