//! Brute-force ground truth built on arbitrary-precision integers.
//!
//! Nothing here knows about valuations, Legendre sums or carries. Every
//! answer comes from materializing the integers and dividing them, which is
//! slow and obviously correct. Inputs are plain evaluated arguments so that
//! callers cannot accidentally route their own code through the oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Largest factorial or binomial argument the oracle will materialize.
pub const MAX_ARGUMENT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument {value} exceeds the oracle scale guard of {limit}")]
    ScaleGuard { value: u64, limit: u64 },
    /// An exact division the theory promises left a remainder.
    #[error("integrity violation: {what} is not an integer (remainder {remainder})")]
    IntegrityViolation { what: String, remainder: BigInt },
}

pub type Result<T> = std::result::Result<T, OracleError>;

fn guard(value: u64) -> Result<()> {
    if value > MAX_ARGUMENT {
        Err(OracleError::ScaleGuard {
            value,
            limit: MAX_ARGUMENT,
        })
    } else {
        Ok(())
    }
}

/// `C(m, k)` via `C ← C·(m−i)/(i+1)`, each step an exact division.
pub fn big_binomial(m: u64, k: u64) -> Result<BigInt> {
    if k > m {
        return Err(OracleError::Domain(format!("C({m}, {k}) with k > m")));
    }
    guard(m)?;
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// The row `C(m, 0), …, C(m, m)` by the same recurrence.
pub fn big_binomial_row(m: u64) -> Result<Vec<BigInt>> {
    guard(m)?;
    let mut row = Vec::with_capacity(m as usize + 1);
    let mut acc = BigInt::one();
    for i in 0..=m {
        row.push(acc.clone());
        acc = acc * (m - i) / (i + 1);
    }
    Ok(row)
}

pub fn big_factorial(m: u64) -> Result<BigInt> {
    guard(m)?;
    Ok((2..=m).fold(BigInt::one(), |acc, j| acc * j))
}

fn exact_quotient(num: &BigInt, den: &BigInt, what: impl FnOnce() -> String) -> Result<BigInt> {
    if den.is_zero() {
        return Err(OracleError::Domain("division by zero".into()));
    }
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(OracleError::IntegrityViolation {
            what: what(),
            remainder: r,
        })
    }
}

fn checked_product(factors: &[u64]) -> Result<u64> {
    factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f))
        .ok_or_else(|| OracleError::Domain(format!("product of {factors:?} overflows u64")))
}

/// `T(a,b,n) = C(2an,an)·C(an,bn) / C(2bn,bn)`.
pub fn exact_t_ratio(a: u64, b: u64, n: u64) -> Result<BigInt> {
    if a <= b || b == 0 || n == 0 {
        return Err(OracleError::Domain(format!(
            "T({a},{b},{n}) needs a > b >= 1, n >= 1"
        )));
    }
    let an = checked_product(&[a, n])?;
    let bn = checked_product(&[b, n])?;
    let num = big_binomial(2 * an, an)? * big_binomial(an, bn)?;
    let den = big_binomial(2 * bn, bn)?;
    exact_quotient(&num, &den, || format!("T({a},{b},{n})"))
}

/// `S_n = C(6n,3n)·C(3n,n) / (2(2n+1)·C(2n,n))`.
pub fn exact_s(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(OracleError::Domain("S_n needs n >= 1".into()));
    }
    let n3 = checked_product(&[3, n])?;
    let num = big_binomial(2 * n3, n3)? * big_binomial(n3, n)?;
    let den = BigInt::from(2 * (2 * n + 1)) * big_binomial(2 * n, n)?;
    exact_quotient(&num, &den, || format!("S_{n}"))
}

/// `t_n = C(15n,5n)·C(5n−1,n−1) / ((10n+1)·C(3n,n))`.
pub fn exact_t(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(OracleError::Domain("t_n needs n >= 1".into()));
    }
    let n5 = checked_product(&[5, n])?;
    let num = big_binomial(3 * n5, n5)? * big_binomial(n5 - 1, n - 1)?;
    let den = BigInt::from(10 * n + 1) * big_binomial(3 * n, n)?;
    exact_quotient(&num, &den, || format!("t_{n}"))
}

pub fn divides(d: &BigInt, m: &BigInt) -> Result<bool> {
    if d.is_zero() {
        return Err(OracleError::Domain("divisor is zero".into()));
    }
    Ok((m % d).is_zero())
}

/// Exponent of `p` in `m` by repeated division; `None` for zero.
pub fn big_valuation(m: &BigInt, p: u64) -> Option<u64> {
    if m.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut m = m.abs();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        m = q;
        k += 1;
    }
}

/// Numerator and denominator of `∏ (argᵢ!)^{eᵢ}`, unreduced.
pub fn factorial_ratio_parts(terms: &[(u64, i64)]) -> Result<(BigInt, BigInt)> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for &(arg, exp) in terms {
        let f = big_factorial(arg)?;
        let power = num_traits::pow(f, exp.unsigned_abs() as usize);
        if exp >= 0 {
            num *= power;
        } else {
            den *= power;
        }
    }
    Ok((num, den))
}

pub fn factorial_ratio_is_integral(terms: &[(u64, i64)]) -> Result<bool> {
    let (num, den) = factorial_ratio_parts(terms)?;
    divides(&den, &num)
}

/// Result of checking `∏ moduli · D | ∏ multipliers · B` by direct division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimOutcome {
    pub holds: bool,
    /// Exact quotient when `holds`.
    pub quotient: Option<BigInt>,
}

/// Checks an evaluated divisibility claim. `divisor_terms` and `dividend_terms`
/// are `(factorial argument, exponent)` pairs.
pub fn claim_holds(
    divisor_moduli: &[u64],
    divisor_terms: &[(u64, i64)],
    multipliers: &[u64],
    dividend_terms: &[(u64, i64)],
) -> Result<ClaimOutcome> {
    let (dnum, dden) = factorial_ratio_parts(divisor_terms)?;
    let (vnum, vden) = factorial_ratio_parts(dividend_terms)?;
    let moduli: BigInt = divisor_moduli.iter().map(|&m| BigInt::from(m)).product();
    let mult: BigInt = multipliers.iter().map(|&m| BigInt::from(m)).product();
    // dividend / divisor = (mult·vnum·dden) / (moduli·dnum·vden)
    let top = mult * vnum * dden;
    let bottom = moduli * dnum * vden;
    if bottom.is_zero() {
        return Err(OracleError::Domain("divisor evaluates to zero".into()));
    }
    let (q, r) = top.div_rem(&bottom);
    Ok(if r.is_zero() {
        ClaimOutcome {
            holds: true,
            quotient: Some(q),
        }
    } else {
        ClaimOutcome {
            holds: false,
            quotient: None,
        }
    })
}

/// Exact big-integer check of `(2bn+1)(2bn+3)C(2bn,bn) | 3(a−b)(3a−b)C(2an,an)C(an,bn)`.
pub fn conjecture_holds(a: u64, b: u64, n: u64) -> Result<ClaimOutcome> {
    if a <= b || b == 0 || n == 0 {
        return Err(OracleError::Domain(format!(
            "({a},{b},{n}) needs a > b >= 1, n >= 1"
        )));
    }
    let an = checked_product(&[a, n])?;
    let bn = checked_product(&[b, n])?;
    let divisor = BigInt::from(2 * bn + 1) * BigInt::from(2 * bn + 3) * big_binomial(2 * bn, bn)?;
    let dividend = BigInt::from(3u64)
        * BigInt::from(a - b)
        * BigInt::from(3 * a - b)
        * big_binomial(2 * an, an)?
        * big_binomial(an, bn)?;
    let (q, r) = dividend.div_rem(&divisor);
    Ok(ClaimOutcome {
        holds: r.is_zero(),
        quotient: r.is_zero().then_some(q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(big_binomial(4, 2).unwrap(), big(6));
        assert_eq!(big_binomial(17, 0).unwrap(), big(1));
        assert_eq!(big_binomial(15, 5).unwrap(), big(3003));
        assert!(matches!(big_binomial(2, 3), Err(OracleError::Domain(_))));
        assert!(matches!(
            big_binomial(10_001, 1),
            Err(OracleError::ScaleGuard { .. })
        ));
    }

    #[test]
    fn rows_match_single_values() {
        for m in [0, 1, 7, 30] {
            let row = big_binomial_row(m).unwrap();
            assert_eq!(row.len() as u64, m + 1);
            for (k, c) in row.iter().enumerate() {
                assert_eq!(*c, big_binomial(m, k as u64).unwrap());
            }
        }
    }

    #[test]
    fn named_quantities() {
        assert_eq!(exact_t_ratio(2, 1, 1).unwrap(), big(6));
        assert_eq!(exact_t_ratio(3, 1, 1).unwrap(), big(30));
        assert_eq!(exact_s(1).unwrap(), big(5));
        assert_eq!(exact_t(1).unwrap(), big(91));
    }

    #[test]
    fn inexact_division_is_an_integrity_violation() {
        let err = exact_quotient(&big(7), &big(2), || "7/2".into()).unwrap_err();
        assert_eq!(
            err,
            OracleError::IntegrityViolation {
                what: "7/2".into(),
                remainder: big(1)
            }
        );
    }

    #[test]
    fn divides_examples() {
        assert!(divides(&big(30), &big(180)).unwrap());
        assert!(divides(&big(1), &big(987_654_321)).unwrap());
        assert!(divides(&big(13), &big(1911)).unwrap());
        assert!(!divides(&big(7), &big(1911 + 1)).unwrap());
        assert!(divides(&big(0), &big(5)).is_err());
    }

    #[test]
    fn conjecture_small_cases() {
        let c = conjecture_holds(2, 1, 1).unwrap();
        assert_eq!(c.quotient, Some(big(6)));
        let c = conjecture_holds(3, 1, 1).unwrap();
        assert_eq!(c.quotient, Some(big(96)));
    }

    #[test]
    fn generic_claim_matches_conjecture_shape() {
        // (2,1,1): 3·5·C(2,1) | 3·1·5·C(4,2)·C(2,1)
        let c = claim_holds(&[3, 5], &[(2, 1), (1, -2)], &[3, 1, 5], &[(4, 1), (2, -2), (2, 1), (1, -2)])
            .unwrap();
        assert_eq!(c.quotient, Some(big(6)));
        // n!²/(2n)! at n=1 is 1/2
        assert!(!factorial_ratio_is_integral(&[(1, 2), (2, -1)]).unwrap());
        // (30n)!n!/((15n)!(10n)!(6n)!) at n=1
        assert!(factorial_ratio_is_integral(&[(30, 1), (1, 1), (15, -1), (10, -1), (6, -1)]).unwrap());
    }

    #[test]
    fn valuation_by_division() {
        assert_eq!(big_valuation(&big(12), 2), Some(2));
        assert_eq!(big_valuation(&big(27), 3), Some(3));
        assert_eq!(big_valuation(&big(7), 5), Some(0));
        assert_eq!(big_valuation(&BigInt::zero(), 5), None);
    }

    #[test]
    fn binomial_symmetry_and_pascal() {
        for m in 1..=200u64 {
            for k in 0..=m {
                assert_eq!(big_binomial(m, k).unwrap(), big_binomial(m, m - k).unwrap());
                if k >= 1 {
                    assert_eq!(
                        big_binomial(m, k).unwrap(),
                        big_binomial(m - 1, k - 1).unwrap()
                            + big_binomial(m - 1, k).unwrap_or_default(),
                        "Pascal at ({m},{k})"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn binomial_matches_factorials(m in 0u64..300, k in 0u64..300) {
            prop_assume!(k <= m);
            let via_fact = big_factorial(m).unwrap()
                / (big_factorial(k).unwrap() * big_factorial(m - k).unwrap());
            prop_assert_eq!(big_binomial(m, k).unwrap(), via_fact);
        }
    }
}
