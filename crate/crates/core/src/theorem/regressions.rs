//! `2n+3 | 3·S_n` and `10n+3 | 21·t_n`, with
//! `S_n = C(6n,3n)C(3n,n) / (2(2n+1)C(2n,n))` and
//! `t_n = C(15n,5n)C(5n−1,n−1) / ((10n+1)C(3n,n))`.
//!
//! Each statement is a pair of claims: one that the quotient is an integer and
//! one for the congruence, with the constant denominators moved to the
//! divisor side as constant moduli.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{verify_claim, Certificate, DivisibilityClaim, FactorialRatio, LinearForm};
use crate::valuation::{nu_pos, PrimeTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionCheck {
    pub integrality: Certificate,
    pub divisibility: Certificate,
}

impl RegressionCheck {
    pub fn holds(&self) -> bool {
        self.integrality.holds() && self.divisibility.holds()
    }
}

fn nf(c: i64) -> LinearForm {
    LinearForm::n_times(c)
}

fn binom(top: LinearForm, bottom: LinearForm) -> FactorialRatio {
    FactorialRatio::binomial(top, bottom)
}

/// `(S_n ∈ ℤ, 2n+3 | 3·S_n)` as claims.
pub fn theorem_a_claims() -> (DivisibilityClaim, DivisibilityClaim) {
    let numerator = binom(nf(6), nf(3)).product(&binom(nf(3), nf(1)));
    let central = binom(nf(2), nf(1));
    let denominator = vec![LinearForm::constant(2), LinearForm::new(2, 1)];
    let mut with_modulus = vec![LinearForm::new(2, 3)];
    with_modulus.extend(&denominator);
    (
        DivisibilityClaim::new(denominator, central.clone(), vec![], numerator.clone()).unwrap(),
        DivisibilityClaim::new(with_modulus, central, vec![3], numerator).unwrap(),
    )
}

/// `(t_n ∈ ℤ, 10n+3 | 21·t_n)` as claims.
pub fn theorem_b_claims() -> (DivisibilityClaim, DivisibilityClaim) {
    let numerator =
        binom(nf(15), nf(5)).product(&binom(LinearForm::new(5, -1), LinearForm::new(1, -1)));
    let denominator = binom(nf(3), nf(1));
    let eleven = LinearForm::new(10, 1);
    (
        DivisibilityClaim::new(vec![eleven], denominator.clone(), vec![], numerator.clone()).unwrap(),
        DivisibilityClaim::new(vec![LinearForm::new(10, 3), eleven], denominator, vec![21], numerator)
            .unwrap(),
    )
}

fn run(claims: (DivisibilityClaim, DivisibilityClaim), n: u64, table: &PrimeTable) -> Result<RegressionCheck> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(RegressionCheck {
        integrality: verify_claim(&claims.0, n, table)?,
        divisibility: verify_claim(&claims.1, n, table)?,
    })
}

pub fn theorem_a(n: u64, table: &PrimeTable) -> Result<RegressionCheck> {
    run(theorem_a_claims(), n, table)
}

pub fn theorem_b(n: u64, table: &PrimeTable) -> Result<RegressionCheck> {
    run(theorem_b_claims(), n, table)
}

pub fn check_theorem_a(n: u64, table: &PrimeTable) -> Result<bool> {
    theorem_a(n, table).map(|c| c.holds())
}

pub fn check_theorem_b(n: u64, table: &PrimeTable) -> Result<bool> {
    theorem_b(n, table).map(|c| c.holds())
}

/// Reads `2n+3 | 3·S_n` off the `2bn+3` certificate for `(a, b) = (3, 1)`.
///
/// That certificate compares `α = ν_p(2n+3)` with `ν_p(48·T(3,1,n))`, and
/// `3·S_n = 48·T(3,1,n) / (32·(2n+1))`, so the margin must also absorb
/// `ν_p(32(2n+1))`, which vanishes for every odd `p | 2n+3`.
pub fn certificate_implies_theorem_a(n: u64, branch3: &Certificate, table: &PrimeTable) -> Result<bool> {
    if branch3.n != n {
        return Err(Error::Domain(format!(
            "certificate is for n={}, not n={n}",
            branch3.n
        )));
    }
    for (p, alpha) in table.factorize(2 * n + 3)? {
        let Some(entry) = branch3.entry(p) else {
            return Ok(false);
        };
        let correction = (5 * nu_pos(2, p) + nu_pos(2 * n + 1, p)) as i64;
        if entry.required != alpha as i64 || entry.margin() < correction {
            return Ok(false);
        }
    }
    Ok(true)
}
