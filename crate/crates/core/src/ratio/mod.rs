//! Factorial ratios in one integer parameter `n`, and divisibility claims between them.

mod claim;
mod text;

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::ops::Sub;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::valuation::{nu_factorial, PrimeTable};

pub use claim::{
    verify_claim, verify_claim_at, Certificate, CertificateEntry, DivisibilityClaim, EvaluatedClaim,
    Verdict,
};

/// The affine form `coeff·n + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeff: i64,
    pub offset: i64,
}

impl LinearForm {
    pub const fn new(coeff: i64, offset: i64) -> Self {
        Self { coeff, offset }
    }

    /// `coeff·n`
    pub const fn n_times(coeff: i64) -> Self {
        Self::new(coeff, 0)
    }

    pub const fn constant(offset: i64) -> Self {
        Self::new(0, offset)
    }

    pub fn eval(self, n: u64) -> Result<i64> {
        i64::try_from(n)
            .ok()
            .and_then(|n| self.coeff.checked_mul(n))
            .and_then(|cn| cn.checked_add(self.offset))
            .ok_or_else(|| Error::Overflow(format!("{self} at n={n}")))
    }

    /// Evaluates a factorial argument, which must be nonnegative.
    pub fn eval_argument(self, n: u64) -> Result<u64> {
        let v = self.eval(n)?;
        u64::try_from(v)
            .map_err(|_| Error::Domain(format!("factorial argument {self} is {v} at n={n}")))
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;

    fn sub(self, rhs: Self) -> Self {
        LinearForm::new(self.coeff - rhs.coeff, self.offset - rhs.offset)
    }
}

/// `∏ (formᵢ(n))!^{eᵢ}` with merged, nonzero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorialRatio {
    terms: Vec<(LinearForm, i64)>,
}

impl FactorialRatio {
    pub fn new(terms: impl IntoIterator<Item = (LinearForm, i64)>) -> Self {
        let mut merged: BTreeMap<Reverse<LinearForm>, i64> = BTreeMap::new();
        for (form, exp) in terms {
            *merged.entry(Reverse(form)).or_default() += exp;
        }
        Self {
            terms: merged
                .into_iter()
                .filter(|&(_, e)| e != 0)
                .map(|(Reverse(f), e)| (f, e))
                .collect(),
        }
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn factorial(form: LinearForm) -> Self {
        Self::new([(form, 1)])
    }

    /// `C(top, bottom) = top! / (bottom!·(top−bottom)!)`
    pub fn binomial(top: LinearForm, bottom: LinearForm) -> Self {
        Self::new([(top, 1), (bottom, -1), (top - bottom, -1)])
    }

    pub fn product(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).copied())
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.terms.iter().map(|&(f, e)| (f, -e)))
    }

    pub fn terms(&self) -> &[(LinearForm, i64)] {
        &self.terms
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, n: u64) -> Result<EvaluatedRatio> {
        let terms = self
            .terms
            .iter()
            .map(|&(f, e)| Ok((f.eval_argument(n)?, e)))
            .collect::<Result<_>>()?;
        Ok(EvaluatedRatio { terms })
    }
}

/// A [`FactorialRatio`] with `n` substituted: `(argument, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluatedRatio {
    terms: Vec<(u64, i64)>,
}

impl EvaluatedRatio {
    pub fn terms(&self) -> &[(u64, i64)] {
        &self.terms
    }

    pub fn valuation(&self, p: u64) -> Result<i64> {
        self.terms.iter().try_fold(0i64, |acc, &(arg, e)| {
            i64::try_from(nu_factorial(arg, p))
                .ok()
                .and_then(|v| v.checked_mul(e))
                .and_then(|v| acc.checked_add(v))
                .ok_or_else(|| Error::Overflow(format!("valuation sum at p={p}")))
        })
    }

    /// The Legendre addend at one level: `Σ eᵢ·⌊argᵢ / p^i⌋` for `prime_power = p^i`.
    pub fn level_term(&self, prime_power: u64) -> i64 {
        self.terms
            .iter()
            .map(|&(arg, e)| (arg / prime_power) as i64 * e)
            .sum()
    }

    /// Largest argument carrying a positive exponent.
    pub fn max_positive_argument(&self) -> u64 {
        self.max_argument_where(|e| e > 0)
    }

    /// Largest argument carrying a negative exponent.
    pub fn max_negative_argument(&self) -> u64 {
        self.max_argument_where(|e| e < 0)
    }

    fn max_argument_where(&self, keep: impl Fn(i64) -> bool) -> u64 {
        self.terms
            .iter()
            .filter(|&&(_, e)| keep(e))
            .map(|&(a, _)| a)
            .max()
            .unwrap_or(0)
    }
}

pub fn ratio_valuation(r: &FactorialRatio, n: u64, p: u64) -> Result<i64> {
    r.evaluate(n)?.valuation(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrality {
    Integral,
    /// Least prime with a negative valuation.
    NotIntegral { witness: u64 },
}

impl Integrality {
    pub fn is_integral(self) -> bool {
        self == Integrality::Integral
    }
}

/// Integrality of `r` at one `n`, checked over the primes of `table`.
///
/// Only primes up to the largest negative-exponent argument can have a
/// negative valuation, so those are the only ones examined.
pub fn is_integral_with(r: &FactorialRatio, n: u64, table: &PrimeTable) -> Result<Integrality> {
    let evaluated = r.evaluate(n)?;
    for &p in table.up_to(evaluated.max_negative_argument())? {
        if evaluated.valuation(p)? < 0 {
            return Ok(Integrality::NotIntegral { witness: p });
        }
    }
    Ok(Integrality::Integral)
}

/// [`is_integral_with`] using a freshly sieved table.
pub fn is_integral_at(r: &FactorialRatio, n: u64) -> Result<Integrality> {
    let evaluated = r.evaluate(n)?;
    let table = crate::valuation::sieve(evaluated.max_negative_argument())?;
    is_integral_with(r, n, &table)
}
