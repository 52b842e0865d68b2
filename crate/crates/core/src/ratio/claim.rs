use serde::{Deserialize, Serialize};

use super::{EvaluatedRatio, FactorialRatio, LinearForm};
use crate::error::{Error, Result};
use crate::valuation::{nu_pos, PrimeTable};

/// `∏ divisor_moduli(n) · divisor_ratio(n)  |  ∏ multiplier_constants · dividend_ratio(n)`
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisibilityClaim {
    divisor_moduli: Vec<LinearForm>,
    divisor_ratio: FactorialRatio,
    multiplier_constants: Vec<u64>,
    dividend_ratio: FactorialRatio,
}

/// A claim with `n` substituted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluatedClaim {
    pub moduli: Vec<u64>,
    pub divisor: EvaluatedRatio,
    pub multipliers: Vec<u64>,
    pub dividend: EvaluatedRatio,
}

impl DivisibilityClaim {
    pub fn new(
        divisor_moduli: Vec<LinearForm>,
        divisor_ratio: FactorialRatio,
        multiplier_constants: Vec<u64>,
        dividend_ratio: FactorialRatio,
    ) -> Result<Self> {
        if multiplier_constants.contains(&0) {
            return Err(Error::Domain("multiplier constants must be positive".into()));
        }
        Ok(Self {
            divisor_moduli,
            divisor_ratio,
            multiplier_constants,
            dividend_ratio,
        })
    }

    pub fn divisor_moduli(&self) -> &[LinearForm] {
        &self.divisor_moduli
    }

    pub fn divisor_ratio(&self) -> &FactorialRatio {
        &self.divisor_ratio
    }

    pub fn multiplier_constants(&self) -> &[u64] {
        &self.multiplier_constants
    }

    pub fn dividend_ratio(&self) -> &FactorialRatio {
        &self.dividend_ratio
    }

    pub fn evaluate(&self, n: u64) -> Result<EvaluatedClaim> {
        let moduli = self
            .divisor_moduli
            .iter()
            .map(|f| match f.eval(n)? {
                v if v >= 1 => Ok(v as u64),
                v => Err(Error::Domain(format!("modulus {f} is {v} at n={n}"))),
            })
            .collect::<Result<_>>()?;
        Ok(EvaluatedClaim {
            moduli,
            divisor: self.divisor_ratio.evaluate(n)?,
            multipliers: self.multiplier_constants.clone(),
            dividend: self.dividend_ratio.evaluate(n)?,
        })
    }

    /// Primes above this value give `required <= 0` and `available >= 0`.
    pub fn prime_bound(&self, n: u64) -> Result<u64> {
        self.evaluate(n).map(|e| e.prime_bound())
    }
}

impl EvaluatedClaim {
    pub fn prime_bound(&self) -> u64 {
        self.moduli
            .iter()
            .copied()
            .chain([
                self.divisor.max_positive_argument(),
                self.dividend.max_negative_argument(),
            ])
            .max()
            .unwrap_or(0)
    }

    pub fn required(&self, p: u64) -> Result<i64> {
        let from_moduli: u64 = self.moduli.iter().map(|&m| nu_pos(m, p)).sum();
        (from_moduli as i64)
            .checked_add(self.divisor.valuation(p)?)
            .ok_or_else(|| Error::Overflow(format!("required exponent at p={p}")))
    }

    pub fn available(&self, p: u64) -> Result<i64> {
        let from_multipliers: u64 = self.multipliers.iter().map(|&m| nu_pos(m, p)).sum();
        (from_multipliers as i64)
            .checked_add(self.dividend.valuation(p)?)
            .ok_or_else(|| Error::Overflow(format!("available exponent at p={p}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub p: u64,
    pub required: i64,
    pub available: i64,
}

impl CertificateEntry {
    pub fn margin(&self) -> i64 {
        self.available - self.required
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails { witness: u64 },
}

/// Per-prime ledger for one instance of a claim.
///
/// Primes with nothing required and nothing missing are left out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: u64,
    pub entries: Vec<CertificateEntry>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn witness(&self) -> Option<u64> {
        match self.verdict {
            Verdict::Holds => None,
            Verdict::Fails { witness } => Some(witness),
        }
    }

    pub fn entry(&self, p: u64) -> Option<&CertificateEntry> {
        self.entries
            .binary_search_by_key(&p, |e| e.p)
            .ok()
            .map(|i| &self.entries[i])
    }
}

/// Checks `c` at `n` over every prime up to its prime bound.
pub fn verify_claim(c: &DivisibilityClaim, n: u64, table: &PrimeTable) -> Result<Certificate> {
    let evaluated = c.evaluate(n)?;
    let primes = table.up_to(evaluated.prime_bound())?;
    certify(&evaluated, n, primes.iter().copied())
}

/// Checks `c` at `n` over an explicit ascending list of primes only.
pub fn verify_claim_at(c: &DivisibilityClaim, n: u64, primes: &[u64]) -> Result<Certificate> {
    certify(&c.evaluate(n)?, n, primes.iter().copied())
}

fn certify(e: &EvaluatedClaim, n: u64, primes: impl Iterator<Item = u64>) -> Result<Certificate> {
    let mut entries = Vec::new();
    let mut witness = None;
    for p in primes {
        let required = e.required(p)?;
        let available = e.available(p)?;
        if available < required {
            witness.get_or_insert(p);
        } else if required <= 0 {
            continue;
        }
        entries.push(CertificateEntry {
            p,
            required,
            available,
        });
    }
    Ok(Certificate {
        n,
        entries,
        verdict: match witness {
            None => Verdict::Holds,
            Some(witness) => Verdict::Fails { witness },
        },
    })
}
