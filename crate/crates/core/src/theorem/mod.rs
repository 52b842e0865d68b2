//! The concrete claims: `(2bn+1)(2bn+3)C(2bn,bn) | 3(a−b)(3a−b)C(2an,an)C(an,bn)`
//! and the two older congruences it generalizes, plus proof replays and sweeps.

mod regressions;
mod sharpness;
mod sweep;
mod trace;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{
    is_integral_with, verify_claim, verify_claim_at, Certificate, DivisibilityClaim,
    FactorialRatio, LinearForm,
};
use crate::valuation::PrimeTable;

pub use regressions::{
    check_theorem_a, check_theorem_b, certificate_implies_theorem_a, theorem_a, theorem_a_claims,
    theorem_b, theorem_b_claims, RegressionCheck,
};
pub use sharpness::minimal_multiplier;
pub use sweep::{
    enumerate_triples, run_sweep, SweepConfig, SweepOutcome, SweepRanges, SweepReport,
    TripleResult, Violation,
};
pub use trace::{
    proof_trace, proof_trace_omitted_branch, trace_all, LevelRecord, ModulusBranch, ProofTrace,
    TraceBranch,
};

/// Inputs are rejected once `2·a·n` reaches this value.
pub const OVERFLOW_GUARD: u64 = 1 << 62;

/// `(a, b, n)` with `a > b >= 1`, `n >= 1` and `2an < 2^62`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParamTriple {
    pub a: u64,
    pub b: u64,
    pub n: u64,
}

impl ParamTriple {
    pub fn new(a: u64, b: u64, n: u64) -> Result<Self> {
        check_pair(a, b)?;
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        match a.checked_mul(n).and_then(|an| an.checked_mul(2)) {
            Some(v) if v < OVERFLOW_GUARD => Ok(Self { a, b, n }),
            _ => Err(Error::Overflow(format!(
                "2·a·n for a={a}, n={n} is not below 2^62"
            ))),
        }
    }

    pub fn an(&self) -> u64 {
        self.a * self.n
    }

    pub fn bn(&self) -> u64 {
        self.b * self.n
    }

    pub fn modulus(&self, branch: ModulusBranch) -> u64 {
        2 * self.bn() + branch.offset()
    }

    /// `[3, a−b, 3a−b]`
    pub fn multipliers(&self) -> [u64; 3] {
        [3, self.a - self.b, 3 * self.a - self.b]
    }
}

fn check_pair(a: u64, b: u64) -> Result<()> {
    if b == 0 || a <= b {
        return Err(Error::Domain(format!("need a > b >= 1, got a={a}, b={b}")));
    }
    if a >= OVERFLOW_GUARD / 2 {
        return Err(Error::Overflow(format!("a={a} exceeds the overflow guard")));
    }
    Ok(())
}

fn nf(c: u64) -> LinearForm {
    LinearForm::n_times(c as i64)
}

/// `T(a,b,·) = (2an)!(bn)! / ((an)!((a−b)n)!(2bn)!)`
pub fn t_ratio(a: u64, b: u64) -> Result<FactorialRatio> {
    check_pair(a, b)?;
    Ok(FactorialRatio::new([
        (nf(2 * a), 1),
        (nf(b), 1),
        (nf(a), -1),
        (nf(a - b), -1),
        (nf(2 * b), -1),
    ]))
}

fn multiplier_constants(a: u64, b: u64) -> Result<Vec<u64>> {
    let constants = vec![3, a - b, 3 * a - b];
    constants
        .iter()
        .try_fold(1u64, |acc, &c| acc.checked_mul(c))
        .ok_or_else(|| Error::Overflow(format!("3(a−b)(3a−b) for a={a}, b={b}")))?;
    Ok(constants)
}

pub fn build_conjecture_claim(a: u64, b: u64) -> Result<DivisibilityClaim> {
    check_pair(a, b)?;
    let (a_n, b_n) = (nf(a), nf(b));
    DivisibilityClaim::new(
        vec![
            LinearForm::new(2 * b as i64, 1),
            LinearForm::new(2 * b as i64, 3),
        ],
        FactorialRatio::binomial(nf(2 * b), b_n),
        multiplier_constants(a, b)?,
        FactorialRatio::binomial(nf(2 * a), a_n).product(&FactorialRatio::binomial(a_n, b_n)),
    )
}

/// `modulus | 3(a−b)(3a−b)·T(a,b,n)` for a single modulus.
pub fn branch_claim(a: u64, b: u64, branch: ModulusBranch) -> Result<DivisibilityClaim> {
    DivisibilityClaim::new(
        vec![LinearForm::new(2 * b as i64, branch.offset() as i64)],
        FactorialRatio::one(),
        multiplier_constants(a, b)?,
        t_ratio(a, b)?,
    )
}

pub fn verify_triple(t: &ParamTriple, table: &PrimeTable) -> Result<Certificate> {
    verify_claim(&build_conjecture_claim(t.a, t.b)?, t.n, table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtSplit {
    pub branch1: Certificate,
    pub branch3: Certificate,
}

impl CrtSplit {
    pub fn holds(&self) -> bool {
        self.branch1.holds() && self.branch3.holds()
    }
}

/// Checks `2bn+1` and `2bn+3` separately, each over its own prime factors.
pub fn crt_split_check(t: &ParamTriple, table: &PrimeTable) -> Result<CrtSplit> {
    let m1 = t.modulus(ModulusBranch::TwoBnPlus1);
    let m3 = t.modulus(ModulusBranch::TwoBnPlus3);
    if m1.gcd(&m3) != 1 {
        return Err(Error::TheoremViolation(format!("gcd({m1}, {m3}) != 1")));
    }
    let branch = |branch: ModulusBranch, m: u64| -> Result<Certificate> {
        let primes: Vec<u64> = table.factorize(m)?.into_iter().map(|(p, _)| p).collect();
        verify_claim_at(&branch_claim(t.a, t.b, branch)?, t.n, &primes)
    };
    Ok(CrtSplit {
        branch1: branch(ModulusBranch::TwoBnPlus1, m1)?,
        branch3: branch(ModulusBranch::TwoBnPlus3, m3)?,
    })
}

pub fn check_t_integrality(t: &ParamTriple, table: &PrimeTable) -> Result<bool> {
    Ok(is_integral_with(&t_ratio(t.a, t.b)?, t.n, table)?.is_integral())
}
