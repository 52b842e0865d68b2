//! Executable replay of the per-prime argument for `p^α ‖ 2bn+3`, and the
//! end-to-end inequality for `2bn+1`, whose case analysis is not written out.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{t_ratio, ParamTriple};
use crate::error::{Error, Result};
use crate::valuation::{nu_pos, PrimeTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModulusBranch {
    TwoBnPlus1,
    TwoBnPlus3,
}

impl ModulusBranch {
    pub fn offset(self) -> u64 {
        match self {
            ModulusBranch::TwoBnPlus1 => 1,
            ModulusBranch::TwoBnPlus3 => 3,
        }
    }
}

impl fmt::Display for ModulusBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModulusBranch::TwoBnPlus1 => "2bn+1",
            ModulusBranch::TwoBnPlus3 => "2bn+3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TraceBranch {
    /// `α <= τ`: the factors `(a−b)` and `(3a−b)` already supply `p^α`.
    MultiplierCovers,
    /// Every level in the analysed range contributes exactly one factor of `p`.
    LevelAnalysis,
    /// `p = 3` and `9 | n`, which forces `α = 1`.
    NineDividesN,
    /// The `2bn+1` modulus: only the final inequality is checked.
    OmittedBranchNumeric,
}

/// One level `i` of the Legendre sum for `T(a,b,n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub i: u64,
    /// `⌊2an/p^i⌋, ⌊bn/p^i⌋, ⌊an/p^i⌋, ⌊(a−b)n/p^i⌋, ⌊2bn/p^i⌋`
    pub floors: [u64; 5],
    /// `floors[0] + floors[1] − floors[2] − floors[3] − floors[4]`
    pub term: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub triple: ParamTriple,
    pub p: u64,
    pub modulus_branch: ModulusBranch,
    pub modulus: u64,
    pub alpha: u64,
    /// `ν_p(a−b)`; not computed for the `2bn+1` branch.
    pub beta: Option<u64>,
    /// `ν_p(3a−b)`; not computed for the `2bn+1` branch.
    pub gamma: Option<u64>,
    pub tau: Option<u64>,
    pub branch: TraceBranch,
    pub levels: Vec<LevelRecord>,
    /// `ν_p(T(a,b,n))`
    pub t_valuation: i64,
    /// `ν_p(3(a−b)(3a−b))`
    pub multiplier_valuation: u64,
    /// Every asserted step that did not come out as expected. Empty when satisfied.
    pub failures: Vec<String>,
    pub satisfied: bool,
}

impl ProofTrace {
    pub fn total_valuation(&self) -> i64 {
        self.multiplier_valuation as i64 + self.t_valuation
    }
}

fn level(t: &ParamTriple, p: u64, i: u64) -> Result<LevelRecord> {
    let pk = u32::try_from(i)
        .ok()
        .and_then(|i| p.checked_pow(i))
        .ok_or_else(|| Error::Overflow(format!("{p}^{i}")))?;
    let (an, bn) = (t.an(), t.bn());
    let floors = [2 * an, bn, an, an - bn, 2 * bn].map(|v| v / pk);
    let term = floors[0] as i64 + floors[1] as i64
        - floors[2] as i64
        - floors[3] as i64
        - floors[4] as i64;
    Ok(LevelRecord { i, floors, term })
}

fn levels(t: &ParamTriple, p: u64, range: std::ops::RangeInclusive<u64>) -> Result<Vec<LevelRecord>> {
    range.map(|i| level(t, p, i)).collect()
}

struct Common {
    modulus: u64,
    alpha: u64,
    t_valuation: i64,
    multiplier_valuation: u64,
}

fn common(t: &ParamTriple, p: u64, branch: ModulusBranch) -> Result<Common> {
    let modulus = t.modulus(branch);
    if p < 2 || !modulus.is_multiple_of(p) {
        return Err(Error::Domain(format!("{p} does not divide {branch} = {modulus}")));
    }
    Ok(Common {
        modulus,
        alpha: nu_pos(modulus, p),
        t_valuation: t_ratio(t.a, t.b)?.evaluate(t.n)?.valuation(p)?,
        multiplier_valuation: t.multipliers().iter().map(|&m| nu_pos(m, p)).sum(),
    })
}

/// Replays the argument for a prime `p | 2bn+3`.
pub fn proof_trace(t: &ParamTriple, p: u64) -> Result<ProofTrace> {
    let c = common(t, p, ModulusBranch::TwoBnPlus3)?;
    let alpha = c.alpha;
    let beta = nu_pos(t.a - t.b, p);
    let gamma = nu_pos(3 * t.a - t.b, p);
    let tau = beta.max(gamma);
    let mut failures = Vec::new();

    let (branch, levels) = if alpha <= tau {
        (TraceBranch::MultiplierCovers, Vec::new())
    } else if p == 3 && t.n.is_multiple_of(9) {
        if alpha != 1 {
            failures.push(format!("9 | n but ν₃(2bn+3) = {alpha}"));
        }
        (TraceBranch::NineDividesN, Vec::new())
    } else {
        // p = 3 loses one level to the factor 3 that n may carry.
        let (first, lower_bound) = if p == 3 {
            (tau + 2, alpha as i64 - tau as i64 - 1)
        } else {
            if t.n.gcd(&p) != 1 {
                failures.push(format!("gcd({p}, n) != 1"));
            }
            (tau + 1, (alpha - tau) as i64)
        };
        let levels = levels(t, p, first..=alpha)?;
        for l in levels.iter().filter(|l| l.term != 1) {
            failures.push(format!("level term at i={} is {}, expected 1", l.i, l.term));
        }
        if c.t_valuation < lower_bound {
            failures.push(format!(
                "ν_p(T) = {} is below the bound {lower_bound}",
                c.t_valuation
            ));
        }
        (TraceBranch::LevelAnalysis, levels)
    };

    Ok(finish(t, p, ModulusBranch::TwoBnPlus3, c, Some((beta, gamma, tau)), branch, levels, failures))
}

/// The `2bn+1` modulus: records every level informationally and checks only
/// `ν_p(3(a−b)(3a−b)·T) >= α`.
pub fn proof_trace_omitted_branch(t: &ParamTriple, p: u64) -> Result<ProofTrace> {
    let c = common(t, p, ModulusBranch::TwoBnPlus1)?;
    let levels = levels(t, p, 1..=c.alpha)?;
    Ok(finish(
        t,
        p,
        ModulusBranch::TwoBnPlus1,
        c,
        None,
        TraceBranch::OmittedBranchNumeric,
        levels,
        Vec::new(),
    ))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    t: &ParamTriple,
    p: u64,
    modulus_branch: ModulusBranch,
    c: Common,
    local: Option<(u64, u64, u64)>,
    branch: TraceBranch,
    levels: Vec<LevelRecord>,
    mut failures: Vec<String>,
) -> ProofTrace {
    let total = c.multiplier_valuation as i64 + c.t_valuation;
    if total < c.alpha as i64 {
        failures.push(format!(
            "ν_p(3(a−b)(3a−b)T) = {total} is below α = {}",
            c.alpha
        ));
    }
    ProofTrace {
        triple: *t,
        p,
        modulus_branch,
        modulus: c.modulus,
        alpha: c.alpha,
        beta: local.map(|l| l.0),
        gamma: local.map(|l| l.1),
        tau: local.map(|l| l.2),
        branch,
        levels,
        t_valuation: c.t_valuation,
        multiplier_valuation: c.multiplier_valuation,
        satisfied: failures.is_empty(),
        failures,
    }
}

/// Traces for every prime factor of the selected modulus, ascending by prime.
pub fn trace_all(t: &ParamTriple, branch: ModulusBranch, table: &PrimeTable) -> Result<Vec<ProofTrace>> {
    table
        .factorize(t.modulus(branch))?
        .into_iter()
        .map(|(p, _)| match branch {
            ModulusBranch::TwoBnPlus3 => proof_trace(t, p),
            ModulusBranch::TwoBnPlus1 => proof_trace_omitted_branch(t, p),
        })
        .collect()
}
