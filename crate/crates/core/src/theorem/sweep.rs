use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ParamTriple, ProofTrace};
use crate::error::{Error, Result};
use crate::ratio::{verify_claim, Certificate, DivisibilityClaim};
use crate::registry::FamilyRegistry;
use crate::valuation::sieve;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub family: String,
    pub a_max: u64,
    pub b_max: u64,
    pub n_max: u64,
    pub jobs: usize,
    /// Check a seeded random subset of this many triples instead of the whole box.
    pub sample: Option<usize>,
    pub seed: u64,
    /// Record wall-clock times; with `false` every time is reported as zero.
    pub timing: bool,
}

impl SweepConfig {
    pub fn new(a_max: u64, b_max: u64, n_max: u64) -> Self {
        Self {
            family: "amdeberhan-moll".into(),
            a_max,
            b_max,
            n_max,
            jobs: 1,
            sample: None,
            seed: 0,
            timing: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRanges {
    pub a_max: u64,
    pub b_max: u64,
    pub n_max: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub triple: ParamTriple,
    pub witness: u64,
    pub traces: Vec<ProofTrace>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub ranges: SweepRanges,
    pub checked: u64,
    pub violations: Vec<Violation>,
    /// Wall-clock seconds.
    pub duration: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleResult {
    #[serde(flatten)]
    pub triple: ParamTriple,
    pub certificate: Certificate,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub report: SweepReport,
    /// Sorted by `(a, b, n)`.
    pub results: Vec<TripleResult>,
    /// Set when a violation of a proved family stopped the sweep early.
    pub aborted: bool,
}

/// Every `(a, b, n)` with `1 <= b < a <= a_max`, `b <= b_max`, `1 <= n <= n_max`, sorted.
pub fn enumerate_triples(a_max: u64, b_max: u64, n_max: u64) -> Result<Vec<ParamTriple>> {
    let mut out = Vec::new();
    for a in 2..=a_max {
        for b in 1..=b_max.min(a - 1) {
            for n in 1..=n_max {
                out.push(ParamTriple::new(a, b, n)?);
            }
        }
    }
    Ok(out)
}

fn select(config: &SweepConfig) -> Result<Vec<ParamTriple>> {
    let all = enumerate_triples(config.a_max, config.b_max, config.n_max)?;
    match config.sample {
        Some(k) if k < all.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut picked = rand::seq::index::sample(&mut rng, all.len(), k).into_vec();
            picked.sort_unstable();
            Ok(picked.into_iter().map(|i| all[i]).collect())
        }
        _ => Ok(all),
    }
}

pub fn run_sweep(config: &SweepConfig, families: &FamilyRegistry) -> Result<SweepOutcome> {
    if config.jobs == 0 {
        return Err(Error::Domain("worker count must be at least 1".into()));
    }
    let family = families.get(&config.family)?;
    let start = Instant::now();
    let triples = select(config)?;

    let mut claims: BTreeMap<(u64, u64), DivisibilityClaim> = BTreeMap::new();
    let mut bound = 0;
    for t in &triples {
        if let std::collections::btree_map::Entry::Vacant(slot) = claims.entry((t.a, t.b)) {
            slot.insert(family.claim(t.a, t.b)?);
        }
        bound = bound.max(claims[&(t.a, t.b)].prime_bound(t.n)?);
    }
    let table = sieve(bound)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::ResourceLimit(format!("worker pool: {e}")))?;
    let abort = AtomicBool::new(false);
    let checked: Vec<Option<Result<TripleResult>>> = pool.install(|| {
        triples
            .par_iter()
            .map(|t| {
                if abort.load(Ordering::Relaxed) {
                    return None;
                }
                let begun = Instant::now();
                let result = verify_claim(&claims[&(t.a, t.b)], t.n, &table).map(|certificate| {
                    if !certificate.holds() && family.is_theorem() {
                        abort.store(true, Ordering::Relaxed);
                    }
                    TripleResult {
                        triple: *t,
                        certificate,
                        seconds: if config.timing { begun.elapsed().as_secs_f64() } else { 0.0 },
                    }
                });
                Some(result)
            })
            .collect()
    });
    let results: Vec<TripleResult> = checked.into_iter().flatten().collect::<Result<_>>()?;

    let violations = results
        .iter()
        .filter_map(|r| {
            r.certificate.witness().map(|witness| {
                Ok(Violation {
                    triple: r.triple,
                    witness,
                    traces: family.traces(&r.triple, &table)?,
                })
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let report = SweepReport {
        ranges: SweepRanges {
            a_max: config.a_max,
            b_max: config.b_max,
            n_max: config.n_max,
        },
        checked: results.len() as u64,
        violations,
        duration: if config.timing { start.elapsed().as_secs_f64() } else { 0.0 },
    };
    Ok(SweepOutcome {
        aborted: abort.load(Ordering::Relaxed),
        report,
        results,
    })
}
