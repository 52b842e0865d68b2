//! Named, interchangeable strategies chosen at runtime.
//!
//! Two families are registered: claim families (which divisibility statement a
//! sweep checks) and binomial valuation engines (independent routes to
//! `ν_p(C(m,k))` that the cross-validation suites compare).

use std::collections::BTreeMap;
use std::sync::Arc;

use binomdiv_oracle::{big_binomial, big_valuation, MAX_ARGUMENT};

use crate::error::{Error, Result};
use crate::ratio::DivisibilityClaim;
use crate::theorem::{build_conjecture_claim, trace_all, ModulusBranch, ParamTriple, ProofTrace};
use crate::valuation::{kummer_binomial_valuation, nu_factorial, PrimeTable};

pub trait Named {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
}

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: BTreeMap<&'static str, Arc<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: BTreeMap::new(),
        }
    }

    /// Registers `item` under its own name, returning any entry it replaced.
    pub fn register(&mut self, item: Arc<T>) -> Option<Arc<T>> {
        self.entries.insert(item.name(), item)
    }

    pub fn get(&self, name: &str) -> Result<Arc<T>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().collect::<Vec<_>>().join(", "),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<T>> {
        self.entries.values()
    }
}

/// A divisibility statement parameterized by `(a, b)` with `n` left free.
pub trait ClaimFamily: Named + Send + Sync {
    fn claim(&self, a: u64, b: u64) -> Result<DivisibilityClaim>;

    /// Whether the family is a proved statement, so a failure is a bug.
    fn is_theorem(&self) -> bool;

    /// Proof replays explaining an instance, where the family has them.
    fn traces(&self, _t: &ParamTriple, _table: &PrimeTable) -> Result<Vec<ProofTrace>> {
        Ok(Vec::new())
    }
}

pub type FamilyRegistry = Registry<dyn ClaimFamily>;

/// `(2bn+1)(2bn+3)C(2bn,bn) | 3(a−b)(3a−b)C(2an,an)C(an,bn)`
pub struct AmdeberhanMoll;

impl Named for AmdeberhanMoll {
    fn name(&self) -> &'static str {
        "amdeberhan-moll"
    }

    fn description(&self) -> &'static str {
        "(2bn+1)(2bn+3)C(2bn,bn) | 3(a-b)(3a-b)C(2an,an)C(an,bn)"
    }
}

impl ClaimFamily for AmdeberhanMoll {
    fn claim(&self, a: u64, b: u64) -> Result<DivisibilityClaim> {
        build_conjecture_claim(a, b)
    }

    fn is_theorem(&self) -> bool {
        true
    }

    fn traces(&self, t: &ParamTriple, table: &PrimeTable) -> Result<Vec<ProofTrace>> {
        let mut traces = trace_all(t, ModulusBranch::TwoBnPlus1, table)?;
        traces.extend(trace_all(t, ModulusBranch::TwoBnPlus3, table)?);
        Ok(traces)
    }
}

/// The same divisor with the multiplier dropped; false in general.
pub struct UnitMultiplier;

impl Named for UnitMultiplier {
    fn name(&self) -> &'static str {
        "unit-multiplier"
    }

    fn description(&self) -> &'static str {
        "(2bn+1)(2bn+3)C(2bn,bn) | C(2an,an)C(an,bn)  (not a theorem)"
    }
}

impl ClaimFamily for UnitMultiplier {
    fn claim(&self, a: u64, b: u64) -> Result<DivisibilityClaim> {
        let full = build_conjecture_claim(a, b)?;
        DivisibilityClaim::new(
            full.divisor_moduli().to_vec(),
            full.divisor_ratio().clone(),
            Vec::new(),
            full.dividend_ratio().clone(),
        )
    }

    fn is_theorem(&self) -> bool {
        false
    }
}

pub fn builtin_families() -> FamilyRegistry {
    let mut r = FamilyRegistry::new("claim family");
    r.register(Arc::new(AmdeberhanMoll));
    r.register(Arc::new(UnitMultiplier));
    r
}

/// A route to `ν_p(C(m, k))`.
pub trait ValuationEngine: Named + Send + Sync {
    fn binomial_valuation(&self, m: u64, k: u64, p: u64) -> Result<u64>;

    /// Largest `m` the engine accepts.
    fn max_argument(&self) -> u64 {
        u64::MAX
    }
}

pub type EngineRegistry = Registry<dyn ValuationEngine>;

pub struct LegendreEngine;

impl Named for LegendreEngine {
    fn name(&self) -> &'static str {
        "legendre"
    }

    fn description(&self) -> &'static str {
        "nu_p(m!) - nu_p(k!) - nu_p((m-k)!) by Legendre's formula"
    }
}

impl ValuationEngine for LegendreEngine {
    fn binomial_valuation(&self, m: u64, k: u64, p: u64) -> Result<u64> {
        if k > m {
            return Err(Error::Domain(format!("C({m}, {k}) with k > m")));
        }
        Ok(nu_factorial(m, p) - nu_factorial(k, p) - nu_factorial(m - k, p))
    }
}

pub struct KummerEngine;

impl Named for KummerEngine {
    fn name(&self) -> &'static str {
        "kummer"
    }

    fn description(&self) -> &'static str {
        "carries when adding k and m-k in base p"
    }
}

impl ValuationEngine for KummerEngine {
    fn binomial_valuation(&self, m: u64, k: u64, p: u64) -> Result<u64> {
        kummer_binomial_valuation(m, k, p)
    }
}

pub struct BigIntEngine;

impl Named for BigIntEngine {
    fn name(&self) -> &'static str {
        "bigint"
    }

    fn description(&self) -> &'static str {
        "materialize C(m,k) exactly and divide out p"
    }
}

impl ValuationEngine for BigIntEngine {
    fn binomial_valuation(&self, m: u64, k: u64, p: u64) -> Result<u64> {
        let c = big_binomial(m, k)?;
        big_valuation(&c, p).ok_or_else(|| Error::Domain("C(m,k) evaluated to zero".into()))
    }

    fn max_argument(&self) -> u64 {
        MAX_ARGUMENT
    }
}

pub fn builtin_engines() -> EngineRegistry {
    let mut r = EngineRegistry::new("valuation engine");
    r.register(Arc::new(LegendreEngine));
    r.register(Arc::new(KummerEngine));
    r.register(Arc::new(BigIntEngine));
    r
}
