//! Cross-validation suites run by `oracle-check`, registered by name.

use std::sync::Arc;

use binomdiv_core::ratio::{is_integral_with, FactorialRatio, LinearForm};
use binomdiv_core::registry::{builtin_engines, Named, Registry};
use binomdiv_core::theorem::{
    build_conjecture_claim, check_t_integrality, check_theorem_a, check_theorem_b,
    minimal_multiplier, verify_triple, ParamTriple,
};
use binomdiv_core::valuation::{kummer_binomial_valuation, nu_factorial, nu_int, sieve};
use binomdiv_core::Result;
use binomdiv_oracle as oracle;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub checked: u64,
    pub mismatches: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Collects comparisons, keeping the first few mismatches verbatim.
#[derive(Default)]
struct Tally {
    checked: u64,
    mismatches: Vec<String>,
    dropped: u64,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            if self.mismatches.len() < 20 {
                self.mismatches.push(describe());
            } else {
                self.dropped += 1;
            }
        }
    }

    fn finish(mut self, suite: &str) -> SuiteOutcome {
        if self.dropped > 0 {
            self.mismatches.push(format!("... and {} more", self.dropped));
        }
        SuiteOutcome {
            suite: suite.to_string(),
            checked: self.checked,
            mismatches: self.mismatches,
        }
    }
}

pub trait CrossCheck: Named + Send + Sync {
    fn run(&self) -> Result<SuiteOutcome>;
}

pub type SuiteRegistry = Registry<dyn CrossCheck>;

macro_rules! suite {
    ($ty:ident, $name:literal, $desc:literal) => {
        pub struct $ty;

        impl Named for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn description(&self) -> &'static str {
                $desc
            }
        }
    };
}

suite!(LegendreDirect, "legendre-direct", "nu_p(m!) against incremental factor counting, m <= 3000, p <= 100");
suite!(KummerLegendre, "kummer-legendre", "Kummer carries against Legendre differences, m <= 400, p in {2,3,5,7,11}");
suite!(Engines, "engines", "every registered valuation engine agrees on nu_p(C(m,k)), m <= 100, p <= 50");
suite!(BigIntValuation, "bigint-valuation", "nu_p of exact C(m,k) against Legendre and Kummer, m <= 500, p <= 50");
suite!(Claims, "claims", "valuation verdicts against exact division, 1 <= b < a <= 8, n <= 40");
suite!(TIntegrality, "t-integrality", "T(a,b,n) integrality against exact division, a <= 8, n <= 40");
suite!(TheoremA, "theorem-a", "2n+3 | 3 S_n by valuations against exact arithmetic, n <= 60");
suite!(TheoremB, "theorem-b", "10n+3 | 21 t_n by valuations against exact arithmetic, n <= 40");
suite!(RandomRatios, "integrality", "seeded random factorial ratios against exact division");
suite!(MinimalMultiplier, "minimal-multiplier", "exact minimal multiplier divides 3(a-b)(3a-b), a <= 6, n <= 10");

impl CrossCheck for LegendreDirect {
    fn run(&self) -> Result<SuiteOutcome> {
        let mut tally = Tally::default();
        for &p in sieve(100)?.primes() {
            let mut running = 0;
            for m in 1..=3000u64 {
                running += nu_int(m, p).finite().unwrap_or(0);
                let got = nu_factorial(m, p);
                tally.check(got == running, || format!("nu_{p}({m}!) = {got}, counted {running}"));
            }
        }
        Ok(tally.finish(self.name()))
    }
}

impl CrossCheck for KummerLegendre {
    fn run(&self) -> Result<SuiteOutcome> {
        let mut tally = Tally::default();
        for p in [2, 3, 5, 7, 11] {
            for m in 0..=400u64 {
                for k in 0..=m {
                    let carries = kummer_binomial_valuation(m, k, p)?;
                    let legendre = nu_factorial(m, p) - nu_factorial(k, p) - nu_factorial(m - k, p);
                    tally.check(carries == legendre, || {
                        format!("C({m},{k}) at {p}: kummer {carries}, legendre {legendre}")
                    });
                }
            }
        }
        Ok(tally.finish(self.name()))
    }
}

impl CrossCheck for Engines {
    fn run(&self) -> Result<SuiteOutcome> {
        let engines = builtin_engines();
        let mut tally = Tally::default();
        for &p in sieve(50)?.primes() {
            for m in 0..=100u64 {
                for k in 0..=m {
                    let values = engines
                        .iter()
                        .map(|e| Ok((e.name(), e.binomial_valuation(m, k, p)?)))
                        .collect::<Result<Vec<_>>>()?;
                    tally.check(values.windows(2).all(|w| w[0].1 == w[1].1), || {
                        format!("C({m},{k}) at {p}: {values:?}")
                    });
                }
            }
        }
        Ok(tally.finish(self.name()))
    }
}

impl CrossCheck for BigIntValuation {
    fn run(&self) -> Result<SuiteOutcome> {
        let primes = sieve(50)?;
        let mut tally = Tally::default();
        for m in 0..=500u64 {
            let row = oracle::big_binomial_row(m)?;
            for (k, c) in row.iter().enumerate() {
                let k = k as u64;
                for &p in primes.primes() {
                    let exact = oracle::big_valuation(c, p);
                    let legendre = nu_factorial(m, p) - nu_factorial(k, p) - nu_factorial(m - k, p);
                    let carries = kummer_binomial_valuation(m, k, p)?;
                    tally.check(exact == Some(legendre) && legendre == carries, || {
                        format!("C({m},{k}) at {p}: exact {exact:?}, legendre {legendre}, kummer {carries}")
                    });
                }
            }
        }
        Ok(tally.finish(self.name()))
    }
}

impl CrossCheck for Claims {
    fn run(&self) -> Result<SuiteOutcome> {
        let table = sieve(2 * 8 * 40 + 3)?;
        let mut tally = Tally::default();
        for a in 2..=8u64 {
            for b in 1..a {
                let claim = build_conjecture_claim(a, b)?;
                for n in 1..=40u64 {
                    let t = ParamTriple::new(a, b, n)?;
                    let cert = verify_triple(&t, &table)?;
                    let exact = oracle::conjecture_holds(a, b, n)?;
                    tally.check(cert.holds() == exact.holds && exact.quotient.is_some() == exact.holds, || {
                        format!("({a},{b},{n}): valuation {:?}, exact {}", cert.verdict, exact.holds)
                    });
                    if n <= 10 {
                        // generic path: evaluated factorial terms through the oracle
                        let e = claim.evaluate(n)?;
                        let generic = oracle::claim_holds(&e.moduli, e.divisor.terms(), &e.multipliers, e.dividend.terms())?;
                        tally.check(generic == exact, || format!("({a},{b},{n}): generic oracle disagrees"));
                    }
                }
            }
        }
        Ok(tally.finish(self.name()))
    }
}

impl CrossCheck for TIntegrality {
    fn run(&self) -> Result<SuiteOutcome> {
        let table = sieve(2 * 8 * 40)?;
        let mut tally = Tally::default();
        for a in 2..=8u64 {
            for b in 1..a {
                for n in 1..=40u64 {
                    let t = ParamTriple::new(a, b, n)?;
                    let valuation = check_t_integrality(&t, &table)?;
                    let exact = oracle::exact_t_ratio(a, b, n);
                    tally.check(valuation && exact.is_ok(), || {
                        format!("T({a},{b},{n}): valuation {valuation}, exact {exact:?}")
                    });
                }
            }
        }
        Ok(tally.finish(self.name()))
    }
}

impl CrossCheck for TheoremA {
    fn run(&self) -> Result<SuiteOutcome> {
        let table = sieve(1000)?;
        let mut tally = Tally::default();
        for n in 1..=60u64 {
            let valuation = check_theorem_a(n, &table)?;
            let exact = oracle::exact_s(n)
                .map(|s| (BigInt::from(3) * s) % BigInt::from(2 * n + 3) == BigInt::from(0));
            tally.check(Ok(valuation) == exact && valuation, || {
                format!("n={n}: valuation {valuation}, exact {exact:?}")
            });
        }
        Ok(tally.finish(self.name()))
    }
}

impl CrossCheck for TheoremB {
    fn run(&self) -> Result<SuiteOutcome> {
        let table = sieve(1000)?;
        let mut tally = Tally::default();
        for n in 1..=40u64 {
            let valuation = check_theorem_b(n, &table)?;
            let exact = oracle::exact_t(n)
                .map(|t| (BigInt::from(21) * t) % BigInt::from(10 * n + 3) == BigInt::from(0));
            tally.check(Ok(valuation) == exact && valuation, || {
                format!("n={n}: valuation {valuation}, exact {exact:?}")
            });
        }
        Ok(tally.finish(self.name()))
    }
}

impl CrossCheck for RandomRatios {
    fn run(&self) -> Result<SuiteOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let table = sieve(200)?;
        let mut tally = Tally::default();
        for _ in 0..300 {
            let terms: Vec<(LinearForm, i64)> = (0..rng.random_range(1..=5))
                .map(|_| {
                    let form = LinearForm::new(rng.random_range(1..=8), rng.random_range(0..=3));
                    let exp = if rng.random_bool(0.5) { 1 } else { -1 } * rng.random_range(1..=2);
                    (form, exp)
                })
                .collect();
            let ratio = FactorialRatio::new(terms);
            for n in 1..=6u64 {
                let valuation = is_integral_with(&ratio, n, &table)?.is_integral();
                let exact = oracle::factorial_ratio_is_integral(ratio.evaluate(n)?.terms())?;
                tally.check(valuation == exact, || {
                    format!("{ratio} at n={n}: valuation {valuation}, exact {exact}")
                });
            }
        }
        Ok(tally.finish(self.name()))
    }
}

impl CrossCheck for MinimalMultiplier {
    fn run(&self) -> Result<SuiteOutcome> {
        let mut tally = Tally::default();
        for a in 2..=6u64 {
            for b in 1..a {
                for n in 1..=10u64 {
                    let t = ParamTriple::new(a, b, n)?;
                    let m = minimal_multiplier(&t);
                    let bound: BigInt = t.multipliers().iter().map(|&c| BigInt::from(c)).product();
                    let ok = matches!(&m, Ok(m) if oracle::divides(m, &bound) == Ok(true));
                    tally.check(ok, || format!("({a},{b},{n}): {m:?} vs {bound}"));
                }
            }
        }
        Ok(tally.finish(self.name()))
    }
}

pub fn builtin_suites() -> SuiteRegistry {
    let mut r = SuiteRegistry::new("suite");
    r.register(Arc::new(LegendreDirect));
    r.register(Arc::new(KummerLegendre));
    r.register(Arc::new(Engines));
    r.register(Arc::new(BigIntValuation));
    r.register(Arc::new(Claims));
    r.register(Arc::new(TIntegrality));
    r.register(Arc::new(TheoremA));
    r.register(Arc::new(TheoremB));
    r.register(Arc::new(RandomRatios));
    r.register(Arc::new(MinimalMultiplier));
    r
}
