use crate::error::{Error, Result};

/// Largest limit `sieve` accepts.
pub const SIEVE_LIMIT_GUARD: u64 = 1 << 31;

const SEGMENT_LEN: usize = 1 << 18;

/// All primes up to `limit`, ascending. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `<= bound`. Errors if the table does not reach `bound`.
    pub fn up_to(&self, bound: u64) -> Result<&[u64]> {
        if bound > self.limit {
            return Err(Error::ResourceLimit(format!(
                "prime table reaches {}, but primes up to {bound} are needed",
                self.limit
            )));
        }
        let end = self.primes.partition_point(|&p| p <= bound);
        Ok(&self.primes[..end])
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Factorization of `m >= 1` as `(prime, exponent)` pairs, ascending.
    ///
    /// Needs `m < (limit+1)²` so that a leftover cofactor is known to be prime.
    pub fn factorize(&self, m: u64) -> Result<Vec<(u64, u32)>> {
        if m == 0 {
            return Err(Error::Domain("cannot factorize 0".into()));
        }
        let mut rest = m;
        let mut factors = Vec::new();
        for &p in &self.primes {
            if p.saturating_mul(p) > rest {
                break;
            }
            if rest.is_multiple_of(p) {
                let mut e = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
        }
        // `rest` has no prime factor <= limit, so it is prime once below (limit+1)².
        if rest > 1 {
            if (rest as u128) >= (self.limit as u128 + 1).pow(2) {
                return Err(Error::ResourceLimit(format!(
                    "prime table up to {} cannot factor {m}",
                    self.limit
                )));
            }
            factors.push((rest, 1));
        }
        Ok(factors)
    }
}

fn small_sieve(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Segmented sieve of Eratosthenes.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    if limit > SIEVE_LIMIT_GUARD {
        return Err(Error::ResourceLimit(format!(
            "sieve limit {limit} exceeds guard {SIEVE_LIMIT_GUARD}"
        )));
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = small_sieve(root as usize);
    let mut primes: Vec<u64> = base.iter().copied().take_while(|&p| p <= limit).collect();

    let mut low = root + 1;
    let mut marks = vec![false; SEGMENT_LEN];
    while low <= limit {
        let high = (low + SEGMENT_LEN as u64 - 1).min(limit);
        let len = (high - low + 1) as usize;
        marks[..len].fill(false);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut j = (low.div_ceil(p) * p).max(p * p);
            while j <= high {
                marks[(j - low) as usize] = true;
                j += p;
            }
        }
        primes.extend(
            marks[..len]
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| low + i as u64),
        );
        low = high + 1;
    }
    Ok(PrimeTable { limit, primes })
}
