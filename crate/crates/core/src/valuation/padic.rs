use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of a prime in an integer. `Infinite` is reserved for `ν_p(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(k) => Some(k),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `k` with `p^k | m`. `p` must be prime; this is not checked.
pub fn nu_int(m: u64, p: u64) -> Valuation {
    if m == 0 {
        return Valuation::Infinite;
    }
    let mut m = m;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    Valuation::Finite(k)
}

/// `ν_p(m)` for `m >= 1`, as a plain count.
pub(crate) fn nu_pos(m: u64, p: u64) -> u64 {
    debug_assert!(m > 0);
    nu_int(m, p).finite().unwrap_or(0)
}

/// Legendre's formula `Σ_{i≥1} ⌊m/p^i⌋`, accumulated as `q ← ⌊q/p⌋`.
pub fn nu_factorial(m: u64, p: u64) -> u64 {
    let mut q = m;
    let mut total = 0;
    while q >= p {
        q /= p;
        total += q;
    }
    total
}

/// `ν_p(C(m, k))` as the number of carries when adding `k` and `m − k` in base `p`.
pub fn kummer_binomial_valuation(m: u64, k: u64, p: u64) -> Result<u64> {
    if k > m {
        return Err(Error::Domain(format!("C({m}, {k}) with k > m")));
    }
    let (mut x, mut y) = (k, m - k);
    let mut carry = 0;
    let mut carries = 0;
    while x > 0 || y > 0 {
        let digit_sum = x % p + y % p + carry;
        carry = u64::from(digit_sum >= p);
        carries += carry;
        x /= p;
        y /= p;
    }
    Ok(carries)
}
