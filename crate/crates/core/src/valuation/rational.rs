use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational number in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactRational {
    numerator: i64,
    denominator: i64,
}

impl ExactRational {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Self::from_wide(numerator as i128, denominator as i128)
    }

    pub fn integer(value: i64) -> Self {
        Self {
            numerator: value,
            denominator: 1,
        }
    }

    fn from_wide(num: i128, den: i128) -> Result<Self> {
        let g = num.gcd(&den);
        let sign = if den < 0 { -1 } else { 1 };
        let (num, den) = (sign * num / g, sign * den / g);
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(numerator), Ok(denominator)) => Ok(Self {
                numerator,
                denominator,
            }),
            _ => Err(Error::Overflow(format!(
                "{num}/{den} does not fit 64-bit components"
            ))),
        }
    }

    pub fn numerator(self) -> i64 {
        self.numerator
    }

    pub fn denominator(self) -> i64 {
        self.denominator
    }

    /// Mathematical floor, so `⌊−1/2⌋ = −1`.
    pub fn floor(self) -> i64 {
        self.numerator.div_euclid(self.denominator)
    }

    /// `q − ⌊q⌋`, always in `[0, 1)`.
    pub fn fractional_part(self) -> Self {
        Self {
            numerator: self.numerator.rem_euclid(self.denominator),
            denominator: self.denominator,
        }
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        let (a, b) = (self.wide(), other.wide());
        Self::from_wide(a.0 * b.1 + b.0 * a.1, a.1 * b.1)
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        let (a, b) = (self.wide(), other.wide());
        Self::from_wide(a.0 * b.1 - b.0 * a.1, a.1 * b.1)
    }

    pub fn checked_scale(self, factor: i64) -> Result<Self> {
        let (n, d) = self.wide();
        Self::from_wide(n * factor as i128, d)
    }

    fn wide(self) -> (i128, i128) {
        (self.numerator as i128, self.denominator as i128)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Outcome {
    /// `⌊2x⌋ + ⌊y⌋`
    pub lhs: i64,
    /// `⌊x⌋ + ⌊x−y⌋ + ⌊2y⌋`
    pub rhs: i64,
    pub holds: bool,
}

/// Evaluates both sides of `⌊2x⌋ + ⌊y⌋ ≥ ⌊x⌋ + ⌊x−y⌋ + ⌊2y⌋` exactly.
pub fn lemma1_holds(x: ExactRational, y: ExactRational) -> Result<Lemma1Outcome> {
    let overflow = || Error::Overflow(format!("floor sums for x={x}, y={y}"));
    let two_x = x.checked_scale(2)?;
    let two_y = y.checked_scale(2)?;
    let x_minus_y = x.checked_sub(y)?;
    let lhs = two_x.floor().checked_add(y.floor()).ok_or_else(overflow)?;
    let rhs = x
        .floor()
        .checked_add(x_minus_y.floor())
        .and_then(|s| s.checked_add(two_y.floor()))
        .ok_or_else(overflow)?;
    Ok(Lemma1Outcome {
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}
