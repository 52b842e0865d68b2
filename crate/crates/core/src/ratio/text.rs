//! Canonical text form.
//!
//! ```text
//! form   := COEFF? "n" (("+"|"-") DIGITS)? | INT
//! term   := "(" form ")!^" INT
//! ratio  := "1" | term (" " term)*
//! claim  := divisor " | " dividend
//! divisor  := ("(" form ")*")* "[" ratio "]"
//! dividend := (DIGITS "*")* "[" ratio "]"
//! ```
//!
//! For example `(2n+1)*(2n+3)*[(2n)!^1 (n)!^-2] | 3*1*5*[(4n)!^1 (2n)!^-1 (n)!^-2]`.

use std::fmt;
use std::str::FromStr;

use super::{DivisibilityClaim, FactorialRatio, LinearForm};
use crate::error::{Error, Result};

fn parse_err(what: &str, input: &str) -> Error {
    Error::Parse(format!("invalid {what}: `{input}`"))
}

fn parse_int<T: FromStr>(s: &str, what: &str, whole: &str) -> Result<T> {
    s.parse().map_err(|_| parse_err(what, whole))
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeff {
            0 => return write!(f, "{}", self.offset),
            1 => f.write_str("n")?,
            -1 => f.write_str("-n")?,
            c => write!(f, "{c}n")?,
        }
        match self.offset {
            0 => Ok(()),
            d if d > 0 => write!(f, "+{d}"),
            d => write!(f, "{d}"),
        }
    }
}

impl FromStr for LinearForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some((coeff, offset)) = compact.split_once('n') else {
            return Ok(LinearForm::constant(parse_int(&compact, "form", s)?));
        };
        let coeff = match coeff {
            "" | "+" => 1,
            "-" => -1,
            c => parse_int(c, "coefficient", s)?,
        };
        let offset = match offset {
            "" => 0,
            d if d.starts_with(['+', '-']) => parse_int(d, "offset", s)?,
            _ => return Err(parse_err("form", s)),
        };
        Ok(LinearForm::new(coeff, offset))
    }
}

impl fmt::Display for FactorialRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (form, exp)) in self.terms().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({form})!^{exp}")?;
        }
        Ok(())
    }
}

impl FromStr for FactorialRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(FactorialRatio::one());
        }
        let terms = s
            .split_whitespace()
            .map(|tok| {
                let (form, exp) = tok
                    .strip_prefix('(')
                    .and_then(|t| t.split_once(")!^"))
                    .ok_or_else(|| parse_err("factorial term", tok))?;
                let exp: i64 = parse_int(exp, "exponent", tok)?;
                if exp == 0 {
                    return Err(parse_err("zero exponent in term", tok));
                }
                Ok((form.parse()?, exp))
            })
            .collect::<Result<Vec<_>>>()?;
        if terms.is_empty() {
            return Err(parse_err("factorial ratio", s));
        }
        Ok(FactorialRatio::new(terms))
    }
}

impl fmt::Display for DivisibilityClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in self.divisor_moduli() {
            write!(f, "({m})*")?;
        }
        write!(f, "[{}] | ", self.divisor_ratio())?;
        for c in self.multiplier_constants() {
            write!(f, "{c}*")?;
        }
        write!(f, "[{}]", self.dividend_ratio())
    }
}

/// Splits `x*y*[ratio]` into the factors before the bracket and the ratio.
fn split_side(side: &str) -> Result<(Vec<&str>, FactorialRatio)> {
    let side = side.trim();
    let open = side.find('[').ok_or_else(|| parse_err("claim side", side))?;
    let ratio = side[open..]
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_err("claim side", side))?;
    let factors: Vec<&str> = side[..open]
        .strip_suffix('*')
        .map(|head| head.split('*').map(str::trim).collect())
        .unwrap_or_default();
    if factors.is_empty() && open != 0 {
        return Err(parse_err("claim side", side));
    }
    Ok((factors, ratio.parse()?))
}

impl FromStr for DivisibilityClaim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (divisor, dividend) = s.split_once(" | ").ok_or_else(|| parse_err("claim", s))?;
        let (moduli, divisor_ratio) = split_side(divisor)?;
        let (constants, dividend_ratio) = split_side(dividend)?;
        let moduli = moduli
            .into_iter()
            .map(|m| {
                m.strip_prefix('(')
                    .and_then(|m| m.strip_suffix(')'))
                    .ok_or_else(|| parse_err("modulus", m))?
                    .parse()
            })
            .collect::<Result<_>>()?;
        let constants = constants
            .into_iter()
            .map(|c| parse_int(c, "multiplier constant", c))
            .collect::<Result<_>>()?;
        DivisibilityClaim::new(moduli, divisor_ratio, constants, dividend_ratio)
    }
}
