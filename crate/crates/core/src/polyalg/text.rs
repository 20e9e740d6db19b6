//! Human-readable form, highest degree first: `-8z^3+4z`, `16z^4-12z^2+1`.

use super::IntPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial {input:?} at byte {offset}: {reason}")]
pub struct ParsePolyError {
    pub input: String,
    pub offset: usize,
    pub reason: &'static str,
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = ParsePolyError;

    /// Strict parser for the display form. Whitespace is ignored, `x` is
    /// accepted for `z` and exponents may be braced (`z^{10}`). Repeated
    /// powers are summed.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let err = |offset: usize, reason| ParsePolyError {
            input: s.to_string(),
            offset,
            reason,
        };
        if compact.is_empty() {
            return Err(err(0, "empty input"));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut i = 0;
        let n = compact.len();
        let at = |i: usize| compact.get(i).map(|&(_, c)| c);
        let offset = |i: usize| compact.get(i).map_or(s.len(), |&(o, _)| o);
        while i < n {
            let mut negative = false;
            match at(i) {
                Some('+') => i += 1,
                Some('-') => {
                    negative = true;
                    i += 1
                }
                _ if i > 0 => return Err(err(offset(i), "expected '+' or '-' between terms")),
                _ => {}
            }
            let start = i;
            while at(i).is_some_and(|c| c.is_ascii_digit()) {
                i += 1;
            }
            let digits: String = compact[start..i].iter().map(|&(_, c)| c).collect();
            let has_var = matches!(at(i), Some('z' | 'x'));
            if digits.is_empty() && !has_var {
                return Err(err(offset(i), "expected coefficient or variable"));
            }
            let mut value = if digits.is_empty() {
                BigInt::one()
            } else {
                digits.parse::<BigInt>().expect("ascii digits")
            };
            if at(i) == Some('*') {
                return Err(err(offset(i), "unexpected '*'"));
            }
            let mut power = 0usize;
            if has_var {
                i += 1;
                power = 1;
                if at(i) == Some('^') {
                    i += 1;
                    let braced = at(i) == Some('{');
                    if braced {
                        i += 1;
                    }
                    let es = i;
                    while at(i).is_some_and(|c| c.is_ascii_digit()) {
                        i += 1;
                    }
                    if es == i {
                        return Err(err(offset(i), "expected exponent digits"));
                    }
                    let exp: String = compact[es..i].iter().map(|&(_, c)| c).collect();
                    power = exp
                        .parse()
                        .map_err(|_| err(offset(es), "exponent out of range"))?;
                    if braced {
                        if at(i) != Some('}') {
                            return Err(err(offset(i), "unclosed '{'"));
                        }
                        i += 1;
                    }
                }
            }
            if let Some(c) = at(i) {
                if c != '+' && c != '-' {
                    return Err(err(offset(i), "unexpected character"));
                }
            }
            if negative {
                value = -value;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += value;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}
