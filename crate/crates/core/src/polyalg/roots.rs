//! Real-root isolation with Sturm sequences and exact rational bisection.
//!
//! For a squarefree `f`, let `V(x)` be the number of sign changes in the
//! Sturm sequence at `x` with zeros dropped. `V` is right-continuous even at
//! roots of `f`, so `V(a) - V(b)` counts the distinct roots in `(a, b]` for
//! any `a < b`. Isolating intervals are therefore half-open internally and
//! reported as open intervals, or as a degenerate `low == high` when the
//! root is an exact rational hit.

use super::{IntPolynomial, PolyError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub low: BigRational,
    pub high: BigRational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.low == self.high
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.low + &self.high) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootIsolation {
    pub intervals: Vec<RootInterval>,
}

impl RootIsolation {
    /// Total root count with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.intervals.iter().map(|r| r.multiplicity).sum()
    }
}

#[derive(Serialize)]
struct IntervalJson {
    low: String,
    high: String,
    multiplicity: usize,
}

impl Serialize for RootInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntervalJson {
            low: self.low.to_string(),
            high: self.high.to_string(),
            multiplicity: self.multiplicity,
        }
        .serialize(s)
    }
}

/// Sturm sequence of the squarefree part of `p`, each member made primitive
/// by a positive factor so signs are preserved.
pub fn sturm_sequence(p: &IntPolynomial) -> Result<Vec<IntPolynomial>, PolyError> {
    let f = p.squarefree_part()?;
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.is_zero() {
            seq.pop();
            break;
        }
        let mut r = a.pseudo_rem(b)?;
        let k = a.degree().unwrap() + 1 - b.degree().unwrap();
        if b.leading().unwrap().is_negative() && k % 2 == 1 {
            r = -r;
        }
        if r.is_zero() {
            break;
        }
        let content = r.content();
        let r = IntPolynomial::new(r.coeffs().iter().map(|c| -(c / &content)).collect());
        seq.push(r);
    }
    Ok(seq)
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[IntPolynomial], x: &BigRational) -> usize {
    variations(seq.iter().map(|f| f.sign_at(x)))
}

fn variations_at_infinity(seq: &[IntPolynomial], positive: bool) -> usize {
    variations(seq.iter().map(|f| {
        let lead = f.leading().expect("sequence members are nonzero");
        let odd = f.degree().unwrap() % 2 == 1;
        let s: i8 = if lead.is_positive() { 1 } else { -1 };
        if !positive && odd {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots of `p`.
pub fn real_root_count(p: &IntPolynomial) -> Result<usize, PolyError> {
    let seq = sturm_sequence(p)?;
    Ok(variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true))
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Isolates every distinct real root of `p` in the closed interval
/// `[lo, hi]`, ascending, with multiplicities from the squarefree
/// decomposition.
pub fn isolate_real_roots(
    p: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<RootIsolation, PolyError> {
    if lo > hi {
        return Err(PolyError::EmptyInterval {
            low: lo.to_string(),
            high: hi.to_string(),
        });
    }
    let seq = sturm_sequence(p)?;
    let f = &seq[0];
    let factors = p.squarefree_decomposition()?;
    let mut found: Vec<(BigRational, BigRational)> = Vec::new();
    if f.sign_at(lo).is_zero() {
        found.push((lo.clone(), lo.clone()));
    }
    // Half-open intervals (a, b] with their root counts.
    let mut stack = vec![(lo.clone(), hi.clone(), count(&seq, lo, hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => {
                let m = (&a + &b) * half();
                if f.sign_at(&b) == 0 {
                    found.push((b.clone(), b));
                } else if f.sign_at(&m) == 0 {
                    found.push((m.clone(), m));
                } else {
                    found.push((a, b));
                }
            }
            _ => {
                let m = (&a + &b) * half();
                let left = count(&seq, &a, &m);
                stack.push((m.clone(), b, n - left));
                stack.push((a, m, left));
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    let intervals = found
        .into_iter()
        .map(|(low, high)| {
            let multiplicity = multiplicity_in(&factors, &low, &high);
            RootInterval {
                low,
                high,
                multiplicity,
            }
        })
        .collect();
    Ok(RootIsolation { intervals })
}

fn count(seq: &[IntPolynomial], a: &BigRational, b: &BigRational) -> usize {
    variations_at(seq, a) - variations_at(seq, b)
}

fn multiplicity_in(factors: &[IntPolynomial], low: &BigRational, high: &BigRational) -> usize {
    for (i, factor) in factors.iter().enumerate() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let hit = if low == high {
            factor.sign_at(low) == 0
        } else {
            let seq = sturm_sequence(factor).expect("nonzero factor");
            count(&seq, low, high) == 1
        };
        if hit {
            return i + 1;
        }
    }
    unreachable!("every root of the squarefree part belongs to one factor")
}

/// Bisects an isolating interval `(low, high]` down to width `eps` and
/// returns a rational within `eps` of the root (exact if a bisection point
/// hits it).
pub fn refine_root(
    p: &IntPolynomial,
    low: &BigRational,
    high: &BigRational,
    eps: &BigRational,
) -> Result<BigRational, PolyError> {
    let seq = sturm_sequence(p)?;
    let f = &seq[0];
    if low == high {
        if f.sign_at(low) == 0 {
            return Ok(low.clone());
        }
        return Err(PolyError::NotIsolating {
            low: low.to_string(),
            high: high.to_string(),
            count: 0,
        });
    }
    if low > high {
        return Err(PolyError::EmptyInterval {
            low: low.to_string(),
            high: high.to_string(),
        });
    }
    let n = count(&seq, low, high);
    if n != 1 {
        return Err(PolyError::NotIsolating {
            low: low.to_string(),
            high: high.to_string(),
            count: n,
        });
    }
    let high_sign = f.sign_at(high);
    if high_sign == 0 {
        return Ok(high.clone());
    }
    let (mut a, mut b) = (low.clone(), high.clone());
    while &b - &a > *eps {
        let m = (&a + &b) * half();
        match f.sign_at(&m) {
            0 => return Ok(m),
            s if s != high_sign => a = m,
            _ => b = m,
        }
    }
    Ok((a + b) * half())
}

/// Exact rational `2^-bits`.
pub fn dyadic_eps(bits: u32) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(1) << bits)
}
