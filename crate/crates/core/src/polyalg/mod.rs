//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial is the empty vector. Everything here is exact.

mod roots;
mod text;

pub use roots::{
    dyadic_eps, isolate_real_roots, real_root_count, refine_root, sturm_sequence, RootInterval,
    RootIsolation,
};
pub use text::ParsePolyError;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("interval ({low}, {high}] contains {count} distinct roots, expected exactly one")]
    NotIsolating {
        low: String,
        high: String,
        count: usize,
    },
    #[error("empty interval: {low} > {high}")]
    EmptyInterval { low: String, high: String },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * z^degree`
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let Some(lead) = self.leading() else {
            return Self::zero();
        };
        let mut content = self.content();
        if lead.is_negative() {
            content = -content;
        }
        Self::new(self.coeffs.iter().map(|c| c / &content).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `self(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Pseudo-division: returns `(q, r)` with
    /// `lc(divisor)^(deg self - deg divisor + 1) * self = q * divisor + r`.
    pub fn pseudo_divrem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let db = divisor.degree().ok_or(PolyError::ZeroPolynomial)?;
        let lead = divisor.leading().expect("nonzero").clone();
        let Some(da) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if da < db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = rem[k + db].clone();
            for q in quot.iter_mut() {
                *q *= &lead;
            }
            for r in rem.iter_mut() {
                *r *= &lead;
            }
            quot[k] += &top;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &top * c;
            }
        }
        rem.truncate(db);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn pseudo_rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.pseudo_divrem(divisor)?.1)
    }

    /// Exact quotient in `Z[z]`, or `None` when `divisor` does not divide
    /// `self` with an integral quotient.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let db = divisor.degree()?;
        let lead = divisor.leading()?;
        let Some(da) = self.degree() else {
            return Some(Self::zero());
        };
        if da < db {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let (q, r) = rem[k + db].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient, computed with the
    /// subresultant pseudo-remainder sequence. Both zero gives zero.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b).expect("b nonzero");
            if r.is_zero() {
                return b.primitive_part();
            }
            if r.degree() == Some(0) {
                return Self::constant(1);
            }
            let divisor = &g * num_traits::pow(h.clone(), delta);
            a = b;
            b = Self::new(r.coeffs.iter().map(|c| c / &divisor).collect());
            g = a.leading().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
            };
        }
    }

    /// Same distinct complex roots as `self`, each simple; primitive with
    /// positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let pp = self.primitive_part();
        let g = pp.gcd(&pp.derivative());
        Ok(pp
            .div_exact(&g)
            .expect("gcd of a primitive polynomial divides it")
            .primitive_part())
    }

    /// Yun's decomposition: `factors[i]` is the product of the irreducible
    /// factors of multiplicity exactly `i + 1` (primitive, possibly 1).
    /// The product `Π factors[i]^(i+1)` equals `primitive_part(self)`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<Self>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let a = self.primitive_part();
        if a.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let b = a.derivative();
        let c = a.gcd(&b);
        let mut w = a.div_exact(&c).expect("c divides a");
        let mut y = b.div_exact(&c).expect("c divides a'");
        let mut z = &y - &w.derivative();
        let mut out = Vec::new();
        while w.degree().unwrap_or(0) > 0 {
            let g = w.gcd(&z);
            w = w.div_exact(&g).expect("g divides w");
            y = z.div_exact(&g).expect("g divides z");
            z = &y - &w.derivative();
            out.push(g);
        }
        while out.last().is_some_and(|f| f.degree() == Some(0)) {
            out.pop();
        }
        Ok(out)
    }

    /// Monic normalization with exact rational coefficients.
    pub fn monic(&self) -> Result<Vec<BigRational>, PolyError> {
        let lead = self.leading().ok_or(PolyError::ZeroPolynomial)?;
        Ok(self
            .coeffs
            .iter()
            .map(|c| BigRational::new(c.clone(), lead.clone()))
            .collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

// JSON form: ascending coefficient array. Coefficients outside i64 are
// written as decimal strings.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }
        let raw = Vec::<Coeff>::deserialize(deserializer)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                Coeff::Int(v) => Ok(BigInt::from(v)),
                Coeff::Text(s) => s.parse::<BigInt>().map_err(de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}
