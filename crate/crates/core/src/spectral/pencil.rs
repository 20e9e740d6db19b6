//! The Dirichlet pencil `-z D̂ + Â` and its exact determinant `ψ(z)`.

use super::SpectralError;
use crate::graphs::Graph;
use crate::polyalg::IntPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `-zD + A` restricted to the non-pendant vertices. `dhat` keeps the
/// full-graph degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletPencil {
    pub interior: Vec<usize>,
    pub ahat: Vec<Vec<u8>>,
    pub dhat: Vec<u32>,
}

pub fn dirichlet_pencil(graph: &Graph) -> DirichletPencil {
    let interior = graph.interior_vertices();
    let ahat = interior
        .iter()
        .map(|&u| interior.iter().map(|&v| graph.has_edge(u, v) as u8).collect())
        .collect();
    let dhat = interior.iter().map(|&v| graph.degree(v) as u32).collect();
    DirichletPencil {
        interior,
        ahat,
        dhat,
    }
}

impl DirichletPencil {
    pub fn dim(&self) -> usize {
        self.interior.len()
    }

    /// Integer matrix `-z D̂ + Â` at an integer `z`.
    pub fn at(&self, z: i64) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = BigInt::from(self.ahat[i][j]);
                        if i == j {
                            v -= BigInt::from(z) * BigInt::from(self.dhat[i]);
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// `(-1)^n Π d(v)`, the coefficient of `z^n` in `det(-zD̂ + Â)`.
    pub fn leading_coefficient(&self) -> BigInt {
        let prod: BigInt = self.dhat.iter().map(|&d| BigInt::from(d)).product();
        if self.dim() % 2 == 1 {
            -prod
        } else {
            prod
        }
    }
}

/// Fraction-free Gaussian elimination. Every intermediate entry is a minor
/// of the input, so all divisions are exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Exact `ψ(z) = det(-zD̂ + Â)` by evaluation at `z = 0..=n` and rational
/// Newton interpolation. The result must have integer coefficients and
/// degree exactly `n`; anything else is reported as an internal error.
pub fn charpoly_psi(graph: &Graph) -> Result<IntPolynomial, SpectralError> {
    let pencil = dirichlet_pencil(graph);
    let n = pencil.dim();
    if n == 0 {
        return Ok(IntPolynomial::constant(1));
    }
    let xs: Vec<i64> = (0..=n as i64).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|&x| BigRational::from_integer(bareiss_determinant(pencil.at(x))))
        .collect();
    let coeffs = newton_interpolate(&xs, ys);
    let mut ints = Vec::with_capacity(coeffs.len());
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_integer() {
            return Err(SpectralError::InternalInconsistency(format!(
                "non-integer coefficient {c} of z^{i} in psi"
            )));
        }
        ints.push(c.to_integer());
    }
    let psi = IntPolynomial::new(ints);
    if psi.degree() != Some(n) {
        return Err(SpectralError::InternalInconsistency(format!(
            "psi has degree {:?}, expected {n}",
            psi.degree()
        )));
    }
    Ok(psi)
}

/// Monomial coefficients (ascending) of the interpolating polynomial.
fn newton_interpolate(xs: &[i64], mut table: Vec<BigRational>) -> Vec<BigRational> {
    let n = xs.len();
    let x = |i: usize| BigRational::from_integer(BigInt::from(xs[i]));
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (x(i) - x(i - level));
        }
    }
    // Horner on the Newton form: c_k + (z - x_k) * acc
    let mut acc: Vec<BigRational> = vec![table[n - 1].clone()];
    for k in (0..n - 1).rev() {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * x(k);
        }
        next[0] += &table[k];
        acc = next;
    }
    acc
}
