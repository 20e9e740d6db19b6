use super::{charpoly_psi, SpectralError};
use crate::graphs::Graph;
use crate::polyalg::IntPolynomial;

/// `ψ` and `Δ` of one graph, enough to evaluate `φ₀` anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phi0 {
    pub psi: IntPolynomial,
    pub delta: usize,
}

impl Phi0 {
    pub fn new(graph: &Graph) -> Result<Self, SpectralError> {
        Ok(Phi0 {
            psi: charpoly_psi(graph)?,
            delta: graph.class_key().delta,
        })
    }

    /// `(s(λ,l))^Δ · ψ(c(λ,l))` with `s = sin(√λ l)/√λ`, `c = cos(√λ l)`.
    /// At `λ = 0` the limits `s = l`, `c = 1` are used; for `λ < 0` the
    /// hyperbolic continuation.
    pub fn eval(&self, lambda: f64, l: f64) -> f64 {
        let (s, c) = sc(lambda, l);
        s.powi(self.delta as i32) * self.psi.eval_f64(c)
    }
}

pub(crate) fn sc(lambda: f64, l: f64) -> (f64, f64) {
    if lambda > 0.0 {
        let k = lambda.sqrt();
        ((k * l).sin() / k, (k * l).cos())
    } else if lambda < 0.0 {
        let k = (-lambda).sqrt();
        ((k * l).sinh() / k, (k * l).cosh())
    } else {
        (l, 1.0)
    }
}

pub fn phi0_eval(graph: &Graph, lambda: f64, l: f64) -> Result<f64, SpectralError> {
    super::check_length(l)?;
    Ok(Phi0::new(graph)?.eval(lambda, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named::*;
    use crate::polyalg::{dyadic_eps, isolate_real_roots, refine_root};
    use num_rational::BigRational;
    use num_traits::ToPrimitive;
    use std::f64::consts::PI;

    #[test]
    fn p2_values() {
        assert!(phi0_eval(&path(2), PI * PI, 1.0).unwrap().abs() < 1e-15);
        let v = phi0_eval(&path(2), (PI / 2.0).powi(2), 1.0).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-15);
        assert!((v - 0.63662).abs() < 1e-5);
    }

    #[test]
    fn limits_are_continuous() {
        let phi = Phi0::new(&paw()).unwrap();
        let at0 = phi.eval(0.0, 1.3);
        assert!((phi.eval(1e-12, 1.3) - at0).abs() < 1e-9);
        assert!((phi.eval(-1e-12, 1.3) - at0).abs() < 1e-9);
        // λ<0 continuation: sinh/cosh
        let lam: f64 = -2.0;
        let k = (-lam).sqrt();
        let expect = (k.sinh() / k).powi(phi.delta as i32) * phi.psi.eval_f64(k.cosh());
        assert!((phi.eval(lam, 1.0) - expect).abs() < 1e-12 * expect.abs());
    }

    #[test]
    fn paw_vanishes_at_psi_root() {
        let phi = Phi0::new(&paw()).unwrap();
        let one = BigRational::from_integer(1.into());
        let iso = isolate_real_roots(&phi.psi, &-one.clone(), &one).unwrap();
        assert_eq!(iso.intervals.len(), 3);
        for iv in &iso.intervals {
            let alpha = refine_root(&phi.psi, &iv.low, &iv.high, &dyadic_eps(60))
                .unwrap()
                .to_f64()
                .unwrap();
            let lambda = alpha.acos().powi(2);
            assert!(phi.eval(lambda, 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_length() {
        assert!(phi0_eval(&path(2), 1.0, 0.0).is_err());
        assert!(phi0_eval(&path(2), 1.0, f64::NAN).is_err());
    }
}
