//! Spectral side of the problem at zero potential.
//!
//! With `t = √λ·l`, the characteristic function is
//! `φ₀(λ) = (sin t / √λ)^Δ · ψ(cos t)` where `ψ(z) = det(-zD̂ + Â)` and
//! `Δ = g - p + r`. [`eigenvalues`] builds the spectrum from the roots of
//! `ψ`; [`characteristic_matrix`] assembles the `2g × 2g` linear system in
//! the edge coefficients directly and serves as an independent check.

mod charmatrix;
mod eigen;
mod pencil;
mod phi;

pub use charmatrix::{
    characteristic_matrix, characteristic_zeros, CharacteristicMatrixSample, MatrixZero,
};
pub use eigen::{eigenvalues, weyl_limit, weyl_ratio, Branch, Eigenvalue, SpectrumReport};
pub use pencil::{bareiss_determinant, charpoly_psi, dirichlet_pencil, DirichletPencil};
pub use phi::{phi0_eval, Phi0};

use crate::polyalg::PolyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("edge length must be positive and finite, got {0}")]
    InvalidLength(f64),
    #[error("eigenvalue count must be at least 1")]
    InvalidCount,
    #[error("spectrum has no zeros in the requested range")]
    NoRootsInRange,
    #[error("need at least {needed} eigenvalues counted with multiplicity, got {got}")]
    TooFewEigenvalues { needed: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub(crate) fn check_length(l: f64) -> Result<(), SpectralError> {
    if l.is_finite() && l > 0.0 {
        Ok(())
    } else {
        Err(SpectralError::InvalidLength(l))
    }
}
