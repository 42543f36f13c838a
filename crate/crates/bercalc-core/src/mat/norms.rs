//! Operator norm and spectral radius.

use super::eig::{hermitian_eig, ModulusSpectrum, HERMITIAN_TOL};
use super::ComplexMatrix;
use crate::error::{CoreError, Result};

/// Number of repeated-squaring steps in the Gelfand limit for the spectral
/// radius of a non-Hermitian matrix (norm of A^(2^40), 40 halvings).
const GELFAND_STEPS: u32 = 40;

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(ModulusSpectrum::of(a)?.max_modulus())
}

/// Spectral radius. Hermitian inputs get the exact eigenvalue route;
/// everything else uses the Gelfand formula with Frobenius-normalized
/// repeated squaring, which settles well inside 1e-6 relative error for
/// diagonalizable matrices and collapses to zero for nilpotent ones.
pub fn spectral_radius(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(CoreError::Dimension("spectral_radius requires a square matrix".into()));
    }
    let tol = HERMITIAN_TOL * (1.0 + a.max_abs_entry());
    if a.is_hermitian(tol) {
        let eig = hermitian_eig(a)?;
        return Ok(eig.eigenvalues.iter().fold(0.0, |acc, &lam| acc.max(lam.abs())));
    }

    // log r = sum_j 2^-j log s_j + 2^-k log s_k, where s_j is the Frobenius
    // norm of the j-th normalized square. A vanishing norm along the way
    // means some power of A is zero, hence the radius is exactly zero.
    let mut m = a.clone();
    let mut log_radius = 0.0;
    let mut weight = 1.0;
    for _ in 0..GELFAND_STEPS {
        let s = m.frobenius_norm();
        if s == 0.0 {
            return Ok(0.0);
        }
        log_radius += weight * s.ln();
        weight *= 0.5;
        let normalized = m.scale_re(1.0 / s);
        m = normalized.mul(&normalized).unwrap();
    }
    let s = m.frobenius_norm();
    if s == 0.0 {
        return Ok(0.0);
    }
    log_radius += weight * s.ln();
    Ok(log_radius.exp())
}
