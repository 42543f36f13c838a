//! Polar decomposition A = U |A| with a partial-isometry factor.

use super::eig::ModulusSpectrum;
use super::ComplexMatrix;
use crate::error::Result;

/// Relative cutoff (times the largest singular value) below which singular
/// values are treated as zero when forming the pseudo-inverse of |A|.
pub const PSEUDO_INVERSE_REL_TOL: f64 = 1e-10;

/// Factors of the polar decomposition: `isometry * modulus` reproduces the
/// original matrix, and the isometry factor is a partial isometry whose
/// initial space is the range of the modulus.
#[derive(Debug, Clone)]
pub struct PolarParts {
    pub isometry: ComplexMatrix,
    pub modulus: ComplexMatrix,
}

/// |A| = (A*A)^(1/2).
pub fn modulus(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(ModulusSpectrum::of(a)?.power(1.0))
}

/// Polar decomposition via the spectral data of A*A: U = A |A|^+ on the
/// range of |A| and zero on its kernel.
pub fn polar(a: &ComplexMatrix) -> Result<PolarParts> {
    let spec = ModulusSpectrum::of(a)?;
    let cutoff = PSEUDO_INVERSE_REL_TOL * spec.max_modulus();
    let isometry = a.mul(&spec.pseudo_inverse(cutoff)).unwrap();
    Ok(PolarParts {
        isometry,
        modulus: spec.power(1.0),
    })
}
