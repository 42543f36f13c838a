//! Hermitian eigendecomposition by cyclic Jacobi rotations, plus spectral
//! matrix functions built on top of it.
//!
//! The solver sweeps all upper-triangle pivots (p, q), annihilating each with
//! a complex plane rotation, until the off-diagonal Frobenius mass falls
//! below `OFF_DIAGONAL_REL_TOL` times the Frobenius norm of the input.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{CoreError, Result};

/// Convergence target for the off-diagonal Frobenius norm, relative to the
/// Frobenius norm of the input.
pub const OFF_DIAGONAL_REL_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps before reporting a convergence failure.
pub const MAX_SWEEPS: usize = 100;

/// Hermitian tolerance used when validating inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues below this (after validation) are treated as zero when taking
/// fractional powers of nominally positive semidefinite matrices.
pub const EIGENVALUE_CLAMP: f64 = -1e-10;

/// Spectral decomposition of a Hermitian matrix: real eigenvalues in
/// ascending order and a unitary matrix whose columns are the eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
}

fn hermitian_guard(h: &ComplexMatrix, what: &str) -> Result<()> {
    if !h.is_square() {
        return Err(CoreError::Dimension(format!("{what} requires a square matrix")));
    }
    let tol = HERMITIAN_TOL * (1.0 + h.max_abs_entry());
    if !h.is_hermitian(tol) {
        return Err(CoreError::Input(format!("{what} requires a Hermitian matrix")));
    }
    Ok(())
}

fn off_diagonal_norm(w: &ComplexMatrix) -> f64 {
    let n = w.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += w.at(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix (validated within 1e-10).
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_guard(h, "hermitian_eig")?;
    let n = h.rows();
    // Work on the exactly-Hermitian average to keep rotations consistent.
    let mut w = h.add(&h.adjoint()).unwrap().scale_re(0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = h.frobenius_norm();
    let target = OFF_DIAGONAL_REL_TOL * scale;

    if n == 1 {
        return Ok(HermitianEigen {
            eigenvalues: vec![w.at(0, 0).re],
            vectors: v,
        });
    }

    let mut converged = scale == 0.0 || off_diagonal_norm(&w) <= target;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let h_pq = w.at(p, q);
                let mag = h_pq.norm();
                if mag <= f64::MIN_POSITIVE * 16.0 {
                    continue;
                }
                let phase = h_pq / mag;
                let a = w.at(p, p).re;
                let b = w.at(q, q).re;
                // Annihilation condition |h|(1 - t^2) + (b - a) t = 0; take the
                // root of smaller magnitude for stability.
                let tau = (b - a) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let su = phase * s;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let wkp = w.at(k, p);
                    let wkq = w.at(k, q);
                    let new_kp = wkp * c + wkq * su.conj();
                    let new_kq = wkq * c - wkp * su;
                    w.set(k, p, new_kp);
                    w.set(p, k, new_kp.conj());
                    w.set(k, q, new_kq);
                    w.set(q, k, new_kq.conj());
                }
                w.set(p, p, Complex64::new(a + t * mag, 0.0));
                w.set(q, q, Complex64::new(b - t * mag, 0.0));
                w.set(p, q, Complex64::new(0.0, 0.0));
                w.set(q, p, Complex64::new(0.0, 0.0));

                for k in 0..n {
                    let vkp = v.at(k, p);
                    let vkq = v.at(k, q);
                    v.set(k, p, vkp * c + vkq * su.conj());
                    v.set(k, q, vkq * c - vkp * su);
                }
            }
        }
        converged = off_diagonal_norm(&w) <= target;
    }
    if !converged {
        return Err(CoreError::Convergence(format!(
            "Jacobi sweeps exhausted: off-diagonal {:.3e} above target {:.3e}",
            off_diagonal_norm(&w),
            target
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w.at(i, i).re.total_cmp(&w.at(j, j).re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| w.at(i, i).re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v.at(i, order[j]));
    Ok(HermitianEigen { eigenvalues, vectors })
}

/// Apply a real scalar function to a Hermitian matrix through its spectral
/// decomposition. Eigenvalues in [-1e-10, 0) are clamped to zero first so
/// that fractional powers of nominally positive semidefinite inputs do not
/// pick up spurious NaNs; a non-finite f(eigenvalue) is a domain error.
pub fn matrix_function(h: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    hermitian_guard(h, "matrix_function")?;
    let eig = hermitian_eig(h)?;
    let mapped: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&lam| {
            let lam = if (EIGENVALUE_CLAMP..0.0).contains(&lam) { 0.0 } else { lam };
            f(lam)
        })
        .collect();
    if mapped.iter().any(|x| !x.is_finite()) {
        return Err(CoreError::Domain(
            "matrix_function produced a non-finite spectral value".into(),
        ));
    }
    Ok(recompose(&eig.vectors, &mapped))
}

/// V diag(vals) V*, symmetrized to exact Hermitian form.
fn recompose(v: &ComplexMatrix, vals: &[f64]) -> ComplexMatrix {
    let n = v.rows();
    let mut scaled = v.clone();
    for (j, &val) in vals.iter().enumerate() {
        for i in 0..n {
            scaled.set(i, j, v.at(i, j) * val);
        }
    }
    let m = scaled.mul(&v.adjoint()).unwrap();
    m.add(&m.adjoint()).unwrap().scale_re(0.5)
}

/// Cached spectral data of |A| = (A*A)^(1/2) (or |A*| via [`ModulusSpectrum::of_adjoint`]),
/// so that many different powers of the same modulus reuse one decomposition.
#[derive(Debug, Clone)]
pub struct ModulusSpectrum {
    vectors: ComplexMatrix,
    /// Singular values, ascending, clamped to be nonnegative.
    moduli: Vec<f64>,
}

impl ModulusSpectrum {
    /// Spectrum of |A|, from the Gram matrix A*A.
    pub fn of(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(CoreError::Dimension("modulus requires a square matrix".into()));
        }
        let gram = a.adjoint().mul(a).unwrap();
        Self::from_gram(&gram)
    }

    /// Spectrum of |A*|, from AA*.
    pub fn of_adjoint(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(CoreError::Dimension("modulus requires a square matrix".into()));
        }
        let gram = a.mul(&a.adjoint()).unwrap();
        Self::from_gram(&gram)
    }

    fn from_gram(gram: &ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eig(gram)?;
        let moduli = eig
            .eigenvalues
            .iter()
            .map(|&lam| if lam < 0.0 { 0.0 } else { lam.sqrt() })
            .collect();
        Ok(ModulusSpectrum {
            vectors: eig.vectors,
            moduli,
        })
    }

    pub fn moduli(&self) -> &[f64] {
        &self.moduli
    }

    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    /// Largest singular value (the operator norm of the underlying matrix).
    pub fn max_modulus(&self) -> f64 {
        self.moduli.iter().fold(0.0, |acc, &s| acc.max(s))
    }

    /// |A|^q with the 0^0 = 1 convention.
    pub fn power(&self, q: f64) -> ComplexMatrix {
        self.apply_fn(|s| s.powf(q))
    }

    /// f(|A|) for a real scalar function of the singular values.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let vals: Vec<f64> = self.moduli.iter().map(|&s| f(s)).collect();
        recompose(&self.vectors, &vals)
    }

    /// Orthogonal projection onto the range of |A| (singular values above
    /// `threshold` count as nonzero).
    pub fn range_projection(&self, threshold: f64) -> ComplexMatrix {
        self.apply_fn(|s| if s > threshold { 1.0 } else { 0.0 })
    }

    /// Moore-Penrose inverse of |A| with the given cutoff.
    pub fn pseudo_inverse(&self, threshold: f64) -> ComplexMatrix {
        self.apply_fn(|s| if s > threshold { 1.0 / s } else { 0.0 })
    }
}
