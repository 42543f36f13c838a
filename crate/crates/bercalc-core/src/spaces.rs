//! Reproducing-kernel space models: a finite model space with the standard
//! basis as kernels, the weighted Hardy disc space with geometric weights,
//! and the Fock space of entire functions.
//!
//! Each variant supplies closed-form kernel evaluations k_w(z), squared
//! kernel norms k_w(w), and (for the Hardy space) orthonormal-basis
//! coordinates of kernels with certified truncation tails.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::mat::{dot, operator_norm, ComplexMatrix, ModulusSpectrum};

/// Truncation target for the geometric tail of Hardy kernel coordinates.
pub const HARDY_TAIL_TARGET: f64 = 1e-12;

/// Hard cap on the Hardy coordinate truncation order.
pub const HARDY_MAX_ORDER: usize = 2000;

/// A point of the underlying domain: a basis index for the finite model,
/// a disc point for the Hardy space, a complex vector for the Fock space.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainPoint {
    Index(usize),
    Disc(Complex64),
    Vector(Vec<Complex64>),
}

impl DomainPoint {
    pub fn index(j: usize) -> Self {
        DomainPoint::Index(j)
    }

    pub fn disc(z: Complex64) -> Self {
        DomainPoint::Disc(z)
    }

    pub fn vector(v: Vec<Complex64>) -> Self {
        DomainPoint::Vector(v)
    }
}

/// The kernel-space model. Immutable value object; all evaluation is pure.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpace {
    /// Domain {0, …, n-1}; kernels are the standard basis vectors.
    Finite { n: usize },
    /// Functions on the unit disc with weight sequence (1/beta)^n,
    /// beta in (0, 1]; kernel k_w(z) = 1/(1 - beta conj(w) z).
    WeightedHardy { beta: f64 },
    /// Entire functions with kernel k_w(z) = exp(alpha <z, w>), alpha > 0.
    Fock { alpha: f64, dim: usize },
}

impl KernelSpace {
    pub fn finite(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::Input("finite space needs a positive dimension".into()));
        }
        Ok(KernelSpace::Finite { n })
    }

    pub fn weighted_hardy(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) || !beta.is_finite() {
            return Err(CoreError::Input(format!(
                "weighted Hardy parameter must lie in (0, 1], got {beta}"
            )));
        }
        Ok(KernelSpace::WeightedHardy { beta })
    }

    pub fn fock(alpha: f64, dim: usize) -> Result<Self> {
        if alpha <= 0.0 || !alpha.is_finite() {
            return Err(CoreError::Input(format!("Fock weight must be positive, got {alpha}")));
        }
        if dim == 0 {
            return Err(CoreError::Input("Fock space needs a positive dimension".into()));
        }
        Ok(KernelSpace::Fock { alpha, dim })
    }

    /// Checks that a point belongs to the domain of this space.
    pub fn check_point(&self, p: &DomainPoint) -> Result<()> {
        match (self, p) {
            (KernelSpace::Finite { n }, DomainPoint::Index(j)) => {
                if j < n {
                    Ok(())
                } else {
                    Err(CoreError::Domain(format!("index {j} outside 0..{n}")))
                }
            }
            (KernelSpace::WeightedHardy { .. }, DomainPoint::Disc(z)) => {
                if z.re.is_finite() && z.im.is_finite() && z.norm() < 1.0 {
                    Ok(())
                } else {
                    Err(CoreError::Domain(format!("disc point must satisfy |w| < 1, got |w| = {}", z.norm())))
                }
            }
            (KernelSpace::Fock { dim, .. }, DomainPoint::Vector(v)) => {
                if v.len() != *dim {
                    return Err(CoreError::Dimension(format!(
                        "Fock point has length {}, space dimension is {dim}",
                        v.len()
                    )));
                }
                if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                    return Err(CoreError::Domain("Fock point has non-finite coordinates".into()));
                }
                Ok(())
            }
            _ => Err(CoreError::Domain("point kind does not match the space".into())),
        }
    }
}

/// Closed-form kernel evaluation k_w(z) = <k_w, k_z>.
pub fn kernel_value(space: &KernelSpace, z: &DomainPoint, w: &DomainPoint) -> Result<Complex64> {
    space.check_point(z)?;
    space.check_point(w)?;
    match (space, z, w) {
        (KernelSpace::Finite { .. }, DomainPoint::Index(i), DomainPoint::Index(j)) => {
            Ok(Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
        }
        (KernelSpace::WeightedHardy { beta }, DomainPoint::Disc(z), DomainPoint::Disc(w)) => {
            let inner = beta * w.conj() * z;
            if inner.norm() >= 1.0 {
                return Err(CoreError::Domain(format!(
                    "Hardy kernel argument |beta conj(w) z| = {} leaves the disc",
                    inner.norm()
                )));
            }
            Ok(Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - inner))
        }
        (KernelSpace::Fock { alpha, .. }, DomainPoint::Vector(z), DomainPoint::Vector(w)) => {
            Ok((dot(z, w) * *alpha).exp())
        }
        _ => unreachable!("check_point already rejected mismatched kinds"),
    }
}

/// Squared norm of the kernel at w, i.e. k_w(w); always real and positive.
pub fn kernel_norm_sq(space: &KernelSpace, w: &DomainPoint) -> Result<f64> {
    let value = kernel_value(space, w, w)?;
    debug_assert!(value.im.abs() <= 1e-12 * (1.0 + value.re.abs()));
    if value.re <= 0.0 || value.re.is_nan() {
        return Err(CoreError::Domain(format!("kernel norm squared must be positive, got {}", value.re)));
    }
    Ok(value.re)
}

/// Coordinates of a Hardy-space kernel in the orthonormal monomial basis,
/// together with the achieved geometric tail bound on the discarded mass.
#[derive(Debug, Clone)]
pub struct HardyCoordinates {
    pub coords: Vec<Complex64>,
    pub tail_bound: f64,
}

/// Coordinates c_n = (sqrt(beta) conj(lambda))^n for n = 0..N, where N is
/// the smallest order whose geometric tail (beta |lambda|^2)^(N+1) / (1 - beta |lambda|^2)
/// drops below 1e-12, capped at 2000.
pub fn hardy_kernel_coordinates(beta: f64, lambda: Complex64) -> Result<HardyCoordinates> {
    let space = KernelSpace::weighted_hardy(beta)?;
    space.check_point(&DomainPoint::Disc(lambda))?;
    let q = beta * lambda.norm_sqr();
    let mut order = 0usize;
    let mut tail = q / (1.0 - q);
    while tail >= HARDY_TAIL_TARGET && order < HARDY_MAX_ORDER {
        order += 1;
        tail *= q;
    }
    let base = lambda.conj() * beta.sqrt();
    let mut coords = Vec::with_capacity(order + 1);
    let mut c = Complex64::new(1.0, 0.0);
    for _ in 0..=order {
        coords.push(c);
        c *= base;
    }
    Ok(HardyCoordinates { coords, tail_bound: tail })
}

/// Whether the affine symbol z -> Az + B keeps composition bounded on the
/// Fock space: A must be a contraction, and B may have no component along
/// any image Aζ of a unit singular direction ζ.
pub fn is_bounded_fock_symbol(a: &ComplexMatrix, b: &[Complex64]) -> Result<(bool, String)> {
    if !a.is_square() {
        return Err(CoreError::Dimension("symbol matrix must be square".into()));
    }
    if b.len() != a.rows() {
        return Err(CoreError::Dimension(format!(
            "symbol offset has length {}, matrix is {}x{}",
            b.len(),
            a.rows(),
            a.cols()
        )));
    }
    let norm = operator_norm(a)?;
    if norm > 1.0 + 1e-10 {
        return Ok((false, format!("operator norm {norm:.6} exceeds 1")));
    }
    let spec = ModulusSpectrum::of(a)?;
    for (j, &s) in spec.moduli().iter().enumerate() {
        if (s - 1.0).abs() <= 1e-10 {
            let zeta = spec.vectors().column(j);
            let image = a.apply(&zeta)?;
            let overlap = dot(&image, b).norm();
            if overlap > 1e-10 {
                return Ok((
                    false,
                    format!("offset has overlap {overlap:.3e} with an isometric direction"),
                ));
            }
        }
    }
    Ok((true, "contraction with offset orthogonal to all isometric directions".into()))
}

impl fmt::Display for KernelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSpace::Finite { n } => write!(f, "finite:{n}"),
            KernelSpace::WeightedHardy { beta } => write!(f, "hardy:{beta}"),
            KernelSpace::Fock { alpha, dim } => write!(f, "fock:{alpha}:{dim}"),
        }
    }
}

impl FromStr for KernelSpace {
    type Err = CoreError;

    /// Grammar: `finite:<n>`, `hardy:<beta>`, `fock:<alpha>:<dim>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = |msg: String| CoreError::Descriptor(msg);
        match parts.as_slice() {
            ["finite", n] => {
                let n = n.parse::<usize>().map_err(|e| bad(format!("finite:<n>: {e}")))?;
                KernelSpace::finite(n)
            }
            ["hardy", beta] => {
                let beta = beta.parse::<f64>().map_err(|e| bad(format!("hardy:<beta>: {e}")))?;
                KernelSpace::weighted_hardy(beta)
            }
            ["fock", alpha, dim] => {
                let alpha = alpha.parse::<f64>().map_err(|e| bad(format!("fock:<alpha>:<dim>: {e}")))?;
                let dim = dim.parse::<usize>().map_err(|e| bad(format!("fock:<alpha>:<dim>: {e}")))?;
                KernelSpace::fock(alpha, dim)
            }
            _ => Err(bad(format!(
                "unknown space descriptor {s:?}; expected finite:<n>, hardy:<beta> or fock:<alpha>:<dim>"
            ))),
        }
    }
}
