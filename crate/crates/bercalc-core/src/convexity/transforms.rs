//! Closed-form Berezin transforms of specific operator families (dilation
//! composition, Blaschke composition, rank-one monomial operators, diagonal
//! symbols on the Fock space) together with sampled range builders and
//! convexity cross-checks.

use num_complex::Complex64;
use serde::Serialize;

use super::{convexity_diagnostic, ConvexityReport, SampledRange, DEFAULT_REL_TOL};
use crate::error::{CoreError, Result};

/// Radial safety margin for grids over the open unit disc.
const DISC_EDGE: f64 = 1e-6;

/// Coarser margin for the Blaschke grid, whose denominator degenerates at
/// the boundary when beta = 1.
const BLASCHKE_EDGE: f64 = 1e-3;

/// Threshold below which an imaginary part counts as zero in the exact
/// convexity characterizations.
const IM_TOL: f64 = 1e-14;

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(CoreError::Domain(format!("weight parameter must lie in (0, 1], got {beta}")));
    }
    Ok(())
}

fn check_disc(w: Complex64, label: &str) -> Result<()> {
    let r2 = w.norm_sqr();
    if r2 >= 1.0 || r2.is_nan() {
        return Err(CoreError::Domain(format!("{label} must lie in the open unit disc, got {w}")));
    }
    Ok(())
}

/// Exact range bounds of a transform family, reported alongside the sampled
/// estimate when a closed-form characterization applies.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntervalEstimate {
    pub inf: f64,
    pub sup: f64,
    pub inf_attained: bool,
    pub sup_attained: bool,
}

/// A convexity verdict from both ends: the exact characterization and the
/// sampled midpoint diagnostic, plus the range the diagnostic ran on.
#[derive(Debug, Clone)]
pub struct RangeConvexity {
    /// Closed-form answer: is the full (unsampled) range convex?
    pub characterization: bool,
    /// Sampled midpoint-deviation estimate.
    pub report: ConvexityReport,
    /// The sampled range the report was computed from.
    pub range: SampledRange,
    /// Exact range interval, when the range is known to be real.
    pub interval: Option<IntervalEstimate>,
}

// ---------------------------------------------------------------------------
// Dilation composition on the weighted Hardy space
// ---------------------------------------------------------------------------

/// Berezin transform of the dilation composition operator f(z) -> f(eta z):
/// (1 - beta |w|^2) / (1 - eta beta |w|^2). Requires |eta| <= 1.
pub fn hardy_dilation_transform(eta: Complex64, beta: f64, w: Complex64) -> Result<Complex64> {
    check_beta(beta)?;
    if eta.norm() > 1.0 + 1e-14 {
        return Err(CoreError::Domain(format!("dilation factor must satisfy |eta| <= 1, got {eta}")));
    }
    check_disc(w, "evaluation point")?;
    let x = w.norm_sqr();
    Ok(Complex64::new(1.0 - beta * x, 0.0) / (Complex64::new(1.0, 0.0) - eta * (beta * x)))
}

fn polar_grid(
    n_r: usize,
    n_theta: usize,
    edge: f64,
    mut value: impl FnMut(Complex64) -> Result<Complex64>,
) -> Result<(Vec<Complex64>, String)> {
    if n_r < 2 || n_theta < 1 {
        return Err(CoreError::Input(format!("polar grid needs n_r >= 2, n_theta >= 1, got {n_r}x{n_theta}")));
    }
    let r_max = 1.0 - edge;
    let mut points = Vec::with_capacity(n_r * n_theta);
    for i in 0..n_r {
        let r = r_max * i as f64 / (n_r - 1) as f64;
        for j in 0..n_theta {
            let theta = std::f64::consts::TAU * j as f64 / n_theta as f64;
            points.push(value(Complex64::from_polar(r, theta))?);
        }
    }
    let grid = format!("polar {n_r}x{n_theta}, r in [0, {r_max}]");
    Ok((points, grid))
}

/// Sampled dilation transform range over a polar grid of the disc.
pub fn dilation_range(
    eta: Complex64,
    beta: f64,
    n_r: usize,
    n_theta: usize,
) -> Result<SampledRange> {
    let (points, grid) = polar_grid(n_r, n_theta, DISC_EDGE, |w| hardy_dilation_transform(eta, beta, w))?;
    SampledRange::torus(points, n_r, n_theta, grid)
}

/// Convexity of the dilation transform range: exactly convex iff eta is real
/// (the range is then a real interval), cross-checked on a 400x64 grid.
pub fn dilation_convexity(eta: Complex64, beta: f64) -> Result<RangeConvexity> {
    let range = dilation_range(eta, beta, 400, 64)?;
    let report = convexity_diagnostic(&range, DEFAULT_REL_TOL)?;
    let characterization = eta.im.abs() <= IM_TOL;
    let interval = if characterization {
        let x = (1.0 - DISC_EDGE) * (1.0 - DISC_EDGE);
        let inf = (1.0 - beta * x) / (1.0 - eta.re * beta * x);
        let closed = (eta.re - 1.0).abs() <= IM_TOL;
        Some(IntervalEstimate {
            inf,
            sup: 1.0,
            inf_attained: closed,
            sup_attained: true,
        })
    } else {
        None
    };
    Ok(RangeConvexity { characterization, report, range, interval })
}

// ---------------------------------------------------------------------------
// Blaschke composition on the weighted Hardy space
// ---------------------------------------------------------------------------

/// Berezin transform of the Blaschke composition operator
/// f(z) -> f((z - alpha) / (1 - conj(alpha) z)), |alpha| < 1:
/// (1 - beta |w|^2)(1 - conj(alpha) w) / (1 - conj(alpha) w - beta |w|^2 + alpha beta conj(w)).
pub fn blaschke_transform(alpha: Complex64, beta: f64, w: Complex64) -> Result<Complex64> {
    check_beta(beta)?;
    check_disc(alpha, "Blaschke parameter")?;
    check_disc(w, "evaluation point")?;
    let x = w.norm_sqr();
    let a_bar_w = alpha.conj() * w;
    let numerator = (Complex64::new(1.0, 0.0) - a_bar_w) * (1.0 - beta * x);
    let denominator = Complex64::new(1.0 - beta * x, 0.0) - a_bar_w + alpha * (beta * w.conj());
    if denominator.norm() < 1e-14 {
        return Err(CoreError::Singular(format!(
            "Blaschke transform denominator vanishes at w = {w} (alpha = {alpha}, beta = {beta})"
        )));
    }
    Ok(numerator / denominator)
}

/// Sampled Blaschke transform range over a polar grid of the disc.
pub fn blaschke_range(
    alpha: Complex64,
    beta: f64,
    n_r: usize,
    n_theta: usize,
) -> Result<SampledRange> {
    let (points, grid) = polar_grid(n_r, n_theta, BLASCHKE_EDGE, |w| blaschke_transform(alpha, beta, w))?;
    SampledRange::torus(points, n_r, n_theta, grid)
}

// ---------------------------------------------------------------------------
// Rank-one monomial operators
// ---------------------------------------------------------------------------

/// Berezin transform of the rank-one projection onto z^n (n >= 1) in the
/// weighted Hardy space: (1 - beta |lambda|^2) |lambda|^(2n), real-valued.
pub fn rank_one_diag_transform(n: u32, beta: f64, lambda: Complex64) -> Result<f64> {
    check_beta(beta)?;
    if n == 0 {
        return Err(CoreError::Domain("rank-one power must be at least 1".into()));
    }
    check_disc(lambda, "evaluation point")?;
    let x = lambda.norm_sqr();
    Ok((1.0 - beta * x) * x.powi(n as i32))
}

/// Range analysis of the rank-one diagonal transform profile
/// g(r) = r^(2n) (1 - beta r^2) on [0, 1).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RankOneDiagRange {
    /// Critical value (n / (beta (n+1)))^n / (n+1) of the profile.
    pub endpoint: f64,
    /// True when the critical point r^2 = n / (beta (n+1)) falls outside
    /// [0, 1), so the supremum is only approached at the boundary.
    pub boundary: bool,
    /// Supremum of the profile over [0, 1).
    pub sup: f64,
    /// Whether the supremum is attained inside [0, 1).
    pub sup_attained: bool,
    /// Grid + local-refinement maximum of the profile.
    pub numeric_max: f64,
}

/// Maximize a unimodal profile on [0, hi]: coarse scan, then ternary search
/// in the bracket around the best coarse cell.
fn refine_profile_max(hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    const COARSE: usize = 4096;
    let at = |k: usize| hi * k as f64 / COARSE as f64;
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..=COARSE {
        let v = f(at(k));
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let mut lo = at(best_k.saturating_sub(1));
    let mut up = at((best_k + 1).min(COARSE));
    while up - lo > 1e-15 {
        let m1 = lo + (up - lo) / 3.0;
        let m2 = up - (up - lo) / 3.0;
        let (v1, v2) = (f(m1), f(m2));
        best = best.max(v1).max(v2);
        if v1 < v2 {
            lo = m1;
        } else {
            up = m2;
        }
    }
    best
}

/// Closed-form and numeric extrema of the rank-one diagonal transform.
pub fn rank_one_diag_range(n: u32, beta: f64) -> Result<RankOneDiagRange> {
    check_beta(beta)?;
    if n == 0 {
        return Err(CoreError::Domain("rank-one power must be at least 1".into()));
    }
    let nf = n as f64;
    let x_star = nf / (beta * (nf + 1.0));
    let endpoint = (nf / (beta * (nf + 1.0))).powi(n as i32) / (nf + 1.0);
    let boundary = x_star >= 1.0;
    let sup = if boundary { 1.0 - beta } else { endpoint };
    let numeric_max =
        refine_profile_max(1.0 - 1e-9, |r| r.powi(2 * n as i32) * (1.0 - beta * r * r));
    Ok(RankOneDiagRange { endpoint, boundary, sup, sup_attained: !boundary, numeric_max })
}

/// Range analysis of the off-diagonal rank-one operator z^m (x) z^n (taken
/// between unnormalized monomials, m > n >= 0), whose transform is
/// lambda^m conj(lambda)^n (1 - beta |lambda|^2): a disc of the stated radius.
#[derive(Debug, Clone)]
pub struct RankOneOffdiagDisc {
    /// Supremum of the transform modulus over the open disc.
    pub radius: f64,
    /// True when the modulus profile peaks only at the boundary.
    pub boundary: bool,
    /// Whether the radius is attained inside the disc.
    pub radius_attained: bool,
    /// Grid + local-refinement maximum of the modulus profile.
    pub numeric_max: f64,
    /// Sampled transform values on a fine polar grid.
    pub range: SampledRange,
}

/// Sampled off-diagonal rank-one transform
/// lambda^m conj(lambda)^n (1 - beta |lambda|^2) over a polar grid.
pub fn rank_one_offdiag_range(
    m: u32,
    n: u32,
    beta: f64,
    n_r: usize,
    n_theta: usize,
) -> Result<SampledRange> {
    check_beta(beta)?;
    if m <= n {
        return Err(CoreError::Domain(format!(
            "off-diagonal rank-one operator needs m > n, got m = {m}, n = {n}"
        )));
    }
    let (points, grid) = polar_grid(n_r, n_theta, DISC_EDGE, |lam| {
        Ok(lam.powu(m) * lam.conj().powu(n) * (1.0 - beta * lam.norm_sqr()))
    })?;
    SampledRange::torus(points, n_r, n_theta, grid)
}

/// Transform values and modulus extrema of the off-diagonal rank-one family.
pub fn rank_one_offdiag_disc(m: u32, n: u32, beta: f64) -> Result<RankOneOffdiagDisc> {
    check_beta(beta)?;
    if m <= n {
        return Err(CoreError::Domain(format!(
            "off-diagonal rank-one operator needs m > n, got m = {m}, n = {n}"
        )));
    }
    let q = (m + n) as f64;
    let x_star = q / (beta * (q + 2.0));
    let boundary = x_star >= 1.0;
    let radius = if boundary {
        1.0 - beta
    } else {
        (2.0 / (q + 2.0)) * (q / (beta * (q + 2.0))).powf(q / 2.0)
    };
    let numeric_max =
        refine_profile_max(1.0 - DISC_EDGE, |r| r.powi((m + n) as i32) * (1.0 - beta * r * r));
    let range = rank_one_offdiag_range(m, n, beta, 2001, 64)?;
    Ok(RankOneOffdiagDisc { radius, boundary, radius_attained: !boundary, numeric_max, range })
}

// ---------------------------------------------------------------------------
// Finite-rank polynomial families
// ---------------------------------------------------------------------------

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Berezin transform of sum_i g_i (x) g_i for polynomials g_i (coefficient
/// vectors in ascending degree order): (1 - beta |lambda|^2) sum_i |g_i(lambda)|^2.
pub fn finite_rank_transform(
    polys: &[Vec<Complex64>],
    beta: f64,
    lambda: Complex64,
) -> Result<f64> {
    check_beta(beta)?;
    check_disc(lambda, "evaluation point")?;
    let sum: f64 = polys.iter().map(|g| horner(g, lambda).norm_sqr()).sum();
    Ok((1.0 - beta * lambda.norm_sqr()) * sum)
}

/// The finite-rank transform along the radius [0, 1): a real interval by the
/// intermediate value theorem, so its sampled range is a path.
pub fn finite_rank_radial_range(
    polys: &[Vec<Complex64>],
    beta: f64,
    n_s: usize,
) -> Result<SampledRange> {
    if n_s < 2 {
        return Err(CoreError::Input(format!("radial range needs at least 2 samples, got {n_s}")));
    }
    let r_max = 1.0 - DISC_EDGE;
    let points = (0..n_s)
        .map(|k| {
            let r = r_max * k as f64 / (n_s - 1) as f64;
            finite_rank_transform(polys, beta, Complex64::new(r, 0.0))
                .map(|v| Complex64::new(v, 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let grid = format!("radial {n_s}, r in [0, {r_max}]");
    Ok(SampledRange::path(points, grid))
}

// ---------------------------------------------------------------------------
// Fock-space symbols
// ---------------------------------------------------------------------------

fn check_fock_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(CoreError::Domain(format!("Fock weight must be positive, got {alpha}")));
    }
    Ok(())
}

/// Berezin transform of the scalar symbol lambda I on the Fock space
/// (|lambda| <= 1): exp((lambda - 1) alpha |w|^2).
pub fn fock_scalar_transform(lambda: Complex64, alpha: f64, w: &[Complex64]) -> Result<Complex64> {
    check_fock_alpha(alpha)?;
    if lambda.norm() > 1.0 + 1e-14 {
        return Err(CoreError::Domain(format!("scalar symbol needs |lambda| <= 1, got {lambda}")));
    }
    let s: f64 = alpha * w.iter().map(|z| z.norm_sqr()).sum::<f64>();
    Ok(((lambda - 1.0) * s).exp())
}

/// Sampled scalar-symbol range along s = alpha |w|^2 in [0, s_max].
pub fn fock_scalar_range(
    lambda: Complex64,
    alpha: f64,
    n_s: usize,
    s_max: f64,
) -> Result<SampledRange> {
    check_fock_alpha(alpha)?;
    if lambda.norm() > 1.0 + 1e-14 {
        return Err(CoreError::Domain(format!("scalar symbol needs |lambda| <= 1, got {lambda}")));
    }
    if n_s < 2 || s_max <= 0.0 || !s_max.is_finite() {
        return Err(CoreError::Input(format!("scalar range needs n_s >= 2 and s_max > 0, got {n_s}, {s_max}")));
    }
    let points = (0..n_s)
        .map(|k| {
            let s = s_max * k as f64 / (n_s - 1) as f64;
            ((lambda - 1.0) * s).exp()
        })
        .collect();
    Ok(SampledRange::path(points, format!("s in [0, {s_max}], {n_s} samples")))
}

/// Convexity of the scalar-symbol range: exactly convex iff lambda is real
/// (a real interval); otherwise a logarithmic spiral, cross-checked by the
/// sampled diagnostic over s in [0, 50].
pub fn fock_scalar_convexity(lambda: Complex64, alpha: f64) -> Result<RangeConvexity> {
    let range = fock_scalar_range(lambda, alpha, 1001, 50.0)?;
    let report = convexity_diagnostic(&range, DEFAULT_REL_TOL)?;
    let characterization = lambda.im.abs() <= IM_TOL;
    let interval = if characterization {
        let closed = (lambda.re - 1.0).abs() <= IM_TOL;
        Some(IntervalEstimate {
            inf: if closed { 1.0 } else { 0.0 },
            sup: 1.0,
            inf_attained: closed,
            sup_attained: true,
        })
    } else {
        None
    };
    Ok(RangeConvexity { characterization, report, range, interval })
}

/// Berezin transform of the diagonal symbol (a + ib) acting on a Fock
/// direction, evaluated at radial parameter s = alpha |w|^2 >= 0:
/// exp(alpha (a - 1) s) exp(i alpha b s). Requires a^2 + b^2 <= 1.
pub fn fock_diag_transform(a: f64, b: f64, alpha: f64, s: f64) -> Result<Complex64> {
    check_fock_alpha(alpha)?;
    if a * a + b * b > 1.0 + 1e-12 {
        return Err(CoreError::Domain(format!(
            "diagonal symbol needs a^2 + b^2 <= 1, got a = {a}, b = {b}"
        )));
    }
    if s < 0.0 || s.is_nan() {
        return Err(CoreError::Domain(format!("radial parameter must be nonnegative, got {s}")));
    }
    Ok(Complex64::from_polar((alpha * (a - 1.0) * s).exp(), alpha * b * s))
}

/// Sampled diagonal-symbol range along s in [0, s_max].
pub fn fock_diag_range(
    a: f64,
    b: f64,
    alpha: f64,
    n_s: usize,
    s_max: f64,
) -> Result<SampledRange> {
    if n_s < 2 || s_max <= 0.0 || !s_max.is_finite() {
        return Err(CoreError::Input(format!("diagonal range needs n_s >= 2 and s_max > 0, got {n_s}, {s_max}")));
    }
    let points = (0..n_s)
        .map(|k| fock_diag_transform(a, b, alpha, s_max * k as f64 / (n_s - 1) as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampledRange::path(points, format!("s in [0, {s_max}], {n_s} samples")))
}

/// Convexity of the diagonal-symbol range at alpha = 1: exactly convex iff
/// b = 0 (the curve exp((a - 1 + ib) s) is then a real interval; any nonzero
/// rotation rate bends it into a spiral).
pub fn fock_diag_convexity(a: f64, b: f64) -> Result<RangeConvexity> {
    let range = fock_diag_range(a, b, 1.0, 2001, 50.0)?;
    let report = convexity_diagnostic(&range, DEFAULT_REL_TOL)?;
    let characterization = b.abs() <= IM_TOL;
    let interval = if characterization {
        let closed = (a - 1.0).abs() <= IM_TOL;
        Some(IntervalEstimate {
            inf: if closed { 1.0 } else { 0.0 },
            sup: 1.0,
            inf_attained: closed,
            sup_attained: true,
        })
    } else {
        None
    };
    Ok(RangeConvexity { characterization, report, range, interval })
}

/// Witness computation for the non-convexity of the a = 0, b = 1, alpha = 1
/// spiral exp(-s) exp(is): the midpoint of the curve values at s = 0 and
/// s = pi, and its distance to the curve sampled at step 1e-4 over [0, 40].
pub fn fock_diag_example_midpoint_distance() -> (Complex64, f64) {
    let at = |s: f64| Complex64::from_polar((-s).exp(), s);
    let midpoint = (at(0.0) + at(std::f64::consts::PI)) * 0.5;
    let mut distance = f64::INFINITY;
    let steps = 400_000u32;
    for k in 0..=steps {
        let s = 40.0 * k as f64 / steps as f64;
        distance = distance.min((at(s) - midpoint).norm());
    }
    (midpoint, distance)
}
