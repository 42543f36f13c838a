//! Berezin transform, Berezin radius/norm, the infimum counterpart of the
//! norm, and the family of interpolated seminorms built from weighted means
//! of pairing magnitudes.
//!
//! Operators come in two flavors: an explicit matrix in the orthonormal
//! basis of the space (exact on the finite model, truncated on the Hardy
//! space) or closed-form normalized-kernel pairings. Suprema and infima over
//! the domain run on the deterministic sampler grids in parallel, followed
//! by monotone local refinement.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::mat::{dot, ComplexMatrix, ModulusSpectrum};
use crate::mean::{InterpolationPath, MeanKind};
use crate::sampler::{coordinate_descent, DomainSampler, ParamChart};
use crate::spaces::{hardy_kernel_coordinates, kernel_norm_sq, kernel_value, DomainPoint, KernelSpace};

/// Closed-form pairing (lambda, mu) -> <A k_hat_lambda, k_hat_mu>.
pub type PairingFn = dyn Fn(&DomainPoint, &DomainPoint) -> Result<Complex64> + Send + Sync;

/// An operator together with the space it acts on.
#[derive(Clone)]
pub enum OperatorModel {
    /// Matrix in the orthonormal basis: exact for the finite model, a
    /// truncation (of the given order) for the weighted Hardy space.
    Matrix { space: KernelSpace, matrix: ComplexMatrix },
    /// Closed-form pairings for A and A*.
    ClosedForm {
        space: KernelSpace,
        pairing: Arc<PairingFn>,
        adjoint_pairing: Arc<PairingFn>,
    },
}

impl fmt::Debug for OperatorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorModel::Matrix { space, matrix } => f
                .debug_struct("Matrix")
                .field("space", space)
                .field("size", &matrix.rows())
                .finish(),
            OperatorModel::ClosedForm { space, .. } => {
                f.debug_struct("ClosedForm").field("space", space).finish()
            }
        }
    }
}

impl OperatorModel {
    pub fn matrix(space: KernelSpace, matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(CoreError::Dimension("operator matrix must be square".into()));
        }
        match &space {
            KernelSpace::Finite { n } => {
                if matrix.rows() != *n {
                    return Err(CoreError::Dimension(format!(
                        "matrix size {} does not match finite space dimension {n}",
                        matrix.rows()
                    )));
                }
            }
            KernelSpace::WeightedHardy { .. } => {}
            KernelSpace::Fock { .. } => {
                return Err(CoreError::Input(
                    "Fock-space operators are modeled by closed-form pairings".into(),
                ));
            }
        }
        Ok(OperatorModel::Matrix { space, matrix })
    }

    pub fn closed_form(
        space: KernelSpace,
        pairing: Arc<PairingFn>,
        adjoint_pairing: Arc<PairingFn>,
    ) -> Self {
        OperatorModel::ClosedForm { space, pairing, adjoint_pairing }
    }

    /// The identity operator as a closed form: normalized kernel products.
    pub fn identity(space: KernelSpace) -> Self {
        let pairing = identity_pairing(space.clone());
        OperatorModel::ClosedForm {
            space,
            pairing: pairing.clone(),
            adjoint_pairing: pairing,
        }
    }

    pub fn space(&self) -> &KernelSpace {
        match self {
            OperatorModel::Matrix { space, .. } | OperatorModel::ClosedForm { space, .. } => space,
        }
    }

    pub fn adjoint(&self) -> OperatorModel {
        match self {
            OperatorModel::Matrix { space, matrix } => OperatorModel::Matrix {
                space: space.clone(),
                matrix: matrix.adjoint(),
            },
            OperatorModel::ClosedForm { space, pairing, adjoint_pairing } => OperatorModel::ClosedForm {
                space: space.clone(),
                pairing: adjoint_pairing.clone(),
                adjoint_pairing: pairing.clone(),
            },
        }
    }
}

fn identity_pairing(space: KernelSpace) -> Arc<PairingFn> {
    Arc::new(move |lambda: &DomainPoint, mu: &DomainPoint| {
        let value = kernel_value(&space, mu, lambda)?;
        let scale = (kernel_norm_sq(&space, lambda)? * kernel_norm_sq(&space, mu)?).sqrt();
        Ok(value / scale)
    })
}

/// Composition with the dilation w -> eta w on the weighted Hardy space,
/// |eta| <= 1, as a closed-form operator model.
pub fn dilation_operator(beta: f64, eta: Complex64) -> Result<OperatorModel> {
    let space = KernelSpace::weighted_hardy(beta)?;
    if eta.norm() > 1.0 {
        return Err(CoreError::Domain(format!(
            "dilation factor must satisfy |eta| <= 1, got {}",
            eta.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let normalizer = move |z: Complex64| (1.0 - beta * z.norm_sqr()).sqrt();
    let disc = |p: &DomainPoint| -> Result<Complex64> {
        match p {
            DomainPoint::Disc(z) => Ok(*z),
            _ => Err(CoreError::Domain("dilation operator lives on the disc".into())),
        }
    };
    let pairing: Arc<PairingFn> = Arc::new(move |lambda, mu| {
        let (l, m) = (disc(lambda)?, disc(mu)?);
        Ok(normalizer(l) * normalizer(m) / (one - beta * l.conj() * (eta * m)))
    });
    let adjoint_pairing: Arc<PairingFn> = Arc::new(move |lambda, mu| {
        let (l, m) = (disc(lambda)?, disc(mu)?);
        Ok(normalizer(l) * normalizer(m) / (one - beta * (eta * l).conj() * m))
    });
    Ok(OperatorModel::closed_form(space, pairing, adjoint_pairing))
}

/// Hardy kernel coordinates truncated (or zero-padded) to a fixed order.
fn truncated_coords(beta: f64, lambda: Complex64, len: usize) -> Result<Vec<Complex64>> {
    let mut coords = hardy_kernel_coordinates(beta, lambda)?.coords;
    coords.resize(len, Complex64::new(0.0, 0.0));
    Ok(coords)
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// <A k_hat_lambda, k_hat_mu>.
pub fn pairing(op: &OperatorModel, lambda: &DomainPoint, mu: &DomainPoint) -> Result<Complex64> {
    match op {
        OperatorModel::Matrix { space, matrix } => match space {
            KernelSpace::Finite { .. } => {
                space.check_point(lambda)?;
                space.check_point(mu)?;
                match (lambda, mu) {
                    (DomainPoint::Index(l), DomainPoint::Index(m)) => Ok(matrix.at(*m, *l)),
                    _ => unreachable!("check_point filters non-index points"),
                }
            }
            KernelSpace::WeightedHardy { beta } => {
                let (l, m) = match (lambda, mu) {
                    (DomainPoint::Disc(l), DomainPoint::Disc(m)) => (*l, *m),
                    _ => {
                        space.check_point(lambda)?;
                        space.check_point(mu)?;
                        unreachable!("check_point filters non-disc points")
                    }
                };
                let cl = truncated_coords(*beta, l, matrix.cols())?;
                let cm = truncated_coords(*beta, m, matrix.cols())?;
                let image = matrix.apply(&cl)?;
                Ok(dot(&image, &cm) / (vec_norm(&cl) * vec_norm(&cm)))
            }
            KernelSpace::Fock { .. } => unreachable!("constructor rejects Fock matrices"),
        },
        OperatorModel::ClosedForm { pairing, .. } => pairing(lambda, mu),
    }
}

/// <A* k_hat_lambda, k_hat_mu> = conj(<A k_hat_mu, k_hat_lambda>).
pub fn adjoint_pairing(op: &OperatorModel, lambda: &DomainPoint, mu: &DomainPoint) -> Result<Complex64> {
    match op {
        OperatorModel::Matrix { space, matrix } => {
            let adj = OperatorModel::Matrix { space: space.clone(), matrix: matrix.adjoint() };
            pairing(&adj, lambda, mu)
        }
        OperatorModel::ClosedForm { adjoint_pairing, .. } => adjoint_pairing(lambda, mu),
    }
}

/// The Berezin transform at lambda: the diagonal pairing.
pub fn berezin_transform(op: &OperatorModel, lambda: &DomainPoint) -> Result<Complex64> {
    pairing(op, lambda, lambda)
}

/// Transform values over the sampler grid, aligned with `sampler.points()`.
pub fn transform_samples(op: &OperatorModel, sampler: &DomainSampler) -> Result<Vec<Complex64>> {
    ensure_same_space(op, sampler)?;
    sampler
        .points()
        .par_iter()
        .map(|p| berezin_transform(op, p))
        .collect()
}

fn ensure_same_space(op: &OperatorModel, sampler: &DomainSampler) -> Result<()> {
    if op.space() != sampler.space() {
        return Err(CoreError::Input(format!(
            "sampler space {} does not match operator space {}",
            sampler.space(),
            op.space()
        )));
    }
    Ok(())
}

/// Total-order comparison used in parallel reductions so the result is
/// independent of evaluation order: better value wins, ties go to the
/// smaller index.
fn pick(a: (f64, usize), b: (f64, usize), maximize: bool) -> (f64, usize) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => if maximize { a } else { b },
        std::cmp::Ordering::Less => if maximize { b } else { a },
        std::cmp::Ordering::Equal => if a.1 <= b.1 { a } else { b },
    }
}

/// sup over lambda of |transform|, with grid + refinement (exact maximum
/// over the whole domain on the finite model).
pub fn berezin_radius(op: &OperatorModel, sampler: &DomainSampler) -> Result<f64> {
    ensure_same_space(op, sampler)?;
    if let OperatorModel::Matrix { space: KernelSpace::Finite { .. }, matrix } = op {
        let mut best = 0.0f64;
        for i in 0..matrix.rows() {
            best = best.max(matrix.at(i, i).norm());
        }
        return Ok(best);
    }
    let points = sampler.points();
    let seed = (f64::NEG_INFINITY, usize::MAX);
    let (value, index) = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| -> Result<(f64, usize)> { Ok((berezin_transform(op, p)?.norm(), i)) })
        .try_reduce(|| seed, |a, b| Ok(pick(a, b, true)))?;
    let Some(chart) = sampler.chart(&points[index]) else {
        return Ok(value);
    };
    let mut objective = |params: &[f64]| -> Result<f64> {
        let p = sampler.point_from_chart(params);
        Ok(berezin_transform(op, &p)?.norm())
    };
    let (_, refined) = coordinate_descent(&chart, sampler.rounds(), true, value, &mut objective)?;
    Ok(refined)
}

/// Per-pair magnitudes (|<A k_l, k_m>|, |<A* k_l, k_m>|), with a prepared
/// fast path for Hardy matrix truncations.
enum PairEval<'a> {
    Direct(&'a OperatorModel),
    Prepared {
        coords: Vec<Vec<Complex64>>,
        image: Vec<Vec<Complex64>>,
        adjoint_image: Vec<Vec<Complex64>>,
    },
}

impl<'a> PairEval<'a> {
    fn build(op: &'a OperatorModel, points: &[DomainPoint]) -> Result<Self> {
        if let OperatorModel::Matrix { space: KernelSpace::WeightedHardy { beta }, matrix } = op {
            let adj = matrix.adjoint();
            let mut coords = Vec::with_capacity(points.len());
            let mut image = Vec::with_capacity(points.len());
            let mut adjoint_image = Vec::with_capacity(points.len());
            for p in points {
                let z = match p {
                    DomainPoint::Disc(z) => *z,
                    _ => return Err(CoreError::Domain("Hardy grid must consist of disc points".into())),
                };
                let mut c = truncated_coords(*beta, z, matrix.cols())?;
                let scale = 1.0 / vec_norm(&c);
                for entry in &mut c {
                    *entry *= scale;
                }
                image.push(matrix.apply(&c)?);
                adjoint_image.push(adj.apply(&c)?);
                coords.push(c);
            }
            return Ok(PairEval::Prepared { coords, image, adjoint_image });
        }
        Ok(PairEval::Direct(op))
    }

    fn magnitudes(&self, points: &[DomainPoint], i: usize, j: usize) -> Result<(f64, f64)> {
        match self {
            PairEval::Direct(op) => Ok((
                pairing(op, &points[i], &points[j])?.norm(),
                adjoint_pairing(op, &points[i], &points[j])?.norm(),
            )),
            PairEval::Prepared { coords, image, adjoint_image } => Ok((
                dot(&image[i], &coords[j]).norm(),
                dot(&adjoint_image[i], &coords[j]).norm(),
            )),
        }
    }
}

/// Extremum of a pair objective g(|pairing|, |adjoint pairing|) over the
/// two-parameter grid, refined jointly in (lambda, mu).
fn pair_extremum<G>(op: &OperatorModel, sampler: &DomainSampler, maximize: bool, g: G) -> Result<f64>
where
    G: Fn(f64, f64) -> Result<f64> + Sync,
{
    ensure_same_space(op, sampler)?;
    let points = sampler.points();
    let n = points.len();
    let eval = PairEval::build(op, &points)?;
    let seed = (if maximize { f64::NEG_INFINITY } else { f64::INFINITY }, usize::MAX);
    let (value, index) = (0..n * n)
        .into_par_iter()
        .map(|k| -> Result<(f64, usize)> {
            let (a, b) = eval.magnitudes(&points, k / n, k % n)?;
            Ok((g(a, b)?, k))
        })
        .try_reduce(|| seed, |a, b| Ok(pick(a, b, maximize)))?;

    let (li, mi) = (index / n, index % n);
    let (Some(lc), Some(mc)) = (sampler.chart(&points[li]), sampler.chart(&points[mi])) else {
        return Ok(value);
    };
    let chart = ParamChart {
        params: [lc.params.clone(), mc.params.clone()].concat(),
        steps: [lc.steps.clone(), mc.steps.clone()].concat(),
        lo: [lc.lo.clone(), mc.lo.clone()].concat(),
        hi: [lc.hi.clone(), mc.hi.clone()].concat(),
        wraps: [lc.wraps.clone(), mc.wraps.clone()].concat(),
    };
    let half = lc.params.len();
    let mut objective = |params: &[f64]| -> Result<f64> {
        let lambda = sampler.point_from_chart(&params[..half]);
        let mu = sampler.point_from_chart(&params[half..]);
        let a = pairing(op, &lambda, &mu)?.norm();
        let b = adjoint_pairing(op, &lambda, &mu)?.norm();
        g(a, b)
    };
    let (_, refined) = coordinate_descent(&chart, sampler.rounds(), maximize, value, &mut objective)?;
    Ok(refined)
}

/// sup over (lambda, mu) of |<A k_hat_lambda, k_hat_mu>|. Exact entrywise
/// maximum on the finite model.
pub fn berezin_norm(op: &OperatorModel, sampler: &DomainSampler) -> Result<f64> {
    if let OperatorModel::Matrix { space: KernelSpace::Finite { .. }, matrix } = op {
        ensure_same_space(op, sampler)?;
        return Ok(matrix.max_abs_entry());
    }
    pair_extremum(op, sampler, true, |a, _| Ok(a))
}

/// inf over (lambda, mu) of |<A k_hat_lambda, k_hat_mu>|. Exact entrywise
/// minimum on the finite model.
pub fn c_tilde(op: &OperatorModel, sampler: &DomainSampler) -> Result<f64> {
    if let OperatorModel::Matrix { space: KernelSpace::Finite { .. }, matrix } = op {
        ensure_same_space(op, sampler)?;
        let mut best = f64::INFINITY;
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                best = best.min(matrix.at(i, j).norm());
            }
        }
        return Ok(best);
    }
    pair_extremum(op, sampler, false, |a, _| Ok(a))
}

/// The interpolated seminorm: sup over (lambda, mu) of
/// mean(|<A k_l, k_m>|^p, |<A* k_l, k_m>|^p)^(1/p), p >= 1.
///
/// The supremum is taken of the combined mean expression over pairs, not of
/// the two magnitudes separately.
pub fn sigma_t_norm(
    op: &OperatorModel,
    path: InterpolationPath,
    p: f64,
    sampler: &DomainSampler,
) -> Result<f64> {
    if p < 1.0 || !p.is_finite() {
        return Err(CoreError::Domain(format!("seminorm exponent must satisfy p >= 1, got {p}")));
    }
    if let OperatorModel::Matrix { space: KernelSpace::Finite { .. }, matrix } = op {
        ensure_same_space(op, sampler)?;
        let mut best = 0.0f64;
        for l in 0..matrix.rows() {
            for m in 0..matrix.rows() {
                let a = matrix.at(m, l).norm().powf(p);
                let b = matrix.at(l, m).norm().powf(p);
                best = best.max(path.eval(a, b)?);
            }
        }
        return Ok(best.powf(1.0 / p));
    }
    let sup = pair_extremum(op, sampler, true, |a, b| path.eval(a.powf(p), b.powf(p)))?;
    Ok(sup.powf(1.0 / p))
}

/// The arithmetic-path seminorm at exponent 1.
pub fn t_berezin_norm(op: &OperatorModel, t: f64, sampler: &DomainSampler) -> Result<f64> {
    sigma_t_norm(op, InterpolationPath::new(MeanKind::Arithmetic, t)?, 1.0, sampler)
}

/// Exact minimizer over t in [0, 1] of the largest diagonal entry of
/// t |A|^p + (1 - t) |A*|^p on the finite model. The objective is a maximum
/// of affine functions of t, so the minimum sits at an endpoint or at a
/// pairwise intersection of the lines.
pub fn min_t_ber_mix(a: &ComplexMatrix, p: f64) -> Result<(f64, f64)> {
    if !a.is_square() {
        return Err(CoreError::Dimension("min_t_ber_mix requires a square matrix".into()));
    }
    if p < 1.0 || !p.is_finite() {
        return Err(CoreError::Domain(format!("exponent must satisfy p >= 1, got {p}")));
    }
    let n = a.rows();
    let pow = ModulusSpectrum::of(a)?.power(p);
    let pow_adj = ModulusSpectrum::of_adjoint(a)?.power(p);
    let d: Vec<f64> = (0..n).map(|i| pow.at(i, i).re).collect();
    let e: Vec<f64> = (0..n).map(|i| pow_adj.at(i, i).re).collect();

    let objective = |t: f64| -> f64 {
        d.iter()
            .zip(&e)
            .map(|(&di, &ei)| t * di + (1.0 - t) * ei)
            .fold(f64::NEG_INFINITY, f64::max)
    };

    let mut candidates = vec![0.0, 1.0];
    for i in 0..n {
        for j in i + 1..n {
            let denom = (d[i] - e[i]) - (d[j] - e[j]);
            if denom.abs() > 1e-14 {
                let t = (e[j] - e[i]) / denom;
                if (0.0..=1.0).contains(&t) {
                    candidates.push(t);
                }
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    let mut best = (0.0, objective(0.0));
    for &t in &candidates[1..] {
        let v = objective(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    Ok(best)
}

/// Sampled fallback: ternary search in t of the Berezin radius of
/// t |M|^p + (1 - t) |M*|^p for a matrix model (the objective is a supremum
/// of affine functions of t, hence convex). Tolerance 1e-9 in t.
pub fn min_t_ber_mix_sampled(
    op: &OperatorModel,
    p: f64,
    sampler: &DomainSampler,
) -> Result<(f64, f64)> {
    let OperatorModel::Matrix { space, matrix } = op else {
        return Err(CoreError::Input(
            "the sampled mix minimizer needs an explicit matrix model".into(),
        ));
    };
    if p < 1.0 || !p.is_finite() {
        return Err(CoreError::Domain(format!("exponent must satisfy p >= 1, got {p}")));
    }
    let pow = ModulusSpectrum::of(matrix)?.power(p);
    let pow_adj = ModulusSpectrum::of_adjoint(matrix)?.power(p);
    let value_at = |t: f64| -> Result<f64> {
        let mixed = pow.scale_re(t).add(&pow_adj.scale_re(1.0 - t))?;
        berezin_radius(
            &OperatorModel::Matrix { space: space.clone(), matrix: mixed },
            sampler,
        )
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-9 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if value_at(m1)? <= value_at(m2)? {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok((t, value_at(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::GridSpec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn finite_op(matrix: ComplexMatrix) -> (OperatorModel, DomainSampler) {
        let n = matrix.rows();
        let space = KernelSpace::finite(n).unwrap();
        let sampler = DomainSampler::default_for(space.clone());
        (OperatorModel::matrix(space, matrix).unwrap(), sampler)
    }

    fn hardy_sampler(beta: f64, desc: &str) -> DomainSampler {
        DomainSampler::from_descriptor(KernelSpace::weighted_hardy(beta).unwrap(), desc).unwrap()
    }

    #[test]
    fn finite_pairing_reads_entries() {
        let (op, _) = finite_op(crate::mat::tests::nilpotent_example());
        // <A e_1, e_0> = A[0][1] = 2.
        let got = pairing(&op, &DomainPoint::index(1), &DomainPoint::index(0)).unwrap();
        assert_eq!(got, c(2.0, 0.0));
        let adj = adjoint_pairing(&op, &DomainPoint::index(0), &DomainPoint::index(1)).unwrap();
        assert_eq!(adj, c(2.0, 0.0));
    }

    #[test]
    fn identity_transform_is_one_everywhere() {
        for (space, desc) in [
            (KernelSpace::finite(3).unwrap(), "exact"),
            (KernelSpace::weighted_hardy(0.8).unwrap(), "grid:4x6:1e-3:1"),
            (KernelSpace::fock(1.0, 2).unwrap(), "grid:7:10"),
        ] {
            let sampler = DomainSampler::from_descriptor(space.clone(), desc).unwrap();
            let op = OperatorModel::identity(space);
            for v in transform_samples(&op, &sampler).unwrap() {
                assert!((v - c(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn dilation_transform_closed_form() {
        let beta = 0.6;
        let eta = c(0.4, 0.3);
        let op = dilation_operator(beta, eta).unwrap();
        let w = c(0.25, -0.55);
        let got = berezin_transform(&op, &DomainPoint::disc(w)).unwrap();
        let want = c(1.0 - beta * w.norm_sqr(), 0.0) / (c(1.0, 0.0) - eta * beta * w.norm_sqr());
        assert!((got - want).norm() < 1e-13);
    }

    #[test]
    fn dilation_pairing_matches_truncated_matrix() {
        // The dilation acts diagonally on the monomial basis with entries eta^n.
        let beta = 0.75;
        let eta = c(0.35, 0.6);
        let op = dilation_operator(beta, eta).unwrap();
        let m = 64;
        let diag = ComplexMatrix::from_fn(m, m, |i, j| {
            if i == j {
                eta.powu(i as u32)
            } else {
                c(0.0, 0.0)
            }
        });
        let space = KernelSpace::weighted_hardy(beta).unwrap();
        let truncated = OperatorModel::matrix(space, diag).unwrap();
        for (l, m_) in [(c(0.2, 0.3), c(-0.5, 0.1)), (c(0.0, 0.0), c(0.7, 0.2)), (c(-0.4, -0.4), c(0.3, -0.6))] {
            let exact = pairing(&op, &DomainPoint::disc(l), &DomainPoint::disc(m_)).unwrap();
            let approx = pairing(&truncated, &DomainPoint::disc(l), &DomainPoint::disc(m_)).unwrap();
            assert!((exact - approx).norm() < 1e-9, "at ({l}, {m_}): {exact} vs {approx}");
            let exact_adj = adjoint_pairing(&op, &DomainPoint::disc(l), &DomainPoint::disc(m_)).unwrap();
            let approx_adj = adjoint_pairing(&truncated, &DomainPoint::disc(l), &DomainPoint::disc(m_)).unwrap();
            assert!((exact_adj - approx_adj).norm() < 1e-9);
        }
    }

    #[test]
    fn closed_form_adjoint_consistency() {
        let op = dilation_operator(0.5, c(0.3, -0.7)).unwrap();
        let l = DomainPoint::disc(c(0.31, 0.17));
        let m = DomainPoint::disc(c(-0.62, 0.05));
        let direct = adjoint_pairing(&op, &l, &m).unwrap();
        let flipped = pairing(&op, &m, &l).unwrap().conj();
        assert!((direct - flipped).norm() < 1e-12);
    }

    #[test]
    fn finite_radius_norm_and_inf() {
        let (op, sampler) = finite_op(crate::mat::tests::nilpotent_example());
        assert_eq!(berezin_radius(&op, &sampler).unwrap(), 0.0);
        assert_eq!(berezin_norm(&op, &sampler).unwrap(), 3.0);
        assert_eq!(c_tilde(&op, &sampler).unwrap(), 0.0);
    }

    #[test]
    fn psd_norm_equals_radius() {
        let a = crate::mat::tests::nilpotent_example();
        let gram = a.adjoint().mul(&a).unwrap();
        let (op, sampler) = finite_op(gram.clone());
        let radius = berezin_radius(&op, &sampler).unwrap();
        let norm = berezin_norm(&op, &sampler).unwrap();
        assert!((radius - norm).abs() < 1e-12);
        assert!((radius - gram.at(2, 2).re).abs() < 1e-12);
    }

    #[test]
    fn mixed_power_diagonals_on_the_strict_triangle() {
        let a = crate::mat::tests::nilpotent_example();
        let quart = ModulusSpectrum::of(&a).unwrap().power(4.0);
        let quart_adj = ModulusSpectrum::of_adjoint(&a).unwrap().power(4.0);
        let sum = quart.add(&quart_adj).unwrap();
        let (op, sampler) = finite_op(sum);
        assert!((berezin_radius(&op, &sampler).unwrap() - 185.0).abs() < 1e-9);
    }

    #[test]
    fn exact_mix_minimizer_on_the_strict_triangle() {
        let a = crate::mat::tests::nilpotent_example();
        let (t, v) = min_t_ber_mix(&a, 4.0).unwrap();
        assert!((t - 13.0 / 30.0).abs() < 1e-10, "t = {t}");
        assert!((v - 481.0 / 6.0).abs() < 1e-8, "v = {v}");
    }

    #[test]
    fn hermitian_mix_is_flat() {
        let h = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        let (_, v) = min_t_ber_mix(&h, 2.0).unwrap();
        let pow = ModulusSpectrum::of(&h).unwrap().power(2.0);
        let want = pow.at(0, 0).re.max(pow.at(1, 1).re);
        assert!((v - want).abs() < 1e-10);
    }

    #[test]
    fn mix_minimizer_matches_dense_scan() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.4, 0.1), c(-1.2, 0.6), c(0.0, 0.9)],
            vec![c(2.0, 0.0), c(0.3, -0.3), c(0.5, 0.0)],
            vec![c(-0.7, 0.2), c(0.1, 1.1), c(-0.2, -0.8)],
        ])
        .unwrap();
        let (_, v) = min_t_ber_mix(&a, 2.0).unwrap();
        let pow = ModulusSpectrum::of(&a).unwrap().power(2.0);
        let pow_adj = ModulusSpectrum::of_adjoint(&a).unwrap().power(2.0);
        let envelope = |t: f64| {
            let mut row_max = f64::NEG_INFINITY;
            for i in 0..3 {
                row_max = row_max.max(t * pow.at(i, i).re + (1.0 - t) * pow_adj.at(i, i).re);
            }
            row_max
        };
        // Coarse scan at step 1e-4, then a fine rescan around the coarse
        // minimizer so grid resolution does not dominate the comparison.
        let mut dense = (f64::INFINITY, 0.0);
        let mut t = 0.0;
        while t <= 1.0 {
            let value = envelope(t);
            if value < dense.0 {
                dense = (value, t);
            }
            t += 1e-4;
        }
        let mut fine = dense.0;
        let mut s = (dense.1 - 1e-4).max(0.0);
        let top = (dense.1 + 1e-4).min(1.0);
        while s <= top {
            fine = fine.min(envelope(s));
            s += 1e-8;
        }
        assert!((v - fine).abs() < 1e-6, "exact {v} vs dense {fine}");
    }

    #[test]
    fn sampled_mix_agrees_with_exact_on_finite() {
        let a = crate::mat::tests::nilpotent_example();
        let (op, sampler) = finite_op(a.clone());
        let (t_exact, v_exact) = min_t_ber_mix(&a, 4.0).unwrap();
        let (t_sampled, v_sampled) = min_t_ber_mix_sampled(&op, 4.0, &sampler).unwrap();
        assert!((t_exact - t_sampled).abs() < 1e-6);
        assert!((v_exact - v_sampled).abs() < 1e-6);
    }

    #[test]
    fn seminorm_endpoint_is_the_norm() {
        let (op, sampler) = finite_op(crate::mat::tests::nilpotent_example());
        for kind in MeanKind::ALL {
            let path = InterpolationPath::new(kind, 1.0).unwrap();
            for p in [1.0, 2.0, 3.0] {
                let got = sigma_t_norm(&op, path, p, &sampler).unwrap();
                assert!((got - 3.0).abs() < 1e-12, "{kind} p={p}: {got}");
            }
        }
    }

    #[test]
    fn hermitian_seminorm_is_the_norm_for_all_paths() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.5)],
            vec![c(0.5, -0.5), c(-2.0, 0.0)],
        ])
        .unwrap();
        let (op, sampler) = finite_op(h);
        let norm = berezin_norm(&op, &sampler).unwrap();
        for kind in MeanKind::ALL {
            for t in [0.0, 0.3, 0.7, 1.0] {
                let path = InterpolationPath::new(kind, t).unwrap();
                let got = sigma_t_norm(&op, path, 2.0, &sampler).unwrap();
                assert!((got - norm).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn halfway_arithmetic_entry_oracle() {
        let a = crate::mat::tests::nilpotent_example();
        let (op, sampler) = finite_op(a.clone());
        let got = t_berezin_norm(&op, 0.5, &sampler).unwrap();
        let mut want = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                want = want.max(0.5 * (a.at(i, j).norm() + a.at(j, i).norm()));
            }
        }
        assert!((got - want).abs() < 1e-14);
    }

    #[test]
    fn seminorm_rejects_small_exponent() {
        let (op, sampler) = finite_op(ComplexMatrix::identity(2));
        let path = InterpolationPath::new(MeanKind::Arithmetic, 0.5).unwrap();
        assert!(matches!(
            sigma_t_norm(&op, path, 0.5, &sampler),
            Err(CoreError::Domain(_))
        ));
    }

    #[test]
    fn sampler_space_mismatch_is_rejected() {
        let (op, _) = finite_op(ComplexMatrix::identity(2));
        let foreign = hardy_sampler(0.5, "grid:3x4:1e-3:0");
        assert!(berezin_radius(&op, &foreign).is_err());
    }

    #[test]
    fn dilation_radius_on_grid() {
        // |transform| = (1 - beta r^2) / |1 - eta beta r^2| <= 1 whenever
        // |eta| <= 1, with equality at the origin, so the radius is exactly 1
        // and the grid (which contains r = 0) attains it.
        for eta in [c(0.75, 0.0), c(-0.75, 0.0), c(0.2, 0.9)] {
            let beta = 0.25;
            let op = dilation_operator(beta, eta).unwrap();
            let sampler = hardy_sampler(beta, "grid:40x8:1e-3:3");
            let got = berezin_radius(&op, &sampler).unwrap();
            assert!((got - 1.0).abs() < 1e-12, "eta {eta}: radius {got}");
        }
    }

    #[test]
    fn refinement_rounds_are_monotone() {
        let beta = 0.9;
        let op = dilation_operator(beta, c(0.2, 0.95_f64.sqrt())).unwrap();
        let mut previous = 0.0;
        for rounds in 0..4 {
            let sampler = hardy_sampler(beta, &format!("grid:8x8:1e-3:{rounds}"));
            let value = sigma_t_norm(
                &op,
                InterpolationPath::new(MeanKind::Arithmetic, 0.4).unwrap(),
                2.0,
                &sampler,
            )
            .unwrap();
            assert!(value >= previous - 1e-15, "rounds {rounds}: {value} < {previous}");
            previous = value;
        }
    }

    #[test]
    fn seminorm_weight_reversal_symmetry() {
        let op = dilation_operator(0.7, c(0.5, 0.4)).unwrap();
        let sampler = hardy_sampler(0.7, "grid:6x8:1e-3:1");
        for kind in MeanKind::ALL {
            let path = InterpolationPath::new(kind, 0.3).unwrap();
            let a = sigma_t_norm(&op, path, 2.0, &sampler).unwrap();
            let b = sigma_t_norm(&op, path.reversed(), 2.0, &sampler).unwrap();
            assert!((a - b).abs() < 1e-12, "{kind}: {a} vs {b}");
        }
    }

    #[test]
    fn fock_identity_radius() {
        let space = KernelSpace::fock(1.0, 1).unwrap();
        let sampler = DomainSampler::new(space.clone(), GridSpec::parse("grid:11:5").unwrap()).unwrap();
        let op = OperatorModel::identity(space);
        assert!((berezin_radius(&op, &sampler).unwrap() - 1.0).abs() < 1e-12);
    }
}
