//! Vector-level pairing inequalities: mixed Schwarz bounds through a polar
//! factor, the power-mean sum bound, the commutant product bound, the
//! positive-operator Jensen bound, and the Buzano bound.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::gen::{TrialRng, COMMUTATION_TOL};
use super::{run_suite, InequalityCase, InequalityReport, EXACT_SLACK_TOL};
use crate::error::Result;
use crate::mat::{dot, matrix_function, modulus, polar, spectral_radius, vector_norm};
use crate::mat::{ComplexMatrix, ModulusSpectrum};

fn quadratic_form(m: &ComplexMatrix, x: &[Complex64]) -> Result<f64> {
    Ok(dot(&m.apply(x)?, x).re)
}

fn base_params(dim: usize, gamma: f64) -> BTreeMap<String, String> {
    let mut params = BTreeMap::new();
    params.insert("dim".into(), dim.to_string());
    params.insert("gamma".into(), format!("{gamma:.6}"));
    params
}

/// One trial of every pairing inequality on a fresh random draw.
fn trial(rng: &mut TrialRng, dims: (usize, usize), cases: &mut Vec<InequalityCase>) -> Result<()> {
    let n = rng.dim(dims.0, dims.1);
    let gamma = rng.gamma();
    let a = rng.matrix(n);
    let b = rng.matrix(n);
    let x = rng.vector(n);
    let y = rng.vector(n);

    let abs_a = ModulusSpectrum::of(&a)?;
    let abs_a_adj = ModulusSpectrum::of_adjoint(&a)?;
    let abs_b = ModulusSpectrum::of(&b)?;
    let abs_b_adj = ModulusSpectrum::of_adjoint(&b)?;

    // |<g(|B|) f(|A*|) U x, y>|^2 <= <f^2(|A|)x, x> <g^2(|B|)y, y>
    // with A = U|A|, f(s) = s^gamma, g(s) = s^(1-gamma).
    {
        let u = polar(&a)?.isometry;
        let factor = abs_b.power(1.0 - gamma).mul(&abs_a_adj.power(gamma))?.mul(&u)?;
        let lhs = dot(&factor.apply(&x)?, &y).norm_sqr();
        let rhs = quadratic_form(&abs_a.power(2.0 * gamma), &x)?
            * quadratic_form(&abs_b.power(2.0 * (1.0 - gamma)), &y)?;
        cases.push(InequalityCase::new("mixed-schwarz-a", base_params(n, gamma), lhs, rhs));
    }

    // The mirrored version through the polar factor of B.
    {
        let v = polar(&b)?.isometry;
        let factor = abs_a.power(1.0 - gamma).mul(&abs_b_adj.power(gamma))?.mul(&v)?;
        let lhs = dot(&factor.apply(&x)?, &y).norm_sqr();
        let rhs = quadratic_form(&abs_b.power(2.0 * gamma), &x)?
            * quadratic_form(&abs_a.power(2.0 * (1.0 - gamma)), &y)?;
        cases.push(InequalityCase::new("mixed-schwarz-b", base_params(n, gamma), lhs, rhs));
    }

    // |<Ax, y>|^2 <= <|A|^(2 gamma) x, x> <|A*|^(2(1-gamma)) y, y>.
    {
        let lhs = dot(&a.apply(&x)?, &y).norm_sqr();
        let rhs = quadratic_form(&abs_a.power(2.0 * gamma), &x)?
            * quadratic_form(&abs_a_adj.power(2.0 * (1.0 - gamma)), &y)?;
        cases.push(InequalityCase::new("mixed-schwarz-pair", base_params(n, gamma), lhs, rhs));
    }

    // (sum a_i)^p <= n^(p-1) sum a_i^p for positive a_i.
    {
        let terms = rng.dim(1, 6);
        let p = rng.exponent();
        let values: Vec<f64> = (0..terms).map(|_| rng.range(1e-6, 2.0)).collect();
        let lhs = values.iter().sum::<f64>().powf(p);
        let rhs = (terms as f64).powf(p - 1.0) * values.iter().map(|v| v.powf(p)).sum::<f64>();
        let mut params = BTreeMap::new();
        params.insert("terms".into(), terms.to_string());
        params.insert("p".into(), format!("{p:.6}"));
        cases.push(InequalityCase::new("power-sum", params, lhs, rhs));
    }

    // |<AB x, y>|^2 <= r(B)^2 <f^2(|A|)x, x> <g^2(|A*|)y, y> when
    // |A| B = B* |A|. The spectral radius enters squared: both sides are
    // then quadratic under B -> cB, which scaling forces (with B = I and
    // A positive the right side is otherwise too small by a factor r(B)).
    {
        let (a, b) = rng.commuting_pair(n);
        let abs = modulus(&a)?;
        debug_assert!(
            abs.mul(&b)?.distance_max(&b.adjoint().mul(&abs)?) <= COMMUTATION_TOL,
            "generator violated the commutation contract"
        );
        let spec_a = ModulusSpectrum::of(&a)?;
        let spec_a_adj = ModulusSpectrum::of_adjoint(&a)?;
        let radius = spectral_radius(&b)?;
        let lhs = dot(&a.mul(&b)?.apply(&x)?, &y).norm_sqr();
        let rhs = radius.powi(2)
            * quadratic_form(&spec_a.power(2.0 * gamma), &x)?
            * quadratic_form(&spec_a_adj.power(2.0 * (1.0 - gamma)), &y)?;
        cases.push(InequalityCase::new("commutant-pairing", base_params(n, gamma), lhs, rhs));
    }

    // <Tx, x>^p <= <T^p x, x> for positive T and unit x, p >= 1; reversed
    // for p in [0, 1].
    {
        let t = rng.psd(n);
        let e = rng.unit_vector(n);
        let p = rng.exponent();
        let q = rng.unit();
        let form = quadratic_form(&t, &e)?;
        let mut params = BTreeMap::new();
        params.insert("dim".into(), n.to_string());
        params.insert("p".into(), format!("{p:.6}"));
        cases.push(InequalityCase::new(
            "jensen-up",
            params.clone(),
            form.max(0.0).powf(p),
            quadratic_form(&matrix_function(&t, |s| s.powf(p))?, &e)?,
        ));
        params.insert("p".into(), format!("{q:.6}"));
        cases.push(InequalityCase::new(
            "jensen-down",
            params,
            quadratic_form(&matrix_function(&t, |s| s.powf(q))?, &e)?,
            form.max(0.0).powf(q),
        ));
    }

    // |<x, e><e, y>| <= (|<x, y>| + ||x|| ||y||) / 2 for unit e.
    {
        let e = rng.unit_vector(n);
        let lhs = (dot(&x, &e) * dot(&e, &y)).norm();
        let rhs = 0.5 * (dot(&x, &y).norm() + vector_norm(&x) * vector_norm(&y));
        let mut params = BTreeMap::new();
        params.insert("dim".into(), n.to_string());
        cases.push(InequalityCase::new("buzano", params, lhs, rhs));
    }

    Ok(())
}

/// Seeded fuzz of the pairing inequalities over matrix dimensions in
/// `dims`; failures are recorded, never thrown.
pub fn pairing_suite(
    seed: u64,
    trials: u64,
    dims: std::ops::RangeInclusive<usize>,
) -> Result<InequalityReport> {
    let bounds = super::dim_bounds(&dims)?;
    run_suite("pairing", seed, trials, EXACT_SLACK_TOL, move |rng, cases| {
        trial(rng, bounds, cases)
    })
}
