//! Two-by-two block operators on the doubled coordinate space: constructors,
//! a unitarity criterion expressed through the interpolated seminorm, and the
//! inequality suite for block-diagonal, off-diagonal and full block matrices.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::gen::TrialRng;
use super::{diag_radius, run_suite, FiniteCtx, InequalityCase, InequalityReport, EXACT_SLACK_TOL};
use crate::error::{CoreError, Result};
use crate::mat::{operator_norm, ComplexMatrix, ModulusSpectrum};
use crate::mean::{InterpolationPath, MeanKind};

fn check_blocks(blocks: &[&ComplexMatrix]) -> Result<usize> {
    let n = blocks[0].rows();
    for b in blocks {
        if !b.is_square() || b.rows() != n {
            return Err(CoreError::Dimension(
                "block constructors need square blocks of one common size".into(),
            ));
        }
    }
    Ok(n)
}

/// [[A, 0], [0, B]] on the doubled space.
pub fn block_diag(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = check_blocks(&[a, b])?;
    Ok(ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a.at(i, j),
        (false, false) => b.at(i - n, j - n),
        _ => Complex64::new(0.0, 0.0),
    }))
}

/// [[0, A], [B, 0]] on the doubled space.
pub fn block_offdiag(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = check_blocks(&[a, b])?;
    Ok(ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) => a.at(i, j - n),
        (false, true) => b.at(i - n, j),
        _ => Complex64::new(0.0, 0.0),
    }))
}

/// [[A, B], [C, D]] on the doubled space.
pub fn block_full(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let n = check_blocks(&[a, b, c, d])?;
    Ok(ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a.at(i, j),
        (true, false) => b.at(i, j - n),
        (false, true) => c.at(i - n, j),
        (false, false) => d.at(i - n, j - n),
    }))
}

/// Unitarity criterion for an invertible operator: A is unitary exactly when
/// the seminorms of A*A and of its inverse both stay at or below one. Both
/// Gram matrices are positive, so every mean of the symmetric pairing
/// magnitudes reduces to the Berezin radius and the weight and exponent do
/// not change the verdict; sufficiency follows because the diagonals of G
/// and G^-1 then sum to at most twice the dimension while the eigenvalue sum
/// s + 1/s forces at least that much, with equality only at G = I.
pub fn unitary_check(a: &ComplexMatrix, path: InterpolationPath, p: f64) -> Result<bool> {
    let inv = a.inverse()?;
    let gram = a.adjoint().mul(a)?;
    let gram_inv = inv.mul(&inv.adjoint())?;
    let bound = 1.0 + 1e-9;
    Ok(FiniteCtx::new(&gram)?.seminorm(path, p)? <= bound
        && FiniteCtx::new(&gram_inv)?.seminorm(path, p)? <= bound)
}

/// Block-diagonal specialization: [[A, 0], [0, B]] with invertible blocks is
/// unitary exactly when the Berezin radii of A*A, B*B and of both inverse
/// Gram matrices are all at most one.
pub fn block_unitary_check(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<bool> {
    check_blocks(&[a, b])?;
    let bound = 1.0 + 1e-9;
    for block in [a, b] {
        let inv = block.inverse()?;
        let gram = block.adjoint().mul(block)?;
        let gram_inv = inv.mul(&inv.adjoint())?;
        if diag_radius(&gram) > bound || diag_radius(&gram_inv) > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

fn arith(t: f64) -> Result<InterpolationPath> {
    InterpolationPath::new(MeanKind::Arithmetic, t)
}

/// One trial of every block inequality on a fresh random draw.
fn trial(rng: &mut TrialRng, dims: (usize, usize), cases: &mut Vec<InequalityCase>) -> Result<()> {
    let n = rng.dim(dims.0, dims.1);
    let a = rng.matrix(n);
    let b = rng.matrix(n);
    let path = rng.path();
    let t = path.t;
    let p = rng.exponent();
    let mut params = BTreeMap::new();
    params.insert("dim".into(), n.to_string());
    params.insert("kind".into(), path.kind.to_string());
    params.insert("t".into(), format!("{t:.6}"));
    params.insert("p".into(), format!("{p:.6}"));

    let norm_a = a.max_abs_entry();
    let norm_b = b.max_abs_entry();

    // The block-diagonal seminorm is the larger of the block seminorms:
    // cross pairings vanish and within-block pairings are untouched.
    {
        let diag = block_diag(&a, &b)?;
        let lhs = FiniteCtx::new(&diag)?.seminorm(path, p)?;
        let rhs = FiniteCtx::new(&a)?.seminorm(path, p)?.max(FiniteCtx::new(&b)?.seminorm(path, p)?);
        cases.push(InequalityCase::new("diag-max", params.clone(), lhs, rhs));
    }

    let off = block_offdiag(&a, &b)?;
    let off_ctx = FiniteCtx::new(&off)?;

    // Swapping the two off-diagonal blocks permutes the pairing pairs, so
    // the seminorm is literally unchanged.
    {
        let swapped = block_offdiag(&b, &a)?;
        let lhs = (off_ctx.seminorm(path, p)? - FiniteCtx::new(&swapped)?.seminorm(path, p)?).abs();
        cases.push(InequalityCase::new("offdiag-swap", params.clone(), lhs, 0.0));
    }

    // A single corner block: only one pairing direction survives, so the
    // weighted seminorm is exactly the larger weight times the block norm.
    {
        let zero = ComplexMatrix::zeros(n, n);
        let corner = block_offdiag(&a, &zero)?;
        let lhs = FiniteCtx::new(&corner)?.seminorm(arith(t)?, p)?.powf(p);
        let rhs = t.max(1.0 - t) * norm_a.powf(p);
        cases.push(InequalityCase::new("corner-top", params.clone(), lhs, rhs));
    }

    // Triangle-style split of the off-diagonal seminorm.
    {
        let lhs = off_ctx.seminorm(path, p)?;
        let rhs = t.max(1.0 - t).powf(1.0 / p) * (norm_a + norm_b);
        cases.push(InequalityCase::new("offdiag-split", params.clone(), lhs, rhs));
    }

    // Weighted power-mean bound for the off-diagonal block operator. The
    // mixed Schwarz factors of the A-pairing and of its adjoint land on
    // different argument pairs, so each arithmetic-geometric step couples a
    // power of |A| with the matching power of |B*| (and |A*| with |B|); the
    // grouping that couples |A| with |A*| overshoots the true adjoint
    // pairing and is refuted by e.g. t = 0.8942, gamma = 0.7263, p = 1 with
    // a rank-one nilpotent A. Both couplings are valid, whence the max.
    {
        let gamma = rng.gamma();
        let spec_a = ModulusSpectrum::of(&a)?;
        let spec_a_adj = ModulusSpectrum::of_adjoint(&a)?;
        let spec_b = ModulusSpectrum::of(&b)?;
        let spec_b_adj = ModulusSpectrum::of_adjoint(&b)?;
        let up = 2.0 * p * gamma;
        let down = 2.0 * p * (1.0 - gamma);
        let mix = |x: &ComplexMatrix, y: &ComplexMatrix| -> Result<f64> {
            Ok(diag_radius(&x.scale_re(t).add(&y.scale_re(1.0 - t))?))
        };
        let first = mix(&spec_a.power(up), &spec_b_adj.power(up))?
            + mix(&spec_a_adj.power(down), &spec_b.power(down))?;
        let second = mix(&spec_b.power(up), &spec_a_adj.power(up))?
            + mix(&spec_b_adj.power(down), &spec_a.power(down))?;
        let lhs = off_ctx.seminorm(arith(t)?, p)?.powf(p);
        let rhs = 2f64.powf(p) / 4.0 * first.max(second);
        let mut params = params.clone();
        params.insert("gamma".into(), format!("{gamma:.6}"));
        cases.push(InequalityCase::new("offdiag-mix", params.clone(), lhs, rhs));

        // Specialized power form. Summing the radii of both couplings is
        // required: the max of either pair alone fails on random draws.
        let sum = diag_radius(&spec_a.power(p).add(&spec_b_adj.power(p))?)
            + diag_radius(&spec_a_adj.power(p).add(&spec_b.power(p))?);
        cases.push(InequalityCase::new(
            "offdiag-power-sum",
            params.clone(),
            lhs,
            2f64.powf(p) / 4.0 * sum,
        ));
    }

    // Full block matrix against the operator norm of the 2x2 matrix of
    // block bounds: diagonal blocks contribute their weighted seminorms,
    // off-diagonal blocks the weighted power means of their norms.
    {
        let c = rng.matrix(n);
        let d = rng.matrix(n);
        let full = block_full(&a, &b, &c, &d)?;
        let lhs = FiniteCtx::new(&full)?.seminorm(path, p)?;
        let norm_c = c.max_abs_entry();
        let upper = (t * norm_b.powf(p) + (1.0 - t) * norm_c.powf(p)).powf(1.0 / p);
        let lower = (t * norm_c.powf(p) + (1.0 - t) * norm_b.powf(p)).powf(1.0 / p);
        let bounds = ComplexMatrix::from_real_rows(&[
            vec![FiniteCtx::new(&a)?.seminorm(arith(t)?, p)?, upper],
            vec![lower, FiniteCtx::new(&d)?.seminorm(arith(t)?, p)?],
        ])?;
        cases.push(InequalityCase::new(
            "full-matrix",
            params.clone(),
            lhs,
            operator_norm(&bounds)?,
        ));
    }

    // The block unitarity criterion agrees with the direct Gram test on a
    // mix of unitary and merely invertible blocks.
    {
        let ua = if rng.unit() < 0.5 { rng.unitary(n) } else { rng.non_unitary_invertible(n) };
        let ub = if rng.unit() < 0.5 { rng.unitary(n) } else { rng.non_unitary_invertible(n) };
        let diag = block_diag(&ua, &ub)?;
        let gram = diag.adjoint().mul(&diag)?;
        let direct = gram.distance_max(&ComplexMatrix::identity(2 * n)) <= 1e-8;
        let criterion = block_unitary_check(&ua, &ub)?;
        let lhs = if criterion == direct { 0.0 } else { 1.0 };
        cases.push(InequalityCase::new("block-unitary-agree", params, lhs, 0.0));
    }

    Ok(())
}

/// Seeded fuzz of the block inequalities over matrix dimensions in `dims`;
/// failures are recorded, never thrown.
pub fn blocks_suite(
    seed: u64,
    trials: u64,
    dims: std::ops::RangeInclusive<usize>,
) -> Result<InequalityReport> {
    let bounds = super::dim_bounds(&dims)?;
    run_suite("blocks", seed, trials, EXACT_SLACK_TOL, move |rng, cases| {
        trial(rng, bounds, cases)
    })
}
