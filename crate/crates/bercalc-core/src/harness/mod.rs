//! Randomized numerical verification of the pairing, seminorm, and block
//! inequalities: seeded generators draw small complex matrices, every bound
//! is evaluated with exact suprema on the finite model, and each trial
//! records lhs/rhs/slack so that a genuine counterexample shows up as a
//! decisively negative slack rather than a panic.

mod blocks;
mod gen;
mod pairing;
mod seminorm;

pub use blocks::{
    block_diag, block_full, block_offdiag, block_unitary_check, blocks_suite, unitary_check,
};
pub use gen::TrialRng;
pub use pairing::pairing_suite;
pub use seminorm::{equality_case_probe, seminorm_suite};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::berezin::{berezin_norm, berezin_radius, c_tilde, sigma_t_norm, OperatorModel};
use crate::error::{CoreError, Result};
use crate::mat::ComplexMatrix;
use crate::mean::InterpolationPath;
use crate::sampler::DomainSampler;
use crate::spaces::KernelSpace;

/// Slack allowance separating floating-point noise from a real violation
/// when all suprema are computed exactly (finite model).
pub const EXACT_SLACK_TOL: f64 = 1e-9;

/// Slack allowance for sampled (grid-estimated) suprema.
pub const SAMPLED_SLACK_TOL: f64 = 1e-6;

/// One evaluated inequality instance.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityCase {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl InequalityCase {
    pub fn new(id: &str, params: BTreeMap<String, String>, lhs: f64, rhs: f64) -> Self {
        InequalityCase { id: id.to_string(), params, lhs, rhs, slack: rhs - lhs }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.slack >= -tol
    }
}

/// Aggregated outcome of a suite run: deterministic for a given
/// (suite, seed, trials) triple, byte-for-byte in its JSON form.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    #[serde(rename = "minSlack")]
    pub min_slack: f64,
    pub failures: Vec<InequalityCase>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Validates a matrix-dimension range for a suite run.
pub(crate) fn dim_bounds(dims: &std::ops::RangeInclusive<usize>) -> Result<(usize, usize)> {
    let (lo, hi) = (*dims.start(), *dims.end());
    if lo < 1 || lo > hi {
        return Err(CoreError::Input(format!("dimension range must satisfy 1 <= lo <= hi, got {lo}..={hi}")));
    }
    Ok((lo, hi))
}

/// Runs `trials` independent trials concurrently (each on its own RNG
/// stream) and folds the cases in trial order.
pub(crate) fn run_suite(
    suite: &str,
    seed: u64,
    trials: u64,
    tol: f64,
    trial_fn: impl Fn(&mut TrialRng, &mut Vec<InequalityCase>) -> Result<()> + Sync,
) -> Result<InequalityReport> {
    if trials == 0 {
        return Err(CoreError::Input("a suite needs at least one trial".into()));
    }
    let per_trial: Vec<Vec<InequalityCase>> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = TrialRng::for_trial(seed, k);
            let mut cases = Vec::new();
            trial_fn(&mut rng, &mut cases)?;
            Ok(cases)
        })
        .collect::<Result<_>>()?;

    let mut min_slack = f64::INFINITY;
    let mut failures = Vec::new();
    for cases in per_trial {
        for case in cases {
            min_slack = min_slack.min(case.slack);
            if !case.passes(tol) {
                failures.push(case);
            }
        }
    }
    if !min_slack.is_finite() {
        min_slack = 0.0;
    }
    Ok(InequalityReport { suite: suite.to_string(), seed, trials, min_slack, failures })
}

/// A matrix viewed through the exact finite-model norms.
pub(crate) struct FiniteCtx {
    op: OperatorModel,
    sampler: DomainSampler,
}

impl FiniteCtx {
    pub fn new(m: &ComplexMatrix) -> Result<FiniteCtx> {
        let space = KernelSpace::finite(m.rows())?;
        let op = OperatorModel::matrix(space.clone(), m.clone())?;
        Ok(FiniteCtx { op, sampler: DomainSampler::default_for(space) })
    }

    pub fn seminorm(&self, path: InterpolationPath, p: f64) -> Result<f64> {
        sigma_t_norm(&self.op, path, p, &self.sampler)
    }

    pub fn norm(&self) -> Result<f64> {
        berezin_norm(&self.op, &self.sampler)
    }

    pub fn radius(&self) -> Result<f64> {
        berezin_radius(&self.op, &self.sampler)
    }

    pub fn floor(&self) -> Result<f64> {
        c_tilde(&self.op, &self.sampler)
    }
}

/// Max diagonal modulus: the Berezin radius of a finite-model matrix
/// (the normalized kernels are the standard basis vectors).
pub(crate) fn diag_radius(m: &ComplexMatrix) -> f64 {
    (0..m.rows()).map(|i| m.at(i, i).norm()).fold(0.0, f64::max)
}
