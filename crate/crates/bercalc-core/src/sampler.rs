//! Deterministic domain grids and local refinement for realizing suprema
//! and infima over the kernel-space domains.
//!
//! Grids are pure functions of their spec, so every run visits the same
//! points. Refinement is a coordinate pattern search around the best grid
//! cell with golden-ratio step shrinking; it only ever improves the running
//! extremum, which makes estimates monotone in the number of rounds.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::spaces::{DomainPoint, KernelSpace};

/// Step-shrink factor per refinement round (inverse golden ratio).
pub const GOLDEN_SHRINK: f64 = 0.618_033_988_749_894_8;

/// Smallest admissible margin to the disc boundary for Hardy grids.
pub const MIN_DISC_MARGIN: f64 = 1e-3;

/// Grid layout per space family.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    /// Finite model: enumerate every index; sups and infs are exact.
    Exact,
    /// Hardy disc: radial x angular grid over r in [0, 1 - eps], plus
    /// refinement rounds.
    Disc { n_r: usize, n_theta: usize, eps: f64, rounds: usize },
    /// Fock, scalar-reducible symbols: grid in s = alpha * ||w||^2 over
    /// [0, s_max], realized along the first coordinate axis.
    Ray { n_s: usize, s_max: f64, rounds: usize },
}

impl GridSpec {
    pub fn default_for(space: &KernelSpace) -> GridSpec {
        match space {
            KernelSpace::Finite { .. } => GridSpec::Exact,
            KernelSpace::WeightedHardy { .. } => GridSpec::Disc {
                n_r: 60,
                n_theta: 64,
                eps: MIN_DISC_MARGIN,
                rounds: 3,
            },
            KernelSpace::Fock { .. } => GridSpec::Ray { n_s: 201, s_max: 50.0, rounds: 3 },
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            GridSpec::Exact => Ok(()),
            GridSpec::Disc { n_r, n_theta, eps, .. } => {
                if n_r == 0 || n_theta == 0 {
                    return Err(CoreError::Input("disc grid needs positive counts".into()));
                }
                if !(MIN_DISC_MARGIN..1.0).contains(&eps) {
                    return Err(CoreError::Input(format!(
                        "disc margin must lie in [{MIN_DISC_MARGIN}, 1), got {eps}"
                    )));
                }
                Ok(())
            }
            GridSpec::Ray { n_s, s_max, .. } => {
                if n_s == 0 {
                    return Err(CoreError::Input("ray grid needs a positive count".into()));
                }
                if s_max <= 0.0 || !s_max.is_finite() {
                    return Err(CoreError::Input(format!("ray grid bound must be positive, got {s_max}")));
                }
                Ok(())
            }
        }
    }

    /// Parses `exact`, `grid:<Nr>x<Ntheta>:<eps>:<rounds>` (disc) or
    /// `grid:<Ns>:<Smax>[:<rounds>]` (ray, rounds default 3).
    pub fn parse(descriptor: &str) -> Result<GridSpec> {
        let bad = |msg: String| CoreError::Descriptor(msg);
        if descriptor == "exact" {
            return Ok(GridSpec::Exact);
        }
        let parts: Vec<&str> = descriptor.split(':').collect();
        if parts.first() != Some(&"grid") {
            return Err(bad(format!(
                "unknown sampler descriptor {descriptor:?}; expected exact or grid:..."
            )));
        }
        let spec = if parts.len() == 4 && parts[1].contains('x') {
            let (nr, nt) = parts[1]
                .split_once('x')
                .ok_or_else(|| bad("disc grid shape must be <Nr>x<Ntheta>".into()))?;
            GridSpec::Disc {
                n_r: nr.parse().map_err(|e| bad(format!("grid:<Nr>x<Ntheta>: {e}")))?,
                n_theta: nt.parse().map_err(|e| bad(format!("grid:<Nr>x<Ntheta>: {e}")))?,
                eps: parts[2].parse().map_err(|e| bad(format!("grid eps: {e}")))?,
                rounds: parts[3].parse().map_err(|e| bad(format!("grid rounds: {e}")))?,
            }
        } else if (parts.len() == 3 || parts.len() == 4) && !parts[1].contains('x') {
            GridSpec::Ray {
                n_s: parts[1].parse().map_err(|e| bad(format!("grid:<Ns>: {e}")))?,
                s_max: parts[2].parse().map_err(|e| bad(format!("grid:<Smax>: {e}")))?,
                rounds: if parts.len() == 4 {
                    parts[3].parse().map_err(|e| bad(format!("grid rounds: {e}")))?
                } else {
                    3
                },
            }
        } else {
            return Err(bad(format!("malformed sampler descriptor {descriptor:?}")));
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridSpec::Exact => f.write_str("exact"),
            GridSpec::Disc { n_r, n_theta, eps, rounds } => {
                write!(f, "grid:{n_r}x{n_theta}:{eps}:{rounds}")
            }
            GridSpec::Ray { n_s, s_max, rounds } => write!(f, "grid:{n_s}:{s_max}:{rounds}"),
        }
    }
}

/// A kernel space paired with a compatible grid spec.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSampler {
    space: KernelSpace,
    grid: GridSpec,
}

/// Local parameterization of a point for refinement: current coordinates,
/// initial step sizes, box bounds, and which axes wrap (angles).
#[derive(Debug, Clone)]
pub struct ParamChart {
    pub params: Vec<f64>,
    pub steps: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub wraps: Vec<bool>,
}

impl DomainSampler {
    pub fn new(space: KernelSpace, grid: GridSpec) -> Result<Self> {
        grid.validate()?;
        let compatible = matches!(
            (&space, &grid),
            (KernelSpace::Finite { .. }, GridSpec::Exact)
                | (KernelSpace::WeightedHardy { .. }, GridSpec::Disc { .. })
                | (KernelSpace::Fock { .. }, GridSpec::Ray { .. })
        );
        if !compatible {
            return Err(CoreError::Input(format!(
                "sampler {grid} does not fit space {space}"
            )));
        }
        Ok(DomainSampler { space, grid })
    }

    pub fn default_for(space: KernelSpace) -> Self {
        let grid = GridSpec::default_for(&space);
        DomainSampler { space, grid }
    }

    pub fn from_descriptor(space: KernelSpace, descriptor: &str) -> Result<Self> {
        DomainSampler::new(space, GridSpec::parse(descriptor)?)
    }

    pub fn space(&self) -> &KernelSpace {
        &self.space
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Exact samplers enumerate the whole domain; no refinement applies.
    pub fn is_exact(&self) -> bool {
        matches!(self.grid, GridSpec::Exact)
    }

    pub fn rounds(&self) -> usize {
        match self.grid {
            GridSpec::Exact => 0,
            GridSpec::Disc { rounds, .. } | GridSpec::Ray { rounds, .. } => rounds,
        }
    }

    /// The deterministic evaluation grid.
    pub fn points(&self) -> Vec<DomainPoint> {
        match (&self.space, &self.grid) {
            (KernelSpace::Finite { n }, GridSpec::Exact) => (0..*n).map(DomainPoint::index).collect(),
            (KernelSpace::WeightedHardy { .. }, GridSpec::Disc { n_r, n_theta, eps, .. }) => {
                let r_max = 1.0 - eps;
                let mut pts = Vec::new();
                for i in 0..*n_r {
                    let r = if *n_r == 1 { r_max } else { r_max * i as f64 / (*n_r - 1) as f64 };
                    if r == 0.0 {
                        pts.push(DomainPoint::disc(Complex64::new(0.0, 0.0)));
                        continue;
                    }
                    for j in 0..*n_theta {
                        let theta = TAU * j as f64 / *n_theta as f64;
                        pts.push(DomainPoint::disc(Complex64::from_polar(r, theta)));
                    }
                }
                pts
            }
            (KernelSpace::Fock { alpha, dim }, GridSpec::Ray { n_s, s_max, .. }) => (0..*n_s)
                .map(|k| {
                    let s = if *n_s == 1 { 0.0 } else { s_max * k as f64 / (*n_s - 1) as f64 };
                    let mut w = vec![Complex64::new(0.0, 0.0); *dim];
                    w[0] = Complex64::new((s / alpha).sqrt(), 0.0);
                    DomainPoint::vector(w)
                })
                .collect(),
            _ => unreachable!("constructor enforces compatibility"),
        }
    }

    /// Refinement parameterization of a grid point, when the space has one.
    pub fn chart(&self, p: &DomainPoint) -> Option<ParamChart> {
        match (&self.grid, p) {
            (GridSpec::Disc { n_r, n_theta, eps, .. }, DomainPoint::Disc(z)) => {
                let r_max = 1.0 - eps;
                let dr = if *n_r > 1 { r_max / (*n_r - 1) as f64 } else { r_max };
                Some(ParamChart {
                    params: vec![z.norm(), z.arg()],
                    steps: vec![dr, TAU / *n_theta as f64],
                    lo: vec![0.0, 0.0],
                    hi: vec![r_max, TAU],
                    wraps: vec![false, true],
                })
            }
            (GridSpec::Ray { n_s, s_max, .. }, DomainPoint::Vector(w)) => {
                let alpha = match self.space {
                    KernelSpace::Fock { alpha, .. } => alpha,
                    _ => unreachable!(),
                };
                let s = alpha * w.iter().map(|c| c.norm_sqr()).sum::<f64>();
                let ds = if *n_s > 1 { s_max / (*n_s - 1) as f64 } else { *s_max };
                Some(ParamChart {
                    params: vec![s],
                    steps: vec![ds],
                    lo: vec![0.0],
                    hi: vec![*s_max],
                    wraps: vec![false],
                })
            }
            _ => None,
        }
    }

    /// Rebuilds a domain point from chart coordinates.
    pub fn point_from_chart(&self, params: &[f64]) -> DomainPoint {
        match (&self.space, &self.grid) {
            (KernelSpace::WeightedHardy { .. }, GridSpec::Disc { .. }) => {
                DomainPoint::disc(Complex64::from_polar(params[0], params[1]))
            }
            (KernelSpace::Fock { alpha, dim }, GridSpec::Ray { .. }) => {
                let mut w = vec![Complex64::new(0.0, 0.0); *dim];
                w[0] = Complex64::new((params[0] / alpha).sqrt().max(0.0), 0.0);
                DomainPoint::vector(w)
            }
            _ => unreachable!("exact samplers have no chart"),
        }
    }
}

/// Pattern search over a box: each round probes +/- half a step along every
/// axis and keeps the best point seen, then shrinks the steps by the golden
/// factor. The returned value is at least as good as `start_value`.
#[allow(clippy::too_many_arguments)]
pub fn coordinate_descent(
    chart: &ParamChart,
    rounds: usize,
    maximize: bool,
    start_value: f64,
    f: &mut dyn FnMut(&[f64]) -> Result<f64>,
) -> Result<(Vec<f64>, f64)> {
    let mut params = chart.params.clone();
    let mut steps = chart.steps.clone();
    let mut best = start_value;
    let better = |candidate: f64, incumbent: f64| {
        if maximize {
            candidate > incumbent
        } else {
            candidate < incumbent
        }
    };
    for _ in 0..rounds {
        for axis in 0..params.len() {
            for sign in [-0.5, 0.5] {
                let mut trial = params.clone();
                let moved = trial[axis] + sign * steps[axis];
                trial[axis] = if chart.wraps[axis] {
                    moved.rem_euclid(chart.hi[axis].max(f64::MIN_POSITIVE))
                } else {
                    moved.clamp(chart.lo[axis], chart.hi[axis])
                };
                let value = f(&trial)?;
                if better(value, best) {
                    best = value;
                    params = trial;
                }
            }
        }
        for s in &mut steps {
            *s *= GOLDEN_SHRINK;
        }
    }
    Ok((params, best))
}
