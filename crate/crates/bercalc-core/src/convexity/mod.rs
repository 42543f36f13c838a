//! Sampled transform ranges in the complex plane and numerical convexity
//! diagnostics: convex hulls, and a midpoint-deviation measure that flags
//! range sets whose pair midpoints stray from the sampled set.
//!
//! The deviation of a pair is the distance from its midpoint to the sampled
//! polyline: the point set together with the segments joining parameter-
//! adjacent samples (without the segments, even a perfectly convex interval
//! sampled at finitely many points would show spurious deviations between
//! grid values). The verdict is an estimate; closed-form characterizations,
//! where available, are the authoritative answers.

mod transforms;

pub use transforms::{
    blaschke_range, blaschke_transform, dilation_convexity, dilation_range,
    finite_rank_radial_range, finite_rank_transform, fock_diag_convexity,
    fock_diag_example_midpoint_distance, fock_diag_range, fock_diag_transform,
    fock_scalar_convexity, fock_scalar_range, fock_scalar_transform, hardy_dilation_transform,
    rank_one_diag_range, rank_one_diag_transform, rank_one_offdiag_disc, rank_one_offdiag_range,
    IntervalEstimate, RangeConvexity, RankOneDiagRange, RankOneOffdiagDisc,
};

use std::collections::HashSet;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CoreError, Result};

/// Default relative tolerance for the convexity verdict.
pub const DEFAULT_REL_TOL: f64 = 1e-3;

/// Cells per axis in the nearest-segment spatial index.
const INDEX_RESOLUTION: usize = 64;

/// Pair subsampling threshold: at most this many sample indices enter the
/// midpoint scan (all points when the range is smaller).
const MAX_PAIR_SAMPLES: usize = 2000;

/// How parameter-adjacent samples of a range are connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridAdjacency {
    /// One-dimensional parameter: consecutive points are adjacent.
    Path,
    /// rows x cols grid, row-major, with the column direction wrapping
    /// (an angular coordinate covering the full circle).
    Torus { rows: usize, cols: usize },
    /// No adjacency information.
    Scatter,
}

/// A sampled Berezin range: transform values plus a description of the
/// parameter grid that produced them.
#[derive(Debug, Clone)]
pub struct SampledRange {
    pub points: Vec<Complex64>,
    pub adjacency: GridAdjacency,
    pub param_grid: String,
}

impl SampledRange {
    pub fn path(points: Vec<Complex64>, param_grid: impl Into<String>) -> Self {
        SampledRange { points, adjacency: GridAdjacency::Path, param_grid: param_grid.into() }
    }

    pub fn torus(
        points: Vec<Complex64>,
        rows: usize,
        cols: usize,
        param_grid: impl Into<String>,
    ) -> Result<Self> {
        if points.len() != rows * cols {
            return Err(CoreError::Input(format!(
                "torus range has {} points for a {rows}x{cols} grid",
                points.len()
            )));
        }
        Ok(SampledRange {
            points,
            adjacency: GridAdjacency::Torus { rows, cols },
            param_grid: param_grid.into(),
        })
    }

    pub fn scatter(points: Vec<Complex64>, param_grid: impl Into<String>) -> Self {
        SampledRange { points, adjacency: GridAdjacency::Scatter, param_grid: param_grid.into() }
    }

    /// Index pairs of parameter-adjacent samples.
    fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        match self.adjacency {
            GridAdjacency::Path => (1..self.points.len()).map(|k| (k - 1, k)).collect(),
            GridAdjacency::Torus { rows, cols } => {
                let mut pairs = Vec::with_capacity(2 * rows * cols);
                for i in 0..rows {
                    for j in 0..cols {
                        let here = i * cols + j;
                        let around = i * cols + (j + 1) % cols;
                        if here != around {
                            pairs.push((here, around));
                        }
                        if i + 1 < rows {
                            pairs.push((here, (i + 1) * cols + j));
                        }
                    }
                }
                pairs
            }
            GridAdjacency::Scatter => Vec::new(),
        }
    }
}

/// Outcome of the midpoint-deviation diagnostic.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexityReport {
    /// Max over sampled point pairs of the distance from the pair midpoint
    /// to the sampled polyline.
    #[serde(rename = "hullDeviation")]
    pub hull_deviation: f64,
    /// Largest pairwise distance among the sampled values.
    pub diameter: f64,
    /// Convex estimate: deviation within relTol * diameter.
    pub verdict: bool,
    /// Midpoint realizing the deviation, as (re, im).
    #[serde(rename = "witnessMidpoint")]
    pub witness_midpoint: [f64; 2],
}

impl ConvexityReport {
    pub fn witness(&self) -> Complex64 {
        Complex64::new(self.witness_midpoint[0], self.witness_midpoint[1])
    }
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull by monotone chain, counterclockwise, duplicate inputs and
/// collinear boundary points removed. Degenerate (collinear) input yields a
/// degenerate polygon of fewer than 3 vertices.
pub fn convex_hull(points: &[Complex64]) -> Result<Vec<Complex64>> {
    if points.len() < 3 {
        return Err(CoreError::Input(format!(
            "convex hull needs at least 3 points, got {}",
            points.len()
        )));
    }
    let mut sorted: Vec<Complex64> = points.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    sorted.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    if sorted.len() == 1 {
        return Ok(sorted);
    }
    let chain = |iter: &mut dyn Iterator<Item = Complex64>| {
        let mut hull: Vec<Complex64> = Vec::new();
        for p in iter {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull
    };
    let mut lower = chain(&mut sorted.iter().copied());
    let mut upper = chain(&mut sorted.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    Ok(lower)
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sqr();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = (((p.re - a.re) * ab.re + (p.im - a.im) * ab.im) / len_sq).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Uniform-grid spatial index over polyline segments, queried by expanding
/// rings of cells around a midpoint.
struct SegmentIndex {
    x0: f64,
    y0: f64,
    cell: f64,
    nx: i64,
    ny: i64,
    cells: Vec<Vec<u32>>,
    segments: Vec<(Complex64, Complex64)>,
}

impl SegmentIndex {
    /// Returns None when every point coincides (zero extent).
    fn build(points: &[Complex64], adjacent: &[(usize, usize)]) -> Option<SegmentIndex> {
        let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p.re);
            x1 = x1.max(p.re);
            y0 = y0.min(p.im);
            y1 = y1.max(p.im);
        }
        let extent = (x1 - x0).max(y1 - y0);
        if extent == 0.0 {
            return None;
        }
        let cell = extent / INDEX_RESOLUTION as f64;
        let nx = ((x1 - x0) / cell).floor() as i64 + 1;
        let ny = ((y1 - y0) / cell).floor() as i64 + 1;

        // Deduplicate: each distinct nondegenerate adjacency segment once
        // (rectangular grids with repeated values collapse to a tiny
        // structure this way), plus one degenerate segment per distinct
        // point that no segment covers. Consecutive segments that continue
        // exactly collinearly are fused: a point clustered on a straight
        // stretch (decaying real curves pile thousands of samples into one
        // cell) contributes nothing but scan cost, and fusing keeps the
        // union of segments, hence every distance, bit-for-bit identical.
        let key = |z: Complex64| (z.re.to_bits(), z.im.to_bits());
        let mut seen: HashSet<((u64, u64), (u64, u64))> = HashSet::new();
        let mut covered: HashSet<(u64, u64)> = HashSet::new();
        let mut segments: Vec<(Complex64, Complex64)> = Vec::new();
        for &(i, j) in adjacent {
            let (a, b) = (points[i], points[j]);
            if key(a) == key(b) {
                continue;
            }
            covered.insert(key(a));
            covered.insert(key(b));
            let (lo, hi) = if (a.re, a.im) <= (b.re, b.im) { (a, b) } else { (b, a) };
            if !seen.insert((key(lo), key(hi))) {
                continue;
            }
            if let Some(&(first, last)) = segments.last() {
                let along = cross(first, last, b) == 0.0
                    && (last.re - first.re) * (b.re - last.re)
                        + (last.im - first.im) * (b.im - last.im)
                        >= 0.0;
                if key(last) == key(a) && along {
                    *segments.last_mut().expect("just inspected") = (first, b);
                    continue;
                }
            }
            segments.push((a, b));
        }
        for p in points {
            if !covered.contains(&key(*p)) && seen.insert((key(*p), key(*p))) {
                segments.push((*p, *p));
            }
        }

        let mut cells = vec![Vec::new(); (nx * ny) as usize];
        let col = |x: f64| (((x - x0) / cell).floor() as i64).clamp(0, nx - 1);
        let row = |y: f64| (((y - y0) / cell).floor() as i64).clamp(0, ny - 1);
        for (idx, (a, b)) in segments.iter().enumerate() {
            let (c0, c1) = (col(a.re.min(b.re)), col(a.re.max(b.re)));
            let (r0, r1) = (row(a.im.min(b.im)), row(a.im.max(b.im)));
            for r in r0..=r1 {
                for c in c0..=c1 {
                    cells[(r * nx + c) as usize].push(idx as u32);
                }
            }
        }
        Some(SegmentIndex { x0, y0, cell, nx, ny, cells, segments })
    }

    /// Distance from `p` to the nearest segment. The scan may stop early and
    /// return an underestimate once the running best drops to `abort_below`
    /// or lower; callers only use values strictly above that threshold.
    fn min_distance(&self, p: Complex64, abort_below: f64) -> f64 {
        let cx = (((p.re - self.x0) / self.cell).floor() as i64).clamp(0, self.nx - 1);
        let cy = (((p.im - self.y0) / self.cell).floor() as i64).clamp(0, self.ny - 1);
        let mut best = f64::INFINITY;
        let max_ring = self.nx.max(self.ny);
        for k in 0..=max_ring {
            let mut visit = |c: i64, r: i64| {
                if c < 0 || c >= self.nx || r < 0 || r >= self.ny {
                    return;
                }
                for &idx in &self.cells[(r * self.nx + c) as usize] {
                    let (a, b) = self.segments[idx as usize];
                    let d = segment_distance(p, a, b);
                    if d < best {
                        best = d;
                    }
                }
            };
            if k == 0 {
                visit(cx, cy);
            } else {
                for c in cx - k..=cx + k {
                    visit(c, cy - k);
                    visit(c, cy + k);
                }
                for r in cy - k + 1..=cy + k - 1 {
                    visit(cx - k, r);
                    visit(cx + k, r);
                }
            }
            // Cells beyond ring k sit at least k * cell away from p.
            if best <= k as f64 * self.cell || best <= abort_below {
                break;
            }
        }
        best
    }
}

/// Midpoint-deviation diagnostic. Needs at least 2 finite points; the pair
/// scan covers all points when there are at most 2000, otherwise a
/// deterministic stride subsample of that size.
pub fn convexity_diagnostic(range: &SampledRange, rel_tol: f64) -> Result<ConvexityReport> {
    let points = &range.points;
    if points.len() < 2 {
        return Err(CoreError::Input(format!(
            "convexity diagnostic needs at least 2 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
        return Err(CoreError::Input("sampled range contains non-finite values".into()));
    }

    let stride = points.len().div_ceil(MAX_PAIR_SAMPLES).max(1);
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    let mut sample: Vec<Complex64> = Vec::new();
    for k in (0..points.len()).step_by(stride) {
        let p = points[k];
        if seen.insert((p.re.to_bits(), p.im.to_bits())) {
            sample.push(p);
        }
    }

    let mut diameter = 0.0f64;
    for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            diameter = diameter.max((sample[i] - sample[j]).norm());
        }
    }

    let Some(index) = SegmentIndex::build(points, &range.adjacent_pairs()) else {
        // Every point coincides: a singleton is trivially convex.
        return Ok(ConvexityReport {
            hull_deviation: 0.0,
            diameter: 0.0,
            verdict: true,
            witness_midpoint: [points[0].re, points[0].im],
        });
    };

    let mut deviation = 0.0f64;
    let mut witness = points[0];
    for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            let mid = (sample[i] + sample[j]) * 0.5;
            let d = index.min_distance(mid, deviation);
            if d > deviation {
                deviation = d;
                witness = mid;
            }
        }
    }

    Ok(ConvexityReport {
        hull_deviation: deviation,
        diameter,
        verdict: deviation <= rel_tol * diameter,
        witness_midpoint: [witness.re, witness.im],
    })
}

/// CSV with header `re,im`, one point per line, 17 significant digits.
pub fn write_points_csv(mut out: impl Write, points: &[Complex64]) -> Result<()> {
    writeln!(out, "re,im")?;
    for p in points {
        writeln!(out, "{:.16e},{:.16e}", p.re, p.im)?;
    }
    Ok(())
}
