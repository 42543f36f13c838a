//! Weighted two-term means of nonnegative reals and the interpolation paths
//! they trace between a pair of magnitudes as the weight runs over [0, 1].

use std::fmt;
use std::str::FromStr;

use crate::error::{CoreError, Result};

/// Which mean interpolates between the two magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
}

impl MeanKind {
    pub const ALL: [MeanKind; 3] = [MeanKind::Arithmetic, MeanKind::Geometric, MeanKind::Harmonic];
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MeanKind::Arithmetic => "arithmetic",
            MeanKind::Geometric => "geometric",
            MeanKind::Harmonic => "harmonic",
        };
        f.write_str(name)
    }
}

impl FromStr for MeanKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arithmetic" | "arith" => Ok(MeanKind::Arithmetic),
            "geometric" | "geom" => Ok(MeanKind::Geometric),
            "harmonic" | "harm" => Ok(MeanKind::Harmonic),
            other => Err(CoreError::Descriptor(format!(
                "unknown mean kind {other:?}; expected arithmetic, geometric or harmonic"
            ))),
        }
    }
}

/// A weighted mean at a fixed weight t in [0, 1]. At t = 1 the mean returns
/// its first argument, at t = 0 the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationPath {
    pub kind: MeanKind,
    pub t: f64,
}

impl InterpolationPath {
    pub fn new(kind: MeanKind, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) || !t.is_finite() {
            return Err(CoreError::Input(format!("interpolation weight must lie in [0, 1], got {t}")));
        }
        Ok(InterpolationPath { kind, t })
    }

    /// The same mean with weights swapped: t replaced by 1 - t.
    pub fn reversed(self) -> Self {
        InterpolationPath { kind: self.kind, t: 1.0 - self.t }
    }

    /// Weighted mean of two nonnegative reals.
    ///
    /// Geometric and harmonic values at zero arguments follow continuity
    /// from the interior: the result is 0 whenever a = 0 with t > 0 or
    /// b = 0 with t < 1, and the untouched endpoint is returned when its
    /// weight is the whole mass (0^0 = 1 convention).
    pub fn eval(&self, a: f64, b: f64) -> Result<f64> {
        if a < 0.0 || b < 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(CoreError::Domain(format!(
                "means are defined for finite nonnegative inputs, got ({a}, {b})"
            )));
        }
        let t = self.t;
        let value = match self.kind {
            MeanKind::Arithmetic => t * a + (1.0 - t) * b,
            MeanKind::Geometric => {
                if (t > 0.0 && a == 0.0) || (t < 1.0 && b == 0.0) {
                    0.0
                } else {
                    a.powf(t) * b.powf(1.0 - t)
                }
            }
            MeanKind::Harmonic => {
                if (t > 0.0 && a == 0.0) || (t < 1.0 && b == 0.0) {
                    0.0
                } else if t == 0.0 {
                    b
                } else if t == 1.0 {
                    a
                } else {
                    1.0 / (t / a + (1.0 - t) / b)
                }
            }
        };
        Ok(value)
    }
}
