//! Dense complex matrices and the factorizations the rest of the crate is
//! built on. Everything here targets small dense problems (n <= 64); there is
//! no sparse storage and no blocking.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

mod eig;
mod norms;
mod polar;

pub use eig::{hermitian_eig, matrix_function, HermitianEigen, ModulusSpectrum};
pub use norms::{operator_norm, spectral_radius};
pub use polar::{modulus, polar, PolarParts};

/// Relative pivot threshold below which Gaussian elimination reports a
/// singular matrix.
pub const PIVOT_REL_TOL: f64 = 1e-13;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given shape. Panics on zero dimensions.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from nested rows, validating shape and finiteness.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(CoreError::Dimension("empty matrix".into()));
        }
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(CoreError::Dimension(format!(
                    "ragged rows: expected {} columns, found {}",
                    cols,
                    r.len()
                )));
            }
            for &z in r {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(CoreError::Input("non-finite matrix entry".into()));
                }
                entries.push(z);
            }
        }
        Ok(ComplexMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Build from nested real rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let lifted: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&lifted)
    }

    /// Build entrywise from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoreError::Dimension(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// alpha*X + beta*Y with shape checking.
    pub fn lincomb(alpha: f64, x: &Self, beta: f64, y: &Self) -> Result<Self> {
        x.scale_re(alpha).add(&y.scale_re(beta))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(CoreError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + aik * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).conj());
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(CoreError::Dimension(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &x) in v.iter().enumerate() {
                acc += self.at(i, j) * x;
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self.at(i, j) - self.at(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Entrywise max-norm distance.
    pub fn distance_max(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Hermitian component (A + A*)/2 of the Cartesian decomposition.
    pub fn real_part(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(CoreError::Dimension("Cartesian parts need a square matrix".into()));
        }
        Ok(self.add(&self.adjoint())?.scale_re(0.5))
    }

    /// Hermitian component (A - A*)/(2i); A = real_part + i*imag_part.
    pub fn imag_part(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(CoreError::Dimension("Cartesian parts need a square matrix".into()));
        }
        Ok(self
            .sub(&self.adjoint())?
            .scale(Complex64::new(0.0, -0.5)))
    }

    /// Inverse by Gaussian elimination with partial pivoting. Reports a
    /// singular matrix when a pivot drops below `PIVOT_REL_TOL` times the
    /// largest row magnitude of the input.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(CoreError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let scale = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
            .max(1.0);
        let tol = PIVOT_REL_TOL * scale;

        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, a.at(r, col).norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pivot_mag < tol {
                return Err(CoreError::Singular(format!(
                    "pivot {:.3e} below threshold {:.3e} at column {}",
                    pivot_mag, tol, col
                )));
            }
            if pivot_row != col {
                for j in 0..n {
                    let (x, y) = (a.at(col, j), a.at(pivot_row, j));
                    a.set(col, j, y);
                    a.set(pivot_row, j, x);
                    let (x, y) = (inv.at(col, j), inv.at(pivot_row, j));
                    inv.set(col, j, y);
                    inv.set(pivot_row, j, x);
                }
            }
            let p = a.at(col, col);
            for j in 0..n {
                a.set(col, j, a.at(col, j) / p);
                inv.set(col, j, inv.at(col, j) / p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.at(r, col);
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = a.at(r, j) - factor * a.at(col, j);
                    a.set(r, j, v);
                    let v = inv.at(r, j) - factor * inv.at(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Serialize to the interchange JSON format
    /// `{"rows": n, "cols": m, "data": [[re, im], ...]}` (row-major).
    pub fn to_json(&self) -> String {
        let dto = MatrixDto {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string_pretty(&dto).expect("matrix serialization cannot fail")
    }

    /// Parse the interchange JSON format, validating shape and finiteness.
    pub fn from_json(text: &str) -> Result<Self> {
        let dto: MatrixDto = serde_json::from_str(text)?;
        if dto.rows == 0 || dto.cols == 0 {
            return Err(CoreError::Input("matrix dimensions must be positive".into()));
        }
        if dto.data.len() != dto.rows * dto.cols {
            return Err(CoreError::Input(format!(
                "expected {} entries for a {}x{} matrix, found {}",
                dto.rows * dto.cols,
                dto.rows,
                dto.cols,
                dto.data.len()
            )));
        }
        let entries: Vec<Complex64> = dto.data.iter().map(|p| Complex64::new(p[0], p[1])).collect();
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CoreError::Input("non-finite matrix entry".into()));
        }
        Ok(ComplexMatrix {
            rows: dto.rows,
            cols: dto.cols,
            entries,
        })
    }

    pub fn read_json_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn write_json_file(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

/// Inner product sum x_i * conj(y_i), conjugate-linear in the second slot.
pub fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(&a, &b)| a * b.conj()).sum()
}

pub fn vector_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
