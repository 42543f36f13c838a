//! Seeded random generators for harness trials. Every trial owns an
//! independent ChaCha stream, so trials can run concurrently while the whole
//! suite stays reproducible from (seed, trial index).

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mat::{modulus, vector_norm, ComplexMatrix};
use crate::mean::{InterpolationPath, MeanKind};

/// Largest acceptable residual of the commutation identity produced by
/// [`TrialRng::commuting_pair`].
pub const COMMUTATION_TOL: f64 = 1e-10;

pub struct TrialRng(ChaCha8Rng);

impl TrialRng {
    pub fn for_trial(seed: u64, trial: u64) -> TrialRng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        TrialRng(rng)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn dim(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.0.next_u64() % (hi - lo + 1) as u64) as usize
    }

    /// Real and imaginary parts independently uniform in [-1, 1].
    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.range(-1.0, 1.0), self.range(-1.0, 1.0))
    }

    pub fn matrix(&mut self, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| self.complex())
    }

    pub fn vector(&mut self, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| self.complex()).collect()
    }

    pub fn unit_vector(&mut self, n: usize) -> Vec<Complex64> {
        loop {
            let v = self.vector(n);
            let norm = vector_norm(&v);
            if norm > 1e-3 {
                return v.iter().map(|z| z / norm).collect();
            }
        }
    }

    pub fn psd(&mut self, n: usize) -> ComplexMatrix {
        let m = self.matrix(n);
        m.adjoint().mul(&m).expect("square product")
    }

    /// Unitary via modified Gram-Schmidt on a random matrix; the positive
    /// normalization pins the column phases.
    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        'outer: loop {
            let m = self.matrix(n);
            let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| m.column(j)).collect();
            for j in 0..n {
                let (done, rest) = cols.split_at_mut(j);
                let col = &mut rest[0];
                for prev in done.iter() {
                    let proj = crate::mat::dot(col, prev);
                    for (x, y) in col.iter_mut().zip(prev) {
                        *x -= proj * y;
                    }
                }
                let norm = vector_norm(col);
                if norm < 1e-6 {
                    continue 'outer;
                }
                for entry in col {
                    *entry /= norm;
                }
            }
            return ComplexMatrix::from_fn(n, n, |i, j| cols[j][i]);
        }
    }

    /// Invertible with a comfortable margin: retried until the smallest
    /// singular value clears 0.05 times the largest.
    pub fn invertible(&mut self, n: usize) -> ComplexMatrix {
        loop {
            let m = self.matrix(n);
            if let Ok(spectrum) = crate::mat::ModulusSpectrum::of(&m) {
                let moduli = spectrum.moduli();
                let smallest = moduli.iter().copied().fold(f64::INFINITY, f64::min);
                if smallest > 0.05 * spectrum.max_modulus().max(1e-12) {
                    return m;
                }
            }
        }
    }

    /// Invertible but decisively non-unitary: the Gram matrix sits at least
    /// 1e-3 away from the identity in max-entry distance.
    pub fn non_unitary_invertible(&mut self, n: usize) -> ComplexMatrix {
        loop {
            let m = self.invertible(n);
            let gram = m.adjoint().mul(&m).expect("square product");
            if gram.distance_max(&ComplexMatrix::identity(n)) > 1e-3 {
                return m;
            }
        }
    }

    /// A pair (A, B) with |A| B = B* |A| holding by construction: B is a
    /// real polynomial in |A|, hence Hermitian and commuting with |A|.
    pub fn commuting_pair(&mut self, n: usize) -> (ComplexMatrix, ComplexMatrix) {
        let a = self.matrix(n);
        let abs = modulus(&a).expect("modulus of a square matrix");
        let abs_sq = abs.mul(&abs).expect("square product");
        let c0 = self.range(-1.0, 1.0);
        let c1 = self.range(-1.0, 1.0);
        let c2 = self.range(-1.0, 1.0);
        let b = ComplexMatrix::identity(n)
            .scale_re(c0)
            .add(&abs.scale_re(c1))
            .and_then(|m| m.add(&abs_sq.scale_re(c2)))
            .expect("conforming sums");
        (a, b)
    }

    pub fn mean_kind(&mut self) -> MeanKind {
        MeanKind::ALL[(self.0.next_u64() % MeanKind::ALL.len() as u64) as usize]
    }

    /// Random path: any mean kind, weight uniform in [0, 1].
    pub fn path(&mut self) -> InterpolationPath {
        InterpolationPath::new(self.mean_kind(), self.unit()).expect("weight in range")
    }

    /// Random path with the weight kept away from the endpoints.
    pub fn interior_path(&mut self) -> InterpolationPath {
        InterpolationPath::new(self.mean_kind(), self.range(0.2, 0.8)).expect("weight in range")
    }

    /// Seminorm exponent p in [1, 3].
    pub fn exponent(&mut self) -> f64 {
        self.range(1.0, 3.0)
    }

    /// Power-family parameter in (0, 1) for f(s) = s^gamma, g(s) = s^(1-gamma).
    pub fn gamma(&mut self) -> f64 {
        loop {
            let g = self.unit();
            if g > 0.0 {
                return g;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::dot;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = TrialRng::for_trial(11, 4);
        let mut b = TrialRng::for_trial(11, 4);
        let mut c = TrialRng::for_trial(11, 5);
        let va: Vec<f64> = (0..8).map(|_| a.unit()).collect();
        let vb: Vec<f64> = (0..8).map(|_| b.unit()).collect();
        let vc: Vec<f64> = (0..8).map(|_| c.unit()).collect();
        assert_eq!(va, vb);
        assert_ne!(va, vc);
        assert!(va.iter().all(|&x| (0.0..1.0).contains(&x)));
    }

    #[test]
    fn unitary_generator_produces_unitaries() {
        let mut rng = TrialRng::for_trial(2, 0);
        for n in 2..=6 {
            let u = rng.unitary(n);
            let gram = u.adjoint().mul(&u).unwrap();
            assert!(gram.distance_max(&ComplexMatrix::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn commuting_pair_satisfies_the_identity() {
        let mut rng = TrialRng::for_trial(5, 1);
        for _ in 0..20 {
            let n = rng.dim(2, 6);
            let (a, b) = rng.commuting_pair(n);
            let abs = modulus(&a).unwrap();
            let lhs = abs.mul(&b).unwrap();
            let rhs = b.adjoint().mul(&abs).unwrap();
            assert!(lhs.distance_max(&rhs) <= COMMUTATION_TOL);
        }
    }

    #[test]
    fn non_unitary_generator_is_far_from_unitary() {
        let mut rng = TrialRng::for_trial(9, 3);
        let m = rng.non_unitary_invertible(4);
        let gram = m.adjoint().mul(&m).unwrap();
        assert!(gram.distance_max(&ComplexMatrix::identity(4)) > 1e-3);
    }

    #[test]
    fn unit_vectors_are_normalized() {
        let mut rng = TrialRng::for_trial(1, 2);
        let v = rng.unit_vector(5);
        assert!((dot(&v, &v).re - 1.0).abs() < 1e-12);
    }
}
