//! Seeded deterministic randomness for grids, random suites and tests.
//!
//! A tiny splitmix64 keeps the core free of feature plumbing and makes
//! seeded runs bit-stable across platforms.

use alloc::vec::Vec;

use crate::cmat::{CMatrix, C64};
use crate::herm::HermitianMatrix;
use crate::subspace::orthonormalize;
use crate::util::F64Ext;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller.
    pub fn gaussian(&mut self) -> f64 {
        let u1 = self.next_f64().max(1e-300);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * core::f64::consts::PI * u2).cos()
    }

    /// Uniform point on the unit sphere of ℝᵏ.
    pub fn unit_vector(&mut self, k: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..k).map(|_| self.gaussian()).collect();
            if let Some(u) = crate::util::normalize(&v, 1e-12) {
                return u;
            }
        }
    }

    pub fn complex_gaussian(&mut self) -> C64 {
        C64::new(self.gaussian(), self.gaussian())
    }

    /// GUE-style random hermitian matrix.
    pub fn hermitian(&mut self, n: usize) -> HermitianMatrix {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(self.gaussian(), 0.0);
            for j in (i + 1)..n {
                let z = self.complex_gaussian().scale(core::f64::consts::FRAC_1_SQRT_2);
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        HermitianMatrix::new(m).expect("constructed hermitian")
    }

    /// GOE-style random real symmetric matrix (as a hermitian matrix).
    pub fn real_symmetric(&mut self, n: usize) -> HermitianMatrix {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(self.gaussian(), 0.0);
            for j in (i + 1)..n {
                let x = C64::new(self.gaussian(), 0.0);
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        HermitianMatrix::new(m).expect("constructed symmetric")
    }

    /// Haar-ish random unitary from orthonormalized gaussian columns.
    pub fn unitary(&mut self, n: usize) -> CMatrix {
        loop {
            let cols: Vec<Vec<C64>> = (0..n)
                .map(|_| (0..n).map(|_| self.complex_gaussian()).collect())
                .collect();
            let ortho = orthonormalize(&cols, n, 1e-10);
            if ortho.len() == n {
                return CMatrix::from_cols(&ortho, n);
            }
        }
    }

    /// Random density matrix: random spectrum on the simplex conjugated by
    /// a random unitary.
    pub fn density(&mut self, n: usize) -> HermitianMatrix {
        let mut w: Vec<f64> = (0..n).map(|_| -self.next_f64().max(1e-300).ln()).collect();
        let total: f64 = w.iter().sum();
        for x in &mut w {
            *x /= total;
        }
        let u = self.unitary(n);
        let d = HermitianMatrix::diagonal(&w);
        let m = u.mul(d.matrix()).mul(&u.adjoint());
        HermitianMatrix::symmetrized(&m).expect("density is hermitian")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn density_has_unit_trace() {
        let mut rng = SplitMix64::new(42);
        let rho = rng.density(4);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        let vals = crate::herm::eigenvalues(&rho).unwrap();
        assert!(vals.iter().all(|&v| v > -1e-12));
    }
}
