//! Subspaces of ℂⁿ as orthonormal column bases: inclusion, intersection
//! and complements.
//!
//! Angles are measured through sines (projection residuals) rather than
//! cosines so that tolerances near 1e-8 radians stay resolvable; the
//! intersection routine combines a spectral candidate step with a couple
//! of alternating-projection refinements.

use alloc::vec::Vec;

use crate::cmat::{caxpy, cdot, cnorm, cscale, CMatrix, C64, C_ONE, C_ZERO};
use crate::error::Error;
use crate::herm::{spectral_decompose, HermitianMatrix};
use crate::util::F64Ext;
use crate::Result;

/// A linear subspace of ℂⁿ, possibly zero-dimensional.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: CMatrix, // n×d, orthonormal columns
}

impl Subspace {
    /// Wraps a matrix whose columns are already orthonormal (validated to 1e-10).
    pub fn from_orthonormal(basis: CMatrix) -> Result<Self> {
        let d = basis.cols();
        if d > 0 {
            let g = basis.adjoint().mul(&basis);
            let dev = g.sub(&CMatrix::identity(d)).frobenius_norm();
            if dev > 1e-10 {
                return Err(Error::Degenerate("basis columns are not orthonormal"));
            }
        }
        Ok(Subspace {
            ambient: basis.rows(),
            basis,
        })
    }

    /// Orthonormalizes arbitrary spanning vectors, dropping dependent ones.
    pub fn from_spanning(vectors: &[Vec<C64>], ambient: usize) -> Self {
        let cols = orthonormalize(vectors, ambient, 1e-12);
        Subspace {
            ambient,
            basis: CMatrix::from_cols(&cols, ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: CMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: CMatrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// Component of `v` orthogonal to the subspace.
    pub fn residual(&self, v: &[C64]) -> Vec<C64> {
        let mut r = v.to_vec();
        for j in 0..self.dim() {
            let col = self.basis.col(j);
            let c = cdot(&col, &r);
            caxpy(&mut r, -c, &col);
        }
        r
    }

    /// sin of the angle between a unit vector and the subspace.
    pub fn sine_distance(&self, v: &[C64]) -> f64 {
        cnorm(&self.residual(v)).min(1.0)
    }

    /// Image-inclusion test: every basis vector of `self` within angular
    /// distance `eps_angle` of `other`.
    pub fn leq(&self, other: &Subspace, eps_angle: f64) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        if self.dim() > other.dim() {
            return Ok(false);
        }
        let sin_eps = eps_angle.sin();
        for j in 0..self.dim() {
            let col = self.basis.col(j);
            if other.sine_distance(&col) > sin_eps.max(eps_angle * 0.99) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn approx_eq(&self, other: &Subspace, eps_angle: f64) -> Result<bool> {
        Ok(self.dim() == other.dim()
            && self.leq(other, eps_angle)?
            && other.leq(self, eps_angle)?)
    }

    /// U ∩ V via the near-null space of (𝟙−P_U) + (𝟙−P_V), keeping
    /// directions whose principal angle to both factors is below `eps_angle`.
    pub fn intersect(&self, other: &Subspace, eps_angle: f64) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        let n = self.ambient;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(n));
        }
        if self.leq(other, eps_angle)? {
            return Ok(self.clone());
        }
        if other.leq(self, eps_angle)? {
            return Ok(other.clone());
        }
        // m = 2·𝟙 − P_U − P_V is hermitian PSD; its null space is U∩V.
        // eigenvalues near an intersection scale like θ², so accept with a
        // loose spectral cut and confirm each candidate by sine residuals.
        let mut m = CMatrix::identity(n).scaled_re(2.0);
        subtract_projector(&mut m, &self.basis);
        subtract_projector(&mut m, &other.basis);
        let hm = HermitianMatrix::symmetrized(&m)?;
        let sd = spectral_decompose(&hm, 1e-12)?;
        let spectral_cut = 1e-12f64.max(2.0 * (1.0 - eps_angle.cos()));
        let mut kept: Vec<Vec<C64>> = Vec::new();
        for (i, &mu) in sd.eigenvalues.iter().enumerate() {
            if mu > spectral_cut {
                break;
            }
            let mut x = sd.eigenvectors.col(i);
            // a couple of alternating projections pull the candidate onto
            // the true intersection before the final residual check
            for _ in 0..2 {
                x = self.project(&x);
                x = other.project(&x);
                let nn = cnorm(&x);
                if nn < 0.5 {
                    break;
                }
                cscale(&mut x, C64::new(1.0 / nn, 0.0));
            }
            let keep_tol = eps_angle.max(1e-9);
            if self.sine_distance(&x) <= keep_tol && other.sine_distance(&x) <= keep_tol {
                kept.push(x);
            }
        }
        Ok(Subspace::from_spanning(&kept, n))
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &[C64]) -> Vec<C64> {
        let mut out = alloc::vec![C_ZERO; self.ambient];
        for j in 0..self.dim() {
            let col = self.basis.col(j);
            let c = cdot(&col, v);
            caxpy(&mut out, c, &col);
        }
        out
    }

    /// Orthonormal basis of the orthogonal complement.
    pub fn complement(&self) -> Subspace {
        let n = self.ambient;
        let want = n - self.dim();
        let mut cols: Vec<Vec<C64>> = (0..self.dim()).map(|j| self.basis.col(j)).collect();
        let mut comp: Vec<Vec<C64>> = Vec::with_capacity(want);
        for i in 0..n {
            if comp.len() == want {
                break;
            }
            let mut e = alloc::vec![C_ZERO; n];
            e[i] = C_ONE;
            // two mgs passes against everything kept so far
            for _ in 0..2 {
                for c in &cols {
                    let coef = cdot(c, &e);
                    caxpy(&mut e, -coef, c);
                }
            }
            let nn = cnorm(&e);
            if nn > 1e-8 {
                cscale(&mut e, C64::new(1.0 / nn, 0.0));
                cols.push(e.clone());
                comp.push(e);
            }
        }
        Subspace {
            ambient: n,
            basis: CMatrix::from_cols(&comp, n),
        }
    }
}

fn subtract_projector(m: &mut CMatrix, basis: &CMatrix) {
    let n = m.rows();
    for j in 0..basis.cols() {
        let col = basis.col(j);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] -= col[a] * col[b].conj();
            }
        }
    }
}

/// Modified Gram-Schmidt with a re-orthogonalization pass; drops vectors
/// whose residual norm falls below `tol` times their original norm.
pub fn orthonormalize(vectors: &[Vec<C64>], ambient: usize, tol: f64) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        debug_assert_eq!(v.len(), ambient);
        let orig = cnorm(v).max(1e-300);
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = cdot(u, &w);
                caxpy(&mut w, -c, u);
            }
        }
        let nn = cnorm(&w);
        if nn > tol.max(1e-13) * orig && nn > 1e-13 {
            cscale(&mut w, C64::new(1.0 / nn, 0.0));
            out.push(w);
        }
    }
    out
}

/// Rank of a complex vector family, via orthonormalization at `tol`.
pub fn rank_of_vectors(vectors: &[Vec<C64>], ambient: usize, tol: f64) -> usize {
    orthonormalize(vectors, ambient, tol).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn e(n: usize, i: usize) -> Vec<C64> {
        let mut v = alloc::vec![C_ZERO; n];
        v[i] = C_ONE;
        v
    }

    #[test]
    fn intersect_coordinate_planes() {
        let u = Subspace::from_spanning(&[e(3, 0), e(3, 1)], 3);
        let v = Subspace::from_spanning(&[e(3, 1), e(3, 2)], 3);
        let w = u.intersect(&v, 1e-8).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.sine_distance(&e(3, 1)) < 1e-10);
    }

    #[test]
    fn intersect_idempotent() {
        let u = Subspace::from_spanning(&[e(4, 0), e(4, 2)], 4);
        let w = u.intersect(&u, 1e-8).unwrap();
        assert!(w.approx_eq(&u, 1e-8).unwrap());
    }

    // two random 2-dimensional subspaces of ℂ⁴ are in general position:
    // the stacked spanning family has full rank, so the meet is zero
    #[test]
    fn random_subspaces_general_position() {
        let mut rng = SplitMix64::new(0x5EED_0001);
        let mut draw = |n: usize| -> Vec<C64> {
            (0..n)
                .map(|_| C64::new(rng.gaussian(), rng.gaussian()))
                .collect()
        };
        let u = Subspace::from_spanning(&[draw(4), draw(4)], 4);
        let v = Subspace::from_spanning(&[draw(4), draw(4)], 4);
        assert_eq!(u.dim(), 2);
        assert_eq!(v.dim(), 2);
        let stacked: Vec<Vec<C64>> = (0..2)
            .map(|j| u.basis().col(j))
            .chain((0..2).map(|j| v.basis().col(j)))
            .collect();
        assert_eq!(rank_of_vectors(&stacked, 4, 1e-10), 4);
        let w = u.intersect(&v, 1e-8).unwrap();
        assert_eq!(w.dim(), 0);
    }

    #[test]
    fn leq_examples() {
        let u = Subspace::from_spanning(&[e(3, 0)], 3);
        let v = Subspace::from_spanning(&[e(3, 0), e(3, 1)], 3);
        assert!(u.leq(&v, 1e-8).unwrap());
        assert!(!v.leq(&u, 1e-8).unwrap());
        assert!(v.leq(&v, 1e-8).unwrap());
    }

    #[test]
    fn leq_dim_mismatch_is_error() {
        let u = Subspace::from_spanning(&[e(3, 0)], 3);
        let v = Subspace::from_spanning(&[e(4, 0)], 4);
        assert!(u.leq(&v, 1e-8).is_err());
    }

    #[test]
    fn complement_spans_the_rest() {
        let u = Subspace::from_spanning(&[e(4, 1)], 4);
        let c = u.complement();
        assert_eq!(c.dim(), 3);
        for j in 0..c.dim() {
            let col = c.basis().col(j);
            assert!(u.sine_distance(&col) > 0.999);
        }
    }
}
