//! Complex hermitian linear algebra: spectral decompositions with
//! degeneracy clustering, ground-state projections, compressions and
//! direct sums.
//!
//! The eigensolver is a cyclic Jacobi iteration with complex rotations.
//! At the sizes this crate targets (n ≤ 64) it is deterministic, simple
//! and accurate to a few ulps, which the degeneracy clustering relies on.

use alloc::vec;
use alloc::vec::Vec;

use crate::cmat::{cnorm, CMatrix, C64, C_ONE, C_ZERO};
use crate::error::Error;
use crate::subspace::Subspace;
use crate::util::F64Ext;
use crate::Result;

/// Dense n×n complex self-adjoint matrix.
///
/// Hermiticity is enforced at construction with an exact conjugate-transpose
/// comparison; use [`HermitianMatrix::symmetrized`] to project an almost
/// hermitian input first.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    mat: CMatrix,
}

impl HermitianMatrix {
    /// Wraps a square matrix, requiring `A[i][j] == conj(A[j][i])` exactly.
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::DimMismatch {
                left: mat.rows(),
                right: mat.cols(),
            });
        }
        if mat.rows() == 0 {
            return Err(Error::EmptyInput("hermitian matrix"));
        }
        let dev = mat.max_hermitian_deviation();
        if dev != 0.0 {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        Ok(HermitianMatrix { mat })
    }

    /// Builds from the hermitian part (A + A*)/2 of an arbitrary square matrix.
    pub fn symmetrized(mat: &CMatrix) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::DimMismatch {
                left: mat.rows(),
                right: mat.cols(),
            });
        }
        HermitianMatrix::new(enforce_hermitian(&mat.hermitian_part()))
    }

    /// Builds from rows given as `(re, im)` pairs, symmetrizing exactly.
    pub fn from_complex_rows(rows: &[Vec<C64>]) -> Result<Self> {
        HermitianMatrix::symmetrized(&CMatrix::from_rows(rows))
    }

    /// Real diagonal matrix.
    pub fn diagonal(d: &[f64]) -> Self {
        let n = d.len();
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(d[i], 0.0);
        }
        HermitianMatrix { mat: m }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            mat: CMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix {
            mat: CMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    pub fn scaled(&self, s: f64) -> HermitianMatrix {
        HermitianMatrix {
            mat: self.mat.scaled_re(s),
        }
    }

    pub fn add(&self, other: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            mat: self.mat.add(&other.mat),
        }
    }

    /// A + c·𝟙.
    pub fn shifted(&self, c: f64) -> HermitianMatrix {
        let mut m = self.mat.clone();
        for i in 0..m.rows() {
            m[(i, i)] += C64::new(c, 0.0);
        }
        HermitianMatrix { mat: m }
    }

    pub fn neg(&self) -> HermitianMatrix {
        self.scaled(-1.0)
    }

    /// Real Hilbert-Schmidt inner product Re tr(A*B) = tr(AB) for hermitian A, B.
    pub fn hs_inner(&self, other: &HermitianMatrix) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += (self.mat[(i, j)].conj() * other.mat[(i, j)]).re;
            }
        }
        acc
    }

    /// ⟨x, A x⟩, real for hermitian A.
    pub fn expectation(&self, x: &[C64]) -> f64 {
        let ax = self.mat.matvec(x);
        crate::cmat::cdot(x, &ax).re
    }

    /// Commutator norm ‖AB − BA‖_F, zero iff the pair commutes.
    pub fn commutator_norm(&self, other: &HermitianMatrix) -> f64 {
        let ab = self.mat.mul(&other.mat);
        let ba = other.mat.mul(&self.mat);
        ab.sub(&ba).frobenius_norm()
    }
}

fn enforce_hermitian(m: &CMatrix) -> CMatrix {
    let mut out = m.clone();
    let n = m.rows();
    for i in 0..n {
        out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let v = out[(i, j)];
            out[(j, i)] = v.conj();
        }
    }
    out
}

/// Spectral decomposition with eigenvalues ascending and eigenvectors as
/// orthonormal columns; adjacent eigenvalues within `eps_cluster` of each
/// other are grouped into degeneracy clusters.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
    pub clusters: Vec<Vec<usize>>,
}

impl SpectralDecomposition {
    /// Orthonormal basis of the eigenspace cluster containing index 0
    /// (the least eigenvalue).
    pub fn ground_cluster_basis(&self) -> CMatrix {
        let idx = &self.clusters[0];
        let cols: Vec<Vec<C64>> = idx.iter().map(|&j| self.eigenvectors.col(j)).collect();
        CMatrix::from_cols(&cols, self.eigenvectors.rows())
    }
}

/// Default degeneracy threshold: `1e-9·max(1, ‖A‖_F)`.
///
/// The hybrid absolute/relative form keeps clustering stable under uniform
/// rescaling of the family while not collapsing tiny matrices to one cluster.
pub fn default_cluster_eps(a: &HermitianMatrix) -> f64 {
    crate::EPS_CLUSTER_REL * a.frobenius_norm().max(1.0)
}

/// Full spectral decomposition of a hermitian matrix.
///
/// Residual targets: ‖A − VΛV*‖_F ≤ 1e-12·‖A‖_F and ‖V*V − 𝟙‖ ≤ 1e-12.
pub fn spectral_decompose(
    a: &HermitianMatrix,
    eps_cluster: f64,
) -> Result<SpectralDecomposition> {
    if eps_cluster <= 0.0 {
        return Err(Error::OutOfRange("eps_cluster must be positive"));
    }
    let (mut vals, mut vecs) = jacobi_hermitian(&a.mat)?;
    sort_ascending(&mut vals, &mut vecs);
    let clusters = cluster_indices(&vals, eps_cluster);
    Ok(SpectralDecomposition {
        eigenvalues: vals,
        eigenvectors: vecs,
        clusters,
    })
}

/// Eigenvalues only, ascending.
pub fn eigenvalues(a: &HermitianMatrix) -> Result<Vec<f64>> {
    let (mut vals, _) = jacobi_values(&a.mat)?;
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(vals)
}

/// Least eigenvalue and the gap pattern needed by degeneracy hunting:
/// returns ascending eigenvalues without accumulating eigenvectors.
pub fn eigenvalues_ascending(a: &HermitianMatrix) -> Result<Vec<f64>> {
    eigenvalues(a)
}

fn cluster_indices(vals: &[f64], eps: f64) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0usize];
    for i in 1..vals.len() {
        if vals[i] - vals[i - 1] <= eps {
            current.push(i);
        } else {
            clusters.push(core::mem::take(&mut current));
            current = vec![i];
        }
    }
    clusters.push(current);
    clusters
}

fn sort_ascending(vals: &mut [f64], vecs: &mut CMatrix) {
    let n = vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
    let old_vals = vals.to_vec();
    let old_vecs = vecs.clone();
    for (new, &old) in order.iter().enumerate() {
        vals[new] = old_vals[old];
        vecs.set_col(new, &old_vecs.col(old));
    }
}

const JACOBI_MAX_SWEEPS: usize = 60;

/// Cyclic Jacobi for complex hermitian matrices, with eigenvectors.
fn jacobi_hermitian(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.rows();
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    run_jacobi(&mut m, Some(&mut v))?;
    let vals = (0..n).map(|i| m[(i, i)].re).collect();
    Ok((vals, v))
}

fn jacobi_values(a: &CMatrix) -> Result<(Vec<f64>, ())> {
    let n = a.rows();
    let mut m = a.clone();
    run_jacobi(&mut m, None)?;
    let vals = (0..n).map(|i| m[(i, i)].re).collect();
    Ok((vals, ()))
}

fn run_jacobi(m: &mut CMatrix, mut v: Option<&mut CMatrix>) -> Result<()> {
    let n = m.rows();
    if n == 1 {
        return Ok(());
    }
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let target = 1e-15 * scale;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if m.off_diagonal_norm() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 || r <= 1e-18 * scale {
                    continue;
                }
                // phase w maps a_pq to |a_pq|, then a real rotation kills it
                let w = apq.conj() / r;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = tau.signum_nz() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                apply_rotation(m, p, q, c, s, w);
                if let Some(vv) = v.as_deref_mut() {
                    rotate_cols(vv, p, q, c, s, w);
                }
            }
        }
    }
    let off = m.off_diagonal_norm();
    if off > 1e-12 * scale {
        return Err(Error::EigenNonConvergence { off_diagonal: off });
    }
    Ok(())
}

/// A ← U* A U with U the identity except U[p][p]=c, U[p][q]=−s,
/// U[q][p]=w̄·s, U[q][q]=w̄·c, where w = conj(a_pq)/|a_pq|.
fn apply_rotation(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, w: C64) {
    let n = m.rows();
    let wc = w.conj();
    // column update A·U
    for i in 0..n {
        let aip = m[(i, p)];
        let aiq = m[(i, q)];
        m[(i, p)] = aip.scale(c) + aiq * wc.scale(s);
        m[(i, q)] = aip.scale(-s) + aiq * wc.scale(c);
    }
    // row update U*·A
    for j in 0..n {
        let apj = m[(p, j)];
        let aqj = m[(q, j)];
        m[(p, j)] = apj.scale(c) + aqj * w.scale(s);
        m[(q, j)] = apj.scale(-s) + aqj * w.scale(c);
    }
    // clean the rotated pair against drift
    m[(p, q)] = C_ZERO;
    m[(q, p)] = C_ZERO;
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
}

fn rotate_cols(v: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, w: C64) {
    let n = v.rows();
    let wc = w.conj();
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip.scale(c) + viq * wc.scale(s);
        v[(i, q)] = vip.scale(-s) + viq * wc.scale(c);
    }
}

/// Orthogonal projection stored as an orthonormal image basis, together
/// with the least eigenvalue it was harvested from.
#[derive(Clone, Debug)]
pub struct ProjectionNode {
    pub subspace: Subspace,
    pub lambda_min: f64,
}

impl ProjectionNode {
    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    pub fn rank(&self) -> usize {
        self.subspace.dim()
    }

    pub fn basis(&self) -> &CMatrix {
        self.subspace.basis()
    }

    /// Identity projection on ℂⁿ.
    pub fn full(n: usize) -> Self {
        ProjectionNode {
            subspace: Subspace::full(n),
            lambda_min: 0.0,
        }
    }

    /// Zero projection on ℂⁿ.
    pub fn zero(n: usize) -> Self {
        ProjectionNode {
            subspace: Subspace::zero(n),
            lambda_min: 0.0,
        }
    }
}

/// Spectral projection onto the eigenvalue cluster containing λ_min(A).
pub fn ground_projection(a: &HermitianMatrix, eps_cluster: f64) -> Result<ProjectionNode> {
    let sd = spectral_decompose(a, eps_cluster)?;
    let basis = sd.ground_cluster_basis();
    Ok(ProjectionNode {
        subspace: Subspace::from_orthonormal(basis)?,
        lambda_min: sd.eigenvalues[0],
    })
}

/// B*AB on the image basis B of P; hermitian of size rank(P).
pub fn compress(a: &HermitianMatrix, p: &ProjectionNode) -> Result<HermitianMatrix> {
    if p.ambient_dim() != a.dim() {
        return Err(Error::DimMismatch {
            left: p.ambient_dim(),
            right: a.dim(),
        });
    }
    if p.rank() == 0 {
        return Err(Error::EmptyCompression);
    }
    let b = p.basis();
    let res = b.adjoint().mul(a.matrix()).mul(b);
    HermitianMatrix::symmetrized(&res)
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[HermitianMatrix]) -> Result<HermitianMatrix> {
    if blocks.is_empty() {
        return Err(Error::EmptyInput("direct_sum blocks"));
    }
    let n: usize = blocks.iter().map(|b| b.dim()).sum();
    let mut m = CMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        let d = b.dim();
        for i in 0..d {
            for j in 0..d {
                m[(off + i, off + j)] = b.matrix()[(i, j)];
            }
        }
        off += d;
    }
    Ok(HermitianMatrix { mat: m })
}

/// Residual ‖A − VΛV*‖_F of a decomposition, for validation.
pub fn reconstruction_residual(a: &HermitianMatrix, sd: &SpectralDecomposition) -> f64 {
    let n = a.dim();
    let mut lam = CMatrix::zeros(n, n);
    for i in 0..n {
        lam[(i, i)] = C64::new(sd.eigenvalues[i], 0.0);
    }
    let rec = sd.eigenvectors.mul(&lam).mul(&sd.eigenvectors.adjoint());
    a.matrix().sub(&rec).frobenius_norm()
}

/// ‖V*V − 𝟙‖_F.
pub fn orthonormality_residual(sd: &SpectralDecomposition) -> f64 {
    let g = sd.eigenvectors.adjoint().mul(&sd.eigenvectors);
    g.sub(&CMatrix::identity(g.rows())).frobenius_norm()
}

/// Top eigenvector (largest eigenvalue) convenience.
pub fn top_eigenvector(a: &HermitianMatrix, eps_cluster: f64) -> Result<(f64, Vec<C64>)> {
    let sd = spectral_decompose(a, eps_cluster)?;
    let n = a.dim();
    let v = sd.eigenvectors.col(n - 1);
    debug_assert!((cnorm(&v) - 1.0).abs() < 1e-10);
    Ok((sd.eigenvalues[n - 1], v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::C_I;

    fn cre(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn diagonal_spectrum_and_clusters() {
        let a = HermitianMatrix::diagonal(&[2.0, 0.0, 1.0]);
        let sd = spectral_decompose(&a, 1e-9).unwrap();
        assert_eq!(sd.eigenvalues, vec![0.0, 1.0, 2.0]);
        assert_eq!(sd.clusters, vec![vec![0], vec![1], vec![2]]);
        assert!(reconstruction_residual(&a, &sd) <= 1e-12 * a.frobenius_norm().max(1.0));
        assert!(orthonormality_residual(&sd) <= 1e-12);
    }

    #[test]
    fn pauli_x_spectrum() {
        let f1 = HermitianMatrix::from_complex_rows(&[
            vec![cre(0.0), cre(1.0)],
            vec![cre(1.0), cre(0.0)],
        ])
        .unwrap();
        let sd = spectral_decompose(&f1, 1e-9).unwrap();
        assert!((sd.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((sd.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    // drop generator F2 = [[0,-i,0],[i,0,0],[0,0,2]]; characteristic
    // polynomial factors as (λ²-1)(λ-2), so the spectrum is (-1, 1, 2)
    #[test]
    fn drop_f2_spectrum() {
        let f2 = HermitianMatrix::from_complex_rows(&[
            vec![cre(0.0), -C_I, cre(0.0)],
            vec![C_I, cre(0.0), cre(0.0)],
            vec![cre(0.0), cre(0.0), cre(2.0)],
        ])
        .unwrap();
        let sd = spectral_decompose(&f2, 1e-9).unwrap();
        let want = [-1.0, 1.0, 2.0];
        for (got, want) in sd.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
    }

    #[test]
    fn ground_projection_diagonal() {
        let a = HermitianMatrix::diagonal(&[0.0, 1.0, 2.0]);
        let p = ground_projection(&a, 1e-9).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.lambda_min.abs() < 1e-14);
        let e1 = p.basis().col(0);
        assert!((e1[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ground_projection_identity_is_full_rank() {
        let a = HermitianMatrix::identity(3);
        let p = ground_projection(&a, 1e-9).unwrap();
        assert_eq!(p.rank(), 3);
        assert!((p.lambda_min - 1.0).abs() < 1e-14);
    }

    // maximizing ⟨ρ,F2⟩ is the ground space of -F2, which is span(e3)
    #[test]
    fn drop_ground_of_negated_f2() {
        let f2 = HermitianMatrix::from_complex_rows(&[
            vec![cre(0.0), -C_I, cre(0.0)],
            vec![C_I, cre(0.0), cre(0.0)],
            vec![cre(0.0), cre(0.0), cre(2.0)],
        ])
        .unwrap();
        let p = ground_projection(&f2.neg(), 1e-9).unwrap();
        assert_eq!(p.rank(), 1);
        let v = p.basis().col(0);
        assert!(v[2].norm() > 1.0 - 1e-12);
    }

    #[test]
    fn compress_examples() {
        let a = HermitianMatrix::diagonal(&[1.0, 2.0, 3.0]);
        let p = ground_projection(&HermitianMatrix::diagonal(&[0.0, 0.0, 5.0]), 1e-6).unwrap();
        assert_eq!(p.rank(), 2);
        let c = compress(&a, &p).unwrap();
        let mut vals = eigenvalues(&c).unwrap();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[1] - 2.0).abs() < 1e-12);

        // compression onto the identity preserves the spectrum
        let full = ProjectionNode::full(3);
        let c2 = compress(&a, &full).unwrap();
        let v2 = eigenvalues(&c2).unwrap();
        for (x, y) in v2.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn direct_sum_blocks() {
        let a = HermitianMatrix::diagonal(&[1.0]);
        let b = HermitianMatrix::diagonal(&[2.0]);
        let s = direct_sum(&[a, b]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.matrix()[(0, 0)], cre(1.0));
        assert_eq!(s.matrix()[(1, 1)], cre(2.0));

        let one = HermitianMatrix::diagonal(&[7.0, -1.0]);
        let s1 = direct_sum(core::slice::from_ref(&one)).unwrap();
        assert_eq!(s1, one);
        assert!(direct_sum(&[]).is_err());
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[vec![cre(0.0), cre(1.0)], vec![cre(0.5), cre(0.0)]]);
        assert!(HermitianMatrix::new(m.clone()).is_err());
        assert!(HermitianMatrix::symmetrized(&m).is_ok());
    }
}
