//! Operator systems and their convex supports: support functions,
//! boundary sampling, exposed faces as ground-state projections, and the
//! linear-algebraic normal-cone machinery.
//!
//! Conventions. The artifact standardizes on outward-normal maximization:
//! the support value in direction `u` is `h(u) = λ_max(u·F)`, and the face
//! exposed by `u` corresponds to the ground-state projection of `−u·F`
//! (equivalently `h(u) = −λ₋(−u·F)`). Flat faces occur exactly where that
//! ground space is degenerate, so face finding is a hunt for eigenvalue
//! coincidences of the pencil over the direction sphere.

use alloc::vec;
use alloc::vec::Vec;

use crate::cmat::{CMatrix, C64};
use crate::error::Error;
use crate::grid::{bisect_dirs, DirectionGrid};
use crate::herm::{
    compress, default_cluster_eps, ground_projection, spectral_decompose, HermitianMatrix,
    ProjectionNode,
};
use crate::optimize::minimize_on_sphere;
use crate::realmat::{null_space, rank_of_directions, rank_of_point_set, RMatrix};
use crate::util::{self, F64Ext};
use crate::Result;

/// Identity plus k hermitian generators; the convex support lives in ℝᵏ.
#[derive(Clone, Debug)]
pub struct OperatorSystemSpec {
    n: usize,
    generators: Vec<HermitianMatrix>,
    sh_dim: usize,
}

/// A point of the convex support with an optional pure-state witness.
#[derive(Clone, Debug)]
pub struct StatePoint {
    pub coords: Vec<f64>,
    pub witness: Option<Vec<C64>>,
}

/// One raw sweep entry: direction, support value, boundary point.
#[derive(Clone, Debug)]
pub struct SupportSample {
    pub dir: Vec<f64>,
    pub h: f64,
    pub point: Vec<f64>,
}

/// A detected exposed face of the convex support.
#[derive(Clone, Debug)]
pub struct ExposedFaceRecord {
    /// Outward unit normal that exposed the face.
    pub direction: Vec<f64>,
    /// Ground projection of −direction·F.
    pub projection: ProjectionNode,
    /// Affine dimension of the face, from the centered rank of sampled points.
    pub face_dim: usize,
    /// Basis of the linear hull of the normal cone at the face.
    pub normal_cone_lin_hull: Vec<Vec<f64>>,
    /// dim of that linear hull; the cone itself may be a proper subcone.
    pub normal_cone_dim: usize,
    /// Sampled points of the face, re-embedded in ℝᵏ.
    pub face_points: Vec<Vec<f64>>,
    /// Support value in `direction`.
    pub support: f64,
    /// Ground cluster unchanged under a 10× looser clustering threshold.
    pub stable: bool,
}

/// Precomputed support values over a grid; membership queries against a
/// fixed system reuse it instead of re-solving the pencil per query.
#[derive(Clone, Debug)]
pub struct SupportTable {
    pub dirs: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

impl OperatorSystemSpec {
    pub fn new(generators: Vec<HermitianMatrix>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyInput("generators"));
        }
        let n = generators[0].dim();
        for g in &generators {
            if g.dim() != n {
                return Err(Error::DimMismatch {
                    left: n,
                    right: g.dim(),
                });
            }
        }
        let sh_dim = span_dim_with_identity(&generators);
        Ok(OperatorSystemSpec {
            n,
            generators,
            sh_dim,
        })
    }

    pub fn matrix_dim(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[HermitianMatrix] {
        &self.generators
    }

    /// Dimension of the real span of {𝟙, F₁, …, F_k}.
    pub fn sh_dim(&self) -> usize {
        self.sh_dim
    }

    /// True when the convex support has interior in ℝᵏ, i.e. the family
    /// together with the identity is linearly independent.
    pub fn has_interior(&self) -> bool {
        self.sh_dim == self.num_generators() + 1
    }

    /// Σ uᵢ Fᵢ.
    pub fn pencil(&self, u: &[f64]) -> HermitianMatrix {
        let mut m = CMatrix::zeros(self.n, self.n);
        for (ui, f) in u.iter().zip(&self.generators) {
            if *ui == 0.0 {
                continue;
            }
            for i in 0..self.n {
                for j in 0..self.n {
                    m[(i, j)] += f.matrix()[(i, j)].scale(*ui);
                }
            }
        }
        HermitianMatrix::symmetrized(&m).expect("pencil of hermitian matrices")
    }

    /// Characteristic scale of the family, used by degeneracy thresholds.
    pub fn scale(&self) -> f64 {
        self.generators
            .iter()
            .map(|f| {
                let x = f.frobenius_norm();
                x * x
            })
            .sum::<f64>()
            .sqrt()
            .max(1.0)
    }

    pub fn default_cluster_eps(&self) -> f64 {
        crate::EPS_CLUSTER_REL * self.scale()
    }

    /// Expectation tuple of a unit vector.
    pub fn coords_of_vector(&self, x: &[C64]) -> Vec<f64> {
        self.generators.iter().map(|f| f.expectation(x)).collect()
    }

    /// Expectation tuple ⟨ρ,Fᵢ⟩ of a density matrix.
    pub fn coords_of_density(&self, rho: &HermitianMatrix) -> Vec<f64> {
        self.generators.iter().map(|f| f.hs_inner(rho)).collect()
    }

    /// Support value h(u) = λ_max(u·F) with a maximizing boundary point
    /// whose witness is a top eigenvector.
    pub fn support_value(&self, u: &[f64]) -> Result<(f64, StatePoint)> {
        if util::norm(u) <= 1e-14 {
            return Err(Error::ZeroDirection);
        }
        let pencil = self.pencil(u);
        let (h, x) = crate::herm::top_eigenvector(&pencil, default_cluster_eps(&pencil))?;
        let coords = self.coords_of_vector(&x);
        Ok((
            h,
            StatePoint {
                coords,
                witness: Some(x),
            },
        ))
    }

    /// Ground projection of −u·F: the projection of the face exposed by
    /// the outward direction u.
    pub fn face_projection(&self, u: &[f64], eps_cluster: f64) -> Result<ProjectionNode> {
        if util::norm(u) <= 1e-14 {
            return Err(Error::ZeroDirection);
        }
        ground_projection(&self.pencil(u).neg(), eps_cluster)
    }

    /// Raw support sweep over a grid, one sample per direction.
    pub fn sweep(&self, grid: &DirectionGrid) -> Result<Vec<SupportSample>> {
        let mut out = Vec::with_capacity(grid.len());
        for u in &grid.dirs {
            let (h, sp) = self.support_value(u)?;
            out.push(SupportSample {
                dir: u.clone(),
                h,
                point: sp.coords,
            });
        }
        Ok(out)
    }

    /// Support table over a grid for repeated membership queries.
    pub fn support_table(&self, grid: &DirectionGrid) -> Result<SupportTable> {
        let sweep = self.sweep(grid)?;
        Ok(SupportTable {
            dirs: sweep.iter().map(|s| s.dir.clone()).collect(),
            values: sweep.iter().map(|s| s.h).collect(),
        })
    }

    /// Boundary points of the convex support over a grid: refinement
    /// bisects arcs whose endpoints land far apart (flats hide there),
    /// and numerically duplicate points are merged.
    pub fn sample_boundary(&self, grid: &DirectionGrid) -> Result<Vec<StatePoint>> {
        if grid.is_empty() {
            return Err(Error::EmptyInput("direction grid"));
        }
        let sweep = self.sweep(grid)?;
        let diam = estimate_diameter(&sweep);
        let flat_thresh = 1e-3 * diam.max(1e-9);
        let mut points: Vec<Vec<f64>> = sweep.iter().map(|s| s.point.clone()).collect();
        // one refinement pass over grid edges, bisecting to depth 12
        for &(a, b) in &grid.edges {
            self.refine_arc(
                &sweep[a].dir,
                &sweep[a].point,
                &sweep[b].dir,
                &sweep[b].point,
                flat_thresh,
                12,
                &mut points,
            )?;
        }
        let deduped = dedupe_points(&points, 1e-9);
        Ok(deduped
            .into_iter()
            .map(|coords| StatePoint {
                coords,
                witness: None,
            })
            .collect())
    }

    #[allow(clippy::too_many_arguments)]
    fn refine_arc(
        &self,
        ua: &[f64],
        pa: &[f64],
        ub: &[f64],
        pb: &[f64],
        flat_thresh: f64,
        depth: usize,
        out: &mut Vec<Vec<f64>>,
    ) -> Result<()> {
        if depth == 0 || util::dist(pa, pb) <= flat_thresh {
            return Ok(());
        }
        let mid = match bisect_dirs(ua, ub) {
            Some(m) => m,
            None => return Ok(()),
        };
        let (_, sp) = self.support_value(&mid)?;
        let pm = sp.coords;
        out.push(pm.clone());
        self.refine_arc(ua, pa, &mid, &pm, flat_thresh, depth - 1, out)?;
        self.refine_arc(&mid, &pm, ub, pb, flat_thresh, depth - 1, out)?;
        Ok(())
    }

    /// Full record of the face exposed by the outward direction `u`.
    pub fn exposed_face(&self, u: &[f64], eps_cluster: f64) -> Result<ExposedFaceRecord> {
        if util::norm(u) <= 1e-14 {
            return Err(Error::ZeroDirection);
        }
        let pencil_neg = self.pencil(u).neg();
        let sd = spectral_decompose(&pencil_neg, eps_cluster)?;
        let ground = sd.ground_cluster_basis();
        let rank = ground.cols();
        // stability: the ground cluster must survive a 10× looser threshold
        let sd_loose = spectral_decompose(&pencil_neg, eps_cluster * 10.0)?;
        let stable = sd_loose.clusters[0].len() == rank;
        let projection = ProjectionNode {
            subspace: crate::subspace::Subspace::from_orthonormal(ground)?,
            lambda_min: sd.eigenvalues[0],
        };
        let support = -projection.lambda_min;
        let face_points = self.face_points(&projection)?;
        let face_dim = face_dim_of_points(&face_points, self.num_generators());
        let (ncl, ncd) = self.normal_cone_lin_hull(&projection)?;
        Ok(ExposedFaceRecord {
            direction: u.to_vec(),
            projection,
            face_dim,
            normal_cone_lin_hull: ncl,
            normal_cone_dim: ncd,
            face_points,
            support,
            stable,
        })
    }

    /// Sampled points of the face carried by a ground projection: the
    /// convex support of the compressed generators, re-embedded.
    pub fn face_points(&self, p: &ProjectionNode) -> Result<Vec<Vec<f64>>> {
        let k = self.num_generators();
        let r = p.rank();
        if r == 0 {
            return Ok(Vec::new());
        }
        if r == 1 {
            let x = p.basis().col(0);
            return Ok(vec![self.coords_of_vector(&x)]);
        }
        let compressed: Vec<HermitianMatrix> = self
            .generators
            .iter()
            .map(|f| compress(f, p))
            .collect::<Result<_>>()?;
        let m = ((k + 1) * (k + 1)).max(32);
        let grid = DirectionGrid::sized_for(k, m);
        let mut pts = Vec::with_capacity(grid.len());
        for w in &grid.dirs {
            pts.push(compressed_support_point(&compressed, w)?);
        }
        Ok(pts)
    }

    /// Basis and dimension of the linear hull L of the normal cone at the
    /// face with ground projection `p`: the directions u for which p stays
    /// a spectral projection of u·F, i.e. (𝟙−p)(u·F)p = 0 and p(u·F)p ∝ p.
    ///
    /// The cone itself is the subset of L where the ground property holds;
    /// see [`OperatorSystemSpec::normal_cone_contains`].
    pub fn normal_cone_lin_hull(&self, p: &ProjectionNode) -> Result<(Vec<Vec<f64>>, usize)> {
        if p.ambient_dim() != self.n {
            return Err(Error::DimMismatch {
                left: p.ambient_dim(),
                right: self.n,
            });
        }
        let k = self.num_generators();
        let r = p.rank();
        if r == 0 {
            let basis: Vec<Vec<f64>> = (0..k)
                .map(|i| {
                    let mut e = vec![0.0; k];
                    e[i] = 1.0;
                    e
                })
                .collect();
            return Ok((basis, k));
        }
        let b = p.basis();
        let comp = p.subspace.complement();
        let c = comp.basis();
        let mut features: Vec<Vec<f64>> = vec![Vec::new(); k];
        for (i, f) in self.generators.iter().enumerate() {
            let off = c.adjoint().mul(f.matrix()).mul(b);
            for a in 0..off.rows() {
                for bb in 0..off.cols() {
                    features[i].push(off[(a, bb)].re);
                    features[i].push(off[(a, bb)].im);
                }
            }
            let blk = b.adjoint().mul(f.matrix()).mul(b);
            let tr = blk.trace().re / r as f64;
            for a in 0..r {
                for bb in 0..r {
                    let v = blk[(a, bb)]
                        - if a == bb {
                            C64::new(tr, 0.0)
                        } else {
                            C64::new(0.0, 0.0)
                        };
                    features[i].push(v.re);
                    features[i].push(v.im);
                }
            }
        }
        let nrows = features[0].len();
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(nrows);
        for row in 0..nrows {
            rows.push((0..k).map(|i| features[i][row]).collect());
        }
        let m = RMatrix::from_rows(&rows);
        let basis = null_space(&m, 1e-9);
        let dim = basis.len();
        Ok((basis, dim))
    }

    /// Whether the outward direction `u` lies in the normal cone of the
    /// face with ground projection `p`.
    pub fn normal_cone_contains(
        &self,
        p: &ProjectionNode,
        u: &[f64],
        eps_angle: f64,
    ) -> Result<bool> {
        let q = self.face_projection(u, self.default_cluster_eps())?;
        p.subspace.leq(&q.subspace, eps_angle)
    }

    /// Outer membership test: ⟨u,y⟩ ≤ h(u) + ε over a fixed grid.
    ///
    /// One-sided: a `true` answer is accurate up to the grid resolution.
    pub fn state_space_membership(&self, y: &[f64], eps: f64) -> Result<bool> {
        let grid = DirectionGrid::default_for(self.num_generators());
        let table = self.support_table(&grid)?;
        Ok(membership_with_table(&table, y, eps))
    }

    /// Largest violation ⟨u,y⟩ − h(u) over a precomputed table.
    pub fn membership_margin(table: &SupportTable, y: &[f64]) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for (u, h) in table.dirs.iter().zip(&table.values) {
            let v = util::dot(u, y) - h;
            if v > worst {
                worst = v;
            }
        }
        worst
    }

    /// Minimizes the support residual h(v) − ⟨v, pt⟩ over unit directions,
    /// starting from the most promising grid directions. The minimum is 0
    /// exactly when `pt` is a boundary point, and the minimizer lies in
    /// the normal cone at `pt`.
    pub fn support_residual_descent(
        &self,
        pt: &[f64],
        table: &SupportTable,
        starts: usize,
    ) -> Result<(Vec<f64>, f64)> {
        let mut idx: Vec<usize> = (0..table.dirs.len()).collect();
        let residual_at = |i: usize| table.values[i] - util::dot(&table.dirs[i], pt);
        idx.sort_by(|&a, &b| residual_at(a).partial_cmp(&residual_at(b)).unwrap());
        let mut best: Option<(Vec<f64>, f64)> = None;
        for &i in idx.iter().take(starts.max(1)) {
            let res = minimize_on_sphere(
                |v| match self.support_value(v) {
                    Ok((h, _)) => h - util::dot(v, pt),
                    Err(_) => f64::INFINITY,
                },
                &table.dirs[i],
                0.05,
                1e-12,
                1e-13 * self.scale(),
                4000,
            );
            if best.as_ref().map_or(true, |(_, bv)| res.value < *bv) {
                best = Some((res.point, res.value));
            }
        }
        Ok(best.expect("at least one start"))
    }

    /// Classifies a candidate boundary point as exposed or not: descend the
    /// support residual to a normal direction, then inspect the face it
    /// exposes. Not exposed means the face properly contains the point.
    pub fn is_exposed_point(&self, pt: &[f64], tol: f64) -> Result<ExposednessVerdict> {
        let k = self.num_generators();
        let grid = DirectionGrid::sized_for(k, if k == 2 { 720 } else { 2000 });
        let table = self.support_table(&grid)?;
        let (u, value) = self.support_residual_descent(pt, &table, 8)?;
        if value > 1e-7 * self.scale() {
            return Ok(ExposednessVerdict::NotOnBoundary { residual: value });
        }
        let rec = self.exposed_face(&u, self.default_cluster_eps())?;
        if rec.face_dim == 0 {
            let fp = &rec.face_points[0];
            if util::dist(fp, pt) <= tol {
                return Ok(ExposednessVerdict::Exposed { direction: u });
            }
        }
        Ok(ExposednessVerdict::NonExposed { face: rec })
    }

    /// Hunts directions with degenerate ground spaces: positive-dimensional
    /// faces of the convex support live exactly there. Grid local minima of
    /// the first spectral gap are descended to zero, then deepened to the
    /// full degeneracy order.
    pub fn hunt_faces(&self, grid: &DirectionGrid) -> Result<Vec<HuntedFace>> {
        let k = self.num_generators();
        let scale = self.scale();
        let tol_deg = 1e-10 * scale;
        let gap = |u: &[f64], level: usize| -> f64 {
            match crate::herm::eigenvalues(&self.pencil(u).neg()) {
                Ok(vals) if vals.len() > level => vals[level] - vals[0],
                _ => f64::INFINITY,
            }
        };
        // first-gap values over the grid
        let gaps: Vec<f64> = grid.dirs.iter().map(|u| gap(u, 1)).collect();
        let neighbors = grid.neighbor_lists();
        let mut starts: Vec<usize> = Vec::new();
        for i in 0..grid.len() {
            let nb = &neighbors[i];
            if !nb.is_empty() && nb.iter().all(|&j| gaps[i] <= gaps[j]) {
                starts.push(i);
            }
        }
        starts.sort_by(|&a, &b| gaps[a].partial_cmp(&gaps[b]).unwrap());
        starts.truncate(400);
        let mut start_dirs: Vec<Vec<f64>> = starts.iter().map(|&i| grid.dirs[i].clone()).collect();
        // axis directions catch axis-aligned structure cheaply
        for i in 0..k {
            for sign in [1.0, -1.0] {
                let mut e = vec![0.0; k];
                e[i] = sign;
                start_dirs.push(e);
            }
        }
        let mut found: Vec<HuntedFace> = Vec::new();
        for s in &start_dirs {
            let res = minimize_on_sphere(|u| gap(u, 1), s, 0.04, 1e-12, tol_deg * 0.1, 3000);
            if res.value > tol_deg {
                continue;
            }
            let mut u = res.point;
            // deepen: climb the degeneracy order while the next gap closes
            loop {
                let p = self.face_projection(&u, self.default_cluster_eps())?;
                let r = p.rank();
                if r >= self.n {
                    break;
                }
                let deeper =
                    minimize_on_sphere(|v| gap(v, r), &u, 0.02, 1e-12, tol_deg * 0.1, 3000);
                if deeper.value <= tol_deg {
                    u = deeper.point;
                } else {
                    break;
                }
            }
            let p = self.face_projection(&u, self.default_cluster_eps())?;
            let is_new = found.iter().all(|f: &HuntedFace| {
                !f.projection
                    .subspace
                    .approx_eq(&p.subspace, crate::EPS_ANGLE)
                    .unwrap_or(false)
            });
            if is_new {
                found.push(HuntedFace {
                    dir: u,
                    ground_rank: p.rank(),
                    projection: p,
                });
            }
        }
        Ok(found)
    }

    /// Builds a support-sampled body from a sweep; valid for k ∈ {2, 3}.
    pub fn body(&self, grid: &DirectionGrid) -> Result<crate::body::SupportSampledBody> {
        let k = self.num_generators();
        if k != 2 && k != 3 {
            return Err(Error::Degenerate("bodies are 2- or 3-dimensional"));
        }
        let sweep = self.sweep(grid)?;
        let samples = sweep
            .into_iter()
            .map(|s| crate::body::BodySample {
                dir: s.dir,
                h: s.h,
                point: s.point,
            })
            .collect();
        crate::body::SupportSampledBody::new(k, samples)
    }
}

/// Support point of a compressed family in direction `w`.
pub fn compressed_support_point(
    compressed: &[HermitianMatrix],
    w: &[f64],
) -> Result<Vec<f64>> {
    let r = compressed[0].dim();
    let mut pencil = CMatrix::zeros(r, r);
    for (wi, g) in w.iter().zip(compressed) {
        if *wi == 0.0 {
            continue;
        }
        for a in 0..r {
            for b in 0..r {
                pencil[(a, b)] += g.matrix()[(a, b)].scale(*wi);
            }
        }
    }
    let ph = HermitianMatrix::symmetrized(&pencil)?;
    let (_, y) = crate::herm::top_eigenvector(&ph, default_cluster_eps(&ph))?;
    Ok(compressed.iter().map(|g| g.expectation(&y)).collect())
}

/// Verdict of the exposedness check at a boundary point.
#[derive(Clone, Debug)]
pub enum ExposednessVerdict {
    /// The support residual did not descend to zero.
    NotOnBoundary { residual: f64 },
    /// Some direction's argmax is exactly this point.
    Exposed { direction: Vec<f64> },
    /// Every normal direction at the point exposes a strictly larger face.
    NonExposed { face: ExposedFaceRecord },
}

impl ExposednessVerdict {
    pub fn is_exposed(&self) -> bool {
        matches!(self, ExposednessVerdict::Exposed { .. })
    }
}

/// A direction found by degeneracy hunting.
#[derive(Clone, Debug)]
pub struct HuntedFace {
    pub dir: Vec<f64>,
    pub ground_rank: usize,
    pub projection: ProjectionNode,
}

/// Membership test against a precomputed support table.
pub fn membership_with_table(table: &SupportTable, y: &[f64], eps: f64) -> bool {
    OperatorSystemSpec::membership_margin(table, y) <= eps
}

/// Diagonal system whose convex support is the convex hull of the points.
pub fn make_polytope_system(points: &[Vec<f64>]) -> Result<OperatorSystemSpec> {
    if points.is_empty() {
        return Err(Error::EmptyInput("polytope points"));
    }
    let m = points[0].len();
    let n = points.len();
    let mut gens = Vec::with_capacity(m);
    for i in 0..m {
        let d: Vec<f64> = (0..n).map(|j| points[j][i]).collect();
        gens.push(HermitianMatrix::diagonal(&d));
    }
    OperatorSystemSpec::new(gens)
}

fn span_dim_with_identity(generators: &[HermitianMatrix]) -> usize {
    let n = generators[0].dim();
    let mut family: Vec<HermitianMatrix> = Vec::with_capacity(generators.len() + 1);
    family.push(HermitianMatrix::identity(n));
    family.extend(generators.iter().cloned());
    let k1 = family.len();
    let mut gram = RMatrix::zeros(k1, k1);
    for i in 0..k1 {
        for j in 0..k1 {
            gram.set(i, j, family[i].hs_inner(&family[j]));
        }
    }
    crate::realmat::rank(&gram, 1e-10, 1e-14)
}

fn estimate_diameter(sweep: &[SupportSample]) -> f64 {
    let pts: Vec<Vec<f64>> = sweep.iter().map(|s| s.point.clone()).collect();
    // cheap spread estimate: coordinate ranges
    let k = if pts.is_empty() { 0 } else { pts[0].len() };
    let mut d = 0.0f64;
    for i in 0..k {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in &pts {
            lo = lo.min(p[i]);
            hi = hi.max(p[i]);
        }
        d = d.max(hi - lo);
    }
    d.max(1e-9)
}

/// Merges points closer than `tol`, keeping first representatives.
pub fn dedupe_points(points: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .partial_cmp(&points[b])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        let p = &points[i];
        let mut dup = false;
        for &j in kept.iter().rev() {
            if (points[j][0] - p[0]).abs() > tol {
                break;
            }
            if util::dist(&points[j], p) <= tol {
                dup = true;
                break;
            }
        }
        if !dup {
            kept.push(i);
        }
    }
    kept.into_iter().map(|i| points[i].clone()).collect()
}

fn face_dim_of_points(points: &[Vec<f64>], k: usize) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let scale = points
        .iter()
        .flat_map(|p| p.iter())
        .fold(1.0f64, |m, &x| m.max(x.abs()));
    rank_of_point_set(points, 1e-7, 1e-9 * scale).min(k)
}

/// Rank of a set of witness normal directions at relative tolerance 1e-8.
pub fn direction_rank(dirs: &[Vec<f64>]) -> usize {
    rank_of_directions(dirs, 1e-8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::C_I;

    fn cre(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    pub(crate) fn drop_system() -> OperatorSystemSpec {
        let f1 = HermitianMatrix::from_complex_rows(&[
            vec![cre(0.0), cre(1.0), cre(0.0)],
            vec![cre(1.0), cre(0.0), cre(0.0)],
            vec![cre(0.0), cre(0.0), cre(0.0)],
        ])
        .unwrap();
        let f2 = HermitianMatrix::from_complex_rows(&[
            vec![cre(0.0), -C_I, cre(0.0)],
            vec![C_I, cre(0.0), cre(0.0)],
            vec![cre(0.0), cre(0.0), cre(2.0)],
        ])
        .unwrap();
        OperatorSystemSpec::new(vec![f1, f2]).unwrap()
    }

    #[test]
    fn drop_support_up_is_two() {
        let sys = drop_system();
        let (h, sp) = sys.support_value(&[0.0, 1.0]).unwrap();
        assert!((h - 2.0).abs() < 1e-12);
        assert!(util::dist(&sp.coords, &[0.0, 2.0]) < 1e-10);
    }

    // top eigenvector of F1 is (e1+e2)/√2, giving the point (1, 0)
    #[test]
    fn drop_support_right_is_one() {
        let sys = drop_system();
        let (h, sp) = sys.support_value(&[1.0, 0.0]).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
        assert!(util::dist(&sp.coords, &[1.0, 0.0]) < 1e-10);
    }

    #[test]
    fn support_positive_homogeneity() {
        let sys = drop_system();
        let u = [0.3, -0.7];
        let (h1, p1) = sys.support_value(&u).unwrap();
        let (h2, p2) = sys.support_value(&[2.0 * u[0], 2.0 * u[1]]).unwrap();
        assert!((h2 - 2.0 * h1).abs() < 1e-12 * h1.abs().max(1.0));
        assert!(util::dist(&p1.coords, &p2.coords) < 1e-10);
    }

    #[test]
    fn zero_direction_rejected() {
        let sys = drop_system();
        assert!(matches!(
            sys.support_value(&[0.0, 0.0]),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn drop_apex_face() {
        let sys = drop_system();
        let rec = sys.exposed_face(&[0.0, 1.0], sys.default_cluster_eps()).unwrap();
        assert_eq!(rec.face_dim, 0);
        assert_eq!(rec.projection.rank(), 1);
        assert!(util::dist(&rec.face_points[0], &[0.0, 2.0]) < 1e-10);
        assert_eq!(rec.normal_cone_dim, 2);
        assert!(rec.stable);
    }

    #[test]
    fn drop_bottom_face_is_smooth() {
        let sys = drop_system();
        let rec = sys
            .exposed_face(&[0.0, -1.0], sys.default_cluster_eps())
            .unwrap();
        assert_eq!(rec.face_dim, 0);
        assert!(util::dist(&rec.face_points[0], &[0.0, -1.0]) < 1e-10);
        assert_eq!(rec.normal_cone_dim, 1);
    }

    // at the tangent direction (cos π/6, sin π/6) the ground space is
    // two-dimensional and the face is the segment from t₊ to the apex
    #[test]
    fn drop_tangent_segment() {
        let sys = drop_system();
        let phi = core::f64::consts::FRAC_PI_6;
        let rec = sys
            .exposed_face(&[phi.cos(), phi.sin()], sys.default_cluster_eps())
            .unwrap();
        assert_eq!(rec.projection.rank(), 2);
        assert_eq!(rec.face_dim, 1);
        assert_eq!(rec.normal_cone_dim, 1);
        // the sampled face reaches both endpoints
        let t_plus = [3.0f64.sqrt() / 2.0, 0.5];
        let apex = [0.0, 2.0];
        let near = |target: &[f64]| {
            rec.face_points
                .iter()
                .any(|p| util::dist(p, target) < 1e-7)
        };
        assert!(near(&t_plus));
        assert!(near(&apex));
    }

    #[test]
    fn polytope_square_boundary() {
        let square = vec![
            vec![1.0, 1.0],
            vec![1.0, -1.0],
            vec![-1.0, 1.0],
            vec![-1.0, -1.0],
        ];
        let sys = make_polytope_system(&square).unwrap();
        let pts = sys.sample_boundary(&DirectionGrid::circle(256)).unwrap();
        // only the four vertices survive dedup (faces refine onto vertices)
        for p in &pts {
            assert!(
                (p.coords[0].abs() - 1.0).abs() < 1e-9 || (p.coords[1].abs() - 1.0).abs() < 1e-9
            );
        }
        let verts = dedupe_points(
            &pts.iter().map(|p| p.coords.clone()).collect::<Vec<_>>(),
            1e-6,
        );
        assert!(verts.len() >= 4);
    }

    #[test]
    fn polytope_singleton() {
        let sys = make_polytope_system(&[vec![0.25, -0.5]]).unwrap();
        let (h, sp) = sys.support_value(&[1.0, 0.0]).unwrap();
        assert!((h - 0.25).abs() < 1e-14);
        assert!(util::dist(&sp.coords, &[0.25, -0.5]) < 1e-12);
    }

    #[test]
    fn membership_examples() {
        let sys = drop_system();
        assert!(sys.state_space_membership(&[0.0, 0.0], 1e-9).unwrap());
        assert!(!sys.state_space_membership(&[0.0, 2.01], 1e-6).unwrap());
    }

    #[test]
    fn random_density_projects_inside() {
        let sys = drop_system();
        let grid = DirectionGrid::circle(720);
        let table = sys.support_table(&grid).unwrap();
        let mut rng = crate::rng::SplitMix64::new(99);
        for _ in 0..20 {
            let rho = rng.density(3);
            let y = sys.coords_of_density(&rho);
            assert!(membership_with_table(&table, &y, 1e-9));
        }
    }

    #[test]
    fn hunt_finds_drop_segments() {
        let sys = drop_system();
        let hunted = sys.hunt_faces(&DirectionGrid::circle(720)).unwrap();
        let segs: Vec<_> = hunted.iter().filter(|f| f.ground_rank == 2).collect();
        assert_eq!(segs.len(), 2, "two tangent segments");
        for s in &segs {
            assert!((s.dir[1].abs() - 0.5).abs() < 1e-6, "dir {:?}", s.dir);
        }
    }

    #[test]
    fn tangent_points_are_not_exposed() {
        let sys = drop_system();
        let t_plus = [3.0f64.sqrt() / 2.0, 0.5];
        let v = sys.is_exposed_point(&t_plus, 1e-7).unwrap();
        match v {
            ExposednessVerdict::NonExposed { face } => {
                assert_eq!(face.face_dim, 1);
            }
            other => panic!("expected non-exposed, got {other:?}"),
        }
        // the apex is exposed
        let v2 = sys.is_exposed_point(&[0.0, 2.0], 1e-7).unwrap();
        assert!(v2.is_exposed());
    }

    #[test]
    fn shift_invariance_of_boundary_points() {
        let sys = drop_system();
        let shifted = OperatorSystemSpec::new(vec![
            sys.generators()[0].shifted(0.7),
            sys.generators()[1].clone(),
        ])
        .unwrap();
        for u in [[0.6, 0.8], [-0.9, 0.1], [0.3, -0.95]] {
            let (_, p1) = sys.support_value(&u).unwrap();
            let (_, p2) = shifted.support_value(&u).unwrap();
            assert!((p2.coords[0] - p1.coords[0] - 0.7).abs() < 1e-12);
            assert!((p2.coords[1] - p1.coords[1]).abs() < 1e-12);
        }
    }
}
