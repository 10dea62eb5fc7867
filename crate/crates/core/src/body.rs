//! Support-sampled convex bodies in ℝ² and ℝ³: polar and dual bodies,
//! smoothness and strict-convexity tests, and the normal-cone class tests.
//!
//! A body is a table of (direction, support value, argmax point) triples.
//! Its point cloud traces the boundary (the radial map u ↦ u/h(u) of the
//! polar covers every boundary point, including non-exposed ones), so both
//! inner (point) and outer (halfspace) descriptions are available.
//!
//! Class tests follow the normal-cone definitions directly: a body passes
//! the weakest class when every proper normal cone has an exposed ray that
//! is itself a normal cone, the next when it has dim-many linearly
//! independent such rays; the two strongest classes are tested through the
//! polar (no non-exposed points / faces). In the plane the three strongest
//! classes coincide.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::grid::DirectionGrid;
use crate::hull::{cloud_volume, hull2d, hull2d_area, hull3d};
use crate::optimize::{bisect_predicate, minimize_on_sphere};
use crate::realmat::rank_of_directions;
use crate::util::{self, F64Ext};
use crate::Result;

/// One support sample: unit direction, support value, a maximizing point.
#[derive(Clone, Debug)]
pub struct BodySample {
    pub dir: Vec<f64>,
    pub h: f64,
    pub point: Vec<f64>,
}

/// A convex body represented by support samples.
#[derive(Clone, Debug)]
pub struct SupportSampledBody {
    pub dim: usize,
    pub samples: Vec<BodySample>,
    pub origin_interior: bool,
}

/// Pass/fail/inconclusive verdict for a class membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    Pass,
    Fail,
    Inconclusive,
}

/// A confirmed flat (positive-dimensional) exposed face.
#[derive(Clone, Debug)]
pub struct FlatFace {
    pub normal: Vec<f64>,
    pub support: f64,
    pub points: Vec<Vec<f64>>,
    pub diameter: f64,
    pub affine_dim: usize,
}

/// A boundary point whose normal cone has dimension at least two.
#[derive(Clone, Debug)]
pub struct NonSmoothPoint {
    pub point: Vec<f64>,
    pub cone_dim: usize,
    /// Sampled directions of the normal cone at the point.
    pub cone_dirs: Vec<Vec<f64>>,
}

/// Outcome of the class analysis.
#[derive(Clone, Debug)]
pub struct BodyClassReport {
    pub c0: Flag,
    pub c: Flag,
    pub c_prime: Flag,
    pub c_double_prime: Flag,
    pub smooth: bool,
    pub strictly_convex: bool,
    pub vertices: Vec<NonSmoothPoint>,
    pub flats: Vec<FlatFace>,
}

impl BodyClassReport {
    /// Nesting coherence: a pass at a stronger class never sits above a
    /// fail at a weaker one.
    pub fn nesting_consistent(&self) -> bool {
        let order = [self.c_double_prime, self.c_prime, self.c, self.c0];
        // once a Pass appears, everything weaker must pass as well
        let mut seen_pass = false;
        for f in order {
            if seen_pass && f == Flag::Fail {
                return false;
            }
            if f == Flag::Pass {
                seen_pass = true;
            }
        }
        true
    }
}

impl SupportSampledBody {
    pub fn new(dim: usize, samples: Vec<BodySample>) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::OutOfRange("body dimension must be 2 or 3"));
        }
        if samples.is_empty() {
            return Err(Error::EmptyInput("body samples"));
        }
        let origin_interior = samples.iter().all(|s| s.h > 1e-12);
        Ok(SupportSampledBody {
            dim,
            samples,
            origin_interior,
        })
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        self.samples.iter().map(|s| s.point.clone()).collect()
    }

    /// Spread of the sampled points: the body's size scale.
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.dim {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for s in &self.samples {
                lo = lo.min(s.point[i]);
                hi = hi.max(s.point[i]);
            }
            d = d.max(hi - lo);
        }
        d.max(1e-12)
    }

    /// Support value in an arbitrary direction, evaluated over the traced
    /// point cloud.
    pub fn support(&self, v: &[f64]) -> f64 {
        self.samples
            .iter()
            .map(|s| util::dot(v, &s.point))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices of sample points within `tol` of the supporting hyperplane.
    pub fn argmax_set(&self, v: &[f64], tol: f64) -> Vec<usize> {
        let h = self.support(v);
        (0..self.samples.len())
            .filter(|&i| util::dot(v, &self.samples[i].point) >= h - tol)
            .collect()
    }

    pub fn argmax_points(&self, v: &[f64], tol: f64) -> Vec<Vec<f64>> {
        self.argmax_set(v, tol)
            .into_iter()
            .map(|i| self.samples[i].point.clone())
            .collect()
    }

    /// Body translated by `c`.
    pub fn translate(&self, c: &[f64]) -> SupportSampledBody {
        let samples = self
            .samples
            .iter()
            .map(|s| BodySample {
                dir: s.dir.clone(),
                h: s.h + util::dot(&s.dir, c),
                point: util::add(&s.point, c),
            })
            .collect();
        SupportSampledBody::new(self.dim, samples).expect("translate keeps validity")
    }

    /// Translates the centroid of the traced boundary to the origin.
    pub fn centered(&self) -> (SupportSampledBody, Vec<f64>) {
        let c = util::centroid(&self.points());
        let shift = util::scale(&c, -1.0);
        let mut body = self.translate(&shift);
        body.origin_interior = body.samples.iter().all(|s| s.h > 1e-12);
        (body, c)
    }

    /// Polar body: the convex hull of the scaled normals u/h(u), returned
    /// as a fresh support-sampled body over a grid of the same size.
    pub fn polar(&self) -> Result<SupportSampledBody> {
        if !self.origin_interior {
            return Err(Error::Degenerate("polar requires the origin interior"));
        }
        let verts: Vec<Vec<f64>> = self
            .samples
            .iter()
            .map(|s| {
                if s.h <= 0.0 {
                    Err(Error::Degenerate("non-positive support value"))
                } else {
                    Ok(util::scale(&s.dir, 1.0 / s.h))
                }
            })
            .collect::<Result<_>>()?;
        let grid = DirectionGrid::sized_for(self.dim, self.samples.len());
        let samples = grid
            .dirs
            .iter()
            .map(|v| {
                let mut best = 0usize;
                let mut best_val = f64::NEG_INFINITY;
                for (i, w) in verts.iter().enumerate() {
                    let val = util::dot(v, w);
                    if val > best_val {
                        best_val = val;
                        best = i;
                    }
                }
                BodySample {
                    dir: v.clone(),
                    h: best_val,
                    point: verts[best].clone(),
                }
            })
            .collect();
        SupportSampledBody::new(self.dim, samples)
    }

    /// Dual body: the point reflection of the polar.
    pub fn dual(&self) -> Result<SupportSampledBody> {
        let p = self.polar()?;
        let samples = p
            .samples
            .into_iter()
            .map(|s| BodySample {
                dir: util::scale(&s.dir, -1.0),
                h: s.h,
                point: util::scale(&s.point, -1.0),
            })
            .collect();
        SupportSampledBody::new(self.dim, samples)
    }

    /// Hull volume (area in the plane) of the traced boundary.
    pub fn volume(&self) -> Result<f64> {
        let pts = self.points();
        if self.dim == 2 {
            Ok(hull2d_area(&pts))
        } else {
            cloud_volume(&pts)
        }
    }

    /// Support-residual h(v) − ⟨v, pt⟩; zero exactly on the normal cone of
    /// a boundary point.
    pub fn residual(&self, v: &[f64], pt: &[f64]) -> f64 {
        self.support(v) - util::dot(v, pt)
    }

    /// Directions of the normal cone at a boundary point, found by
    /// multi-start residual descent over the sphere.
    pub fn normal_cone_probe(&self, pt: &[f64], starts: usize) -> Vec<Vec<f64>> {
        let scale = self.diameter();
        let tol_zero = 1e-8 * scale;
        let mut idx: Vec<usize> = (0..self.samples.len()).collect();
        idx.sort_by(|&a, &b| {
            self.residual(&self.samples[a].dir, pt)
                .partial_cmp(&self.residual(&self.samples[b].dir, pt))
                .unwrap()
        });
        let mut pool: Vec<Vec<f64>> = Vec::new();
        for &i in idx.iter().take(starts.max(1)) {
            let res = minimize_on_sphere(
                |v| self.residual(v, pt),
                &self.samples[i].dir,
                0.1,
                1e-12,
                1e-12 * scale,
                1500,
            );
            if res.value <= tol_zero {
                let is_new = pool
                    .iter()
                    .all(|d| util::dist(d, &res.point) > 1e-7);
                if is_new {
                    pool.push(res.point);
                }
            }
        }
        pool
    }

    /// Dimension of the normal cone at a boundary point: 2D by the angular
    /// width of the zero-residual arc, 3D by the rank of probed directions.
    pub fn normal_cone_dim_at(&self, pt: &[f64]) -> Result<usize> {
        let scale = self.diameter();
        let pool = self.normal_cone_probe(pt, if self.dim == 2 { 8 } else { 16 });
        if pool.is_empty() {
            return Err(Error::Degenerate("point is not on the sampled boundary"));
        }
        if self.dim == 2 {
            let (lo, hi) = self.cone_arc_2d(pt, &pool[0]);
            Ok(if hi - lo > 1e-6 { 2 } else { 1 })
        } else {
            // angular spread first, then rank for 2 vs 3
            let spread = max_pairwise_angle(&pool);
            if spread < 1e-6 {
                return Ok(1);
            }
            Ok(rank_of_directions(&pool, 1e-6).min(3).max(2))
        }
    }

    /// Angular extent [lo, hi] of the 2D normal cone at `pt` around a
    /// zero-residual direction.
    pub fn cone_arc_2d(&self, pt: &[f64], inside: &[f64]) -> (f64, f64) {
        let scale = self.diameter();
        let tol = 1e-9 * scale;
        let theta0 = inside[1].atan2(inside[0]);
        let resid = |theta: f64| {
            let v = [theta.cos(), theta.sin()];
            self.residual(&v, pt)
        };
        let inside_pred = |theta: f64| resid(theta) <= tol;
        // expand to bracket the arc, then bisect both edges
        let mut lo_out = theta0;
        let mut step = 1e-4;
        while inside_pred(lo_out) && step < 4.0 {
            lo_out = theta0 - step;
            step *= 2.0;
        }
        let mut hi_out = theta0;
        step = 1e-4;
        while inside_pred(hi_out) && step < 4.0 {
            hi_out = theta0 + step;
            step *= 2.0;
        }
        let lo = -bisect_predicate(|t| inside_pred(-t), -theta0, -lo_out, 1e-12);
        let hi = bisect_predicate(inside_pred, theta0, hi_out, 1e-12);
        (lo, hi)
    }

    /// Confirmed flat faces: candidate normals come from jumps between
    /// neighboring boundary samples, are refined by an affine fit of the
    /// coarse argmax set, and confirmed by a two-scale diameter test.
    pub fn detect_flats(&self) -> Vec<FlatFace> {
        let diam = self.diameter();
        let n = self.samples.len();
        let grid_spacing = estimate_dir_spacing(&self.samples);
        let jump_thresh = (5.0 * grid_spacing * diam).max(1e-4 * diam);
        let mut flats: Vec<FlatFace> = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            if self.dim == 3 && j == 0 {
                continue;
            }
            let pa = &self.samples[i].point;
            let pb = &self.samples[j].point;
            let jump = util::dist(pa, pb);
            if jump < jump_thresh {
                continue;
            }
            let v0 = match crate::grid::bisect_dirs(&self.samples[i].dir, &self.samples[j].dir) {
                Some(v) => v,
                None => continue,
            };
            // coarse window deep enough to cover a face tilted by the
            // local grid spacing
            let tol_coarse = 2.0 * jump * grid_spacing + 1e-7 * diam;
            let coarse = self.argmax_points(&v0, tol_coarse);
            if coarse.len() < 2 {
                continue;
            }
            if let Some(flat) = self.refine_flat(&coarse, diam) {
                let is_new = flats.iter().all(|f| {
                    util::dist(&f.normal, &flat.normal) > 1e-6
                        || (f.support - flat.support).abs() > 1e-6 * diam
                });
                if is_new {
                    flats.push(flat);
                }
            }
        }
        flats
    }

    /// Fits the affine hull of candidate face points, recovers the exact
    /// face normal and re-extracts the face at tight tolerance.
    fn refine_flat(&self, coarse: &[Vec<f64>], diam: f64) -> Option<FlatFace> {
        let c = util::centroid(coarse);
        let normal = if self.dim == 2 {
            // direction of largest spread, rotated by π/2
            let far = coarse
                .iter()
                .max_by(|a, b| {
                    util::dist(a, &c)
                        .partial_cmp(&util::dist(b, &c))
                        .unwrap()
                })?;
            let t = util::normalize(&util::sub(far, &c), 1e-12 * diam)?;
            vec![-t[1], t[0]]
        } else {
            plane_normal(coarse, diam)?
        };
        // orient outward: support in +normal must exceed ⟨normal, centroid⟩
        let mut normal = normal;
        let interior = util::centroid(&self.points());
        if util::dot(&normal, &util::sub(&c, &interior)) < 0.0 {
            normal = util::scale(&normal, -1.0);
        }
        let tol_hi = 1e-7 * diam;
        let tol_lo = 1e-10 * diam;
        let face_hi = self.argmax_points(&normal, tol_hi);
        let face_lo = self.argmax_points(&normal, tol_lo);
        let d_hi = util::diameter(&face_hi);
        let d_lo = util::diameter(&face_lo);
        // flats keep their extent as the tolerance shrinks; curved caps don't
        if d_hi < 1e-4 * diam || d_lo < 0.5 * d_hi {
            return None;
        }
        let affine_dim = crate::realmat::rank_of_point_set(&face_lo, 1e-7, 1e-9 * diam);
        Some(FlatFace {
            support: self.support(&normal),
            normal,
            diameter: d_lo,
            points: face_lo,
            affine_dim,
        })
    }

    /// Non-smooth boundary points. In the plane these are argmax points
    /// repeated across runs of directions; in space they are found where
    /// the direction-to-point map collapses (local curvature radius near
    /// zero) and confirmed by probing the cone dimension.
    pub fn detect_nonsmooth_points(&self) -> Vec<NonSmoothPoint> {
        if self.dim == 2 {
            self.detect_vertices_2d()
        } else {
            self.detect_nonsmooth_3d()
        }
    }

    fn detect_vertices_2d(&self) -> Vec<NonSmoothPoint> {
        let diam = self.diameter();
        let spacing = estimate_dir_spacing(&self.samples);
        let n = self.samples.len();
        let coincide = |a: &[f64], b: &[f64]| util::dist(a, b) <= 1e-9 * diam;
        let mut out: Vec<NonSmoothPoint> = Vec::new();
        let mut i = 0;
        while i < n {
            // run of consecutive directions exposing the same point
            let mut len = 1;
            while len < n
                && coincide(
                    &self.samples[i].point,
                    &self.samples[(i + len) % n].point,
                )
            {
                len += 1;
            }
            if len >= 4 {
                let pt = self.samples[i].point.clone();
                let mid = &self.samples[(i + len / 2) % n].dir;
                let (lo, hi) = self.cone_arc_2d(&pt, mid);
                if hi - lo > (3.0 * spacing).max(1e-4) {
                    let dirs = vec![
                        vec![lo.cos(), lo.sin()],
                        vec![hi.cos(), hi.sin()],
                    ];
                    if out.iter().all(|v| !coincide(&v.point, &pt)) {
                        out.push(NonSmoothPoint {
                            point: pt,
                            cone_dim: 2,
                            cone_dirs: dirs,
                        });
                    }
                }
            }
            i += len.max(1);
        }
        out
    }

    fn detect_nonsmooth_3d(&self) -> Vec<NonSmoothPoint> {
        let diam = self.diameter();
        let n = self.samples.len();
        // collapse of the inverse gauss map signals a crease or corner
        let mut candidates: Vec<Vec<f64>> = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let du = util::dist(&self.samples[i].dir, &self.samples[i + 1].dir);
            let dp = util::dist(&self.samples[i].point, &self.samples[i + 1].point);
            if du > 1e-9 && dp / du < 0.02 * diam {
                let cand = util::midpoint(&self.samples[i].point, &self.samples[i + 1].point);
                if candidates
                    .iter()
                    .all(|c| util::dist(c, &cand) > 0.03 * diam)
                {
                    candidates.push(cand);
                }
            }
        }
        candidates.truncate(120);
        let mut out: Vec<NonSmoothPoint> = Vec::new();
        for cand in candidates {
            let pool = self.normal_cone_probe(&cand, 8);
            if pool.is_empty() {
                continue;
            }
            let spread = max_pairwise_angle(&pool);
            if spread < 1e-5 {
                continue;
            }
            let dim = rank_of_directions(&pool, 1e-6).clamp(2, 3);
            out.push(NonSmoothPoint {
                point: cand,
                cone_dim: dim,
                cone_dirs: pool,
            });
        }
        out
    }

    /// Whether the ray `v` is itself a normal cone of the body: the face
    /// it exposes must be smooth, i.e. the cone at a relative interior
    /// point of that face is one-dimensional.
    pub fn ray_is_normal_cone(&self, v: &[f64]) -> bool {
        let diam = self.diameter();
        let face = self.argmax_points(v, 1e-7 * diam);
        if face.is_empty() {
            return false;
        }
        let c = util::centroid(&face);
        // pull the centroid back to the supporting hyperplane
        matches!(self.normal_cone_dim_at(&c), Ok(1))
    }

    /// Full class analysis.
    pub fn classify(&self) -> Result<BodyClassReport> {
        let body = if self.origin_interior {
            self.clone()
        } else {
            let (b, _) = self.centered();
            if !b.origin_interior {
                return Err(Error::Degenerate("no interior point after centering"));
            }
            b
        };
        let flats = body.detect_flats();
        let vertices = body.detect_nonsmooth_points();
        let smooth = vertices.is_empty();
        let strictly_convex = flats.is_empty();

        // weakest two classes, straight from the cone definitions
        let mut c0 = Flag::Pass;
        let mut c = Flag::Pass;
        for vtx in &vertices {
            let rays = body.cone_extreme_rays(vtx);
            let passing: Vec<Vec<f64>> = rays
                .iter()
                .filter(|r| body.ray_is_normal_cone(r))
                .cloned()
                .collect();
            if passing.is_empty() {
                c0 = Flag::Fail;
                c = Flag::Fail;
                break;
            }
            if rank_of_directions(&passing, 1e-8) < vtx.cone_dim {
                c = Flag::Fail;
            }
        }

        let (c_prime, c_double_prime) = if body.dim == 2 {
            // in the plane the strongest three classes coincide
            (c, c)
        } else {
            body.classify_polar_route(&flats)?
        };

        let mut report = BodyClassReport {
            c0,
            c,
            c_prime,
            c_double_prime,
            smooth,
            strictly_convex,
            vertices,
            flats,
        };
        propagate_nesting(&mut report);
        Ok(report)
    }

    /// Extreme rays of the cone at a non-smooth point: arc ends in the
    /// plane, the directional hull of the probe pool in space.
    fn cone_extreme_rays(&self, vtx: &NonSmoothPoint) -> Vec<Vec<f64>> {
        if self.dim == 2 {
            return vtx.cone_dirs.clone();
        }
        let pool = if vtx.cone_dirs.len() >= 2 {
            vtx.cone_dirs.clone()
        } else {
            self.normal_cone_probe(&vtx.point, 16)
        };
        if pool.len() <= 2 {
            return pool;
        }
        if vtx.cone_dim == 2 {
            // planar wedge: take angular extremes within the wedge plane
            let m = util::centroid(&pool);
            let m = match util::normalize(&m, 1e-9) {
                Some(v) => v,
                None => return pool,
            };
            let mut t1 = util::sub(&pool[0], &util::scale(&m, util::dot(&pool[0], &m)));
            let t1 = match util::normalize(&t1, 1e-9) {
                Some(v) => v,
                None => {
                    t1 = util::sub(&pool[1], &util::scale(&m, util::dot(&pool[1], &m)));
                    match util::normalize(&t1, 1e-9) {
                        Some(v) => v,
                        None => return pool,
                    }
                }
            };
            let angle_of = |d: &Vec<f64>| util::dot(d, &t1).atan2(util::dot(d, &m));
            let lo = pool
                .iter()
                .min_by(|a, b| angle_of(a).partial_cmp(&angle_of(b)).unwrap())
                .unwrap()
                .clone();
            let hi = pool
                .iter()
                .max_by(|a, b| angle_of(a).partial_cmp(&angle_of(b)).unwrap())
                .unwrap()
                .clone();
            vec![lo, hi]
        } else {
            // full-dimensional cone: gnomonic hull of the pool
            let m = match util::normalize(&util::centroid(&pool), 1e-9) {
                Some(v) => v,
                None => return pool,
            };
            let frame = orthobasis_3d(&m);
            let proj: Vec<Vec<f64>> = pool
                .iter()
                .map(|d| {
                    let denom = util::dot(d, &m).max(1e-6);
                    vec![
                        util::dot(d, &frame.0) / denom,
                        util::dot(d, &frame.1) / denom,
                    ]
                })
                .collect();
            let hull = hull2d(&proj);
            hull.into_iter().map(|i| pool[i].clone()).collect()
        }
    }

    /// Tests through the polar: no non-exposed points (stronger class) and
    /// additionally no non-exposed faces (strongest class).
    fn classify_polar_route(&self, _flats: &[FlatFace]) -> Result<(Flag, Flag)> {
        let polar = self.polar()?;
        let diam = polar.diameter();
        let pts = polar.points();
        let hull = match hull3d(&pts) {
            Ok(h) => h,
            Err(_) => return Ok((Flag::Inconclusive, Flag::Inconclusive)),
        };
        // extreme-point candidates are the hull vertices; each must be
        // some direction's singleton argmax to be exposed
        let mut c_prime = Flag::Pass;
        for &vi in &hull.vertices {
            let vert = &pts[vi];
            // generating-direction shortcut
            let own = &polar.samples[vi].dir;
            if self.singleton_argmax(&polar, own, vert, diam) {
                continue;
            }
            // search normal directions at the vertex
            let pool = polar.normal_cone_probe(vert, 8);
            let exposed = pool
                .iter()
                .any(|v| self.singleton_argmax(&polar, v, vert, diam));
            if !exposed {
                c_prime = Flag::Fail;
                break;
            }
        }
        // non-exposed faces: every edge of every flat face of the polar
        // must itself be an argmax set
        let mut c_dp = if c_prime == Flag::Fail {
            Flag::Fail
        } else {
            Flag::Pass
        };
        if c_dp == Flag::Pass {
            let polar_flats = polar.detect_flats();
            'outer: for flat in &polar_flats {
                for edge in face_boundary_edges(&flat.points, diam) {
                    let mid = util::midpoint(&edge.0, &edge.1);
                    let pool = polar.normal_cone_probe(&mid, 6);
                    if pool.is_empty() {
                        c_dp = Flag::Inconclusive;
                        continue;
                    }
                    let edge_len = util::dist(&edge.0, &edge.1);
                    let exposed = pool.iter().any(|v| {
                        let am = polar.argmax_points(v, 1e-7 * diam);
                        let d = util::diameter(&am);
                        (d - edge_len).abs() <= 0.05 * edge_len
                            && am.iter().all(|p| {
                                point_segment_distance(p, &edge.0, &edge.1) <= 1e-5 * diam
                            })
                    });
                    if !exposed {
                        c_dp = Flag::Fail;
                        break 'outer;
                    }
                }
            }
        }
        Ok((c_prime, c_dp))
    }

    fn singleton_argmax(
        &self,
        polar: &SupportSampledBody,
        v: &[f64],
        vert: &[f64],
        diam: f64,
    ) -> bool {
        let am = polar.argmax_points(v, 1e-8 * diam);
        !am.is_empty()
            && am.iter().all(|p| util::dist(p, vert) <= 1e-6 * diam)
    }
}

fn propagate_nesting(r: &mut BodyClassReport) {
    // pass at a stronger class forces pass at the weaker ones
    if r.c_double_prime == Flag::Pass {
        r.c_prime = Flag::Pass;
    }
    if r.c_prime == Flag::Pass {
        r.c = Flag::Pass;
    }
    if r.c == Flag::Pass {
        r.c0 = Flag::Pass;
    }
    // fail at a weaker class forces fail at the stronger ones
    if r.c0 == Flag::Fail {
        r.c = Flag::Fail;
    }
    if r.c == Flag::Fail {
        r.c_prime = Flag::Fail;
    }
    if r.c_prime == Flag::Fail {
        r.c_double_prime = Flag::Fail;
    }
}

fn estimate_dir_spacing(samples: &[BodySample]) -> f64 {
    let mut acc = 0.0;
    let mut cnt = 0usize;
    let step = (samples.len() / 64).max(1);
    let mut i = 0;
    while i + 1 < samples.len() {
        acc += util::dist(&samples[i].dir, &samples[i + 1].dir);
        cnt += 1;
        i += step;
    }
    if cnt == 0 {
        0.1
    } else {
        acc / cnt as f64
    }
}

fn max_pairwise_angle(dirs: &[Vec<f64>]) -> f64 {
    let mut m = 0.0f64;
    for i in 0..dirs.len() {
        for j in (i + 1)..dirs.len() {
            let c = util::dot(&dirs[i], &dirs[j]).clamp(-1.0, 1.0);
            m = m.max(c.acos());
        }
    }
    m
}

fn plane_normal(points: &[Vec<f64>], diam: f64) -> Option<Vec<f64>> {
    // smallest-spread direction of the centered cloud via its 3×3 scatter
    let c = util::centroid(points);
    let mut s = [[0.0f64; 3]; 3];
    for p in points {
        let d = util::sub(p, &c);
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] += d[i] * d[j];
            }
        }
    }
    let rows: Vec<Vec<crate::cmat::C64>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| crate::cmat::C64::new(s[i][j], 0.0))
                .collect()
        })
        .collect();
    let hm = crate::herm::HermitianMatrix::from_complex_rows(&rows).ok()?;
    let sd = crate::herm::spectral_decompose(&hm, 1e-18 * diam * diam + 1e-300).ok()?;
    let v = sd.eigenvectors.col(0);
    util::normalize(&[v[0].re, v[1].re, v[2].re], 1e-12)
}

/// Boundary edges (pairs of consecutive 2D-hull vertices) of a sampled
/// flat face, filtered to genuinely long edges.
fn face_boundary_edges(points: &[Vec<f64>], diam: f64) -> Vec<(Vec<f64>, Vec<f64>)> {
    if points.len() < 3 {
        if points.len() == 2 {
            return vec![(points[0].clone(), points[1].clone())];
        }
        return Vec::new();
    }
    // project onto the face plane
    let c = util::centroid(points);
    let normal = match plane_normal(points, diam) {
        Some(n) => n,
        None => return Vec::new(),
    };
    let frame = orthobasis_3d(&normal);
    let proj: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            let d = util::sub(p, &c);
            vec![util::dot(&d, &frame.0), util::dot(&d, &frame.1)]
        })
        .collect();
    let hull = hull2d(&proj);
    let mut edges = Vec::new();
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        if util::dist(&points[a], &points[b]) > 0.02 * diam {
            edges.push((points[a].clone(), points[b].clone()));
        }
    }
    edges
}

fn orthobasis_3d(n: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let pick = if n[0].abs() < 0.9 {
        vec![1.0, 0.0, 0.0]
    } else {
        vec![0.0, 1.0, 0.0]
    };
    let mut t1 = util::sub(&pick, &util::scale(n, util::dot(&pick, n)));
    t1 = util::normalize(&t1, 1e-12).unwrap_or(pick);
    let t2 = vec![
        n[1] * t1[2] - n[2] * t1[1],
        n[2] * t1[0] - n[0] * t1[2],
        n[0] * t1[1] - n[1] * t1[0],
    ];
    (t1, t2)
}

/// Distance from a point to a segment.
pub fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab = util::sub(b, a);
    let ap = util::sub(p, a);
    let len2 = util::dot(&ab, &ab);
    if len2 <= 1e-300 {
        return util::dist(p, a);
    }
    let t = (util::dot(&ap, &ab) / len2).clamp(0.0, 1.0);
    let proj = util::add(a, &util::scale(&ab, t));
    util::dist(p, &proj)
}

/// Hausdorff distance between convex bodies via their support functions,
/// evaluated over both bodies' direction sets.
pub fn support_distance(a: &SupportSampledBody, b: &SupportSampledBody) -> f64 {
    let mut worst = 0.0f64;
    for s in a.samples.iter().chain(b.samples.iter()) {
        let d = (a.support(&s.dir) - b.support(&s.dir)).abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_disk(n: usize) -> SupportSampledBody {
        let g = DirectionGrid::circle(n);
        let samples = g
            .dirs
            .iter()
            .map(|u| BodySample {
                dir: u.clone(),
                h: 1.0,
                point: u.clone(),
            })
            .collect();
        SupportSampledBody::new(2, samples).unwrap()
    }

    #[test]
    fn disk_is_self_polar() {
        let d = unit_disk(720);
        let p = d.polar().unwrap();
        assert!(support_distance(&d, &p) < 1e-6);
    }

    #[test]
    fn disk_classify_is_oval() {
        let d = unit_disk(720);
        let r = d.classify().unwrap();
        assert!(r.smooth);
        assert!(r.strictly_convex);
        assert_eq!(r.c0, Flag::Pass);
        assert_eq!(r.c, Flag::Pass);
        assert!(r.nesting_consistent());
    }

    #[test]
    fn dual_of_symmetric_body_equals_polar() {
        let d = unit_disk(360);
        let p = d.polar().unwrap();
        let q = d.dual().unwrap();
        assert!(support_distance(&p, &q) < 1e-9);
    }

    #[test]
    fn translate_moves_support() {
        let d = unit_disk(64);
        let t = d.translate(&[0.5, 0.0]);
        assert!((t.support(&[1.0, 0.0]) - 1.5).abs() < 1e-12);
        assert!((t.support(&[-1.0, 0.0]) - 0.5).abs() < 1e-12);
    }
}
