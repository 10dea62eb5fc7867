//! Convex hulls of point clouds in the plane and in space.
//!
//! The 3D hull is a quickhull with conflict lists and horizon BFS; points
//! within a plane-thickness epsilon of a facet are treated as interior,
//! which keeps densely sampled flat faces from shattering into slivers.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::util::F64Ext;
use crate::Result;

/// Indices of the convex hull of a planar point set, counter-clockwise
/// (Andrew's monotone chain). Collinear interior points are dropped.
pub fn hull2d(points: &[Vec<f64>]) -> Vec<usize> {
    let n = points.len();
    if n < 3 {
        return (0..n).collect();
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| {
        points[a]
            .partial_cmp(&points[b])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let cross = |o: usize, a: usize, b: usize| -> f64 {
        (points[a][0] - points[o][0]) * (points[b][1] - points[o][1])
            - (points[a][1] - points[o][1]) * (points[b][0] - points[o][0])
    };
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    for &i in &idx {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], i) <= 0.0 {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in idx.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], i) <= 0.0
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// Area of the convex hull of a planar point set.
pub fn hull2d_area(points: &[Vec<f64>]) -> f64 {
    let h = hull2d(points);
    if h.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..h.len() {
        let a = &points[h[i]];
        let b = &points[h[(i + 1) % h.len()]];
        acc += a[0] * b[1] - b[0] * a[1];
    }
    0.5 * acc.abs()
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn sub3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: &[f64; 3], b: &[f64]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[derive(Clone, Debug)]
struct Facet {
    v: [usize; 3],
    /// neighbor facet across edge (v[i], v[(i+1)%3])
    nbr: [usize; 3],
    normal: [f64; 3],
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl Facet {
    fn dist(&self, p: &[f64]) -> f64 {
        dot3(&self.normal, p) - self.offset
    }
}

/// Triangulated convex hull of a 3D point cloud.
#[derive(Clone, Debug)]
pub struct Hull3 {
    pub facets: Vec<[usize; 3]>,
    pub vertices: Vec<usize>,
}

pub fn hull3d(points: &[Vec<f64>]) -> Result<Hull3> {
    if points.len() < 4 {
        return Err(Error::Degenerate("fewer than four points"));
    }
    let scale = cloud_scale(points);
    let eps = 1e-9 * scale;

    let (a, b, c, d) = initial_tetrahedron(points, eps)?;
    let mut facets: Vec<Facet> = Vec::new();
    let interior = [
        (points[a][0] + points[b][0] + points[c][0] + points[d][0]) / 4.0,
        (points[a][1] + points[b][1] + points[c][1] + points[d][1]) / 4.0,
        (points[a][2] + points[b][2] + points[c][2] + points[d][2]) / 4.0,
    ];
    for tri in [[a, b, c], [a, b, d], [a, c, d], [b, c, d]] {
        facets.push(make_facet(points, tri, &interior));
    }
    rebuild_adjacency(&mut facets);

    // conflict lists
    let mut pending: Vec<usize> = Vec::new();
    {
        let mut unassigned: Vec<usize> = (0..points.len())
            .filter(|&i| i != a && i != b && i != c && i != d)
            .collect();
        for fi in 0..facets.len() {
            let mut rest = Vec::new();
            for &pi in &unassigned {
                if facets[fi].dist(&points[pi]) > eps {
                    facets[fi].outside.push(pi);
                } else {
                    rest.push(pi);
                }
            }
            unassigned = rest;
        }
        for (fi, f) in facets.iter().enumerate() {
            if !f.outside.is_empty() {
                pending.push(fi);
            }
        }
    }

    while let Some(fi) = pending.pop() {
        if !facets[fi].alive || facets[fi].outside.is_empty() {
            continue;
        }
        // furthest conflict point of this facet
        let (&p, _) = facets[fi]
            .outside
            .iter()
            .map(|pi| (pi, facets[fi].dist(&points[*pi])))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        // visible set by BFS over adjacency
        let mut visible = vec![false; facets.len()];
        let mut stack = vec![fi];
        visible[fi] = true;
        let mut visible_list = vec![fi];
        while let Some(g) = stack.pop() {
            for e in 0..3 {
                let h = facets[g].nbr[e];
                if !visible[h] && facets[h].alive && facets[h].dist(&points[p]) > eps {
                    visible[h] = true;
                    visible_list.push(h);
                    stack.push(h);
                }
            }
        }
        // horizon: directed edges of visible facets whose neighbor is hidden
        let mut horizon: Vec<(usize, usize, usize)> = Vec::new(); // (from, to, outer facet)
        for &g in &visible_list {
            for e in 0..3 {
                let h = facets[g].nbr[e];
                if !visible[h] {
                    horizon.push((facets[g].v[e], facets[g].v[(e + 1) % 3], h));
                }
            }
        }
        if horizon.is_empty() {
            return Err(Error::Degenerate("empty horizon"));
        }
        // order the horizon into a loop
        let mut loop_edges: Vec<(usize, usize, usize)> = Vec::with_capacity(horizon.len());
        let mut current = horizon[0];
        loop {
            loop_edges.push(current);
            if loop_edges.len() > horizon.len() {
                return Err(Error::Degenerate("horizon failed to close"));
            }
            if current.1 == horizon[0].0 {
                break;
            }
            match horizon.iter().find(|e| e.0 == current.1) {
                Some(&next) => current = next,
                None => return Err(Error::Degenerate("broken horizon")),
            }
        }
        // collect orphaned conflict points
        let mut orphans: Vec<usize> = Vec::new();
        for &g in &visible_list {
            orphans.extend(facets[g].outside.iter().copied().filter(|&q| q != p));
            facets[g].outside.clear();
            facets[g].alive = false;
        }
        // build the cone of new facets
        let first_new = facets.len();
        let m = loop_edges.len();
        for (i, &(ea, eb, outer)) in loop_edges.iter().enumerate() {
            let mut f = make_facet(points, [p, ea, eb], &interior);
            // edges of (p, ea, eb): (p,ea) -> previous cone facet,
            // (ea,eb) -> outer, (eb,p) -> next cone facet
            let (pe, ae, be) = facet_edge_order(&f, p, ea, eb);
            f.nbr[pe] = first_new + (i + m - 1) % m;
            f.nbr[ae] = outer;
            f.nbr[be] = first_new + (i + 1) % m;
            facets.push(f);
            // rewire the outer facet toward the new one
            let new_id = first_new + i;
            for e in 0..3 {
                let (x, y) = (facets[outer].v[e], facets[outer].v[(e + 1) % 3]);
                if (x == eb && y == ea) || (x == ea && y == eb) {
                    facets[outer].nbr[e] = new_id;
                }
            }
        }
        // redistribute orphans
        for q in orphans {
            for i in 0..m {
                let fid = first_new + i;
                if facets[fid].dist(&points[q]) > eps {
                    facets[fid].outside.push(q);
                    break;
                }
            }
        }
        for i in 0..m {
            let fid = first_new + i;
            if !facets[fid].outside.is_empty() {
                pending.push(fid);
            }
        }
    }

    let mut tri = Vec::new();
    let mut seen = vec![false; points.len()];
    let mut vertices = Vec::new();
    for f in &facets {
        if f.alive {
            tri.push(f.v);
            for &v in &f.v {
                if !seen[v] {
                    seen[v] = true;
                    vertices.push(v);
                }
            }
        }
    }
    Ok(Hull3 {
        facets: tri,
        vertices,
    })
}

fn facet_edge_order(f: &Facet, p: usize, a: usize, b: usize) -> (usize, usize, usize) {
    let mut pe = 3;
    let mut ae = 3;
    let mut be = 3;
    for e in 0..3 {
        let (x, y) = (f.v[e], f.v[(e + 1) % 3]);
        if (x == p && y == a) || (x == a && y == p) {
            pe = e;
        } else if (x == a && y == b) || (x == b && y == a) {
            ae = e;
        } else if (x == b && y == p) || (x == p && y == b) {
            be = e;
        }
    }
    (pe, ae, be)
}

fn make_facet(points: &[Vec<f64>], mut tri: [usize; 3], interior: &[f64; 3]) -> Facet {
    let e1 = sub3(&points[tri[1]], &points[tri[0]]);
    let e2 = sub3(&points[tri[2]], &points[tri[0]]);
    let mut normal = cross3(&e1, &e2);
    let nn = (normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]).sqrt();
    if nn > 0.0 {
        for x in &mut normal {
            *x /= nn;
        }
    }
    let mut offset = dot3(&normal, &points[tri[0]]);
    if dot3(&normal, interior.as_slice()) - offset > 0.0 {
        tri.swap(1, 2);
        for x in &mut normal {
            *x = -*x;
        }
        offset = -offset;
    }
    Facet {
        v: tri,
        nbr: [usize::MAX; 3],
        normal,
        offset,
        outside: Vec::new(),
        alive: true,
    }
}

fn rebuild_adjacency(facets: &mut [Facet]) {
    let n = facets.len();
    for i in 0..n {
        for e in 0..3 {
            let (x, y) = (facets[i].v[e], facets[i].v[(e + 1) % 3]);
            for j in 0..n {
                if i != j && facets[j].v.contains(&x) && facets[j].v.contains(&y) {
                    facets[i].nbr[e] = j;
                    break;
                }
            }
        }
    }
}

fn cloud_scale(points: &[Vec<f64>]) -> f64 {
    let mut s = 0.0f64;
    for p in points {
        for &x in p.iter() {
            s = s.max(x.abs());
        }
    }
    s.max(1e-12)
}

fn initial_tetrahedron(points: &[Vec<f64>], eps: f64) -> Result<(usize, usize, usize, usize)> {
    // two extreme points along the widest axis
    let mut a = 0;
    let mut b = 0;
    let mut best = -1.0;
    for axis in 0..3 {
        let lo = (0..points.len())
            .min_by(|&i, &j| points[i][axis].partial_cmp(&points[j][axis]).unwrap())
            .unwrap();
        let hi = (0..points.len())
            .max_by(|&i, &j| points[i][axis].partial_cmp(&points[j][axis]).unwrap())
            .unwrap();
        let d = points[hi][axis] - points[lo][axis];
        if d > best {
            best = d;
            a = lo;
            b = hi;
        }
    }
    if best <= eps {
        return Err(Error::Degenerate("point cloud has no extent"));
    }
    // farthest point from the line ab
    let ab = sub3(&points[b], &points[a]);
    let mut c = usize::MAX;
    let mut best_c = eps;
    for i in 0..points.len() {
        let ap = sub3(&points[i], &points[a]);
        let cr = cross3(&ab, &ap);
        let d = (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt();
        if d > best_c {
            best_c = d;
            c = i;
        }
    }
    if c == usize::MAX {
        return Err(Error::Degenerate("point cloud is collinear"));
    }
    // farthest point from the plane abc
    let ac = sub3(&points[c], &points[a]);
    let nrm = cross3(&ab, &ac);
    let mut d_idx = usize::MAX;
    let mut best_d = eps * (nrm[0] * nrm[0] + nrm[1] * nrm[1] + nrm[2] * nrm[2]).sqrt().max(1e-300);
    for i in 0..points.len() {
        let ap = sub3(&points[i], &points[a]);
        let d = dot3(&nrm, ap.as_slice()).abs();
        if d > best_d {
            best_d = d;
            d_idx = i;
        }
    }
    if d_idx == usize::MAX {
        return Err(Error::Degenerate("point cloud is coplanar"));
    }
    Ok((a, b, c, d_idx))
}

/// Volume enclosed by a triangulated hull with outward-oriented facets.
pub fn hull3d_volume(points: &[Vec<f64>], hull: &Hull3) -> f64 {
    let mut vol = 0.0;
    for tri in &hull.facets {
        let a = &points[tri[0]];
        let b = &points[tri[1]];
        let c = &points[tri[2]];
        let cr = cross3(
            &[b[0] - a[0], b[1] - a[1], b[2] - a[2]],
            &[c[0] - a[0], c[1] - a[1], c[2] - a[2]],
        );
        vol += dot3(&cr, a.as_slice());
    }
    (vol / 6.0).abs()
}

/// Convenience: hull volume of a 3D point cloud.
pub fn cloud_volume(points: &[Vec<f64>]) -> Result<f64> {
    let h = hull3d(points)?;
    Ok(hull3d_volume(points, &h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_hull_and_area() {
        let pts = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
            vec![0.5, 0.5],
        ];
        let h = hull2d(&pts);
        assert_eq!(h.len(), 4);
        assert!((hull2d_area(&pts) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cube_volume_exact() {
        let mut pts = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let v = cloud_volume(&pts).unwrap();
        assert!((v - 8.0).abs() < 1e-12, "volume {v}");
    }

    #[test]
    fn sphere_cloud_volume() {
        // fibonacci samples of the unit sphere: hull volume → 4π/3
        let g = crate::grid::DirectionGrid::fibonacci_sphere(4000);
        let v = cloud_volume(&g.dirs).unwrap();
        let want = 4.0 * core::f64::consts::PI / 3.0;
        assert!((v - want).abs() / want < 0.01, "volume {v} vs {want}");
    }

    #[test]
    fn interior_points_ignored() {
        let mut pts = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        for i in 0..50 {
            let t = i as f64 / 50.0 - 0.5;
            pts.push(vec![t * 0.9, -t * 0.4, t * t * 0.3]);
        }
        let v = cloud_volume(&pts).unwrap();
        assert!((v - 8.0).abs() < 1e-12);
    }
}
