//! Direction grids on the unit sphere of ℝᵏ with an adjacency structure
//! used by bisection refinement.

use alloc::vec::Vec;

use crate::rng::SplitMix64;
use crate::util::F64Ext;

/// Sampled unit directions plus neighbor pairs along which boundary
/// flatness is probed.
#[derive(Clone, Debug)]
pub struct DirectionGrid {
    pub k: usize,
    pub dirs: Vec<Vec<f64>>,
    pub edges: Vec<(usize, usize)>,
}

impl DirectionGrid {
    /// Equally spaced angles on the circle; `n = 3600` lands on the
    /// degree/denominator directions most planar fixtures live on.
    pub fn circle(n: usize) -> Self {
        let n = n.max(4);
        let dirs: Vec<Vec<f64>> = (0..n)
            .map(|j| {
                let phi = 2.0 * core::f64::consts::PI * j as f64 / n as f64;
                alloc::vec![phi.cos(), phi.sin()]
            })
            .collect();
        let edges = (0..n).map(|j| (j, (j + 1) % n)).collect();
        DirectionGrid { k: 2, dirs, edges }
    }

    /// Fibonacci sphere covering of S².
    pub fn fibonacci_sphere(n: usize) -> Self {
        let n = n.max(16);
        let golden = core::f64::consts::PI * (3.0 - 5.0f64.sqrt());
        let dirs: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let phi = golden * i as f64;
                alloc::vec![r * phi.cos(), r * phi.sin(), z]
            })
            .collect();
        // spiral neighbors; adequate for flatness probing
        let edges = (0..n - 1).map(|i| (i, i + 1)).collect();
        DirectionGrid { k: 3, dirs, edges }
    }

    /// Seeded uniform sphere samples for k > 3, adjacency by sorted order.
    pub fn seeded_sphere(k: usize, n: usize, seed: u64) -> Self {
        let n = n.max(16);
        let mut rng = SplitMix64::new(seed);
        let mut dirs: Vec<Vec<f64>> = (0..n).map(|_| rng.unit_vector(k)).collect();
        dirs.sort_by(|a, b| {
            for (x, y) in a.iter().zip(b) {
                match x.partial_cmp(y).unwrap() {
                    core::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            core::cmp::Ordering::Equal
        });
        let edges = (0..n - 1).map(|i| (i, i + 1)).collect();
        DirectionGrid { k, dirs, edges }
    }

    /// Default grid for a given coordinate dimension.
    pub fn default_for(k: usize) -> Self {
        match k {
            0 | 1 => DirectionGrid {
                k,
                dirs: if k == 1 {
                    alloc::vec![alloc::vec![1.0], alloc::vec![-1.0]]
                } else {
                    Vec::new()
                },
                edges: Vec::new(),
            },
            2 => DirectionGrid::circle(3600),
            3 => DirectionGrid::fibonacci_sphere(20000),
            _ => DirectionGrid::seeded_sphere(k, 20000, 0x5EED),
        }
    }

    /// Default grid with a size hint.
    pub fn sized_for(k: usize, n: usize) -> Self {
        match k {
            2 => DirectionGrid::circle(n),
            3 => DirectionGrid::fibonacci_sphere(n),
            _ => DirectionGrid::seeded_sphere(k, n, 0x5EED),
        }
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// Neighbor lists induced by the edge set.
    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        let mut nb = alloc::vec![Vec::new(); self.dirs.len()];
        for &(a, b) in &self.edges {
            nb[a].push(b);
            nb[b].push(a);
        }
        nb
    }
}

/// Unit midpoint of two directions (normalized chord bisection).
pub fn bisect_dirs(a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    let mid: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    crate::util::normalize(&mid, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::norm;

    #[test]
    fn circle_hits_axes() {
        let g = DirectionGrid::circle(3600);
        assert_eq!(g.len(), 3600);
        // index 900 is the +y axis
        assert!((g.dirs[900][0]).abs() < 1e-12);
        assert!((g.dirs[900][1] - 1.0).abs() < 1e-12);
        // index 300 is the drop's tangent direction (cos π/6, sin π/6)
        assert!((g.dirs[300][1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_is_unit() {
        let g = DirectionGrid::fibonacci_sphere(500);
        for d in &g.dirs {
            assert!((norm(d) - 1.0).abs() < 1e-12);
        }
    }
}
