//! Small real-vector helpers and `no_std` float math shims.

use alloc::vec::Vec;

/// Float math routed through `libm` so the crate builds without `std`.
pub trait F64Ext {
    fn sqrt(self) -> f64;
    fn abs(self) -> f64;
    fn cos(self) -> f64;
    fn sin(self) -> f64;
    fn tan(self) -> f64;
    fn acos(self) -> f64;
    fn asin(self) -> f64;
    fn atan2(self, other: f64) -> f64;
    fn hypot(self, other: f64) -> f64;
    fn floor(self) -> f64;
    fn round(self) -> f64;
    fn ln(self) -> f64;
    fn exp(self) -> f64;
    fn powi(self, n: i32) -> f64;
    fn signum_nz(self) -> f64;
}

impl F64Ext for f64 {
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
    fn cos(self) -> f64 {
        libm::cos(self)
    }
    fn sin(self) -> f64 {
        libm::sin(self)
    }
    fn tan(self) -> f64 {
        libm::tan(self)
    }
    fn acos(self) -> f64 {
        libm::acos(self)
    }
    fn asin(self) -> f64 {
        libm::asin(self)
    }
    fn atan2(self, other: f64) -> f64 {
        libm::atan2(self, other)
    }
    fn hypot(self, other: f64) -> f64 {
        libm::hypot(self, other)
    }
    fn floor(self) -> f64 {
        libm::floor(self)
    }
    fn round(self) -> f64 {
        libm::round(self)
    }
    fn ln(self) -> f64 {
        libm::log(self)
    }
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    fn powi(self, n: i32) -> f64 {
        libm::pow(self, n as f64)
    }
    // sign with signum_nz(0) = 1, handy for jacobi rotations
    fn signum_nz(self) -> f64 {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Returns `a` scaled to unit length, or `None` if its norm is below `tol`.
pub fn normalize(a: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = norm(a);
    if n <= tol {
        None
    } else {
        Some(scale(a, 1.0 / n))
    }
}

pub fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Midpoint of two points.
pub fn midpoint(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
}

/// Centroid of a nonempty point set.
pub fn centroid(points: &[Vec<f64>]) -> Vec<f64> {
    let k = points[0].len();
    let mut c = alloc::vec![0.0; k];
    for p in points {
        axpy(&mut c, 1.0, p);
    }
    let inv = 1.0 / points.len() as f64;
    for ci in &mut c {
        *ci *= inv;
    }
    c
}

/// Largest pairwise distance of a point set (O(n²), fine at sample scale).
pub fn diameter(points: &[Vec<f64>]) -> f64 {
    let mut d = 0.0;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let dij = dist(&points[i], &points[j]);
            if dij > d {
                d = dij;
            }
        }
    }
    d
}
