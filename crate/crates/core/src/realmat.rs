//! Small dense real matrices: Householder QR with column pivoting for
//! rank decisions and null spaces of assembled linear systems.

use alloc::vec;
use alloc::vec::Vec;

use crate::util::F64Ext;

/// Row-major dense real matrix.
#[derive(Clone, Debug)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        RMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> RMatrix {
        let mut t = RMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// Householder QR with column pivoting on `a` (m×n).
///
/// Returns the accumulated m×m orthogonal Q, the reduced R in-place and
/// the column permutation. Rank queries read the diagonal decay of R.
pub struct QrPivot {
    pub q: RMatrix,
    pub r: RMatrix,
    pub perm: Vec<usize>,
}

pub fn qr_col_pivot(a: &RMatrix) -> QrPivot {
    let m = a.rows();
    let n = a.cols();
    let mut r = a.clone();
    let mut q = RMatrix::zeros(m, m);
    for i in 0..m {
        q.set(i, i, 1.0);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let steps = m.min(n);
    for k in 0..steps {
        // pivot the remaining column with the largest tail norm
        let mut best = k;
        let mut best_norm = 0.0;
        for j in k..n {
            let mut s = 0.0;
            for i in k..m {
                let v = r.get(i, j);
                s += v * v;
            }
            if s > best_norm {
                best_norm = s;
                best = j;
            }
        }
        if best != k {
            for i in 0..m {
                let tmp = r.get(i, k);
                r.set(i, k, r.get(i, best));
                r.set(i, best, tmp);
            }
            perm.swap(k, best);
        }
        if best_norm.sqrt() < 1e-306 {
            break;
        }
        // householder vector for column k
        let alpha = best_norm.sqrt() * if r.get(k, k) >= 0.0 { -1.0 } else { 1.0 };
        let mut v = vec![0.0; m];
        v[k] = r.get(k, k) - alpha;
        for i in (k + 1)..m {
            v[i] = r.get(i, k);
        }
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 < 1e-300 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // apply to r
        for j in k..n {
            let mut dotv = 0.0;
            for i in k..m {
                dotv += v[i] * r.get(i, j);
            }
            let f = beta * dotv;
            for i in k..m {
                r.set(i, j, r.get(i, j) - f * v[i]);
            }
        }
        // accumulate into q (right-multiplication by the reflector)
        for i in 0..m {
            let mut dotv = 0.0;
            for l in k..m {
                dotv += q.get(i, l) * v[l];
            }
            let f = beta * dotv;
            for l in k..m {
                q.set(i, l, q.get(i, l) - f * v[l]);
            }
        }
        r.set(k, k, alpha);
        for i in (k + 1)..m {
            r.set(i, k, 0.0);
        }
    }
    QrPivot { q, r, perm }
}

/// Numerical rank at a relative diagonal threshold, with an absolute floor
/// for all-zero inputs.
pub fn rank(a: &RMatrix, rel_tol: f64, abs_floor: f64) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    let qr = qr_col_pivot(a);
    let steps = a.rows().min(a.cols());
    let lead = qr.r.get(0, 0).abs();
    if lead <= abs_floor {
        return 0;
    }
    let cut = rel_tol * lead;
    let mut rk = 0;
    for k in 0..steps {
        if qr.r.get(k, k).abs() > cut.max(abs_floor) {
            rk += 1;
        } else {
            break;
        }
    }
    rk
}

/// Orthonormal basis of the null space of `a` at relative tolerance `rel_tol`:
/// the trailing columns of Q from the pivoted QR of aᵀ.
pub fn null_space(a: &RMatrix, rel_tol: f64) -> Vec<Vec<f64>> {
    let n = a.cols();
    if a.rows() == 0 {
        // everything is null
        let mut basis = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            basis.push(e);
        }
        return basis;
    }
    let at = a.transpose();
    let qr = qr_col_pivot(&at);
    let steps = at.rows().min(at.cols());
    let lead = qr.r.get(0, 0).abs();
    let mut rk = 0;
    if lead > 1e-300 {
        let cut = rel_tol * lead;
        for k in 0..steps {
            if qr.r.get(k, k).abs() > cut {
                rk += 1;
            } else {
                break;
            }
        }
    }
    (rk..n).map(|j| qr.q.col(j)).collect()
}

/// Rank of a point cloud around its centroid: singular values of the
/// centered set against `rel_tol` of the largest, with `abs_floor` treating
/// numerically coincident clouds as rank 0.
pub fn rank_of_point_set(points: &[Vec<f64>], rel_tol: f64, abs_floor: f64) -> usize {
    if points.is_empty() {
        return 0;
    }
    let c = crate::util::centroid(points);
    let rows: Vec<Vec<f64>> = points.iter().map(|p| crate::util::sub(p, &c)).collect();
    let m = RMatrix::from_rows(&rows);
    // singular values via the pivoted QR diagonal are adequate for the
    // well-separated rank decisions made here
    rank(&m, rel_tol, abs_floor)
}

/// Rank of a set of directions (not centered).
pub fn rank_of_directions(dirs: &[Vec<f64>], rel_tol: f64) -> usize {
    if dirs.is_empty() {
        return 0;
    }
    let m = RMatrix::from_rows(dirs);
    rank(&m, rel_tol, 1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_reconstructs() {
        let a = RMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![7.0, 8.0, 10.0],
        ]);
        let qr = qr_col_pivot(&a);
        // q orthogonal
        for i in 0..3 {
            for j in 0..3 {
                let mut d = 0.0;
                for l in 0..3 {
                    d += qr.q.get(l, i) * qr.q.get(l, j);
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-12);
            }
        }
        // q·r == a·p
        for i in 0..3 {
            for j in 0..3 {
                let mut v = 0.0;
                for l in 0..3 {
                    v += qr.q.get(i, l) * qr.r.get(l, j);
                }
                assert!((v - a.get(i, qr.perm[j])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rank_and_null_space() {
        // rank-2 matrix with null direction (1, 1, -1)/√3
        let a = RMatrix::from_rows(&[vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]);
        assert_eq!(rank(&a, 1e-12, 1e-300), 2);
        let ns = null_space(&a, 1e-9);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!((v[0] + v[2]).abs() < 1e-12);
        assert!((v[1] + v[2]).abs() < 1e-12);
    }

    #[test]
    fn point_set_rank() {
        let square = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ];
        assert_eq!(rank_of_point_set(&square, 1e-7, 1e-12), 2);
        let segment = vec![vec![0.0, 0.0], vec![0.5, 0.5], vec![1.0, 1.0]];
        assert_eq!(rank_of_point_set(&segment, 1e-7, 1e-12), 1);
        let point = vec![vec![0.3, 0.4], vec![0.3, 0.4]];
        assert_eq!(rank_of_point_set(&point, 1e-7, 1e-12), 0);
    }
}
