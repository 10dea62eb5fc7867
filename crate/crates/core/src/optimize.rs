//! Deterministic derivative-free minimization on the unit sphere.
//!
//! Compass search in a tangent frame with step halving. The objectives it
//! serves (eigenvalue gaps, support residuals) are piecewise smooth with
//! conical kinks at their zero sets, which pattern search handles without
//! gradients.

use alloc::vec::Vec;

use crate::util::{axpy, dot, normalize};

pub struct SphereMinimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

/// Orthonormal tangent frame at a unit vector.
fn tangent_frame(u: &[f64]) -> Vec<Vec<f64>> {
    let k = u.len();
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(k - 1);
    for i in 0..k {
        let mut e = alloc::vec![0.0; k];
        e[i] = 1.0;
        // project out u and everything already in the frame
        let c0 = dot(&e, u);
        axpy(&mut e, -c0, u);
        for t in &frame {
            let c = dot(&e, t);
            axpy(&mut e, -c, t);
        }
        if let Some(t) = normalize(&e, 1e-8) {
            frame.push(t);
            if frame.len() == k - 1 {
                break;
            }
        }
    }
    frame
}

/// Minimizes `f` over the unit sphere starting from `start`.
///
/// Halts when the step drops below `step_min`, the value reaches
/// `value_stop`, or `max_evals` calls are spent. Fully deterministic.
pub fn minimize_on_sphere<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    step0: f64,
    step_min: f64,
    value_stop: f64,
    max_evals: usize,
) -> SphereMinimum {
    let mut u = normalize(start, 1e-300).expect("nonzero start");
    let mut fu = f(&u);
    let mut evals = 1;
    let mut h = step0;
    'outer: while h > step_min && evals < max_evals && fu > value_stop {
        let frame = tangent_frame(&u);
        let mut improved = false;
        for t in &frame {
            for sign in [1.0, -1.0] {
                let mut cand = u.clone();
                axpy(&mut cand, sign * h, t);
                let cand = match normalize(&cand, 1e-300) {
                    Some(c) => c,
                    None => continue,
                };
                let fc = f(&cand);
                evals += 1;
                if fc < fu {
                    u = cand;
                    fu = fc;
                    improved = true;
                    if fu <= value_stop || evals >= max_evals {
                        break 'outer;
                    }
                    break; // re-derive the frame at the new point
                }
            }
            if improved {
                break;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    SphereMinimum {
        point: u,
        value: fu,
        evals,
    }
}

/// Minimizes a function of two angles (used for face-to-face contact).
pub fn minimize_two_angles<F: FnMut(f64, f64) -> f64>(
    mut f: F,
    start: (f64, f64),
    step0: f64,
    step_min: f64,
    value_stop: f64,
    max_evals: usize,
) -> ((f64, f64), f64) {
    let (mut a, mut b) = start;
    let mut fv = f(a, b);
    let mut evals = 1;
    let mut h = step0;
    while h > step_min && evals < max_evals && fv > value_stop {
        let mut improved = false;
        for (da, db) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let fc = f(a + da, b + db);
            evals += 1;
            if fc < fv {
                a += da;
                b += db;
                fv = fc;
                improved = true;
                break;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    ((a, b), fv)
}

/// Bisection for the edge of a sub-level set along an angular interval:
/// assumes `pred(lo)` true, `pred(hi)` false, returns the crossing angle.
pub fn bisect_predicate<F: FnMut(f64) -> bool>(mut pred: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_pole_of_linear_functional() {
        // minimize -z over S²; minimum at the north pole
        let res = minimize_on_sphere(
            |u| -u[2],
            &[0.6, 0.64, 0.48],
            0.3,
            1e-12,
            -2.0,
            20000,
        );
        assert!((res.value + 1.0).abs() < 1e-9);
        assert!((res.point[2] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn handles_conical_objective() {
        // distance-like kink at (1,0,0)
        let res = minimize_on_sphere(
            |u| ((u[1]).powi(2) + (u[2]).powi(2)).sqrt(),
            &[0.8, 0.36, 0.48],
            0.3,
            1e-13,
            1e-14,
            40000,
        );
        assert!(res.value < 1e-10, "value {}", res.value);
    }
}
