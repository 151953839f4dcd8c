//! The affine cubic `f(x, theta) = x1 x2 x3 + x1^2 + x2^2 + x3^2 - theta1 x1 - theta2 x2 - theta3 x3 + theta4`
//! and the maps `g_j`.

use num::complex::Complex64;
use serde::Serialize;

use crate::params::{next3, Theta};

/// Index triple `(i, j, k)`: the cyclic permutation of (1, 2, 3) with `j` in the middle.
pub fn triple(j: usize) -> (usize, usize, usize) {
    assert!((1..=3).contains(&j), "direction index must be 1..3");
    (next3(next3(j)), j, next3(j))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub x: [Complex64; 3],
    /// Bound on `|f(x, theta)|` for the surface the point was built on.
    pub residual: f64,
}

impl SurfacePoint {
    pub fn new(x: [Complex64; 3], th: &Theta) -> Self {
        SurfacePoint { x, residual: surface_eval(&x, th).0.norm() }
    }

    /// `x_l` with 1-based index.
    pub fn get(&self, l: usize) -> Complex64 {
        self.x[l - 1]
    }

    pub fn distance(&self, other: &SurfacePoint) -> f64 {
        dist3(&self.x, &other.x)
    }
}

pub fn dist3(a: &[Complex64; 3], b: &[Complex64; 3]) -> f64 {
    (0..3).map(|l| (a[l] - b[l]).norm()).fold(0.0, f64::max)
}

/// `f` and its gradient `y_l = 2 x_l + x_m x_n - theta_l`.
pub fn surface_eval(x: &[Complex64; 3], th: &Theta) -> (Complex64, [Complex64; 3]) {
    let [x1, x2, x3] = *x;
    let t = &th.t;
    let f = x1 * x2 * x3 + x1 * x1 + x2 * x2 + x3 * x3 - t[0] * x1 - t[1] * x2 - t[2] * x3 + t[3];
    let y = [2.0 * x1 + x2 * x3 - t[0], 2.0 * x2 + x3 * x1 - t[1], 2.0 * x3 + x1 * x2 - t[2]];
    (f, y)
}

/// Sum of the moduli of the terms of `f`; the rounding scale of `surface_eval`.
pub fn surface_scale(x: &[Complex64; 3], th: &Theta) -> f64 {
    let n = x.map(|z| z.norm());
    let t = th.t.map(|z| z.norm());
    n[0] * n[1] * n[2] + n[0] * n[0] + n[1] * n[1] + n[2] * n[2] + t[0] * n[0] + t[1] * n[1] + t[2] * n[2] + t[3]
}

/// Homogeneous cubic `F(X, theta) = X1 X2 X3 + X0 (X1^2 + X2^2 + X3^2) - X0^2 (theta . X) + theta4 X0^3`.
pub fn surface_homogeneous(x: &[Complex64; 4], th: &Theta) -> Complex64 {
    let [x0, x1, x2, x3] = *x;
    let t = &th.t;
    x1 * x2 * x3 + x0 * (x1 * x1 + x2 * x2 + x3 * x3) - x0 * x0 * (t[0] * x1 + t[1] * x2 + t[2] * x3)
        + t[3] * x0 * x0 * x0
}

/// One step of `g_j`: `x_j' = theta_k - x_k - x_i x_j`, `x_k' = x_j`, `x_i` fixed,
/// and `theta_j`, `theta_k` exchanged.
pub fn g_map(j: usize, x: &[Complex64; 3], th: &Theta) -> ([Complex64; 3], Theta) {
    let (i, j, k) = triple(j);
    let mut y = *x;
    y[j - 1] = th.th(k) - x[k - 1] - x[i - 1] * x[j - 1];
    y[k - 1] = x[j - 1];
    let mut t = *th;
    t.t.swap(j - 1, k - 1);
    (y, t)
}

/// Inverse of `g_map(j, ., theta)` as a map onto `S(theta)`; `th` is the source parameter
/// of the forward step.
pub fn g_inv(j: usize, x: &[Complex64; 3], th: &Theta) -> ([Complex64; 3], Theta) {
    let (i, j, k) = triple(j);
    // forward target parameter has theta_j and theta_k exchanged
    let mut t = *th;
    t.t.swap(j - 1, k - 1);
    let mut y = *x;
    y[j - 1] = x[k - 1];
    y[k - 1] = t.th(j) - x[j - 1] - x[i - 1] * x[k - 1];
    (y, *th)
}

pub fn g_sq(j: usize, x: &[Complex64; 3], th: &Theta) -> [Complex64; 3] {
    let (y, t) = g_map(j, x, th);
    g_map(j, &y, &t).0
}

pub fn g_sq_inv(j: usize, x: &[Complex64; 3], th: &Theta) -> [Complex64; 3] {
    let mut t = *th;
    t.t.swap(triple(j).1 - 1, triple(j).2 - 1);
    let (y, _) = g_inv(j, x, &t);
    g_inv(j, &y, th).0
}

/// Newton projection onto `f = 0` along the gradient.
pub fn polish(x: &[Complex64; 3], th: &Theta) -> [Complex64; 3] {
    let mut x = *x;
    for _ in 0..8 {
        let (f, y) = surface_eval(&x, th);
        let g2: f64 = y.iter().map(|v| v.norm_sqr()).sum();
        if f.norm() <= 1e-15 * surface_scale(&x, th) || g2 == 0.0 {
            break;
        }
        let s = f / g2;
        for l in 0..3 {
            x[l] -= s * y[l].conj();
        }
    }
    x
}

/// Applies `g_{i_1}^{2 e_1}`, then `g_{i_2}^{2 e_2}`, and so on.
pub fn monodromy_word_map(word: &[(usize, i8)], p: &SurfacePoint, th: &Theta, polish_each: bool) -> SurfacePoint {
    let mut x = p.x;
    for &(j, e) in word {
        x = if e > 0 { g_sq(j, &x, th) } else { g_sq_inv(j, &x, th) };
        if polish_each {
            x = polish(&x, th);
        }
    }
    SurfacePoint::new(x, th)
}
