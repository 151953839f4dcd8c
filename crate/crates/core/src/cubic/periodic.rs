//! Periodic points of `g_j^2` and the closed form of its orbits.

use num::complex::Complex64;
use num::integer::Integer;
use serde::Serialize;

use super::surface::{dist3, g_map, g_sq, surface_eval, triple, SurfacePoint};
use crate::error::{Error, Result};
use crate::params::Theta;

/// Distance from `+-2` below which the orbit formula switches to the affine case.
pub const DEGENERATE_TOL: f64 = 1e-8;

/// The conic `S(theta) ∩ {x_i = 2 cos(pi m / n)}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicCurve {
    pub j: usize,
    pub n: u32,
    pub m: u32,
    pub xi_value: f64,
    /// Coefficients of `X_j^2, X_j X_k, X_k^2, X_j X_0, X_k X_0, X_0^2`.
    pub conic: [Complex64; 6],
}

pub fn periodic_curves(j: usize, th: &Theta, n: u32) -> Result<Vec<PeriodicCurve>> {
    if n < 2 {
        return Err(Error::Invalid(format!("period must exceed 1, got {n}")));
    }
    let (i, jj, kk) = triple(j);
    let one = Complex64::new(1.0, 0.0);
    Ok((1..n)
        .filter(|m| m.gcd(&n) == 1)
        .map(|m| {
            let xi = 2.0 * (std::f64::consts::PI * f64::from(m) / f64::from(n)).cos();
            let xc = Complex64::new(xi, 0.0);
            PeriodicCurve {
                j,
                n,
                m,
                xi_value: xi,
                conic: [one, xc, one, -th.th(jj), -th.th(kk), xc * xc - th.th(i) * xc + th.t[3]],
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Samples {
    pub points: Vec<SurfacePoint>,
    /// Grid values dropped at a branch point of the quadratic or at a fixed point.
    pub skipped: usize,
}

/// Smallest `p <= max` with `(g_j^2)^p x = x`.
pub fn prime_period(j: usize, x: &[Complex64; 3], th: &Theta, max: u32, tol: f64) -> Option<u32> {
    let mut y = *x;
    for p in 1..=max {
        y = g_sq(j, &y, th);
        if dist3(&y, x) <= tol * (1.0 + x.iter().map(|v| v.norm()).fold(0.0, f64::max)) {
            return Some(p);
        }
    }
    None
}

impl PeriodicCurve {
    /// Points on the conic over a deterministic grid of `X_k`, both roots of
    /// the quadratic in `X_j`.
    pub fn sample(&self, th: &Theta, count: usize) -> Samples {
        let (i, jj, kk) = triple(self.j);
        let c = &self.conic;
        let mut points = Vec::new();
        let mut skipped = 0;
        for s in 0..count.div_ceil(2) {
            let t = s as f64;
            let xk = Complex64::new(-1.3 + 0.37 * t, 0.21 + 0.11 * t);
            let b = c[1] * xk + c[3];
            let cc = c[2] * xk * xk + c[4] * xk + c[5];
            let disc = b * b - 4.0 * c[0] * cc;
            if disc.norm() <= 1e-12 * (1.0 + (b * b).norm()) {
                skipped += 1;
                continue;
            }
            let r = disc.sqrt();
            for xj in [(-b + r) / (2.0 * c[0]), (-b - r) / (2.0 * c[0])] {
                let mut x = [Complex64::new(0.0, 0.0); 3];
                x[i - 1] = Complex64::new(self.xi_value, 0.0);
                x[jj - 1] = xj;
                x[kk - 1] = xk;
                if prime_period(self.j, &x, th, 1, 1e-9).is_some() {
                    skipped += 1;
                    continue;
                }
                if points.len() < count {
                    points.push(SurfacePoint::new(x, th));
                }
            }
        }
        Samples { points, skipped }
    }
}

/// Predicted orbit `x, g_j^2 x, ..., (g_j^2)^N x` from the linear recurrences.
pub fn orbit_closed_form(j: usize, x: &[Complex64; 3], th: &Theta, steps: usize) -> Result<Vec<[Complex64; 3]>> {
    let (i, jj, kk) = triple(j);
    let xi = x[i - 1];
    let (_, y) = surface_eval(x, th);
    let (yj, yk) = (y[jj - 1], y[kk - 1]);
    let xj1 = g_map(j, x, th).0[jj - 1];
    let place = |a: Complex64, b: Complex64| {
        let mut p = *x;
        p[jj - 1] = a;
        p[kk - 1] = b;
        p
    };

    let eps = if (xi + 2.0).norm() < DEGENERATE_TOL {
        Some(1.0)
    } else if (xi - 2.0).norm() < DEGENERATE_TOL {
        Some(-1.0)
    } else {
        None
    };
    if let Some(e) = eps {
        // x_i = -2e: double root e, y_j^(n) = e^n (y_j - n (y_j + e y_k)).
        let s = yj + e * yk;
        if s.norm() > 1e-8 * (1.0 + yj.norm() + yk.norm()) {
            return Err(Error::UnboundedGrowth(s.norm()));
        }
        return Ok((0..=steps)
            .map(|n| {
                if n == 0 {
                    return *x;
                }
                let nf = n as f64;
                place(x[jj - 1] + nf * yj, xj1 + e * (nf - 1.0) * yj)
            })
            .collect());
    }

    let disc = (xi * xi - 4.0).sqrt();
    let (mut alpha, mut beta) = ((-xi + disc) / 2.0, (-xi - disc) / 2.0);
    if alpha.norm() < beta.norm() {
        std::mem::swap(&mut alpha, &mut beta);
    }
    let ab = alpha - beta;
    let p = -alpha * alpha * (beta * yj + yk) / (ab * (alpha * alpha - 1.0));
    let q = beta * beta * (alpha * yj + yk) / (ab * (beta * beta - 1.0));
    let r1 = x[jj - 1] - p - q;
    let r2 = xj1 - alpha * p - beta * q;
    // x_j^(m) = p a^m + q b^m + r, with r = r1 on even and r2 on odd m;
    // x_k^(2n) = x_j^(2n-1).
    let (a2, b2) = (alpha * alpha, beta * beta);
    let (mut an, mut bn) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    let mut out = Vec::with_capacity(steps + 1);
    for n in 0..=steps {
        if n == 0 {
            out.push(*x);
        } else {
            out.push(place(p * an + q * bn + r1, p * an / alpha + q * bn / beta + r2));
        }
        an *= a2;
        bn *= b2;
    }
    Ok(out)
}
