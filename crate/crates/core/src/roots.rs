//! Polynomial roots with multiplicity clusters.

use nalgebra::DMatrix;
use num::complex::Complex64;
use serde::Serialize;

/// Roots closer than this are merged into one cluster.
pub const CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootCluster {
    pub root: Complex64,
    pub mult: usize,
}

/// Coefficients are ordered from the constant term up.
pub fn poly_eval(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

/// Sum of |c_k| |x|^k, the rounding scale of `poly_eval`.
fn poly_scale(c: &[Complex64], x: Complex64) -> f64 {
    let r = x.norm();
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

pub fn poly_derive(c: &[Complex64]) -> Vec<Complex64> {
    c.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect()
}

fn newton(c: &[Complex64], mut x: Complex64, iters: usize) -> Complex64 {
    let d = poly_derive(c);
    for _ in 0..iters {
        let dp = poly_eval(&d, x);
        if dp.norm() == 0.0 {
            break;
        }
        let step = poly_eval(c, x) / dp;
        if !step.is_finite() {
            break;
        }
        x -= step;
        if step.norm() <= 1e-16 * (1.0 + x.norm()) {
            break;
        }
    }
    x
}

fn companion_eigenvalues(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for r in 1..n {
        m[(r, r - 1)] = Complex64::new(1.0, 0.0);
    }
    for r in 0..n {
        m[(r, n - 1)] = -c[r] / lead;
    }
    // The unshifted QR iteration can stall on spectra symmetric about 0,
    // so the matrix is shifted off-centre first.
    let scale = 1.0 + c.iter().map(|a| (a / lead).norm()).fold(0.0, f64::max).powf(1.0 / n as f64);
    for s in [Complex64::new(0.1234, 0.0567), Complex64::new(-0.31, 0.22), Complex64::new(0.0, 0.0)] {
        let s = s * scale;
        let mut ms = m.clone();
        for r in 0..n {
            ms[(r, r)] -= s;
        }
        if let Some(schur) = ms.try_schur(1e-15, 10_000) {
            let t = schur.unpack().1;
            return (0..n).map(|r| t[(r, r)] + s).collect();
        }
    }
    Vec::new()
}

/// All roots of a polynomial with nonzero leading coefficient, grouped into
/// clusters. A group of nearby eigenvalues is accepted as one multiple root
/// only if the refined centre annihilates the lower derivatives.
pub fn poly_roots(c: &[Complex64]) -> Vec<RootCluster> {
    let mut c = c.to_vec();
    while c.len() > 1 && c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let eig = companion_eigenvalues(&c);
    assert_eq!(eig.len(), n, "companion eigenvalues did not converge");

    // Group eigenvalues that are close on the scale of a quartic-root perturbation.
    let mut group: Vec<usize> = (0..n).collect();
    fn find(g: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while g[r] != r {
            r = g[r];
        }
        g[i] = r;
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            if (eig[a] - eig[b]).norm() <= 1e-3 * (1.0 + eig[a].norm()) {
                let (ra, rb) = (find(&mut group, a), find(&mut group, b));
                group[ra] = rb;
            }
        }
    }
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut roots_of: Vec<usize> = Vec::new();
    for a in 0..n {
        let r = find(&mut group, a);
        match roots_of.iter().position(|&x| x == r) {
            Some(p) => members[p].push(a),
            None => {
                roots_of.push(r);
                members.push(vec![a]);
            }
        }
    }

    let mut out: Vec<RootCluster> = Vec::new();
    for mem in members {
        let m = mem.len();
        let centre = mem.iter().map(|&a| eig[a]).sum::<Complex64>() / m as f64;
        if m > 1 {
            let mut d = c.clone();
            for _ in 0..m - 1 {
                d = poly_derive(&d);
            }
            let x = newton(&d, centre, 50);
            let mut ok = true;
            let mut p = c.clone();
            for _ in 0..m - 1 {
                if poly_eval(&p, x).norm() > 1e-11 * poly_scale(&p, x).max(1e-300) {
                    ok = false;
                    break;
                }
                p = poly_derive(&p);
            }
            if ok {
                out.push(RootCluster { root: x, mult: m });
                continue;
            }
        }
        for &a in &mem {
            out.push(RootCluster { root: newton(&c, eig[a], 50), mult: 1 });
        }
    }

    // Final merge at the public tolerance.
    let mut merged: Vec<RootCluster> = Vec::new();
    for r in out {
        match merged.iter_mut().find(|q| (q.root - r.root).norm() <= CLUSTER_TOL) {
            Some(q) => {
                let w = (q.mult + r.mult) as f64;
                q.root = (q.root * q.mult as f64 + r.root * r.mult as f64) / w;
                q.mult += r.mult;
            }
            None => merged.push(r),
        }
    }
    merged.sort_by(|a, b| a.root.re.total_cmp(&b.root.re).then(a.root.im.total_cmp(&b.root.im)));
    merged
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn quadruple_root() {
        // (x-2)^4
        let r = poly_roots(&[c(16.0), c(-32.0), c(24.0), c(-8.0), c(1.0)]);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].mult, 4);
        assert!((r[0].root - c(2.0)).norm() < 1e-10);
    }

    #[test]
    fn two_double_roots() {
        // (x^2-4)^2
        let r = poly_roots(&[c(16.0), c(0.0), c(-8.0), c(0.0), c(1.0)]);
        assert_eq!(r.iter().map(|x| x.mult).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn close_but_distinct() {
        // (x-1)(x-1.0001)
        let r = poly_roots(&[c(1.0001), c(-2.0001), c(1.0)]);
        assert_eq!(r.len(), 2);
    }
}
