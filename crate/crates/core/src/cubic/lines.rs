//! The 27 lines of the projective closure of `S(theta)`.

use num::complex::Complex64;
use num::traits::Zero;
use serde::Serialize;

use super::fixed::{f_of, label_args, label_point};
use super::surface::{dist3, surface_homogeneous, triple};
use crate::params::{next3, BVec, Theta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LineSign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineOnSurface {
    /// The line at infinity `L_i` it meets.
    pub i: usize,
    /// Pair label 1..4; `None` for the lines at infinity.
    pub label: Option<u8>,
    pub sign: Option<LineSign>,
    /// Two linear forms in `X_0..X_3` cutting out the line.
    pub equations: [[Complex64; 4]; 2],
    /// Two points spanning the line.
    pub span: [[Complex64; 4]; 2],
}

impl LineOnSurface {
    pub fn point(&self, s: Complex64, t: Complex64) -> [Complex64; 4] {
        let [a, b] = &self.span;
        [0, 1, 2, 3].map(|n| s * a[n] + t * b[n])
    }

    /// Largest `|F|` over five points of the line, relative to the point size.
    pub fn max_residual(&self, th: &Theta) -> f64 {
        let params = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -2.5), (0.3, 1.7)];
        params
            .iter()
            .map(|&(s, t)| {
                let x = self.point(Complex64::new(s, 0.0), Complex64::new(t, 0.0));
                let n = x.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
                surface_homogeneous(&x, th).norm() / n.powi(3)
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairIncidence {
    pub i: usize,
    pub label: u8,
    /// Affine intersection of the `+` and `-` lines; `None` when they meet at infinity.
    pub point: Option<[Complex64; 3]>,
    /// The label point of the table for the direction `j` following `i`.
    pub fixed_point: [Complex64; 3],
    pub distance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinesReport {
    pub lines: Vec<LineOnSurface>,
    pub pairs: Vec<PairIncidence>,
    pub max_residual: f64,
    /// Whether some affine line meets a line at infinity other than its own.
    pub meets_other_infinity_lines: bool,
}

fn unit(n: usize) -> [Complex64; 4] {
    let mut e = [Complex64::zero(); 4];
    e[n] = Complex64::new(1.0, 0.0);
    e
}

/// `X_i = F(U,V) X_0`, `X_j + UV X_k = (U (S + 1/S) + V (W + 1/W)) X_0`.
fn affine_line(i: usize, label: u8, sign: LineSign, args: [Complex64; 4]) -> (LineOnSurface, Complex64, Complex64) {
    let (_, j, k) = (i, next3(i), next3(next3(i)));
    let [u, v, w, s] = args;
    let (fv, uv) = (f_of(u, v), u * v);
    let c = u * (s + 1.0 / s) + v * (w + 1.0 / w);
    let mut e1 = [Complex64::zero(); 4];
    e1[0] = -fv;
    e1[i] = Complex64::new(1.0, 0.0);
    let mut e2 = [Complex64::zero(); 4];
    e2[0] = -c;
    e2[j] = Complex64::new(1.0, 0.0);
    e2[k] = uv;
    // affine point at X_k = 0 and the direction at infinity
    let mut p = [Complex64::zero(); 4];
    p[0] = Complex64::new(1.0, 0.0);
    p[i] = fv;
    p[j] = c;
    let mut d = [Complex64::zero(); 4];
    d[j] = -uv;
    d[k] = Complex64::new(1.0, 0.0);
    (LineOnSurface { i, label: Some(label), sign: Some(sign), equations: [e1, e2], span: [p, d] }, uv, c)
}

pub fn lines27(b: &BVec) -> LinesReport {
    let th = b.theta();
    let mut lines = Vec::new();
    let mut pairs = Vec::new();
    for i in 1..=3 {
        let j = next3(i);
        debug_assert_eq!(triple(j).0, i);
        for label in 1..=4u8 {
            let plus = label_args(b, j, label);
            let [u, v, w, s] = plus;
            let minus = [1.0 / u, 1.0 / v, w, s];
            let (lp, uvp, cp) = affine_line(i, label, LineSign::Plus, plus);
            let (lm, uvm, cm) = affine_line(i, label, LineSign::Minus, minus);
            let fixed = label_point(b, j, label);
            // both lie in X_i = F X_0; solve X_j + uv X_k = c for the two
            let det = uvm - uvp;
            let point = if det.norm() <= 1e-12 * (1.0 + uvp.norm()) {
                None
            } else {
                let xk = (cm - cp) / det;
                let mut x = [Complex64::zero(); 3];
                x[i - 1] = f_of(u, v);
                x[j - 1] = cp - uvp * xk;
                x[next3(j) - 1] = xk;
                Some(x)
            };
            pairs.push(PairIncidence { i, label, point, fixed_point: fixed, distance: point.map(|p| dist3(&p, &fixed)) });
            lines.push(lp);
            lines.push(lm);
        }
    }
    let meets_other = lines.iter().any(|l| {
        // the point at infinity of the line is its direction vector
        let d = l.span[1];
        let (j, k) = (next3(l.i), next3(next3(l.i)));
        d[j].norm() <= 1e-14 || d[k].norm() <= 1e-14
    });
    for i in 1..=3 {
        lines.push(LineOnSurface { i, label: None, sign: None, equations: [unit(0), unit(i)], span: [unit(next3(i)), unit(next3(next3(i)))] });
    }
    let max_residual = lines.iter().map(|l| l.max_residual(&th)).fold(0.0, f64::max);
    LinesReport { lines, pairs, max_residual, meets_other_infinity_lines: meets_other }
}
