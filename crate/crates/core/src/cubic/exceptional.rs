//! Actions of `g_j^2` on the exceptional curves of the minimal resolution,
//! stored as a table per stratum and evaluated at a normal form.

use nalgebra::Matrix3;
use num::complex::Complex64;
use num::rational::Rational64;
use serde::Serialize;

use super::surface::{g_sq, surface_eval, surface_scale, triple};
use crate::error::{Error, Result};
use crate::params::{b_vec, Kappa, Stratum, StratumLabel};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum MobiusKind {
    Identity,
    Multiplier { lambda: Complex64 },
    Shift { c: Complex64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MobiusAction {
    pub component: String,
    pub kind: MobiusKind,
    /// The entry is obtained from a neighbouring one by the symmetry of the configuration.
    pub by_symmetry: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixE {
    /// Isolated fixed points off the line components.
    pub isolated: usize,
    /// Fixed points where exceptional curves meet a line component.
    pub on_lines: usize,
    /// Exceptional curves fixed pointwise.
    pub curves: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExceptionalReport {
    pub label: StratumLabel,
    pub j: usize,
    pub normal_form: Kappa,
    pub actions: Vec<MobiusAction>,
    pub fix_e: FixE,
}

fn act(component: &str, kind: MobiusKind, by_symmetry: bool) -> MobiusAction {
    MobiusAction { component: component.to_string(), kind, by_symmetry }
}

fn mult(l: Complex64) -> MobiusKind {
    MobiusKind::Multiplier { lambda: l }
}

fn shift(c: Complex64) -> MobiusKind {
    MobiusKind::Shift { c }
}

fn fix(isolated: usize, on_lines: usize, curves: &[&str]) -> FixE {
    FixE { isolated, on_lines, curves: curves.iter().map(|s| s.to_string()).collect() }
}

/// Normal form of the stratum positioned for direction `j`. Only the `A2`
/// normal form depends on `j`: its vanishing leaf is moved to position `i`
/// by a cyclic relabelling of `k1, k2, k3`.
pub fn aligned_normal_form(s: &Stratum, j: usize) -> Result<Kappa> {
    if s.label != StratumLabel::A2 {
        return Ok(s.normal_form.clone());
    }
    let r = *s.normal_form.require_exact("normal form")?;
    let (i, jj, kk) = triple(j);
    let mut out = r;
    out[i] = r[3];
    out[jj] = r[1];
    out[kk] = r[2];
    Kappa::rational(out)
}

pub fn exceptional_actions(s: &Stratum, j: usize) -> Result<ExceptionalReport> {
    let (i, jj, kk) = triple(j);
    let nf = aligned_normal_form(s, j)?;
    let b = b_vec(&nf).b;
    let a = |l: usize| b[l] + 1.0 / b[l];
    let one = Complex64::new(1.0, 0.0);
    let id = MobiusKind::Identity;
    let (actions, fix_e) = match s.label {
        StratumLabel::Empty => (vec![], fix(0, 0, &[])),
        StratumLabel::A1 => {
            let m = (b[jj] * b[kk]).powi(2);
            (vec![act("e", mult(m), false)], fix(2, 0, &[]))
        }
        StratumLabel::A2 => {
            let m = (b[jj] * b[kk]).powi(2);
            (vec![act("e+", mult(1.0 / m), false), act("e-", mult(m), false)], fix(3, 0, &[]))
        }
        StratumLabel::A1x2(l) => {
            let l = l as usize;
            if l == i {
                let c = a(i) - a(4);
                (
                    vec![act("l~_j+", id, false), act("e_i", shift(c), false), act("e_4", shift(-c), true)],
                    fix(0, 2, &[]),
                )
            } else {
                let name = if l == jj { "e_j" } else { "e_k" };
                (
                    vec![act(name, mult(b[4] * b[4]), l != jj), act("e_4", mult(b[l] * b[l]), l != jj)],
                    fix(4, 0, &[]),
                )
            }
        }
        StratumLabel::A3(l) => {
            let l = l as usize;
            if l == i {
                let c = b[4] - b[i];
                (
                    vec![
                        act("l~_j+", id, false),
                        act("e_0", id, false),
                        act("e_j", shift(c), false),
                        act("e_k", shift(c), false),
                    ],
                    fix(0, 0, &["e_0"]),
                )
            } else {
                // components of the stratum triple (l, l', l'')
                let (n1, n2) = if l == jj { ("e_k", "e_i") } else { ("e_i", "e_j") };
                let w = b[4] * b[4];
                (
                    vec![
                        act("e_0", mult(1.0 / w), l != jj),
                        act(n1, mult(w), l != jj),
                        act(n2, mult(1.0 / w), l != jj),
                    ],
                    fix(4, 0, &[]),
                )
            }
        }
        StratumLabel::A1x3 => (
            vec![
                act("l~_j+", id, false),
                act("e_k", shift(one), false),
                act("e_j", shift(one), true),
                act("e_i", mult(b[4] * b[4]), false),
            ],
            fix(2, 2, &[]),
        ),
        StratumLabel::D4 => (
            vec![
                act("l~_j+", id, false),
                act("e_0", id, false),
                act("e_j", id, false),
                act("e_i", shift(one), false),
                act("e_k", shift(one), true),
            ],
            fix(0, 0, &["e_0", "e_j"]),
        ),
        StratumLabel::A1x4 => {
            let mut v = vec![act("l~_j+", id, false), act("l~_j-", id, false)];
            for name in ["e^{---}", "e^{-++}", "e^{+-+}", "e^{++-}"] {
                v.push(act(name, shift(Complex64::new(4.0, 0.0)), name != "e^{---}"));
            }
            (v, fix(0, 4, &[]))
        }
    };
    Ok(ExceptionalReport { label: s.label, j, normal_form: nf, actions, fix_e })
}

/// Smallest `d >= 1` with `lambda^d = 1`, up to `max`.
pub fn root_of_unity_order(lambda: Complex64, max: u32, tol: f64) -> Option<u32> {
    let mut p = lambda;
    for d in 1..=max {
        if (p - 1.0).norm() <= tol {
            return Some(d);
        }
        p *= lambda;
    }
    None
}

impl ExceptionalReport {
    /// Exceptional curves made of periodic points of prime period `n > 1`:
    /// those on which `g_j^2` is a multiplication by a primitive `n`-th root of unity.
    pub fn per_e(&self, n: u32) -> Vec<String> {
        if n < 2 {
            return vec![];
        }
        self.actions
            .iter()
            .filter(|a| match a.kind {
                MobiusKind::Multiplier { lambda } => root_of_unity_order(lambda, n, 1e-9) == Some(n),
                _ => false,
            })
            .map(|a| a.component.clone())
            .collect()
    }

    pub fn count_kind(&self, kind: &str) -> usize {
        self.actions
            .iter()
            .filter(|a| {
                matches!(
                    (kind, a.kind),
                    ("identity", MobiusKind::Identity)
                        | ("multiplier", MobiusKind::Multiplier { .. })
                        | ("shift", MobiusKind::Shift { .. })
                )
            })
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct A1Check {
    pub expected: Complex64,
    /// `(g_j^2(x0 + h v) - x0) / h` projected on `v`.
    pub transported: Complex64,
    pub relative_error: f64,
    /// `|v^T H v| / (|H| |v|^2)` with `H` the Hessian of `f` at the singular point.
    pub cone_residual: f64,
}

impl A1Check {
    pub fn passed(&self) -> bool {
        self.relative_error <= 1e-3 && self.cone_residual <= 1e-3
    }
}

/// Directional check of the `A1` multiplier: the eigen-direction of the
/// linearization of `g_j^2` at the singular point for `b_j^2 b_k^2` lies on the
/// tangent cone and is transported with that factor.
pub fn a1_multiplier_check(k: &Kappa, j: usize, h: f64) -> Result<A1Check> {
    let r = k.require_exact("A1 check")?;
    if r[0] != Rational64::from_integer(0) {
        return Err(Error::Invalid("A1 check expects kappa_0 = 0".into()));
    }
    let (_, jj, kk) = triple(j);
    let b = b_vec(k).b;
    let th = b_vec(k).theta();
    let x0 = [1, 2, 3].map(|l| b[l] * b[4] + 1.0 / (b[l] * b[4]));
    let (f, y) = surface_eval(&x0, &th);
    let sc = surface_scale(&x0, &th);
    if f.norm() > 1e-9 * sc || y.iter().any(|v| v.norm() > 1e-9 * sc) {
        return Err(Error::Inconsistent("A1 point is not singular".into()));
    }
    let expected = (b[jj] * b[kk]).powi(2);

    let mut jac = Matrix3::<Complex64>::zeros();
    for c in 0..3 {
        let (mut xp, mut xm) = (x0, x0);
        xp[c] += h;
        xm[c] -= h;
        let (gp, gm) = (g_sq(j, &xp, &th), g_sq(j, &xm, &th));
        for r in 0..3 {
            jac[(r, c)] = (gp[r] - gm[r]) / (2.0 * h);
        }
    }
    let shifted = jac - Matrix3::<Complex64>::identity() * expected;
    let svd = shifted.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::Inconsistent("svd failed".into()))?;
    let idx = (0..3).min_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b])).unwrap();
    let v: [Complex64; 3] = [0, 1, 2].map(|c| vt[(idx, c)].conj());
    let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let v = v.map(|z| z / vn);

    let xs = [0, 1, 2].map(|l| x0[l] + h * v[l]);
    let g = g_sq(j, &xs, &th);
    let w = [0, 1, 2].map(|l| (g[l] - x0[l]) / h);
    let transported: Complex64 = (0..3).map(|l| w[l] * v[l].conj()).sum();
    let relative_error = (transported - expected).norm() / expected.norm();

    let hess = Matrix3::new(
        Complex64::new(2.0, 0.0), x0[2], x0[1],
        x0[2], Complex64::new(2.0, 0.0), x0[0],
        x0[1], x0[0], Complex64::new(2.0, 0.0),
    );
    let q: Complex64 = (0..3).flat_map(|a| (0..3).map(move |c| (a, c))).map(|(a, c)| v[a] * hess[(a, c)] * v[c]).sum();
    let cone_residual = q.norm() / hess.norm();
    Ok(A1Check { expected, transported, relative_error, cone_residual })
}
