//! Fixed points of `g_j^2`: smooth points from the label table, singular
//! points and line components.

use num::complex::Complex64;
use num::rational::Rational64;
use num::traits::{One, Zero};
use serde::Serialize;

use super::quartic::{fixed_point_over, quartic, quartic_coeffs};
use super::surface::{dist3, surface_eval, surface_scale, triple, SurfacePoint};
use crate::error::{Error, Result};
use crate::params::{b_vec, rh_chain, BVec, Kappa, Theta};
use crate::roots::{RootCluster, CLUSTER_TOL};

/// Distance below which a numerical root counts as `+2` or `-2`.
pub const PM2_TOL: f64 = 1e-7;

pub fn f_of(u: Complex64, v: Complex64) -> Complex64 {
    let w = u * v;
    w + 1.0 / w
}

pub fn g_of(bi: Complex64, b4: Complex64, bj: Complex64, bk: Complex64) -> Complex64 {
    let jk = bj * bk;
    (bi + b4) * (bj + bk) * (jk + 1.0) / (2.0 * (bi * b4 + 1.0) * jk)
        + (bi - b4) * (bj - bk) * (jk - 1.0) / (2.0 * (bi * b4 - 1.0) * jk)
}

/// `(U, V, W, S)` of the label-`label` point `P(U, V; W, S)`.
pub fn label_args(b: &BVec, j: usize, label: u8) -> [Complex64; 4] {
    let (i, j, k) = triple(j);
    let b = &b.b;
    match label {
        1 => [b[i], b[4], b[j], b[k]],
        2 => [b[i], 1.0 / b[4], b[j], b[k]],
        3 => [b[j], b[k], b[i], b[4]],
        4 => [b[j], 1.0 / b[k], b[i], b[4]],
        _ => panic!("label must be 1..4"),
    }
}

/// `P(U, V; W, S)` placed in `(x_i, x_j, x_k)`.
pub fn label_point(b: &BVec, j: usize, label: u8) -> [Complex64; 3] {
    let (i, j, k) = triple(j);
    let [u, v, w, s] = label_args(b, j, label);
    let mut x = [Complex64::zero(); 3];
    x[i - 1] = f_of(u, v);
    x[j - 1] = g_of(u, v, w, s);
    x[k - 1] = g_of(u, v, s, w);
    x
}

fn is_int(r: Rational64) -> bool {
    r.is_integer()
}

fn is_odd(r: Rational64) -> bool {
    r.is_integer() && r.to_integer().rem_euclid(2) == 1
}

fn mod2(r: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    let m = r % two;
    if m < Rational64::zero() {
        m + two
    } else {
        m
    }
}

/// Angle `rho` (mod 2) with `UV = exp(i pi rho)` for the label.
pub fn label_angle(k: &[Rational64; 5], j: usize, label: u8) -> Rational64 {
    let (i, j, kk) = triple(j);
    let one = Rational64::one();
    mod2(match label {
        1 => k[i] + k[4] + one,
        2 => k[i] - k[4] + one,
        3 => k[j] + k[kk],
        4 => k[j] - k[kk],
        _ => panic!("label must be 1..4"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LabelFlags {
    pub label: u8,
    pub exists: bool,
    pub smooth: bool,
    /// `F(U, V)`, the `x_i`-coordinate.
    pub value: Complex64,
}

/// Existence and smoothness conditions of the label table.
pub fn label_flags(k: &Kappa, j: usize, label: u8) -> Result<LabelFlags> {
    let kr = k.require_exact("label conditions")?;
    let (i, jj, kk) = triple(j);
    let (base, singles, others) = match label {
        1 => (kr[i] + kr[4], [kr[i], kr[4]], [kr[jj], kr[kk]]),
        2 => (kr[i] - kr[4], [kr[i], kr[4]], [kr[jj], kr[kk]]),
        3 => (kr[jj] + kr[kk], [kr[jj], kr[kk]], [kr[i], kr[4]]),
        4 => (kr[jj] - kr[kk], [kr[jj], kr[kk]], [kr[i], kr[4]]),
        _ => return Err(Error::Invalid(format!("label {label}"))),
    };
    let exists = !is_int(base);
    let mut smooth = singles.iter().all(|&s| !is_int(s));
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            let v = base + others[0] * Rational64::from_integer(s1) + others[1] * Rational64::from_integer(s2);
            if is_odd(v) {
                smooth = false;
            }
        }
    }
    let [u, v, _, _] = label_args(&b_vec(k), j, label);
    Ok(LabelFlags { label, exists, smooth, value: f_of(u, v) })
}

fn fixed_residual_ok(j: usize, x: &[Complex64; 3], th: &Theta, tol: f64) -> bool {
    let (_, jj, kk) = triple(j);
    let (f, y) = surface_eval(x, th);
    let s = surface_scale(x, th).max(1.0);
    f.norm() <= tol * s && y[jj - 1].norm() <= tol * s && y[kk - 1].norm() <= tol * s
}

/// Points of the label table meeting both conditions.
pub fn smooth_fixed_points(j: usize, k: &Kappa) -> Result<Vec<(u8, SurfacePoint)>> {
    k.require_exact("smooth fixed points")?;
    let img = rh_chain(k);
    let mut out = Vec::new();
    for label in 1..=4 {
        let fl = label_flags(k, j, label)?;
        if fl.exists && fl.smooth {
            let x = label_point(&img.b, j, label);
            out.push((label, SurfacePoint::new(x, &img.theta)));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum FixedComponent {
    SmoothPoint { label: Option<u8>, x: SurfacePoint },
    SingularPoint { x: SurfacePoint, quartic_multiplicity: usize },
    LineComponent { delta: i8 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointReport {
    pub j: usize,
    pub components: Vec<FixedComponent>,
    /// Highest degree first.
    pub quartic_coeffs: [Complex64; 5],
    /// Root clusters used for the classification.
    pub quartic_roots: Vec<RootCluster>,
    /// Root clusters from the companion matrix.
    pub numeric_roots: Vec<RootCluster>,
    pub label_flags: Vec<LabelFlags>,
    /// Whether the numerical multiplicities, the label conditions and the
    /// line conditions all agree with the exact classification.
    pub routes_agree: bool,
}

impl FixedPointReport {
    pub fn lines(&self) -> Vec<i8> {
        self.components
            .iter()
            .filter_map(|c| match c {
                FixedComponent::LineComponent { delta } => Some(*delta),
                _ => None,
            })
            .collect()
    }

    pub fn smooth_labels(&self) -> Vec<u8> {
        self.components
            .iter()
            .filter_map(|c| match c {
                FixedComponent::SmoothPoint { label, .. } => *label,
                _ => None,
            })
            .collect()
    }

    pub fn count(&self, kind: &str) -> usize {
        self.components
            .iter()
            .filter(|c| {
                matches!(
                    (kind, c),
                    ("smooth", FixedComponent::SmoothPoint { .. })
                        | ("singular", FixedComponent::SingularPoint { .. })
                        | ("line", FixedComponent::LineComponent { .. })
                )
            })
            .count()
    }

    pub fn ensure_consistent(&self) -> Result<()> {
        if self.routes_agree {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!("fixed-point routes disagree for j = {}", self.j)))
        }
    }
}

fn pm2(v: Complex64) -> Option<i8> {
    if (v - 2.0).norm() <= PM2_TOL {
        Some(1)
    } else if (v + 2.0).norm() <= PM2_TOL {
        Some(-1)
    } else {
        None
    }
}

fn component_for(j: usize, root: Complex64, mult: usize, th: &Theta) -> Option<FixedComponent> {
    match (pm2(root), mult) {
        (Some(_), 1) => None,
        (Some(d), _) => Some(FixedComponent::LineComponent { delta: d }),
        (None, 1) => {
            Some(FixedComponent::SmoothPoint { label: None, x: SurfacePoint::new(fixed_point_over(j, root, th), th) })
        }
        (None, m) => Some(FixedComponent::SingularPoint {
            x: SurfacePoint::new(fixed_point_over(j, root, th), th),
            quartic_multiplicity: m,
        }),
    }
}

/// Classification from `theta` alone, using numerical root multiplicities.
pub fn fixed_point_report_theta(j: usize, th: &Theta) -> FixedPointReport {
    let q = quartic(j, th);
    let components = q.roots.iter().filter_map(|r| component_for(j, r.root, r.mult, th)).collect();
    FixedPointReport {
        j,
        components,
        quartic_coeffs: q.coeffs,
        quartic_roots: q.roots.clone(),
        numeric_roots: q.roots,
        label_flags: Vec::new(),
        routes_agree: true,
    }
}

/// Conditions (1)-(3) for the line `x_i = 2 delta` to lie in `Fix_j`:
/// `b_i b_4 = b_i / b_4 = delta`, `b_j b_k = b_j / b_k = delta`, or
/// `b_i b_4^(+-1) = b_j b_k^(+-1) = delta`.
pub fn line_conditions(k: &[Rational64; 5], j: usize, delta: i8) -> bool {
    let d = if delta > 0 { Rational64::zero() } else { Rational64::one() };
    let hit = |l: u8| label_angle(k, j, l) == d;
    (hit(1) && hit(2)) || (hit(3) && hit(4)) || ((hit(1) || hit(2)) && (hit(3) || hit(4)))
}

/// Exact classification for rational `kappa`, cross-checked against the
/// numerical quartic roots.
pub fn fixed_point_report(j: usize, k: &Kappa) -> Result<FixedPointReport> {
    let kr = *k.require_exact("fixed point report")?;
    let img = rh_chain(k);
    let th = img.theta;
    triple(j);

    // Group labels whose angles agree up to sign.
    let angles: Vec<Rational64> = (1..=4).map(|l| label_angle(&kr, j, l)).collect();
    let mut groups: Vec<Vec<u8>> = Vec::new();
    for l in 1..=4u8 {
        let a = angles[l as usize - 1];
        match groups
            .iter_mut()
            .find(|g| {
                let b = angles[g[0] as usize - 1];
                a == b || mod2(-a) == b
            }) {
            Some(g) => g.push(l),
            None => groups.push(vec![l]),
        }
    }

    let flags: Vec<LabelFlags> = (1..=4).map(|l| label_flags(k, j, l)).collect::<Result<_>>()?;
    let mut agree = true;
    let mut components = Vec::new();
    let mut exact_roots = Vec::new();
    for g in &groups {
        let rho = angles[g[0] as usize - 1];
        let value = flags[g[0] as usize - 1].value;
        let mult = g.len();
        exact_roots.push(RootCluster { root: value, mult });
        if rho.is_integer() {
            if mult > 1 {
                let delta = if rho.is_zero() { 1 } else { -1 };
                if !line_conditions(&kr, j, delta) {
                    agree = false;
                }
                let (_, jj, kk) = triple(j);
                if (th.th(kk) - f64::from(delta) * th.th(jj)).norm() > 1e-9 * (1.0 + th.th(jj).norm()) {
                    agree = false;
                }
                components.push(FixedComponent::LineComponent { delta });
            }
            continue;
        }
        if mult == 1 {
            let label = g[0];
            let fl = flags[label as usize - 1];
            if !(fl.exists && fl.smooth) {
                agree = false;
            }
            let x = label_point(&img.b, j, label);
            if !fixed_residual_ok(j, &x, &th, 1e-9) || dist3(&x, &fixed_point_over(j, value, &th)) > 1e-7 * (1.0 + value.norm()) {
                agree = false;
            }
            components.push(FixedComponent::SmoothPoint { label: Some(label), x: SurfacePoint::new(x, &th) });
        } else {
            for &l in g {
                if flags[l as usize - 1].smooth {
                    agree = false;
                }
            }
            components.push(FixedComponent::SingularPoint {
                x: SurfacePoint::new(fixed_point_over(j, value, &th), &th),
                quartic_multiplicity: mult,
            });
        }
    }
    for d in [1i8, -1] {
        let has = components.iter().any(|c| *c == FixedComponent::LineComponent { delta: d });
        if has != line_conditions(&kr, j, d) {
            agree = false;
        }
    }

    let numeric = quartic(j, &th).roots;
    let mut used = vec![false; numeric.len()];
    for r in &exact_roots {
        let tol = 10.0 * CLUSTER_TOL * (1.0 + r.root.norm());
        match numeric.iter().enumerate().position(|(n, q)| !used[n] && q.mult == r.mult && (q.root - r.root).norm() <= tol) {
            Some(n) => used[n] = true,
            None => agree = false,
        }
    }

    Ok(FixedPointReport {
        j,
        components,
        quartic_coeffs: quartic_coeffs(j, &th),
        quartic_roots: exact_roots,
        numeric_roots: numeric,
        label_flags: flags,
        routes_agree: agree,
    })
}

/// Solutions of `f = y_1 = y_2 = y_3 = 0`, from the multiple roots of the
/// three quartics and from solving along line components.
pub fn singular_points(th: &Theta) -> Vec<SurfacePoint> {
    let mut cands: Vec<[Complex64; 3]> = Vec::new();
    for j in 1..=3 {
        let (i, jj, kk) = triple(j);
        for r in quartic(j, th).roots.iter().filter(|r| r.mult > 1) {
            match pm2(r.root) {
                None => cands.push(fixed_point_over(j, r.root, th)),
                Some(d) => {
                    // On x_i = 2d, x_j = theta_j/2 - d s, x_k = s the remaining
                    // condition y_i = 0 reads -d s^2 + (theta_j/2) s + 4d - theta_i = 0.
                    let df = f64::from(d);
                    let (a, b, c) = (Complex64::new(-df, 0.0), th.th(jj) / 2.0, 4.0 * df - th.th(i));
                    let disc = (b * b - 4.0 * a * c).sqrt();
                    for s in [(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)] {
                        let mut x = [Complex64::zero(); 3];
                        x[i - 1] = Complex64::new(2.0 * df, 0.0);
                        x[jj - 1] = th.th(jj) / 2.0 - df * s;
                        x[kk - 1] = s;
                        cands.push(x);
                    }
                }
            }
        }
    }
    let mut out: Vec<SurfacePoint> = Vec::new();
    for x in cands {
        let (f, y) = surface_eval(&x, th);
        let s = surface_scale(&x, th).max(1.0);
        if f.norm() > 1e-7 * s || y.iter().any(|v| v.norm() > 1e-7 * s) {
            continue;
        }
        let tol = 1e-8 * (1.0 + x.iter().map(|v| v.norm()).fold(0.0, f64::max));
        if !out.iter().any(|p| dist3(&p.x, &x) <= tol) {
            out.push(SurfacePoint::new(x, th));
        }
    }
    out
}
