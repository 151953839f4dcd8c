//! Numerical continuation of the Hamiltonian system along paths in the
//! punctured plane, and branch counting around `z = 0`.

mod dopri;

pub use dopri::DenseStep;

use std::f64::consts::PI;

use num::complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::GermPair;
use crate::params::Kappa;

/// Default loop radius.
pub const DEFAULT_RHO: f64 = 0.01;
/// Default number of loops tried.
pub const DEFAULT_K_MAX: u32 = 12;
/// Default local tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default return tolerance.
pub const DEFAULT_RETURN_TOL: f64 = 1e-6;

/// `H` times `z(z-1)`, split into the pieces needed for the field.
fn parts(z: Complex64, q: Complex64, k: &[Complex64; 5]) -> (Complex64, Complex64, Complex64, Complex64) {
    let (q1, qz) = (q - 1.0, q - z);
    let cubic = q * q1 * qz;
    let a = k[1] * q1 * qz + (k[2] - 1.0) * q * q1 + k[3] * q * qz;
    let dcubic = q1 * qz + q * qz + q * q1;
    let da = k[1] * (q1 + qz) + (k[2] - 1.0) * (q + q1) + k[3] * (q + qz);
    (cubic, a, dcubic, da)
}

fn check_z(z: Complex64) -> Result<Complex64> {
    let d = z * (z - 1.0);
    if d.norm() == 0.0 {
        return Err(Error::Excluded(format!("{z}")));
    }
    Ok(d)
}

/// `H(z, q, p)`.
pub fn hamiltonian(z: Complex64, q: Complex64, p: Complex64, k: &Kappa) -> Result<Complex64> {
    let d = check_z(z)?;
    let v = k.values();
    let (cubic, a, _, _) = parts(z, q, &v);
    Ok((cubic * p * p - a * p + v[0] * (v[0] + v[4]) * (q - z)) / d)
}

/// `(dq/dz, dp/dz) = (H_p, -H_q)`.
pub fn ham_field(z: Complex64, q: Complex64, p: Complex64, k: &Kappa) -> Result<(Complex64, Complex64)> {
    field_with(z, q, p, &k.values())
}

fn field_with(z: Complex64, q: Complex64, p: Complex64, v: &[Complex64; 5]) -> Result<(Complex64, Complex64)> {
    let d = check_z(z)?;
    let (cubic, a, dcubic, da) = parts(z, q, v);
    let dq = (2.0 * cubic * p - a) / d;
    let dp = -(dcubic * p * p - da * p + v[0] * (v[0] + v[4])) / d;
    Ok((dq, dp))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    Line { from: Complex64, to: Complex64 },
    /// `center + radius e^(i a)` for `a` from `from` to `to` (radians).
    Arc { center: Complex64, radius: f64, from: f64, to: f64 },
}

impl Piece {
    pub fn at(&self, s: f64) -> Complex64 {
        match *self {
            Piece::Line { from, to } => from + (to - from) * s,
            Piece::Arc { center, radius, from, to } => center + Complex64::from_polar(radius, from + (to - from) * s),
        }
    }

    pub fn velocity(&self, s: f64) -> Complex64 {
        match *self {
            Piece::Line { from, to } => to - from,
            Piece::Arc { center, from, to, .. } => {
                let w = to - from;
                Complex64::i() * w * (self.at(s) - center)
            }
        }
    }

    pub fn reversed(&self) -> Piece {
        match *self {
            Piece::Line { from, to } => Piece::Line { from: to, to: from },
            Piece::Arc { center, radius, from, to } => Piece::Arc { center, radius, from: to, to: from },
        }
    }

    /// Distance from the piece to `x`.
    pub fn distance_to(&self, x: Complex64) -> f64 {
        match *self {
            Piece::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                let s = if len2 == 0.0 { 0.0 } else { ((x - from) * d.conj()).re / len2 };
                (self.at(s.clamp(0.0, 1.0)) - x).norm()
            }
            Piece::Arc { center, radius, from, to } => {
                let ends = (self.at(0.0) - x).norm().min((self.at(1.0) - x).norm());
                let rel = x - center;
                if rel.norm() == 0.0 {
                    return radius;
                }
                let (lo, hi) = if from <= to { (from, to) } else { (to, from) };
                let mut a = rel.arg();
                while a < lo {
                    a += 2.0 * PI;
                }
                while a - 2.0 * PI >= lo {
                    a -= 2.0 * PI;
                }
                if a <= hi {
                    (rel.norm() - radius).abs()
                } else {
                    ends
                }
            }
        }
    }
}

/// A piecewise-smooth path, each piece parametrized by `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathSpec {
    pub pieces: Vec<Piece>,
    /// Minimum distance to `0` and `1`.
    pub rho_min: f64,
}

impl PathSpec {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        Self::with_margin(pieces, 1e-3)
    }

    pub fn with_margin(pieces: Vec<Piece>, rho_min: f64) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Invalid("empty path".into()));
        }
        for w in pieces.windows(2) {
            if (w[0].at(1.0) - w[1].at(0.0)).norm() > 1e-12 {
                return Err(Error::Invalid("path pieces do not join".into()));
            }
        }
        for p in &pieces {
            for x in [0.0, 1.0] {
                let d = p.distance_to(Complex64::new(x, 0.0));
                if d < rho_min {
                    return Err(Error::Excluded(format!("path passes within {d:e} of {x}")));
                }
            }
        }
        Ok(PathSpec { pieces, rho_min })
    }

    /// `windings` anticlockwise turns (clockwise if negative) on `|z| = rho`
    /// from `z = rho`.
    pub fn circle(rho: f64, windings: i32) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::Invalid(format!("loop radius {rho} not in (0, 1)")));
        }
        let pieces = (0..windings.unsigned_abs())
            .map(|_| {
                let to = 2.0 * PI * windings.signum() as f64;
                Piece::Arc { center: Complex64::default(), radius: rho, from: 0.0, to }
            })
            .collect();
        Self::with_margin(pieces, rho.min(1e-3))
    }

    pub fn start(&self) -> Complex64 {
        self.pieces[0].at(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.pieces[self.pieces.len() - 1].at(1.0)
    }

    pub fn reversed(&self) -> Self {
        PathSpec { pieces: self.pieces.iter().rev().map(Piece::reversed).collect(), rho_min: self.rho_min }
    }

    pub fn then(&self, other: &PathSpec) -> Result<Self> {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().copied());
        Self::with_margin(pieces, self.rho_min.min(other.rho_min))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct FlowState {
    pub z: Complex64,
    pub q: Complex64,
    pub p: Complex64,
    /// Sum of the local error estimates of accepted steps.
    pub err: f64,
    /// Set when `|q - 1|` or `|q - z|` fell below `1/guard`; the system is
    /// regular there, so this only flags.
    pub near_pole_line: bool,
}

impl FlowState {
    pub fn new(z: Complex64, q: Complex64, p: Complex64) -> Self {
        FlowState { z, q, p, ..Default::default() }
    }

    /// Max of the componentwise distances, each relative to `1 + |.|`.
    pub fn distance(&self, other: &FlowState) -> f64 {
        let d = |a: Complex64, b: Complex64| (a - b).norm() / (1.0 + b.norm());
        d(self.q, other.q).max(d(self.p, other.p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowOptions {
    /// Local tolerance per unit path parameter, absolute and relative.
    pub tol: f64,
    /// Abort when `|q|` or `|p|` exceeds this.
    pub guard: f64,
    /// Smallest step in the path parameter.
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions { tol: DEFAULT_TOL, guard: 1e8, h_min: 1e-13, max_steps: 1_000_000 }
    }
}

impl FlowOptions {
    pub fn with_tol(tol: f64) -> Self {
        FlowOptions { tol, ..Default::default() }
    }
}

/// Accepted steps of one piece, for dense output.
#[derive(Clone, Debug)]
pub struct PieceTrace {
    pub piece: Piece,
    pub steps: Vec<DenseStep>,
}

impl PieceTrace {
    /// `(z, q, p)` at path parameter `s`.
    pub fn eval(&self, s: f64) -> (Complex64, Complex64, Complex64) {
        let i = self.steps.partition_point(|st| st.s0 + st.h < s).min(self.steps.len() - 1);
        let st = &self.steps[i];
        let y = st.eval(((s - st.s0) / st.h).clamp(0.0, 1.0));
        (self.piece.at(s), y[0], y[1])
    }
}

fn guard_check(z: Complex64, y: &[Complex64; 2], guard: f64) -> Result<()> {
    for (v, name) in [(y[0], "q"), (y[1], "p")] {
        if !v.is_finite() || v.norm() > guard {
            return Err(Error::PoleGuard { z: format!("{z}"), what: format!("|{name}| = {:e}", v.norm()) });
        }
    }
    Ok(())
}

fn integrate_piece(
    piece: &Piece,
    v: &[Complex64; 5],
    s0: FlowState,
    opts: &FlowOptions,
    trace: Option<&mut Vec<DenseStep>>,
) -> Result<FlowState> {
    let mut f = |s: f64, y: &[Complex64; 2]| -> Result<[Complex64; 2]> {
        let z = piece.at(s);
        let (dq, dp) = field_with(z, y[0], y[1], v)?;
        let w = piece.velocity(s);
        Ok([dq * w, dp * w])
    };
    let mut y = [s0.q, s0.p];
    guard_check(s0.z, &y, opts.guard)?;
    let mut state = s0;
    let mut fy = f(0.0, &y)?;
    let mut s = 0.0;
    // Error per unit parameter: the local estimates of a piece sum to at most `tol`.
    let scale = |a: &[Complex64; 2], b: &[Complex64; 2], e: &[Complex64; 2], h: f64| {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            let sc = opts.tol * h * (1.0 + a[i].norm().max(b[i].norm()));
            m = m.max(e[i].norm() / sc);
        }
        m
    };
    let fn0 = fy[0].norm().max(fy[1].norm());
    let mut h = if fn0 > 0.0 { (0.01 * (1.0 + y[0].norm().max(y[1].norm())) / fn0).min(0.1) } else { 0.1 };
    let mut trace = trace;
    let mut steps = 0usize;
    while s < 1.0 {
        steps += 1;
        if steps > opts.max_steps || h < opts.h_min {
            return Err(Error::StepUnderflow(format!("{}", piece.at(s))));
        }
        let h_try = h.min(1.0 - s);
        let r = dopri::step(&mut f, s, &y, fy, h_try)?;
        let err = scale(&y, &r.y, &r.err, h_try);
        if !err.is_finite() || err > 1.0 {
            let fac = if err.is_finite() { (0.9 * err.powf(-0.25)).max(0.2) } else { 0.2 };
            h = h_try * fac;
            continue;
        }
        s = if h_try == 1.0 - s { 1.0 } else { s + h_try };
        let z = piece.at(s);
        guard_check(z, &r.y, opts.guard)?;
        y = r.y;
        fy = r.f_end;
        state.err += r.err[0].norm().max(r.err[1].norm());
        if (y[0] - 1.0).norm() * opts.guard < 1.0 || (y[0] - z).norm() * opts.guard < 1.0 {
            state.near_pole_line = true;
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(r.dense);
        }
        let fac = if err > 0.0 { (0.9 * err.powf(-0.25)).clamp(0.2, 5.0) } else { 5.0 };
        h = h_try * fac;
    }
    state.z = piece.at(1.0);
    state.q = y[0];
    state.p = y[1];
    Ok(state)
}

fn check_start(path: &PathSpec, s0: &FlowState) -> Result<()> {
    if (path.start() - s0.z).norm() > 1e-12 * (1.0 + s0.z.norm()) {
        return Err(Error::Invalid(format!("state at z = {} is not on the path start {}", s0.z, path.start())));
    }
    Ok(())
}

/// Continues `s0` along `path`.
pub fn integrate_path(path: &PathSpec, s0: FlowState, k: &Kappa, opts: &FlowOptions) -> Result<FlowState> {
    check_start(path, &s0)?;
    let v = k.values();
    path.pieces.iter().try_fold(s0, |st, piece| integrate_piece(piece, &v, st, opts, None))
}

/// As `integrate_path`, also returning the dense output of every piece.
pub fn integrate_path_dense(
    path: &PathSpec,
    s0: FlowState,
    k: &Kappa,
    opts: &FlowOptions,
) -> Result<(FlowState, Vec<PieceTrace>)> {
    check_start(path, &s0)?;
    let v = k.values();
    let mut st = s0;
    let mut out = Vec::new();
    for piece in &path.pieces {
        let mut steps = Vec::new();
        st = integrate_piece(piece, &v, st, opts, Some(&mut steps))?;
        out.push(PieceTrace { piece: *piece, steps });
    }
    Ok((st, out))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchOptions {
    pub rho: f64,
    pub k_max: u32,
    pub flow: FlowOptions,
    /// Return distance accepted as closing the orbit.
    pub return_tol: f64,
}

impl Default for BranchOptions {
    fn default() -> Self {
        BranchOptions { rho: DEFAULT_RHO, k_max: DEFAULT_K_MAX, flow: FlowOptions::default(), return_tol: DEFAULT_RETURN_TOL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchReport {
    /// Loops until the state returned.
    pub n: u32,
    /// Return distance after each loop.
    pub return_errors: Vec<f64>,
    pub return_error: f64,
    /// Loop count after which the rotated series coincides with itself.
    pub predicted: u32,
    /// Largest distance between the integrated state and the rotated
    /// series, over the loops.
    pub oracle_error: f64,
    pub agrees: bool,
    pub start: FlowState,
}

/// Smallest `k >= 1` with `k nu = 0 mod n` for every nonzero slot `nu`.
pub fn rotation_period(g: &GermPair) -> u32 {
    let n = g.q.ram() as i64;
    let slots = |s: &crate::puiseux::PuiseuxSeries<Complex64>| -> Vec<i64> {
        s.coeffs().iter().enumerate().filter(|(_, c)| c.norm() > 0.0).map(|(i, _)| s.lo() + i as i64).collect()
    };
    let all: Vec<i64> = slots(&g.q).into_iter().chain(slots(&g.p)).collect();
    (1..=n as u32).find(|&k| all.iter().all(|nu| (k as i64 * nu).rem_euclid(n) == 0)).unwrap_or(n as u32)
}

/// Size of the last two slots of the series at `|z| = rho`.
fn tail_at<T: crate::scalar::Coeff>(s: &crate::puiseux::PuiseuxSeries<T>, rho: f64) -> f64 {
    let c = s.to_c64();
    let zeta = rho.powf(1.0 / c.ram() as f64);
    let len = c.coeffs().len();
    c.coeffs()
        .iter()
        .enumerate()
        .skip(len.saturating_sub(2))
        .map(|(i, x)| x.norm() * zeta.powi((c.lo() + i as i64) as i32))
        .fold(0.0, f64::max)
}

/// Germ state at `z = rho`, refusing when the truncated tail is not
/// small against the return tolerance.
pub fn germ_state(g: &GermPair, rho: f64, margin: f64) -> Result<FlowState> {
    let z = Complex64::new(rho, 0.0);
    let (q, p) = (g.q.eval(z), g.p.eval(z));
    let tail = tail_at(&g.q, rho).max(tail_at(&g.p, rho)) / (1.0 + q.norm().min(p.norm()));
    if !(tail < margin) {
        return Err(Error::Invalid(format!("germ tail {tail:e} at |z| = {rho} exceeds the margin {margin:e}")));
    }
    Ok(FlowState::new(z, q, p))
}

/// Counts the loops of radius `rho` around `0` after which the solution
/// through the germ value at `z = rho` returns.
pub fn branch_count(g: &GermPair, opts: &BranchOptions) -> Result<BranchReport> {
    let start = germ_state(g, opts.rho, opts.return_tol / 10.0)?;
    let path = PathSpec::circle(opts.rho, 1)?;
    let z = start.z;
    let mut st = start;
    let mut return_errors = Vec::new();
    let mut oracle_error: f64 = 0.0;
    for k in 1..=opts.k_max {
        st = integrate_path(&path, st, &g.kappa, &opts.flow)?;
        let rot = FlowState::new(z, g.q.rotate(k as i64).eval(z), g.p.rotate(k as i64).eval(z));
        oracle_error = oracle_error.max(st.distance(&rot));
        let d = st.distance(&start);
        return_errors.push(d);
        if d < opts.return_tol {
            let predicted = rotation_period(g);
            return Ok(BranchReport {
                n: k,
                return_error: d,
                return_errors,
                predicted,
                oracle_error,
                agrees: predicted == k && oracle_error < opts.return_tol,
                start,
            });
        }
    }
    Err(Error::Diverged(opts.k_max))
}
