//! Truncated Puiseux-Laurent series, differential sums and Newton polygons.
//!
//! A series with ramification `n` stores coefficients for the exponents
//! `lo/n, (lo+1)/n, ...` up to, but excluding, `trunc/n`. Everything at or
//! beyond `trunc/n` is unknown and is never reported.

mod diffsum;
mod newton;

pub use diffsum::{diffsum_eval, diffsum_eval_scaled, diffsum_linearize, diffsum_linearize_scaled, DiffSum, Expr, Mono};
pub use newton::{
    frechet_char, linear_char, newton_polygon, newton_polygon_at, truncate_along, Edge, Face, KPoly, NewtonPolygon,
};

use num::complex::Complex64;
use num::integer::Integer;
use num::rational::Rational64;
use num::traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries<T = Complex64> {
    ram: u32,
    lo: i64,
    coeffs: Vec<T>,
    trunc: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Div,
}

pub fn ps_arith<T: Coeff>(
    a: &PuiseuxSeries<T>,
    b: &PuiseuxSeries<T>,
    op: ArithOp,
) -> Result<PuiseuxSeries<T>> {
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

pub fn ps_derive<T: Coeff>(a: &PuiseuxSeries<T>) -> PuiseuxSeries<T> {
    a.derive()
}

pub fn ps_rebase<T: Coeff>(a: &PuiseuxSeries<T>, m: u32) -> Result<PuiseuxSeries<T>> {
    a.rebase(m)
}

impl<T: Coeff> PuiseuxSeries<T> {
    /// Builds a series from coefficients starting at slot `lo`; the vector is
    /// cut or zero-padded to reach `trunc`.
    pub fn new(ram: u32, lo: i64, mut coeffs: Vec<T>, trunc: i64) -> Self {
        assert!(ram > 0, "ramification must be positive");
        let len = (trunc - lo).max(0) as usize;
        coeffs.resize(len, T::zero());
        let mut s = PuiseuxSeries { ram, lo, coeffs, trunc: trunc.max(lo) };
        s.normalize();
        s
    }

    pub fn zero(ram: u32, trunc: i64) -> Self {
        PuiseuxSeries { ram, lo: trunc, coeffs: Vec::new(), trunc }
    }

    pub fn constant(c: T, trunc: i64) -> Self {
        Self::new(1, 0, vec![c], trunc)
    }

    /// `c z^(num/ram)`, known up to `trunc/ram`.
    pub fn monomial(c: T, num: i64, ram: u32, trunc: i64) -> Self {
        Self::new(ram, num, vec![c], trunc)
    }

    /// Ordinary power series `sum c_k z^k`, k from 0.
    pub fn from_poly(coeffs: Vec<T>, trunc: i64) -> Self {
        Self::new(1, 0, coeffs, trunc)
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn trunc(&self) -> i64 {
        self.trunc
    }
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn trunc_exponent(&self) -> Rational64 {
        Rational64::new(self.trunc, self.ram as i64)
    }

    pub fn leading_exponent(&self) -> Option<Rational64> {
        (!self.is_zero()).then(|| Rational64::new(self.lo, self.ram as i64))
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.first()
    }

    /// Coefficient at slot `num` (exponent `num/ram`); `None` when not certain.
    pub fn coeff_at(&self, num: i64) -> Option<T> {
        if num >= self.trunc {
            None
        } else if num < self.lo {
            Some(T::zero())
        } else {
            Some(self.coeffs[(num - self.lo) as usize].clone())
        }
    }

    /// Coefficient at a rational exponent; `None` when uncertain or not on the grid.
    pub fn coeff(&self, e: Rational64) -> Option<T> {
        let scaled = e * Rational64::from_integer(self.ram as i64);
        if !scaled.is_integer() {
            return Some(T::zero()).filter(|_| scaled < Rational64::from_integer(self.trunc));
        }
        self.coeff_at(scaled.to_integer())
    }

    fn normalize(&mut self) {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip > 0 {
            self.coeffs.drain(..skip);
            self.lo += skip as i64;
        }
    }

    /// Drops leading coefficients that are rounding noise relative to `scale`
    /// (a majorant series of the same shape). Exact types drop only zeros.
    pub fn denoise(mut self, scale: &PuiseuxSeries<Complex64>) -> Self {
        let mut skip = 0;
        for (idx, c) in self.coeffs.iter().enumerate() {
            let slot = self.lo + idx as i64;
            let s = scale_at(scale, slot, self.ram);
            if c.negligible(s) {
                skip += 1;
            } else {
                break;
            }
        }
        self.coeffs.drain(..skip);
        self.lo += skip as i64;
        self
    }

    /// Same series viewed at ramification `m`. Either `m` is a multiple of the
    /// current ramification, or all occupied slots are compatible with `m`.
    pub fn rebase(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::NotMultiple { from: self.ram, to: m });
        }
        if m % self.ram == 0 {
            let f = (m / self.ram) as i64;
            let mut coeffs = vec![T::zero(); ((self.trunc - self.lo) * f) as usize];
            for (i, c) in self.coeffs.iter().enumerate() {
                coeffs[i * f as usize] = c.clone();
            }
            return Ok(PuiseuxSeries { ram: m, lo: self.lo * f, coeffs, trunc: self.trunc * f });
        }
        if self.ram % m == 0 {
            let f = (self.ram / m) as i64;
            let ok_bounds = self.lo % f == 0 && self.trunc % f == 0;
            let ok_slots = self
                .coeffs
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || (self.lo + i as i64) % f == 0);
            if (ok_bounds || self.is_zero() && self.trunc % f == 0) && ok_slots {
                let coeffs = self.coeffs.iter().step_by(f as usize).cloned().collect();
                let lo = if self.is_zero() { self.trunc / f } else { self.lo / f };
                return Ok(PuiseuxSeries { ram: m, lo, coeffs, trunc: self.trunc / f });
            }
        }
        Err(Error::NotMultiple { from: self.ram, to: m })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.ram == other.ram {
            return (self.clone(), other.clone());
        }
        let l = self.ram.lcm(&other.ram);
        (self.rebase(l).expect("lcm"), other.rebase(l).expect("lcm"))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let trunc = a.trunc.min(b.trunc);
        let lo = a.lo.min(b.lo).min(trunc);
        let mut coeffs = vec![T::zero(); (trunc - lo) as usize];
        for s in [&a, &b] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let slot = s.lo + i as i64;
                if slot < trunc {
                    let idx = (slot - lo) as usize;
                    coeffs[idx] = coeffs[idx].clone() + c.clone();
                }
            }
        }
        PuiseuxSeries::new(a.ram, lo, coeffs, trunc)
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            ram: self.ram,
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &T) -> Self {
        if k.is_zero() {
            return PuiseuxSeries::zero(self.ram, self.trunc);
        }
        PuiseuxSeries {
            ram: self.ram,
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplies by `z^(num/ram)` in the series' own ramification units.
    pub fn shift(&self, num: i64) -> Self {
        PuiseuxSeries {
            ram: self.ram,
            lo: self.lo + num,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + num,
        }
    }

    /// Multiplies by `z^e` for an integer `e`.
    pub fn mul_z(&self, e: i64) -> Self {
        self.shift(e * self.ram as i64)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let trunc = (a.lo + b.trunc).min(b.lo + a.trunc);
        if a.is_zero() || b.is_zero() {
            return PuiseuxSeries::zero(a.ram, trunc);
        }
        let lo = a.lo + b.lo;
        let len = (trunc - lo).max(0) as usize;
        let mut coeffs = vec![T::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].clone() + x.clone() * y.clone();
            }
        }
        PuiseuxSeries::new(a.ram, lo, coeffs, trunc)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_zero() {
            return Ok(PuiseuxSeries::zero(a.ram, a.trunc - b.lo));
        }
        let lo = a.lo - b.lo;
        let rel = (a.trunc - a.lo).min(b.trunc - b.lo);
        let len = rel as usize;
        let b0 = b.coeffs[0].clone();
        let mut rem: Vec<T> = a.coeffs.iter().take(len).cloned().collect();
        rem.resize(len, T::zero());
        let mut out = Vec::with_capacity(len);
        for n in 0..len {
            let c = rem[n].clone() / b0.clone();
            for (j, y) in b.coeffs.iter().enumerate().skip(1) {
                if n + j >= len {
                    break;
                }
                rem[n + j] = rem[n + j].clone() - c.clone() * y.clone();
            }
            out.push(c);
        }
        Ok(PuiseuxSeries::new(a.ram, lo, out, lo + rel))
    }

    /// `self^n` for `n >= 1`.
    pub fn pow(&self, n: u32) -> Self {
        assert!(n >= 1, "pow needs a positive exponent");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derive(&self) -> Self {
        let n = self.ram as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let nu = self.lo + i as i64;
                c.clone() * T::from_ratio(Rational64::new(nu, n))
            })
            .collect();
        PuiseuxSeries::new(self.ram, self.lo - n, coeffs, self.trunc - n)
    }

    /// Lowers the truncation to `trunc` slots (never raises it).
    pub fn truncate(&self, trunc: i64) -> Self {
        let t = trunc.min(self.trunc);
        if t <= self.lo {
            return PuiseuxSeries::zero(self.ram, t);
        }
        PuiseuxSeries::new(self.ram, self.lo, self.coeffs[..(t - self.lo) as usize].to_vec(), t)
    }

    /// Overwrites (or inserts) the coefficient at slot `num`, which must lie below `trunc`.
    pub fn with_coeff(&self, num: i64, c: T) -> Self {
        assert!(num < self.trunc);
        let lo = self.lo.min(num);
        let mut coeffs = vec![T::zero(); (self.trunc - lo) as usize];
        for (i, x) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + i] = x.clone();
        }
        coeffs[(num - lo) as usize] = c;
        PuiseuxSeries::new(self.ram, lo, coeffs, self.trunc)
    }

    pub fn to_c64(&self) -> PuiseuxSeries<Complex64> {
        PuiseuxSeries {
            ram: self.ram,
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| c.to_c64()).collect(),
            trunc: self.trunc,
        }
    }

    /// Series of coefficient moduli, used as a rounding-scale majorant.
    pub fn abs_majorant(&self) -> PuiseuxSeries<Complex64> {
        PuiseuxSeries {
            ram: self.ram,
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| Complex64::new(c.modulus(), 0.0)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> PuiseuxSeries<U> {
        PuiseuxSeries::new(self.ram, self.lo, self.coeffs.iter().map(f).collect(), self.trunc)
    }

    /// Largest coefficient modulus.
    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.modulus()).fold(0.0, f64::max)
    }
}

fn scale_at(scale: &PuiseuxSeries<Complex64>, slot: i64, ram: u32) -> f64 {
    if scale.ram == ram {
        scale.coeff_at(slot).map(|c| c.norm()).unwrap_or(0.0)
    } else {
        scale.coeff(Rational64::new(slot, ram as i64)).map(|c| c.norm()).unwrap_or(0.0)
    }
}

impl PuiseuxSeries<Complex64> {
    /// Evaluates the truncated sum at `z` on the branch `arg z = theta`,
    /// i.e. with `z^(1/n) = |z|^(1/n) e^(i theta / n)`.
    pub fn eval_branch(&self, z: Complex64, theta: f64) -> Complex64 {
        let n = self.ram as f64;
        let zeta = Complex64::from_polar(z.norm().powf(1.0 / n), theta / n);
        let mut acc = Complex64::zero();
        let mut pw = zeta.powi(self.lo as i32);
        for c in &self.coeffs {
            acc += c * pw;
            pw *= zeta;
        }
        acc
    }

    /// Evaluates on the principal branch.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_branch(z, z.arg())
    }

    /// The series continued `k` times anticlockwise around the origin:
    /// coefficient of slot `nu` picks up `exp(2 pi i k nu / n)`.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.ram as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let nu = self.lo + i as i64;
                let r = (k * nu).rem_euclid(n) as f64 / n as f64;
                c * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r)
            })
            .collect();
        PuiseuxSeries::new(self.ram, self.lo, coeffs, self.trunc)
    }

    /// Largest coefficient difference on the common certain window.
    pub fn distance(&self, other: &Self) -> f64 {
        let d = self.sub(other);
        d.max_modulus()
    }
}

/// JSON form: `{ram, lo, trunc, coeffs: [[re, im], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SeriesJson {
    pub ram: u32,
    pub lo: i64,
    pub trunc: i64,
    pub coeffs: Vec<[f64; 2]>,
}

impl<T: Coeff> From<&PuiseuxSeries<T>> for SeriesJson {
    fn from(s: &PuiseuxSeries<T>) -> Self {
        SeriesJson {
            ram: s.ram,
            lo: s.lo,
            trunc: s.trunc,
            coeffs: s
                .coeffs
                .iter()
                .map(|c| {
                    let z = c.to_c64();
                    [z.re, z.im]
                })
                .collect(),
        }
    }
}

impl From<&SeriesJson> for PuiseuxSeries<Complex64> {
    fn from(j: &SeriesJson) -> Self {
        PuiseuxSeries::new(
            j.ram,
            j.lo,
            j.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
            j.trunc,
        )
    }
}

impl<T: Coeff> Serialize for PuiseuxSeries<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(s)
    }
}
