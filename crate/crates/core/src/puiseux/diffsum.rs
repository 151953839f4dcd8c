//! Finite sums `sum c_{a,b,c,d} z^a q^b (q')^c (q'')^d` with coefficients
//! polynomial in the parameters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops;

use num::complex::Complex64;
use num::rational::Rational64;
use num::traits::Zero;

use super::PuiseuxSeries;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Polynomial expression in the parameter symbols `k0..k4`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rat(Rational64),
    Sym(u8),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Rat(Rational64::from_integer(n))
    }
    pub fn sym(i: u8) -> Expr {
        Expr::Sym(i)
    }
    /// `k_i^2`
    pub fn sq(i: u8) -> Expr {
        Expr::Sym(i) * Expr::Sym(i)
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Rat(r) if r.is_zero())
    }

    pub fn eval<T: Coeff>(&self, vals: &[T]) -> T {
        match self {
            Expr::Rat(r) => T::from_ratio(*r),
            Expr::Sym(i) => vals[*i as usize].clone(),
            Expr::Add(a, b) => a.eval(vals) + b.eval(vals),
            Expr::Sub(a, b) => a.eval(vals) - b.eval(vals),
            Expr::Mul(a, b) => a.eval(vals) * b.eval(vals),
            Expr::Neg(a) => -a.eval(vals),
        }
    }

    pub fn eval_rat(&self, vals: &[Rational64]) -> Rational64 {
        match self {
            Expr::Rat(r) => *r,
            Expr::Sym(i) => vals[*i as usize],
            Expr::Add(a, b) => a.eval_rat(vals) + b.eval_rat(vals),
            Expr::Sub(a, b) => a.eval_rat(vals) - b.eval_rat(vals),
            Expr::Mul(a, b) => a.eval_rat(vals) * b.eval_rat(vals),
            Expr::Neg(a) => -a.eval_rat(vals),
        }
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Rat(a), Expr::Rat(b)) => Expr::Rat(a + b),
            _ if self.is_zero_literal() => o,
            _ if o.is_zero_literal() => self,
            _ => Expr::Add(Box::new(self), Box::new(o)),
        }
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Rat(a), Expr::Rat(b)) => Expr::Rat(a - b),
            _ if o.is_zero_literal() => self,
            _ => Expr::Sub(Box::new(self), Box::new(o)),
        }
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Rat(a), Expr::Rat(b)) => Expr::Rat(a * b),
            _ if self.is_zero_literal() || o.is_zero_literal() => Expr::int(0),
            _ => Expr::Mul(Box::new(self), Box::new(o)),
        }
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Rat(a) => Expr::Rat(-a),
            e => Expr::Neg(Box::new(e)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rat(r) => write!(f, "{r}"),
            Expr::Sym(i) => write!(f, "k{i}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Neg(a) => write!(f, "-{a}"),
        }
    }
}

/// Exponents `(a, b, c, d)` of `z^a q^b (q')^c (q'')^d`.
pub type Mono = (i32, u32, u32, u32);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiffSum {
    terms: BTreeMap<Mono, Expr>,
}

impl DiffSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Expr)>) -> Self {
        let mut s = Self::new();
        for (m, e) in terms {
            s.add_term(m, e);
        }
        s
    }

    pub fn add_term(&mut self, m: Mono, e: Expr) {
        let merged = match self.terms.remove(&m) {
            Some(old) => old + e,
            None => e,
        };
        if !merged.is_zero_literal() {
            self.terms.insert(m, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Expr)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Support point `(a - c - 2d, b + c + d)` of a monomial.
    pub fn support_point(m: &Mono) -> (i64, i64) {
        let (a, b, c, d) = *m;
        (a as i64 - c as i64 - 2 * d as i64, (b + c + d) as i64)
    }

    /// Replaces every coefficient by its value at rational parameters and
    /// prunes the ones that vanish.
    pub fn specialize(&self, vals: &[Rational64; 5]) -> DiffSum {
        DiffSum::from_terms(self.terms.iter().map(|(m, e)| (*m, Expr::Rat(e.eval_rat(vals)))))
    }

    /// Numeric coefficients, dropping exact zeros and float noise.
    pub fn coeffs_at<T: Coeff>(&self, vals: &[T]) -> Vec<(Mono, T)> {
        let out: Vec<(Mono, T)> = self.terms.iter().map(|(m, e)| (*m, e.eval(vals))).collect();
        let scale = out.iter().map(|(_, c)| c.modulus()).fold(0.0, f64::max);
        out.into_iter().filter(|(_, c)| !c.is_zero() && !c.negligible(scale)).collect()
    }

    /// Sum restricted to monomials whose support point satisfies `keep`.
    pub fn filter_support(&self, keep: impl Fn((i64, i64)) -> bool) -> DiffSum {
        DiffSum::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| keep(Self::support_point(m)))
                .map(|(m, e)| (*m, e.clone())),
        )
    }
}

struct Powers<'a, T: Coeff> {
    base: [&'a PuiseuxSeries<T>; 3],
    cache: HashMap<(usize, u32), PuiseuxSeries<T>>,
}

impl<'a, T: Coeff> Powers<'a, T> {
    fn new(base: [&'a PuiseuxSeries<T>; 3]) -> Self {
        Powers { base, cache: HashMap::new() }
    }

    fn get(&mut self, which: usize, n: u32) -> PuiseuxSeries<T> {
        if n == 1 {
            return self.base[which].clone();
        }
        if let Some(s) = self.cache.get(&(which, n)) {
            return s.clone();
        }
        let s = self.get(which, n - 1).mul(self.base[which]);
        self.cache.insert((which, n), s.clone());
        s
    }

    /// `q^b (q')^c (q'')^d`; `None` for the empty product.
    fn product(&mut self, e: [u32; 3]) -> Option<PuiseuxSeries<T>> {
        let mut acc: Option<PuiseuxSeries<T>> = None;
        for (w, &n) in e.iter().enumerate() {
            if n > 0 {
                let f = self.get(w, n);
                acc = Some(match acc {
                    None => f,
                    Some(a) => a.mul(&f),
                });
            }
        }
        acc
    }
}

fn nominal_lo<T: Coeff>(m: &Mono, q: &PuiseuxSeries<T>, ram: i64) -> i64 {
    let (a, b, c, d) = *m;
    let qlo = q.lo();
    a as i64 * ram + b as i64 * qlo + c as i64 * (qlo - ram) + d as i64 * (qlo - 2 * ram)
}

fn sum_terms<T: Coeff>(
    terms: &[(Mono, T)],
    q: &PuiseuxSeries<T>,
    q1: &PuiseuxSeries<T>,
    q2: &PuiseuxSeries<T>,
) -> Result<PuiseuxSeries<T>> {
    let ram = q.ram() as i64;
    let mut pw = Powers::new([q, q1, q2]);
    let mut acc: Option<PuiseuxSeries<T>> = None;
    let mut pure: Vec<(i64, T)> = Vec::new();
    let mut lowest = i64::MAX;
    for (m, c) in terms {
        lowest = lowest.min(nominal_lo(m, q, ram));
        match pw.product([m.1, m.2, m.3]) {
            None => pure.push((m.0 as i64 * ram, c.clone())),
            Some(f) => {
                let t = f.scale(c).shift(m.0 as i64 * ram);
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t),
                });
            }
        }
    }
    let mut acc = acc.ok_or(Error::EmptyWindow)?;
    for (slot, c) in pure {
        if slot < acc.trunc() {
            acc = acc.add(&PuiseuxSeries::new(q.ram(), slot, vec![c], acc.trunc()));
        }
    }
    if acc.is_zero() && acc.trunc() <= lowest {
        return Err(Error::EmptyWindow);
    }
    Ok(acc)
}

/// Evaluates the differential sum at a series `q`.
pub fn diffsum_eval<T: Coeff>(p: &DiffSum, q: &PuiseuxSeries<T>, vals: &[T]) -> Result<PuiseuxSeries<T>> {
    let q1 = q.derive();
    let q2 = q1.derive();
    let terms: Vec<(Mono, T)> = p.terms().map(|(m, e)| (*m, e.eval(vals))).filter(|(_, c)| !c.is_zero()).collect();
    sum_terms(&terms, q, &q1, &q2)
}

/// Value together with a majorant built from coefficient moduli; the majorant
/// is the scale against which float cancellation is judged.
pub fn diffsum_eval_scaled<T: Coeff>(
    p: &DiffSum,
    q: &PuiseuxSeries<T>,
    vals: &[T],
) -> Result<(PuiseuxSeries<T>, PuiseuxSeries<Complex64>)> {
    let value = diffsum_eval(p, q, vals)?;
    let q1 = q.derive();
    let q2 = q1.derive();
    let terms: Vec<(Mono, Complex64)> = p
        .terms()
        .map(|(m, e)| (*m, Complex64::new(e.eval(vals).modulus(), 0.0)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let major = sum_terms(&terms, &q.abs_majorant(), &q1.abs_majorant(), &q2.abs_majorant())?;
    Ok((value, major))
}

fn linear_terms<T: Coeff>(
    terms: &[(Mono, T)],
    qs: [&PuiseuxSeries<T>; 3],
    dels: [&PuiseuxSeries<T>; 3],
) -> Result<PuiseuxSeries<T>> {
    let mut pw = Powers::new(qs);
    let mut acc: Option<PuiseuxSeries<T>> = None;
    for (m, c) in terms {
        let (a, b, cc, d) = *m;
        let exps = [b, cc, d];
        for w in 0..3 {
            if exps[w] == 0 {
                continue;
            }
            let mut e2 = exps;
            e2[w] -= 1;
            let mult = T::from_int(exps[w] as i64) * c.clone();
            let t = match pw.product(e2) {
                None => dels[w].clone(),
                Some(f) => f.mul(dels[w]),
            };
            let t = t.scale(&mult);
            let t = t.shift(a as i64 * t.ram() as i64);
            acc = Some(match acc {
                None => t,
                Some(x) => x.add(&t),
            });
        }
    }
    acc.ok_or(Error::EmptyWindow)
}

/// Frechet derivative of the sum at `q` applied to `delta`.
pub fn diffsum_linearize<T: Coeff>(
    p: &DiffSum,
    q: &PuiseuxSeries<T>,
    delta: &PuiseuxSeries<T>,
    vals: &[T],
) -> Result<PuiseuxSeries<T>> {
    let (q1, d1) = (q.derive(), delta.derive());
    let (q2, d2) = (q1.derive(), d1.derive());
    let terms: Vec<(Mono, T)> = p.terms().map(|(m, e)| (*m, e.eval(vals))).filter(|(_, c)| !c.is_zero()).collect();
    linear_terms(&terms, [q, &q1, &q2], [delta, &d1, &d2])
}

/// Linearization together with its majorant from coefficient moduli.
pub fn diffsum_linearize_scaled<T: Coeff>(
    p: &DiffSum,
    q: &PuiseuxSeries<T>,
    delta: &PuiseuxSeries<T>,
    vals: &[T],
) -> Result<(PuiseuxSeries<T>, PuiseuxSeries<Complex64>)> {
    let value = diffsum_linearize(p, q, delta, vals)?;
    let (q1, d1) = (q.derive(), delta.derive());
    let (q2, d2) = (q1.derive(), d1.derive());
    let terms: Vec<(Mono, Complex64)> = p
        .terms()
        .map(|(m, e)| (*m, Complex64::new(e.eval(vals).modulus(), 0.0)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let qs = [q.abs_majorant(), q1.abs_majorant(), q2.abs_majorant()];
    let ds = [delta.abs_majorant(), d1.abs_majorant(), d2.abs_majorant()];
    let major = linear_terms(&terms, [&qs[0], &qs[1], &qs[2]], [&ds[0], &ds[1], &ds[2]])?;
    Ok((value, major))
}
