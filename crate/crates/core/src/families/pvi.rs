//! The polynomial form `P(z, q, q', q'') = 0` of the equation, the `p`
//! reconstruction from `q`, and the Hamiltonian residuals of a series pair.

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::rational::Rational64;
use num::traits::Zero;

use crate::error::{Error, Result};
use crate::params::Kappa;
use crate::puiseux::{DiffSum, Expr, Mono, PuiseuxSeries};
use crate::scalar::Coeff;

/// Polynomial in `z, q`; coefficients are integers.
type Poly = BTreeMap<(i32, u32), i64>;

fn poly(terms: &[((i32, u32), i64)]) -> Poly {
    let mut p = Poly::new();
    for &(m, c) in terms {
        *p.entry(m).or_insert(0) += c;
    }
    p.retain(|_, c| *c != 0);
    p
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(za, qa), &ca) in a {
        for (&(zb, qb), &cb) in b {
            *out.entry((za + zb, qa + qb)).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn pprod(fs: &[&Poly]) -> Poly {
    fs.iter().fold(poly(&[((0, 0), 1)]), |acc, f| pmul(&acc, f))
}

fn padd(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (m, c) in b {
        *out.entry(*m).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Coefficient vectors over the basis `1, k1^2, k2^2, k3^2, k4^2`.
struct Collect(BTreeMap<Mono, [i64; 5]>);

impl Collect {
    fn add(&mut self, p: &Poly, c: u32, d: u32, basis: usize, w: i64) {
        for (&(a, b), &x) in p {
            let e = self.0.entry((a, b, c, d)).or_insert([0; 5]);
            e[basis] += w * x;
        }
    }
}

/// `P(z,q)`: the second-order equation multiplied by `2 z^2 (z-1)^2 q (q-1) (q-z)`.
/// Coefficients are linear in `1, k1^2, .., k4^2` (symbols `k0..k4`).
pub fn pvi_diffsum() -> DiffSum {
    let z = poly(&[((1, 0), 1)]);
    let q = poly(&[((0, 1), 1)]);
    let q1 = poly(&[((0, 1), 1), ((0, 0), -1)]);
    let qz = poly(&[((0, 1), 1), ((1, 0), -1)]);
    let zm1 = poly(&[((1, 0), 1), ((0, 0), -1)]);
    let two_z_m1 = poly(&[((1, 0), 2), ((0, 0), -1)]);
    let zz = pprod(&[&z, &z, &zm1, &zm1]);
    let qqq = pprod(&[&q, &q1, &qz]);

    let mut acc = Collect(BTreeMap::new());
    acc.add(&pprod(&[&zz, &qqq]), 0, 1, 0, 2);
    let sym = padd(&padd(&pmul(&q1, &qz), &pmul(&q, &qz)), &pmul(&q, &q1));
    acc.add(&pprod(&[&zz, &sym]), 2, 0, 0, -1);
    acc.add(&pprod(&[&z, &zm1, &two_z_m1, &qqq]), 1, 0, 0, 2);
    acc.add(&pprod(&[&zz, &q, &q1]), 1, 0, 0, 2);
    acc.add(&pprod(&[&q, &q, &q1, &q1, &qz, &qz]), 0, 0, 4, -1);
    acc.add(&pprod(&[&z, &q1, &q1, &qz, &qz]), 0, 0, 1, 1);
    acc.add(&pprod(&[&zm1, &q, &q, &qz, &qz]), 0, 0, 3, -1);
    let last = pprod(&[&z, &zm1, &q, &q, &q1, &q1]);
    acc.add(&last, 0, 0, 0, -1);
    acc.add(&last, 0, 0, 2, 1);

    let mut out = DiffSum::new();
    for (m, v) in acc.0 {
        let mut e: Option<Expr> = None;
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let t = if i == 0 { Expr::int(x) } else { Expr::int(x) * Expr::sq(i as u8) };
            e = Some(match e {
                None => t,
                Some(s) => s + t,
            });
        }
        if let Some(e) = e {
            out.add_term(m, e);
        }
    }
    out
}

/// Parameter values `k0..k4` in the coefficient field. Exact types need
/// rational kappa unless the float values are binary fractions.
pub fn kappa_vals<T: Coeff>(k: &Kappa) -> Vec<T> {
    match k.exact() {
        Some(r) => r.iter().map(|&x| T::from_ratio(x)).collect(),
        None => k.values().iter().map(|&x| T::from_c64(x)).collect(),
    }
}

/// The constant `c` and `z` as series with the ramification and a
/// truncation that never limits `like`.
fn consts<T: Coeff>(like: &PuiseuxSeries<T>, c: T) -> (PuiseuxSeries<T>, PuiseuxSeries<T>) {
    let n = like.ram() as i64;
    let far = like.trunc().max(0) + 4 * n + like.lo().abs();
    let one = PuiseuxSeries::new(n as u32, 0, vec![c], far);
    let z = PuiseuxSeries::new(n as u32, n, vec![T::one()], far + n);
    (one, z)
}

/// `q - 1` and `q - z`.
fn shifted<T: Coeff>(q: &PuiseuxSeries<T>) -> (PuiseuxSeries<T>, PuiseuxSeries<T>) {
    let (one, z) = consts(q, T::one());
    (q.sub(&one), q.sub(&z))
}

fn is_exact_zero<T: Coeff>(s: &PuiseuxSeries<T>) -> bool {
    s.coeffs().iter().all(|c| c.is_zero())
}

/// `A(q) = k1 (q-1)(q-z) + (k2-1) q (q-1) + k3 q (q-z)`, the coefficient of
/// `-p` in `z(z-1) H`.
fn a_of<T: Coeff>(q: &PuiseuxSeries<T>, v: &[T]) -> PuiseuxSeries<T> {
    let (q1, qz) = shifted(q);
    q1.mul(&qz)
        .scale(&v[1])
        .add(&q.mul(&q1).scale(&(v[2].clone() - T::one())))
        .add(&q.mul(&qz).scale(&v[3]))
}

/// `p = [z(z-1) q' + A(q)] / (2 q (q-1) (q-z))`.
pub fn p_from_q<T: Coeff>(q: &PuiseuxSeries<T>, k: &Kappa) -> Result<PuiseuxSeries<T>> {
    let v: Vec<T> = kappa_vals(k);
    let (q1, qz) = shifted(q);
    if is_exact_zero(q) || is_exact_zero(&q1) || is_exact_zero(&qz) {
        return Err(Error::RiccatiDegenerate);
    }
    let (_, z) = consts(q, T::one());
    let zz1 = z.mul(&z.sub(&consts(q, T::one()).0));
    let num = zz1.mul(&q.derive()).add(&a_of(q, &v)).denoise(&numerator_majorant(q, k));
    let den = q.mul(&q1).mul(&qz).scale(&T::from_int(2));
    if num.is_zero() {
        let v = den.coeffs().iter().position(|c| !c.is_zero()).map_or(0, |i| den.lo() + i as i64);
        return Ok(PuiseuxSeries::zero(q.ram(), num.trunc() - v));
    }
    num.div(&den)
}

/// Coefficientwise bound for the numerator of `p_from_q`, from moduli.
fn numerator_majorant<T: Coeff>(q: &PuiseuxSeries<T>, k: &Kappa) -> PuiseuxSeries<Complex64> {
    let v: Vec<f64> = k.values().iter().map(|x| x.norm()).collect();
    let qa = q.abs_majorant();
    let c = |x: f64| Complex64::new(x, 0.0);
    let (one, z) = consts(&qa, c(1.0));
    let (q1, qz) = (qa.add(&one), qa.add(&z));
    let a = q1.mul(&qz).scale(&c(v[1])).add(&qa.mul(&q1).scale(&c(v[2] + 1.0))).add(&qa.mul(&qz).scale(&c(v[3])));
    z.mul(&z.add(&one)).mul(&q.derive().abs_majorant()).add(&a)
}

/// Coefficientwise bound on `p_from_q(q)` and on its rounding error scale:
/// the numerator majorant times the majorant `1/(|d0| - |d1| x - ...)` of
/// the inverse denominator. `None` when `q` is Riccati-degenerate.
pub fn p_majorant<T: Coeff>(q: &PuiseuxSeries<T>, k: &Kappa) -> Option<PuiseuxSeries<Complex64>> {
    let (q1, qz) = shifted(q);
    if is_exact_zero(q) || is_exact_zero(&q1) || is_exact_zero(&qz) {
        return None;
    }
    let den = q.mul(&q1).mul(&qz).to_c64();
    let c: Vec<Complex64> = den
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, x)| Complex64::new(if i == 0 { x.norm() } else { -x.norm() }, 0.0))
        .collect();
    let den = PuiseuxSeries::new(den.ram(), den.lo(), c, den.trunc()).scale(&Complex64::new(2.0, 0.0));
    numerator_majorant(q, k).div(&den).ok()
}

/// Residuals of `z(z-1) dq/dz = z(z-1) H_p` and `z(z-1) dp/dz = -z(z-1) H_q`
/// at a series pair, as the differences left minus right.
pub fn hamiltonian_residuals<T: Coeff>(
    q: &PuiseuxSeries<T>,
    p: &PuiseuxSeries<T>,
    k: &Kappa,
) -> (PuiseuxSeries<T>, PuiseuxSeries<T>) {
    let v: Vec<T> = kappa_vals(k);
    let (one, z) = consts(q, T::one());
    let (q1, qz) = shifted(q);
    let zz1 = z.mul(&z.sub(&one));
    let cubic = q.mul(&q1).mul(&qz);
    let e1 = zz1.mul(&q.derive()).sub(&cubic.mul(p).scale(&T::from_int(2)).sub(&a_of(q, &v)));
    let dcubic = q1.mul(&qz).add(&q.mul(&qz)).add(&q.mul(&q1));
    let da = q1
        .add(&qz)
        .scale(&v[1])
        .add(&q.add(&q1).scale(&(v[2].clone() - T::one())))
        .add(&q.add(&qz).scale(&v[3]));
    let konst = consts(q, v[0].clone() * (v[0].clone() + v[4].clone())).0;
    let e2 = zz1.mul(&p.derive()).add(&dcubic.mul(&p.mul(p))).sub(&da.mul(p)).add(&konst);
    (e1, e2)
}

/// Rational `h(r)`: smallest `a + r b` over the support of `P` at `k`.
pub fn face_value<T: Coeff>(p: &DiffSum, vals: &[T], r: Rational64) -> Rational64 {
    p.coeffs_at(vals)
        .iter()
        .map(|(m, _)| {
            let (a, b) = DiffSum::support_point(m);
            Rational64::from_integer(a) + r * Rational64::from_integer(b)
        })
        .min()
        .unwrap_or_else(Rational64::zero)
}
