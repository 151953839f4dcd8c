//! Riccati-type solutions in closed form.

use num::complex::Complex64;

use super::closed::{binomial_series, check_cut, hyp2f1, hyp2f1_series, log1m_series};
use super::pvi::kappa_vals;
use super::FamilyId;
use crate::error::{Error, Result};
use crate::params::Kappa;
use crate::puiseux::PuiseuxSeries;
use crate::scalar::Coeff;

fn z_series<T: Coeff>(trunc: i64) -> PuiseuxSeries<T> {
    PuiseuxSeries::monomial(T::one(), 1, 1, trunc + 1)
}

fn one_minus_z<T: Coeff>(trunc: i64) -> PuiseuxSeries<T> {
    PuiseuxSeries::from_poly(vec![T::one(), -T::one()], trunc)
}

/// `z + z(1-z) f'/(k4 f)` for the series `f`.
fn log_derivative_form<T: Coeff>(f: &PuiseuxSeries<T>, k4: &T, trunc: i64) -> Result<PuiseuxSeries<T>> {
    let w = f.derive().div(f)?;
    let z = z_series(trunc);
    Ok(z.add(&z.mul(&one_minus_z(trunc)).mul(&w).scale(&(T::one() / k4.clone()))))
}

fn sigma_parts<T: Coeff>(v: &[T]) -> (T, T, T, T) {
    let sigma = v[3].clone() + v[4].clone();
    (v[2].clone() + sigma.clone(), v[3].clone(), sigma.clone() + T::one(), sigma)
}

fn a2c_parts<T: Coeff>(v: &[T]) -> (T, T, T) {
    (v[2].clone(), v[2].clone() + v[3].clone(), v[2].clone() + T::one())
}

/// `(q, p)` to `trunc` slots.
pub fn riccati_series<T: Coeff>(id: &FamilyId, k: &Kappa, trunc: i64) -> Result<(PuiseuxSeries<T>, PuiseuxSeries<T>)> {
    let v: Vec<T> = kappa_vals(k);
    let w = trunc + 3;
    let zero = PuiseuxSeries::zero(1, trunc);
    let z = z_series::<T>(w);
    let (q, p) = match *id {
        FamilyId::RicA1a => {
            let c = T::one() - v[3].clone() - v[4].clone();
            let f = hyp2f1_series(&v[2], &(-v[4].clone()), &c, w)?;
            (log_derivative_form(&f, &v[4], w)?, zero)
        }
        FamilyId::RicA1b | FamilyId::RicA2b => {
            let (a, b, c, sigma) = sigma_parts(&v);
            let f = hyp2f1_series(&a, &b, &c, w)?;
            let head = one_minus_z::<T>(w).scale(&(sigma / v[4].clone()));
            let tail = log_derivative_form(&f, &v[4], w)?;
            (tail.add(&head), zero)
        }
        FamilyId::RicA2a => (zero.clone(), zero),
        FamilyId::RicA2c => {
            let (a, b, c) = a2c_parts(&v);
            let f = hyp2f1_series(&a, &b, &c, w)?;
            let inv_z = PuiseuxSeries::monomial(v[2].clone(), -1, 1, w);
            let p = one_minus_z::<T>(w).neg().mul(&inv_z.add(&f.derive().div(&f)?));
            (zero, p)
        }
        FamilyId::RicA3 { s } | FamilyId::RicD4Rat { s } => {
            let (s0, s1) = (T::from_c64(s[0]), T::from_c64(s[1]));
            let b = match id {
                FamilyId::RicA3 { .. } => binomial_series(&v[4], w),
                _ => one_minus_z(w),
            };
            let den = PuiseuxSeries::constant(s0.clone(), w).add(&b.scale(&s1));
            (z.scale(&s0).div(&den)?, zero)
        }
        FamilyId::RicD4Log { t } => {
            let (t0, t1) = (T::from_c64(t[0]), T::from_c64(t[1]));
            let inner = log1m_series::<T>(w).scale(&t0).add(&PuiseuxSeries::constant(t1, w));
            let den = one_minus_z::<T>(w).mul(&inner);
            (PuiseuxSeries::constant(T::one(), trunc), z.scale(&t0).div(&den)?)
        }
        _ => return Err(Error::Invalid(format!("{} is not a closed-form family", id.name()))),
    };
    Ok((q.truncate(trunc), p.truncate(trunc)))
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `(q, p, dq/dz, dp/dz)` at `z`.
pub fn riccati_point(id: &FamilyId, k: &Kappa, z: Complex64) -> Result<[Complex64; 4]> {
    check_cut(z)?;
    if z.norm() == 0.0 || (z - 1.0).norm() == 0.0 {
        return Err(Error::Excluded(format!("{z}")));
    }
    let v = k.values();
    let zero = c(0.0);
    // q = z + z(1-z) w / k4 with w = f'/f, and its derivative.
    let a1_form = |w: Complex64, dw: Complex64| {
        let q = z + z * (1.0 - z) * w / v[4];
        let dq = 1.0 + ((1.0 - 2.0 * z) * w + z * (1.0 - z) * dw) / v[4];
        (q, dq)
    };
    Ok(match *id {
        FamilyId::RicA1a => {
            let f = hyp2f1(v[2], -v[4], 1.0 - v[3] - v[4], z)?;
            let w = f[1] / f[0];
            let (q, dq) = a1_form(w, f[2] / f[0] - w * w);
            [q, zero, dq, zero]
        }
        FamilyId::RicA1b | FamilyId::RicA2b => {
            let sigma = v[3] + v[4];
            let f = hyp2f1(v[2] + sigma, v[3], sigma + 1.0, z)?;
            let w = sigma / z + f[1] / f[0];
            let dw = -sigma / (z * z) + f[2] / f[0] - (f[1] / f[0]).powi(2);
            let (q, dq) = a1_form(w, dw);
            [q, zero, dq, zero]
        }
        FamilyId::RicA2a => [zero; 4],
        FamilyId::RicA2c => {
            let f = hyp2f1(v[2], v[2] + v[3], v[2] + 1.0, z)?;
            let w = v[2] / z + f[1] / f[0];
            let dw = -v[2] / (z * z) + f[2] / f[0] - (f[1] / f[0]).powi(2);
            [zero, (z - 1.0) * w, zero, w + (z - 1.0) * dw]
        }
        FamilyId::RicA3 { s } | FamilyId::RicD4Rat { s } => {
            let e = if matches!(id, FamilyId::RicA3 { .. }) { v[4] } else { c(1.0) };
            let b = (1.0 - z).powc(e);
            let den = s[0] + s[1] * b;
            let dden = -e * s[1] * b / (1.0 - z);
            let q = s[0] * z / den;
            let dq = s[0] / den - s[0] * z * dden / (den * den);
            [q, zero, dq, zero]
        }
        FamilyId::RicD4Log { t } => {
            let l = (1.0 - z).ln();
            let g = (1.0 - z) * (t[0] * l + t[1]);
            let dg = -(t[0] * l + t[1]) - t[0];
            let p = t[0] * z / g;
            let dp = t[0] / g - t[0] * z * dg / (g * g);
            [c(1.0), p, zero, dp]
        }
        _ => return Err(Error::Invalid(format!("{} is not a closed-form family", id.name()))),
    })
}
