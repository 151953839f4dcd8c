//! Elementary and hypergeometric closed forms: power series at `z = 0` and
//! pointwise values with derivatives.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::puiseux::PuiseuxSeries;
use crate::scalar::Coeff;

/// `(1 - z)^a` on the principal branch, `trunc` terms.
pub fn binomial_series<T: Coeff>(a: &T, trunc: i64) -> PuiseuxSeries<T> {
    let mut c = Vec::with_capacity(trunc.max(0) as usize);
    let mut x = T::one();
    for n in 0..trunc {
        c.push(x.clone());
        x = x * (T::from_int(n) - a.clone()) / T::from_int(n + 1);
    }
    PuiseuxSeries::from_poly(c, trunc)
}

/// `log(1 - z)`.
pub fn log1m_series<T: Coeff>(trunc: i64) -> PuiseuxSeries<T> {
    let mut c = vec![T::zero()];
    for n in 1..trunc {
        c.push(-(T::one() / T::from_int(n)));
    }
    PuiseuxSeries::from_poly(c, trunc)
}

/// Gauss series `2F1(a, b; c; z)`.
pub fn hyp2f1_series<T: Coeff>(a: &T, b: &T, c: &T, trunc: i64) -> Result<PuiseuxSeries<T>> {
    let mut out = Vec::with_capacity(trunc.max(0) as usize);
    let mut x = T::one();
    for n in 0..trunc {
        out.push(x.clone());
        let den = (c.clone() + T::from_int(n)) * T::from_int(n + 1);
        if den.is_zero() {
            return Err(Error::Predicate("lower hypergeometric parameter is a nonpositive integer".into()));
        }
        x = x * (a.clone() + T::from_int(n)) * (b.clone() + T::from_int(n)) / den;
    }
    Ok(PuiseuxSeries::from_poly(out, trunc))
}

/// `2F1(a, b; c; z)` with its first two derivatives, summed termwise.
/// Intended for `|z| <= 1/2`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<[Complex64; 3]> {
    if z.norm() >= 0.9 {
        return Err(Error::Excluded(format!("|z| = {} too close to the unit circle", z.norm())));
    }
    let zero = Complex64::new(0.0, 0.0);
    let (mut f, mut f1, mut f2) = (zero, zero, zero);
    let mut t = Complex64::new(1.0, 0.0);
    for n in 0..4000 {
        let nf = n as f64;
        // t = coefficient of z^n
        let zn = z.powi(n);
        f += t * zn;
        if n >= 1 {
            f1 += t * nf * z.powi(n - 1);
        }
        if n >= 2 {
            f2 += t * nf * (nf - 1.0) * z.powi(n - 2);
        }
        let den = (c + nf) * (nf + 1.0);
        if den.norm() == 0.0 {
            return Err(Error::Predicate("lower hypergeometric parameter is a nonpositive integer".into()));
        }
        t = t * (a + nf) * (b + nf) / den;
        let tail = (t * z.powi(n + 1)).norm() * (1.0 + (nf + 2.0).powi(2));
        if tail < 1e-17 * (1.0 + f.norm()) && n > 4 {
            break;
        }
    }
    Ok([f, f1, f2])
}

/// Principal-branch check for `(1-z)^a` and `log(1-z)`.
pub fn check_cut(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::BranchCut(format!("{z}")));
    }
    Ok(())
}
