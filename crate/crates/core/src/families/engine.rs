//! Degree-by-degree solver for `P(z, q) = 0` from a seed series.
//!
//! Slot `nu` of `q` enters the residual first at slot `nu + offset`, with the
//! coefficient `v(nu)` of the first variation there. The offset is read off
//! the linearization at the seed, so faces whose first variation vanishes
//! identically at the leading term (e.g. `q = 1` when `k3 = 0`) are handled
//! by the same code.

use num::rational::Rational64;

use crate::error::{Error, Result};
use crate::puiseux::{diffsum_eval, diffsum_linearize, diffsum_linearize_scaled, frechet_char, DiffSum, PuiseuxSeries};
use crate::scalar::Coeff;

/// Same coefficients, known (as zero) up to `trunc`.
pub(crate) fn pad<T: Coeff>(q: &PuiseuxSeries<T>, trunc: i64) -> PuiseuxSeries<T> {
    if trunc <= q.trunc() {
        return q.clone();
    }
    let lo = q.lo().min(q.trunc());
    let mut c = q.coeffs().to_vec();
    c.resize((trunc - lo) as usize, T::zero());
    PuiseuxSeries::new(q.ram(), lo, c, trunc)
}

/// Lowest slot of `s` whose coefficient is not negligible against the
/// largest one; `None` if all are.
fn lowest_slot<T: Coeff>(s: &PuiseuxSeries<T>) -> Option<i64> {
    let scale = s.max_modulus();
    s.coeffs().iter().position(|c| !c.negligible(scale)).map(|i| s.lo() + i as i64)
}

/// Offset between a slot of `q` and the slot where it first shows up in `P(q)`.
fn controlling_offset<T: Coeff>(p: &DiffSum, vals: &[T], seed: &PuiseuxSeries<T>) -> Result<i64> {
    let n = seed.ram() as i64;
    let base = seed.trunc();
    let mut best: Option<i64> = None;
    for nu in base..base + 3 {
        let q = pad(seed, nu + 6 * n);
        let delta = PuiseuxSeries::monomial(T::one(), nu, seed.ram(), nu + 12 * n);
        let lin = diffsum_linearize(p, &q, &delta, vals)?;
        if let Some(s) = lowest_slot(&lin) {
            best = Some(best.map_or(s - nu, |b: i64| b.min(s - nu)));
        }
    }
    best.ok_or_else(|| Error::Resonance("first variation vanishes at the seed".into()))
}

/// Extends `seed` (certain below `seed.trunc()`) to `upto` slots.
pub fn solve_series<T: Coeff>(
    p: &DiffSum,
    vals: &[T],
    seed: &PuiseuxSeries<T>,
    upto: i64,
) -> Result<PuiseuxSeries<T>> {
    let n = seed.ram();
    if let (Some(r), Some(c)) = (seed.leading_exponent(), seed.leading_coeff()) {
        frechet_char(p, r, c, vals)?;
    }
    let offset = controlling_offset(p, vals, seed)?;
    let mut q = seed.clone();
    let mut extra = 0;
    for nu in seed.trunc()..upto {
        let target = nu + offset;
        let (trial, alpha) = loop {
            let trial = pad(&q, nu + 1 + extra);
            let r = diffsum_eval(p, &trial, vals)?;
            if let Some(alpha) = r.coeff_at(target) {
                break (trial, alpha);
            }
            extra += (target + 1 - r.trunc()).max(1);
        };
        let delta = PuiseuxSeries::monomial(T::one(), nu, n, trial.trunc());
        let (lin, major) = diffsum_linearize_scaled(p, &trial, &delta, vals)?;
        let beta = lin.coeff_at(target).unwrap_or_else(T::zero);
        let scale = major.coeff_at(target).map_or(0.0, |c| c.re);
        if beta.negligible(scale) {
            return Err(Error::Resonance(Rational64::new(nu, n as i64).to_string()));
        }
        let a = -(alpha / beta);
        q = pad(&q, nu + 1).with_coeff(nu, a);
    }
    Ok(q)
}
