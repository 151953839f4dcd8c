use num::complex::Complex64;
use num::rational::Rational64;
use serde::Serialize;

use super::kappa::Kappa;

/// Multiplicative parameters `b0..b4` with `b0^2 b1 b2 b3 b4 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BVec {
    pub b: [Complex64; 5],
}

/// Cubic-surface parameters `theta_1..theta_4` (stored 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Theta {
    pub t: [Complex64; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RhImage {
    pub b: BVec,
    pub a: [Complex64; 4],
    pub theta: Theta,
}

impl BVec {
    pub fn residual(&self) -> f64 {
        let b = &self.b;
        (b[0] * b[0] * b[1] * b[2] * b[3] * b[4] - 1.0).norm()
    }

    /// `a_i = b_i + 1/b_i`, i = 1..4.
    pub fn a(&self) -> [Complex64; 4] {
        [1, 2, 3, 4].map(|i| self.b[i] + 1.0 / self.b[i])
    }

    pub fn theta(&self) -> Theta {
        theta_from_a(&self.a())
    }
}

impl Theta {
    pub fn new(t: [f64; 4]) -> Self {
        Theta { t: t.map(|x| Complex64::new(x, 0.0)) }
    }

    /// `theta_i` with 1-based index.
    pub fn th(&self, i: usize) -> Complex64 {
        self.t[i - 1]
    }
}

pub fn theta_from_a(a: &[Complex64; 4]) -> Theta {
    let [a1, a2, a3, a4] = *a;
    Theta {
        t: [
            a1 * a4 + a2 * a3,
            a2 * a4 + a3 * a1,
            a3 * a4 + a1 * a2,
            a1 * a2 * a3 * a4 + a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4 - 4.0,
        ],
    }
}

/// `exp(i pi r)` for rational `r`, exact on multiples of 1/2.
fn exp_i_pi_rat(r: Rational64) -> Complex64 {
    let two = Rational64::from_integer(2);
    let mut m = r % two;
    if m < Rational64::from_integer(0) {
        m += two;
    }
    let half = Rational64::new(1, 2);
    match (m / half).is_integer().then(|| (m / half).to_integer()) {
        Some(0) => Complex64::new(1.0, 0.0),
        Some(1) => Complex64::new(0.0, 1.0),
        Some(2) => Complex64::new(-1.0, 0.0),
        Some(3) => Complex64::new(0.0, -1.0),
        _ => {
            let x = std::f64::consts::PI * (*m.numer() as f64) / (*m.denom() as f64);
            Complex64::new(x.cos(), x.sin())
        }
    }
}

pub fn b_vec(k: &Kappa) -> BVec {
    let mut b = match k.exact() {
        Some(r) => r.map(exp_i_pi_rat),
        None => k.values().map(|c| (Complex64::i() * std::f64::consts::PI * c).exp()),
    };
    b[4] = -b[4];
    BVec { b }
}

/// The chain kappa -> b -> a -> theta.
pub fn rh_chain(k: &Kappa) -> RhImage {
    let b = b_vec(k);
    let a = b.a();
    RhImage { b, a, theta: theta_from_a(&a) }
}

/// The 20 factors whose product is the discriminant: `(b_l - 1/b_l)^2`
/// for l = 1..4, then `b^eps - 1` over all sign vectors.
pub fn discriminant_factors(b: &BVec) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(20);
    for l in 1..=4 {
        let d = b.b[l] - 1.0 / b.b[l];
        out.push(d * d);
    }
    for mask in 0..16u32 {
        let mut prod = Complex64::new(1.0, 0.0);
        for l in 1..=4 {
            let s = if mask & (1 << (l - 1)) != 0 { 1.0 / b.b[l] } else { b.b[l] };
            prod *= s;
        }
        out.push(prod - 1.0);
    }
    out
}

pub fn discriminant(b: &BVec) -> Complex64 {
    discriminant_factors(b).into_iter().product()
}

/// Zero test on the factors rather than the product, which can be tiny
/// without vanishing.
pub fn discriminant_vanishes(b: &BVec, tol: f64) -> bool {
    discriminant_factors(b).iter().any(|f| f.norm() <= tol)
}
