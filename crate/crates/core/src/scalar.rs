//! Coefficient fields: double-precision complex and exact complex rationals.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::{BigRational, Rational64};
use num::traits::{One, ToPrimitive, Zero};
use num::Complex;

/// Exact complex rational.
pub type CRat = Complex<BigRational>;

/// Relative tolerance used to decide that a float coefficient is rounding noise.
pub const NOISE: f64 = 1e-11;

pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const EXACT: bool;
    fn from_ratio(r: Rational64) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Exact for `CRat` (binary fractions are rationals).
    fn from_c64(c: Complex64) -> Self;
    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }
    /// Zero test relative to a rounding scale; exact types ignore the scale.
    fn negligible(&self, scale: f64) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(Rational64::from_integer(n))
    }
    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Coeff for Complex64 {
    const EXACT: bool = false;
    fn from_ratio(r: Rational64) -> Self {
        Complex64::new(*r.numer() as f64 / *r.denom() as f64, 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn from_c64(c: Complex64) -> Self {
        c
    }
    fn negligible(&self, scale: f64) -> bool {
        self.norm() <= NOISE * scale.max(f64::MIN_POSITIVE)
    }
}

impl Coeff for CRat {
    const EXACT: bool = true;
    fn from_ratio(r: Rational64) -> Self {
        Complex::new(rat_big(r), BigRational::zero())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn from_c64(c: Complex64) -> Self {
        let f = |x: f64| BigRational::from_float(x).expect("finite parameter");
        Complex::new(f(c.re), f(c.im))
    }
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

pub fn rat_big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn crat(re: Rational64, im: Rational64) -> CRat {
    Complex::new(rat_big(re), rat_big(im))
}

/// Complex rational with small components, used for parameters given as p/q pairs.
pub fn crat_from(re: (i64, i64), im: (i64, i64)) -> CRat {
    crat(Rational64::new(re.0, re.1), Rational64::new(im.0, im.1))
}
