use std::fmt;
use std::str::FromStr;

use num::complex::Complex64;
use num::rational::Rational64;
use num::traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance on the affine constraint for float input.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// A point `(k0, k1, k2, k3, k4)` with `2 k0 + k1 + k2 + k3 + k4 = 1`.
///
/// Rational input keeps the exact values next to the complex ones; the
/// exact copy is what wall tests and classification read.
#[derive(Clone, Debug, PartialEq)]
pub struct Kappa {
    k: [Complex64; 5],
    exact: Option<[Rational64; 5]>,
}

fn constraint_msg(lhs: String) -> Error {
    Error::KappaConstraint(lhs)
}

pub fn rat_to_c(r: Rational64) -> Complex64 {
    Complex64::new(*r.numer() as f64 / *r.denom() as f64, 0.0)
}

impl Kappa {
    pub fn rational(r: [Rational64; 5]) -> Result<Self> {
        let lhs = r[0] * 2 + r[1] + r[2] + r[3] + r[4];
        if lhs != Rational64::one() {
            return Err(constraint_msg(lhs.to_string()));
        }
        Ok(Kappa { k: r.map(rat_to_c), exact: Some(r) })
    }

    /// Rational point from `k1..k4`, solving the constraint for `k0`.
    pub fn from_k1234(k: [Rational64; 4]) -> Self {
        let k0 = (Rational64::one() - k[0] - k[1] - k[2] - k[3]) / 2;
        Kappa::rational([k0, k[0], k[1], k[2], k[3]]).expect("constraint holds by construction")
    }

    /// Convenience for tests and tables: pairs `(num, den)`.
    pub fn from_ratios(r: [(i64, i64); 5]) -> Result<Self> {
        Kappa::rational(r.map(|(n, d)| Rational64::new(n, d)))
    }

    pub fn complex(k: [Complex64; 5]) -> Result<Self> {
        let lhs = k[0] * 2.0 + k[1] + k[2] + k[3] + k[4];
        if (lhs - 1.0).norm() > CONSTRAINT_TOL {
            return Err(constraint_msg(format!("{lhs}")));
        }
        Ok(Kappa { k, exact: None })
    }

    pub fn values(&self) -> [Complex64; 5] {
        self.k
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.k[i]
    }

    pub fn exact(&self) -> Option<&[Rational64; 5]> {
        self.exact.as_ref()
    }

    pub fn require_exact(&self, what: &'static str) -> Result<&[Rational64; 5]> {
        self.exact.as_ref().ok_or(Error::NeedRational(what))
    }

    pub fn is_real(&self) -> bool {
        self.k.iter().all(|c| c.im == 0.0)
    }

    /// Exact zero test where available, otherwise `|k_i| <= tol`.
    pub fn is_zero_at(&self, i: usize, tol: f64) -> bool {
        match &self.exact {
            Some(r) => r[i].is_zero(),
            None => self.k[i].norm() <= tol,
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => {
                let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
            None => {
                let parts: Vec<String> = self.k.iter().map(|x| format!("{x}")).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Parses one coordinate: `p/q`, an integer, or a finite decimal (read exactly).
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("cannot read '{s}' as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let ip: i64 = if int.is_empty() || int == "-" || int == "+" { 0 } else { int.parse().map_err(|_| bad())? };
        let fp: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let den = 10i64.pow(frac.len() as u32);
        let mag = Rational64::new(ip.abs() * den + fp, den);
        return Ok(if neg { -mag } else { mag });
    }
    Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?))
}

impl FromStr for Kappa {
    type Err = Error;
    /// Five comma-separated coordinates `k0,k1,k2,k3,k4`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(Error::Invalid(format!("kappa needs 5 coordinates, got {}", parts.len())));
        }
        let mut r = [Rational64::zero(); 5];
        for (slot, p) in r.iter_mut().zip(parts) {
            *slot = parse_rational(p)?;
        }
        Kappa::rational(r)
    }
}

#[derive(Serialize)]
struct KappaJson {
    rational: Option<Vec<String>>,
    values: Vec<[f64; 2]>,
}

impl Serialize for Kappa {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KappaJson {
            rational: self.exact.map(|r| r.iter().map(|x| x.to_string()).collect()),
            values: self.k.iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(s)
    }
}
