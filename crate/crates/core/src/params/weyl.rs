use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::complex::Complex64;
use num::rational::Rational64;
use serde::Serialize;

use super::kappa::Kappa;
use crate::error::Result;

/// Generators of the extended affine Weyl group acting on kappa.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Gen {
    /// Simple reflection `w_i`, i = 0..4.
    Refl(u8),
    /// Klein element `(i 4)(j k)`, i = 1..3.
    Klein(u8),
    /// Variant 1: `(k_i - d, k_j + d)`; variant 2: `(k_k + d, k_4 - d)`,
    /// with `(i, j, k)` cyclic and `d = dir`.
    Shift { variant: u8, i: u8, dir: i8 },
}

pub type WeylWord = Vec<Gen>;

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Refl(i) => write!(f, "w{i}"),
            Gen::Klein(i) => write!(f, "s{i}"),
            Gen::Shift { variant, i, dir } => write!(f, "T{variant}({i},{})", if *dir > 0 { '+' } else { '-' }),
        }
    }
}

/// Cyclic successor among 1..3.
pub fn next3(i: usize) -> usize {
    i % 3 + 1
}

/// `(j, k)` completing `i` to a cyclic triple `(i, j, k)`.
pub fn cyc_rest(i: usize) -> (usize, usize) {
    let j = next3(i);
    (j, next3(j))
}

fn act_generic<V>(g: Gen, mut k: [V; 5], unit: V) -> [V; 5]
where
    V: Copy + Add<Output = V> + Sub<Output = V> + Neg<Output = V>,
{
    match g {
        Gen::Refl(0) => {
            let k0 = k[0];
            k[0] = -k0;
            for x in k.iter_mut().skip(1) {
                *x = *x + k0;
            }
        }
        Gen::Refl(i) => {
            let i = i as usize;
            let ki = k[i];
            k[i] = -ki;
            k[0] = k[0] + ki;
        }
        Gen::Klein(i) => {
            let i = i as usize;
            let (j, l) = cyc_rest(i);
            k.swap(i, 4);
            k.swap(j, l);
        }
        Gen::Shift { variant, i, dir } => {
            let i = i as usize;
            let (j, l) = cyc_rest(i);
            let d = if dir > 0 { unit } else { -unit };
            if variant == 1 {
                k[i] = k[i] - d;
                k[j] = k[j] + d;
            } else {
                k[l] = k[l] + d;
                k[4] = k[4] - d;
            }
        }
    }
    k
}

pub fn act_rat(g: Gen, k: [Rational64; 5]) -> [Rational64; 5] {
    act_generic(g, k, Rational64::from_integer(1))
}

pub fn act_c64(g: Gen, k: [Complex64; 5]) -> [Complex64; 5] {
    act_generic(g, k, Complex64::new(1.0, 0.0))
}

/// Applies the word left to right.
pub fn weyl_act(w: &[Gen], k: &Kappa) -> Kappa {
    match k.exact() {
        Some(r) => {
            let out = w.iter().fold(*r, |acc, g| act_rat(*g, acc));
            Kappa::rational(out).expect("generators preserve the constraint")
        }
        None => {
            let out = w.iter().fold(k.values(), |acc, g| act_c64(*g, acc));
            Kappa::complex(out).expect("generators preserve the constraint")
        }
    }
}

pub fn inverse(w: &[Gen]) -> WeylWord {
    w.iter()
        .rev()
        .map(|g| match *g {
            Gen::Shift { variant, i, dir } => Gen::Shift { variant, i, dir: -dir },
            other => other,
        })
        .collect()
}

/// Integrality flags for `k_1..k_4` and odd-integrality flags for the
/// eight sums `k1 + e2 k2 + e3 k3 + e4 k4` (bit l-2 of the index set means `e_l = -1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WallPattern {
    pub int_flags: [bool; 4],
    pub parity_flags: [bool; 8],
}

impl WallPattern {
    pub fn on_wall(&self) -> bool {
        self.int_flags.iter().chain(self.parity_flags.iter()).any(|&f| f)
    }
}

/// Float tolerance for integrality; far below the 1/2 spacing of the tests.
pub const WALL_TOL: f64 = 1e-9;

fn sums<V: Copy + Add<Output = V> + Sub<Output = V>>(k: &[V; 5]) -> [V; 8] {
    let mut out = [k[1]; 8];
    for (mask, slot) in out.iter_mut().enumerate() {
        let mut acc = k[1];
        for l in 2..=4 {
            if mask & (1 << (l - 2)) != 0 {
                acc = acc - k[l];
            } else {
                acc = acc + k[l];
            }
        }
        *slot = acc;
    }
    out
}

fn near_int(c: Complex64) -> Option<i64> {
    let r = c.re.round();
    (c.im.abs() <= WALL_TOL && (c.re - r).abs() <= WALL_TOL).then_some(r as i64)
}

pub fn wall_pattern(k: &Kappa) -> WallPattern {
    match k.exact() {
        Some(r) => {
            let int_flags = [1, 2, 3, 4].map(|i| r[i].is_integer());
            let parity_flags = sums(r).map(|s| s.is_integer() && s.to_integer().rem_euclid(2) == 1);
            WallPattern { int_flags, parity_flags }
        }
        None => {
            let v = k.values();
            let int_flags = [1, 2, 3, 4].map(|i| near_int(v[i]).is_some());
            let parity_flags = sums(&v).map(|s| near_int(s).is_some_and(|n| n.rem_euclid(2) == 1));
            WallPattern { int_flags, parity_flags }
        }
    }
}

/// Float points within tolerance of a wall cannot be placed on either side.
pub fn check_unambiguous(k: &Kappa) -> Result<()> {
    if k.exact().is_none() && wall_pattern(k).on_wall() {
        return Err(crate::error::Error::AmbiguousWall);
    }
    Ok(())
}

/// Sign change induced on `(theta_1, .., theta_4)` by a generator.
/// Reflections act trivially; Klein `(i 4)(j k)` keeps `theta_i`; both shift
/// variants with index `i` keep `theta_k` for the cyclic `(i, j, k)`.
pub fn theta_signs(g: Gen) -> [f64; 4] {
    let keep = |m: usize| {
        let mut s = [-1.0, -1.0, -1.0, 1.0];
        s[m - 1] = 1.0;
        s
    };
    match g {
        Gen::Refl(_) => [1.0; 4],
        Gen::Klein(i) => keep(i as usize),
        Gen::Shift { i, .. } => keep(cyc_rest(i as usize).1),
    }
}
