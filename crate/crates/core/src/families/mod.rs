//! Series and closed-form solution families at `z = 0`, residual checks and
//! the family count per stratum.

mod closed;
mod engine;
mod pvi;
mod riccati;

pub use closed::{binomial_series, check_cut, hyp2f1, hyp2f1_series, log1m_series};
pub use engine::solve_series;
pub use pvi::{face_value, hamiltonian_residuals, kappa_vals, p_from_q, p_majorant, pvi_diffsum};
pub use riccati::{riccati_point, riccati_series};

use num::complex::Complex64;
use num::integer::Integer;
use num::rational::Rational64;
use num::traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cubic::{exceptional_actions, fixed_point_report};
use crate::error::{Error, Result};
use crate::params::{Kappa, Stratum, StratumLabel};
use crate::puiseux::{diffsum_eval_scaled, PuiseuxSeries};
use crate::scalar::Coeff;

/// Default truncation order.
pub const DEFAULT_ORDER: i64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "id")]
pub enum FamilyId {
    K1K2Plus,
    K1K2Minus,
    K3K4Plus,
    K3K4Minus,
    A12 { t: Complex64 },
    A3 { t: Complex64 },
    D4 { t: Complex64 },
    A14A { t: Complex64 },
    A14B { t: Complex64 },
    AlgBranch { n: u32, m: u32, t: Complex64 },
    RicA1a,
    RicA1b,
    RicA2a,
    RicA2b,
    RicA2c,
    RicA3 { s: [Complex64; 2] },
    RicD4Rat { s: [Complex64; 2] },
    RicD4Log { t: [Complex64; 2] },
}

fn non_integer(exact: Option<Rational64>, x: Complex64) -> bool {
    match exact {
        Some(r) => !r.is_integer(),
        None => x.im.abs() > 1e-12 || (x.re - x.re.round()).abs() > 1e-12,
    }
}

fn nonzero(exact: Option<Rational64>, x: Complex64) -> bool {
    match exact {
        Some(r) => !r.is_zero(),
        None => x.norm() > 1e-12,
    }
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Predicate(what.to_string()))
    }
}

fn is_d4(r: &[Rational64; 5]) -> bool {
    r[..4].iter().all(|x| x.is_zero()) && r[4].is_one()
}

fn is_a14(r: &[Rational64; 5]) -> bool {
    r[0] == Rational64::new(1, 2) && r[1..].iter().all(|x| x.is_zero())
}

impl FamilyId {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::K1K2Plus => "K1K2Plus",
            FamilyId::K1K2Minus => "K1K2Minus",
            FamilyId::K3K4Plus => "K3K4Plus",
            FamilyId::K3K4Minus => "K3K4Minus",
            FamilyId::A12 { .. } => "A12",
            FamilyId::A3 { .. } => "A3",
            FamilyId::D4 { .. } => "D4",
            FamilyId::A14A { .. } => "A14A",
            FamilyId::A14B { .. } => "A14B",
            FamilyId::AlgBranch { .. } => "AlgBranch",
            FamilyId::RicA1a => "RicA1a",
            FamilyId::RicA1b => "RicA1b",
            FamilyId::RicA2a => "RicA2a",
            FamilyId::RicA2b => "RicA2b",
            FamilyId::RicA2c => "RicA2c",
            FamilyId::RicA3 { .. } => "RicA3",
            FamilyId::RicD4Rat { .. } => "RicD4Rat",
            FamilyId::RicD4Log { .. } => "RicD4Log",
        }
    }

    pub fn is_closed_form(&self) -> bool {
        self.name().starts_with("Ric")
    }

    /// Ramification of the series.
    pub fn ram(&self) -> u32 {
        match self {
            FamilyId::AlgBranch { n, .. } => *n,
            _ => 1,
        }
    }

    /// Residual loss budget `L`, in slots of the family's ramification.
    /// Products of degree up to six in `q, p` cost at most four slots for
    /// ordinary series; for `AlgBranch` the pole of `p` at `z^(-m/n)` costs
    /// `3m` slots in the Hamiltonian residuals.
    pub fn loss(&self) -> i64 {
        match self {
            FamilyId::AlgBranch { m, .. } => 12.max(3 * *m as i64),
            _ => 4,
        }
    }

    /// Validity predicate on `k` (and on the discrete parameters).
    pub fn check(&self, k: &Kappa) -> Result<()> {
        let v = k.values();
        let ex = k.exact().copied();
        let e = |f: fn(&[Rational64; 5]) -> Rational64| ex.as_ref().map(f);
        let exact = || k.require_exact("family predicates");
        match *self {
            FamilyId::K1K2Plus => require(non_integer(e(|r| r[1] + r[2]), v[1] + v[2]), "k1 + k2 is an integer"),
            FamilyId::K1K2Minus => require(non_integer(e(|r| r[1] - r[2]), v[1] - v[2]), "k1 - k2 is an integer"),
            FamilyId::K3K4Plus | FamilyId::K3K4Minus => {
                require(nonzero(e(|r| r[4]), v[4]), "k4 = 0")?;
                if matches!(self, FamilyId::K3K4Plus) {
                    require(non_integer(e(|r| r[4] + r[3]), v[4] + v[3]), "k4 + k3 is an integer")
                } else {
                    require(non_integer(e(|r| r[4] - r[3]), v[4] - v[3]), "k4 - k3 is an integer")
                }
            }
            FamilyId::A12 { .. } => {
                let r = exact()?;
                require(r[1].is_zero() && r[2].is_zero(), "A12 needs k1 = k2 = 0")
            }
            FamilyId::A3 { .. } | FamilyId::RicA3 { .. } => {
                let r = exact()?;
                require(
                    r[0].is_zero() && r[1].is_zero() && r[2].is_zero() && (r[3] + r[4]).is_one() && !r[4].is_zero(),
                    "A3 needs k0 = k1 = k2 = 0, k3 + k4 = 1, k4 != 0",
                )
            }
            FamilyId::D4 { .. } | FamilyId::RicD4Rat { .. } | FamilyId::RicD4Log { .. } => {
                require(is_d4(exact()?), "D4 needs k0 = k1 = k2 = k3 = 0, k4 = 1")
            }
            FamilyId::A14A { .. } | FamilyId::A14B { .. } => {
                require(is_a14(exact()?), "A1x4 needs k0 = 1/2, k1 = k2 = k3 = k4 = 0")
            }
            FamilyId::AlgBranch { n, m, t } => {
                require(n > 1 && m > 0 && m < n, "need n > 1 and 0 < m < n")?;
                require(n.gcd(&m) == 1, "gcd(m, n) != 1")?;
                require(t.norm() > 0.0, "t = 0")
            }
            FamilyId::RicA1a | FamilyId::RicA1b => {
                let r = exact()?;
                require(
                    r[0].is_zero() && !(r[1] + r[2]).is_integer() && !(r[3] + r[4]).is_integer(),
                    "A1 Riccati needs k0 = 0, k1 + k2 and k3 + k4 not integers",
                )?;
                require(!(r[1] * r[4]).is_zero(), "A1 Riccati needs k1 k4 != 0")
            }
            FamilyId::RicA2a | FamilyId::RicA2b | FamilyId::RicA2c => {
                let r = exact()?;
                require(r[0].is_zero() && r[1].is_zero(), "A2 Riccati needs k0 = k1 = 0")?;
                require(
                    !r[2].is_integer() && !r[3].is_one() && !r[4].is_zero(),
                    "A2 Riccati needs k2 not an integer, k3 != 1, k4 != 0",
                )
            }
        }?;
        if let FamilyId::RicA3 { s } | FamilyId::RicD4Rat { s } = self {
            require(s[0].norm() + s[1].norm() > 0.0, "s = [0:0]")?;
        }
        if let FamilyId::RicD4Log { t } = self {
            require(t[0].norm() + t[1].norm() > 0.0, "t = [0:0]")?;
        }
        Ok(())
    }

    /// Whether the member at `k` is a Riccati solution (`q` identically
    /// `0`, `1` or `z`, or `p` identically zero). Needs exact `k`.
    pub fn riccati_degenerate(&self, k: &Kappa) -> Result<bool> {
        let r = k.require_exact("Riccati test")?;
        Ok(match self {
            FamilyId::K1K2Plus => (r[1] * r[2]).is_zero() || (r[0] * (r[0] + r[4])).is_zero(),
            FamilyId::K1K2Minus => (r[1] * r[2]).is_zero(),
            FamilyId::K3K4Plus => r[3].is_zero() || r[0].is_zero(),
            FamilyId::K3K4Minus => r[3].is_zero() || (r[0] + r[4]).is_zero(),
            FamilyId::A12 { .. } => (r[0] * (r[0] + r[3])).is_zero(),
            FamilyId::A3 { .. } => r[3].is_zero(),
            FamilyId::D4 { .. } | FamilyId::A14A { .. } | FamilyId::A14B { .. } | FamilyId::AlgBranch { .. } => false,
            _ => true,
        })
    }
}

/// A solution germ `(q, p)` to a fixed number of slots.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Coeff"))]
pub struct GermPair<T: Coeff = Complex64> {
    pub family: FamilyId,
    pub kappa: Kappa,
    /// Slots of `q` computed.
    pub order: i64,
    pub q: PuiseuxSeries<T>,
    pub p: PuiseuxSeries<T>,
}

fn seed<T: Coeff>(id: &FamilyId, vals: &[T]) -> Result<PuiseuxSeries<T>> {
    let one = T::one();
    Ok(match *id {
        FamilyId::K1K2Plus | FamilyId::K1K2Minus => {
            let s = if matches!(id, FamilyId::K1K2Plus) { one } else { -one };
            let c = vals[1].clone() / (vals[1].clone() + s * vals[2].clone());
            PuiseuxSeries::new(1, 1, vec![c], 2)
        }
        FamilyId::K3K4Plus | FamilyId::K3K4Minus => {
            let s = if matches!(id, FamilyId::K3K4Plus) { one } else { -one };
            let c = (vals[4].clone() + s * vals[3].clone()) / vals[4].clone();
            PuiseuxSeries::new(1, 0, vec![c], 1)
        }
        FamilyId::A12 { t } | FamilyId::A14A { t } => PuiseuxSeries::new(1, 1, vec![T::from_c64(t)], 2),
        FamilyId::A3 { t } => {
            let r = a3_seed_function::<T>(&vals[4], 3)?;
            let c1 = r.coeff_at(1).expect("three slots") + T::from_c64(t) * vals[3].clone();
            PuiseuxSeries::new(1, 0, vec![r.coeff_at(0).expect("three slots"), c1], 2)
        }
        FamilyId::D4 { t } => PuiseuxSeries::new(1, 0, vec![one, T::from_c64(t)], 2),
        FamilyId::A14B { t } => PuiseuxSeries::new(1, 0, vec![one / T::from_c64(t)], 1),
        FamilyId::AlgBranch { n, m, t } => PuiseuxSeries::monomial(T::from_c64(t), m as i64, n, m as i64 + 1),
        _ => return Err(Error::Invalid(format!("{} has no series seed", id.name()))),
    })
}

/// `z / (1 - (1-z)^k4)`.
fn a3_seed_function<T: Coeff>(k4: &T, trunc: i64) -> Result<PuiseuxSeries<T>> {
    let b = binomial_series(k4, trunc + 2);
    let den = PuiseuxSeries::constant(T::one(), trunc + 2).sub(&b);
    Ok(PuiseuxSeries::monomial(T::one(), 1, 1, trunc + 2).div(&den)?.truncate(trunc))
}

/// `t z / (t + (1-t)(1-z)^k4)`.
fn a12_seed_function<T: Coeff>(t: &T, k4: &T, trunc: i64) -> Result<PuiseuxSeries<T>> {
    let b = binomial_series(k4, trunc + 2).scale(&(T::one() - t.clone()));
    let den = PuiseuxSeries::constant(t.clone(), trunc + 2).add(&b);
    Ok(PuiseuxSeries::monomial(t.clone(), 1, 1, trunc + 2).div(&den)?.truncate(trunc))
}

/// `z / ((1-z) log(1-z))`.
fn d4_log_function<T: Coeff>(trunc: i64) -> Result<PuiseuxSeries<T>> {
    let den = PuiseuxSeries::from_poly(vec![T::one(), -T::one()], trunc + 2).mul(&log1m_series(trunc + 2));
    Ok(PuiseuxSeries::monomial(T::one(), 1, 1, trunc + 2).div(&den)?.truncate(trunc))
}

/// Builds `q` to `order` slots (slots of `z^(1/n)` for `AlgBranch`) and `p`
/// from it; closed forms are expanded instead.
pub fn build_family<T: Coeff>(id: &FamilyId, k: &Kappa, order: i64) -> Result<GermPair<T>> {
    id.check(k)?;
    let (q, p) = if id.is_closed_form() {
        riccati_series::<T>(id, k, order)?
    } else {
        let vals: Vec<T> = kappa_vals(k);
        let q = solve_series(&pvi_diffsum(), &vals, &seed(id, &vals)?, order)?;
        let p = p_from_q(&q, k)?;
        (q, p)
    };
    Ok(GermPair { family: *id, kappa: k.clone(), order, q, p })
}

pub fn algbranch<T: Coeff>(n: u32, m: u32, t: Complex64, k: &Kappa, order: i64) -> Result<GermPair<T>> {
    build_family(&FamilyId::AlgBranch { n, m, t }, k, order)
}

/// The normalized coefficients the families are stated with, e.g. `a2`
/// and `b0` for `A12`, read off a built germ.
pub fn normalized_coeffs<T: Coeff>(g: &GermPair<T>) -> Result<Vec<(&'static str, T)>> {
    let v: Vec<T> = kappa_vals(&g.kappa);
    let at = |s: &PuiseuxSeries<T>, slot: i64| s.coeff_at(slot).ok_or(Error::EmptyWindow);
    let one = T::one();
    Ok(match g.family {
        FamilyId::K1K2Plus | FamilyId::K1K2Minus => vec![("c", at(&g.q, 1)?), ("p_pole", at(&g.p, -1)?)],
        FamilyId::K3K4Plus | FamilyId::K3K4Minus => vec![("c", at(&g.q, 0)?), ("p0", at(&g.p, 0)?)],
        FamilyId::A12 { t } => {
            let t = T::from_c64(t);
            let r = a12_seed_function(&t, &v[4], 3)?;
            let s = t.clone() * (one.clone() - t) * v[0].clone() * (v[0].clone() + v[3].clone());
            let b = v[0].clone() * (v[0].clone() + v[4].clone());
            vec![("a2", (at(&g.q, 2)? - at(&r, 2)?) / s), ("b0", at(&g.p, 0)? / b)]
        }
        FamilyId::A3 { t } => {
            let t = T::from_c64(t);
            let r = a3_seed_function(&v[4], 3)?;
            let s = t.clone() * v[3].clone() * v[4].clone();
            let b = -(t * v[4].clone().powi(3));
            vec![("a2", (at(&g.q, 2)? - at(&r, 2)?) / s), ("b1", at(&g.p, 1)? / b)]
        }
        FamilyId::D4 { t } => {
            let t = T::from_c64(t);
            let l = d4_log_function::<T>(3)?;
            vec![("a1", at(&g.q, 1)? / t.clone()), ("b1", (at(&g.p, 1)? - at(&l, 1)?) / t)]
        }
        FamilyId::A14A { t } => {
            let t = T::from_c64(t);
            vec![("a2", at(&g.q, 2)? / (t.clone() * (one - t))), ("b0", at(&g.p, 0)?)]
        }
        FamilyId::A14B { t } => {
            let t = T::from_c64(t);
            vec![("c1", at(&g.q, 1)? * t.clone() / (t.clone() - one)), ("d0", at(&g.p, 0)? / t)]
        }
        FamilyId::AlgBranch { m, .. } => vec![("p_lead", at(&g.p, -(m as i64))?)],
        _ => vec![("q0", at(&g.q, 0)?), ("p0", at(&g.p, 0)?)],
    })
}

/// Expected leading coefficient of `p` for `AlgBranch(n, m, t)`.
pub fn algbranch_p_lead<T: Coeff>(n: u32, m: u32, t: &T, k: &Kappa) -> T {
    let v: Vec<T> = kappa_vals(k);
    let nn = T::from_int(n as i64);
    (T::from_int(m as i64) + nn.clone() * (v[1].clone() + v[2].clone() - T::one())) / (T::from_int(2) * nn * t.clone())
}

fn ser_rat<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    /// First exponent of `P(z, q)` that is not rounding noise, or the end of
    /// the certain window if none is.
    #[serde(serialize_with = "ser_rat")]
    pub p_residual: Rational64,
    #[serde(serialize_with = "ser_rat")]
    pub ham_q: Rational64,
    #[serde(serialize_with = "ser_rat")]
    pub ham_p: Rational64,
    /// `(order - loss) / n`.
    #[serde(serialize_with = "ser_rat")]
    pub threshold: Rational64,
    pub loss: i64,
    pub passes: bool,
}

/// `P(z, 0)`: only the `q`-free monomials survive.
fn zero_q_residual<T: Coeff>(vals: &[T], window: Rational64) -> Rational64 {
    pvi_diffsum()
        .coeffs_at(vals)
        .iter()
        .filter(|(m, _)| m.1 + m.2 + m.3 == 0)
        .map(|(m, _)| Rational64::from_integer(m.0 as i64))
        .min()
        .unwrap_or(window)
}

fn first_exponent<T: Coeff>(s: PuiseuxSeries<T>, scale: &PuiseuxSeries<Complex64>) -> Rational64 {
    let s = s.denoise(scale);
    s.leading_exponent().unwrap_or_else(|| s.trunc_exponent())
}

/// Coefficientwise bounds for `hamiltonian_residuals`, built from moduli.
fn hamiltonian_majorants(
    q: &PuiseuxSeries<Complex64>,
    p: &PuiseuxSeries<Complex64>,
    pbound: Option<PuiseuxSeries<Complex64>>,
    k: &Kappa,
) -> (PuiseuxSeries<Complex64>, PuiseuxSeries<Complex64>) {
    let v: Vec<Complex64> = k.values().iter().map(|x| Complex64::new(x.norm(), 0.0)).collect();
    let n = q.ram() as i64;
    let far = q.trunc().max(p.trunc()).max(0) + 4 * n + q.lo().abs() + p.lo().abs();
    let cst = |c: f64| PuiseuxSeries::new(q.ram(), 0, vec![Complex64::new(c, 0.0)], far);
    let z = PuiseuxSeries::new(q.ram(), n, vec![Complex64::new(1.0, 0.0)], far + n);
    let pa = pbound.unwrap_or_else(|| p.abs_majorant());
    let (qa, dq, dp) = (q.abs_majorant(), q.derive().abs_majorant(), pa.derive().abs_majorant());
    let q1 = qa.add(&cst(1.0));
    let qz = qa.add(&z);
    let zz1 = z.mul(&z.add(&cst(1.0)));
    let a = q1.mul(&qz).scale(&v[1]).add(&qa.mul(&q1).scale(&(v[2] + 1.0))).add(&qa.mul(&qz).scale(&v[3]));
    let e1 = zz1.mul(&dq).add(&qa.mul(&q1).mul(&qz).mul(&pa).scale(&Complex64::new(2.0, 0.0))).add(&a);
    let dcubic = q1.mul(&qz).add(&qa.mul(&qz)).add(&qa.mul(&q1));
    let da = q1.add(&qz).scale(&v[1]).add(&qa.add(&q1).scale(&(v[2] + 1.0))).add(&qa.add(&qz).scale(&v[3]));
    let e2 = zz1
        .mul(&dp)
        .add(&dcubic.mul(&pa.mul(&pa)))
        .add(&da.mul(&pa))
        .add(&cst(v[0].norm() * (v[0] + v[4]).norm()));
    (e1, e2)
}

/// Orders of vanishing of `P(z, q)` and of both Hamiltonian equations.
/// Passes when all three reach `(order - loss) / n`.
pub fn residual_order<T: Coeff>(g: &GermPair<T>) -> Result<ResidualReport> {
    let vals: Vec<T> = kappa_vals(&g.kappa);
    let p_residual = if g.q.is_zero() {
        zero_q_residual(&vals, g.q.trunc_exponent())
    } else {
        let (pres, pmaj) = diffsum_eval_scaled(&pvi_diffsum(), &g.q, &vals)?;
        first_exponent(pres, &pmaj)
    };
    let (e1, e2) = hamiltonian_residuals(&g.q, &g.p, &g.kappa);
    let pbound = if g.family.is_closed_form() { None } else { p_majorant(&g.q, &g.kappa) };
    let (m1, m2) = hamiltonian_majorants(&g.q.to_c64(), &g.p.to_c64(), pbound, &g.kappa);
    let ham_q = first_exponent(e1, &m1);
    let ham_p = first_exponent(e2, &m2);
    let loss = g.family.loss();
    let threshold = Rational64::new(g.order - loss, g.family.ram() as i64);
    let passes = p_residual >= threshold && ham_q >= threshold && ham_p >= threshold;
    Ok(ResidualReport { p_residual, ham_q, ham_p, threshold, loss, passes })
}

/// Series families that apply at `k` (exact), one representative per
/// one-parameter family. `A14A` is `A12` restricted to the `A1x4` point,
/// so `A12` is not listed there separately.
pub fn applicable_families(k: &Kappa) -> Result<Vec<FamilyId>> {
    let r = k.require_exact("family list")?;
    let t = Complex64::new(0.5, 0.25);
    let mut out = Vec::new();
    let candidates = [
        FamilyId::K1K2Plus,
        FamilyId::K1K2Minus,
        FamilyId::K3K4Plus,
        FamilyId::K3K4Minus,
        FamilyId::A12 { t },
        FamilyId::A3 { t },
        FamilyId::D4 { t },
        FamilyId::A14A { t },
        FamilyId::A14B { t },
    ];
    for id in candidates {
        if matches!(id, FamilyId::A12 { .. }) && is_a14(r) {
            continue;
        }
        if id.check(k).is_ok() {
            out.push(id);
        }
    }
    Ok(out)
}

fn is_point_family(id: &FamilyId) -> bool {
    matches!(id, FamilyId::K1K2Plus | FamilyId::K1K2Minus | FamilyId::K3K4Plus | FamilyId::K3K4Minus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixCounts {
    pub points: usize,
    pub lines: usize,
    pub riccati_points: usize,
    pub riccati_curves: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExhaustivenessCount {
    pub label: StratumLabel,
    pub kappa: Kappa,
    /// `(family, "point" | "line", riccati)`.
    pub families: Vec<(String, &'static str, bool)>,
    pub series_families: usize,
    pub riccati_families: usize,
    /// Family-side counts in the same four slots as `fix`.
    pub by_kind: FixCounts,
    pub fix: FixCounts,
    pub matches: bool,
}

/// Families on one side, fixed-point components of `g_1^2` on the other.
/// Point families match isolated fixed points, one-parameter families match
/// fixed lines; members that are Riccati solutions match the fixed set on
/// the exceptional curves instead.
pub fn exhaustiveness_count(s: &Stratum) -> Result<ExhaustivenessCount> {
    let ex = exceptional_actions(s, 1)?;
    let k = ex.normal_form.clone();
    let report = fixed_point_report(1, &k)?;
    let fix = FixCounts {
        points: report.count("smooth"),
        lines: report.count("line"),
        riccati_points: ex.fix_e.isolated,
        riccati_curves: ex.fix_e.curves.len(),
    };
    let mut by_kind = FixCounts { points: 0, lines: 0, riccati_points: 0, riccati_curves: 0 };
    let mut families = Vec::new();
    for id in applicable_families(&k)? {
        let point = is_point_family(&id);
        let ric = id.riccati_degenerate(&k)?;
        match (point, ric) {
            (true, false) => by_kind.points += 1,
            (false, false) => by_kind.lines += 1,
            (true, true) => by_kind.riccati_points += 1,
            (false, true) => by_kind.riccati_curves += 1,
        }
        families.push((id.name().to_string(), if point { "point" } else { "line" }, ric));
    }
    let series_families = by_kind.points + by_kind.lines;
    let riccati_families = by_kind.riccati_points + by_kind.riccati_curves;
    let matches = by_kind == fix;
    Ok(ExhaustivenessCount {
        label: s.label,
        kappa: k,
        families,
        series_families,
        riccati_families,
        by_kind,
        fix,
        matches,
    })
}
