use num::complex::Complex64;
use num::rational::Rational64;
use num::traits::{One, Zero};
use proptest::prelude::*;
use pvi_core::families::*;
use pvi_core::params::{classify_stratum, StratumLabel};
use pvi_core::puiseux::{newton_polygon_at, truncate_along, Face};
use pvi_core::scalar::crat;
use pvi_core::{CRat, Coeff, Error, Kappa, PuiseuxSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn kap(k: [(i64, i64); 4]) -> Kappa {
    Kappa::from_k1234(k.map(|(n, d)| r(n, d)))
}

fn generic() -> Kappa {
    kap([(1, 5), (1, 7), (1, 11), (1, 13)])
}

fn a12_kappa() -> Kappa {
    kap([(0, 1), (0, 1), (1, 5), (1, 7)])
}

fn a3_kappa() -> Kappa {
    kap([(0, 1), (0, 1), (1, 5), (4, 5)])
}

fn d4_kappa() -> Kappa {
    kap([(0, 1), (0, 1), (0, 1), (1, 1)])
}

fn a14_kappa() -> Kappa {
    kap([(0, 1), (0, 1), (0, 1), (0, 1)])
}

fn a1_riccati_kappa() -> Kappa {
    kap([(1, 5), (1, 7), (1, 11), (218, 385)])
}

fn a2_riccati_kappa() -> Kappa {
    kap([(0, 1), (1, 7), (1, 5), (23, 35)])
}

fn exact(re: Rational64) -> CRat {
    crat(re, Rational64::zero())
}

/// Right side of the second-order equation, standard form with
/// `alpha = k4^2/2, beta = -k1^2/2, gamma = k3^2/2, delta = (1-k2^2)/2`.
fn pvi_rhs(k: &[C; 5], z: C, q: C, dq: C) -> C {
    let (al, be, ga, de) = (k[4] * k[4] / 2.0, -k[1] * k[1] / 2.0, k[3] * k[3] / 2.0, (1.0 - k[2] * k[2]) / 2.0);
    0.5 * (1.0 / q + 1.0 / (q - 1.0) + 1.0 / (q - z)) * dq * dq - (1.0 / z + 1.0 / (z - 1.0) + 1.0 / (q - z)) * dq
        + q * (q - 1.0) * (q - z) / (z * z * (z - 1.0) * (z - 1.0))
            * (al + be * z / (q * q) + ga * (z - 1.0) / ((q - 1.0) * (q - 1.0)) + de * z * (z - 1.0) / ((q - z) * (q - z)))
}

fn diffsum_at(k: &Kappa, x: [C; 4]) -> C {
    let vals: Vec<C> = kappa_vals(k);
    pvi_diffsum()
        .coeffs_at(&vals)
        .iter()
        .map(|(m, v)| v * x[0].powi(m.0) * x[1].powu(m.1) * x[2].powu(m.2) * x[3].powu(m.3))
        .sum()
}

#[test]
fn diffsum_is_the_cleared_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let k4: [Rational64; 4] = [0; 4].map(|_| r(rng.random_range(-90..90), 47));
        let k = Kappa::from_k1234(k4);
        let v = k.values();
        let x = [0; 4].map(|_| c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)));
        let (z, q, dq, ddq) = (x[0], x[1], x[2], x[3]);
        let want = 2.0 * z * z * (z - 1.0) * (z - 1.0) * q * (q - 1.0) * (q - z) * (ddq - pvi_rhs(&v, z, q, dq));
        let got = diffsum_at(&k, x);
        assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()), "{got} vs {want}");
    }
    assert_eq!(pvi_diffsum().len(), 43);
}

fn polygon_case(k1: i64, k4: i64) -> Vec<(i64, i64)> {
    let k = kap([(k1, 5), (1, 7), (1, 11), (k4, 13)]);
    let vals: Vec<CRat> = kappa_vals(&k);
    newton_polygon_at(&pvi_diffsum(), &vals).vertices
}

#[test]
fn polygon_vertices_in_all_four_cases() {
    let cases = [
        ((1, 1), vec![(0, 3), (0, 6), (3, 0), (3, 3)]),
        ((0, 1), vec![(0, 3), (0, 6), (3, 3), (3, 2), (1, 2)]),
        ((1, 0), vec![(0, 3), (3, 0), (3, 3), (0, 4), (2, 4)]),
        ((0, 0), vec![(0, 3), (3, 3), (0, 4), (2, 4), (3, 2), (1, 2)]),
    ];
    for ((k1, k4), want) in cases {
        let got = polygon_case(k1, k4);
        for v in &want {
            assert!(got.contains(v), "k1={k1} k4={k4}: {v:?} missing from {got:?}");
        }
        assert_eq!(got.len(), want.len(), "k1={k1} k4={k4}: {got:?}");
    }
}

fn truncation(face: Face) -> Vec<((i32, u32, u32, u32), Rational64)> {
    let k = generic();
    let p = pvi_diffsum().specialize(k.exact().unwrap());
    let t = truncate_along(&p, &face).unwrap();
    let vals: Vec<Rational64> = k.exact().unwrap().to_vec();
    let mut out: Vec<_> = t.terms().map(|(m, e)| (*m, e.eval_rat(&vals))).collect();
    out.sort();
    out
}

#[test]
fn truncations_along_both_edges() {
    let s = |x: Rational64| x * x;
    let kv = *generic().exact().unwrap();
    let mut p1 = vec![
        ((1, 2, 1, 0), r(-2, 1)),
        ((2, 1, 2, 0), r(2, 1)),
        ((2, 2, 0, 1), r(-2, 1)),
        ((1, 2, 0, 0), s(kv[1]) - s(kv[2]) + 1),
        ((3, 0, 2, 0), r(-1, 1)),
        ((3, 1, 0, 1), r(2, 1)),
        ((2, 1, 0, 0), s(kv[1]) * -2),
        ((3, 0, 0, 0), s(kv[1])),
    ];
    p1.sort();
    assert_eq!(truncation(Face::Edge((3, 0), (0, 3))), p1);
    let mut p0 = vec![
        ((1, 2, 1, 0), r(-2, 1)),
        ((2, 1, 2, 0), r(2, 1)),
        ((2, 2, 0, 1), r(-2, 1)),
        ((0, 4, 0, 0), s(kv[3]) - s(kv[4])),
        ((1, 3, 1, 0), r(2, 1)),
        ((2, 2, 2, 0), r(-3, 1)),
        ((2, 3, 0, 1), r(2, 1)),
        ((0, 5, 0, 0), s(kv[4]) * 2),
        ((0, 6, 0, 0), -s(kv[4])),
    ];
    p0.sort();
    assert_eq!(truncation(Face::Edge((0, 3), (0, 6))), p0);
}

fn t_exact() -> C {
    c(0.375, 0.0)
}

fn coeff<'a>(list: &'a [(&'static str, CRat)], name: &str) -> &'a CRat {
    &list.iter().find(|(n, _)| *n == name).unwrap().1
}

fn exact_coeffs(id: FamilyId, k: &Kappa, order: i64) -> Vec<(&'static str, CRat)> {
    let g = build_family::<CRat>(&id, k, order).unwrap();
    normalized_coeffs(&g).unwrap()
}

#[test]
fn leading_coefficients_exact() {
    let t = t_exact();
    let one = exact(r(1, 1));
    let a = exact_coeffs(FamilyId::A12 { t }, &a12_kappa(), 4);
    assert_eq!((coeff(&a, "a2"), coeff(&a, "b0")), (&exact(r(2, 1)), &one));
    let a = exact_coeffs(FamilyId::A3 { t }, &a3_kappa(), 4);
    assert_eq!(coeff(&a, "a2"), &exact(r(3, 8) * r(1, 5)));
    assert_eq!(coeff(&a, "b1"), &one);
    let a = exact_coeffs(FamilyId::D4 { t }, &d4_kappa(), 4);
    assert_eq!((coeff(&a, "a1"), coeff(&a, "b1")), (&one, &one));
    let a = exact_coeffs(FamilyId::A14A { t }, &a14_kappa(), 4);
    assert_eq!((coeff(&a, "a2"), coeff(&a, "b0")), (&exact(r(1, 2)), &exact(r(1, 4))));
    let a = exact_coeffs(FamilyId::A14B { t }, &a14_kappa(), 4);
    assert_eq!((coeff(&a, "c1"), coeff(&a, "d0")), (&exact(r(1, 2)), &exact(r(-1, 2))));
}

#[test]
fn a3_a2_tracks_t() {
    for (tn, td) in [(1, 3), (-2, 7), (5, 2)] {
        let t = c(tn as f64 / td as f64, 0.0);
        if CRat::from_c64(t) != exact(r(tn, td)) {
            continue;
        }
        let a = exact_coeffs(FamilyId::A3 { t }, &a3_kappa(), 4);
        assert_eq!(coeff(&a, "a2"), &exact(r(tn, td) * r(1, 5)));
    }
}

#[test]
fn algbranch_p_lead_exact() {
    let t = t_exact();
    let k = generic();
    let kv = k.exact().unwrap();
    for (n, m) in [(2, 1), (3, 1), (3, 2), (5, 2)] {
        let g = algbranch::<CRat>(n, m, t, &k, m as i64 + 4).unwrap();
        let got = g.p.coeff_at(-(m as i64)).unwrap();
        let (nr, mr) = (r(n as i64, 1), r(m as i64, 1));
        let want = (mr + nr * (kv[1] + kv[2] - 1)) / (nr * r(3, 4));
        assert_eq!(got, exact(want), "n={n} m={m}");
        assert_eq!(got, algbranch_p_lead(n, m, &CRat::from_c64(t), &k));
        assert_eq!(g.p.leading_exponent(), Some(r(-(m as i64), n as i64)));
    }
    assert_eq!(algbranch_p_lead(2, 1, &CRat::from_c64(t), &k), exact(r(-22, 105)));
}

#[test]
fn p_from_q_examples() {
    let k = generic();
    let kv = *k.exact().unwrap();
    let g = build_family::<CRat>(&FamilyId::K1K2Minus, &k, 4).unwrap();
    assert_eq!(g.p.leading_exponent(), Some(r(-1, 1)));
    assert_eq!(g.p.coeff_at(-1).unwrap(), exact(kv[1] - kv[2]));
    assert_eq!(g.q.coeff_at(1).unwrap(), exact(kv[1] / (kv[1] - kv[2])));

    let g = build_family::<CRat>(&FamilyId::A3 { t: t_exact() }, &a3_kappa(), 4).unwrap();
    assert_eq!(g.p.leading_exponent(), Some(r(1, 1)));
    let k4 = r(4, 5);
    assert_eq!(g.p.coeff_at(1).unwrap(), exact(-r(3, 8) * k4 * k4 * k4));

    let g = build_family::<CRat>(&FamilyId::K3K4Plus, &k, 3).unwrap();
    assert_eq!(g.q.coeff_at(0).unwrap(), exact((kv[4] + kv[3]) / kv[4]));

    for q in [
        PuiseuxSeries::<C>::zero(1, 6),
        PuiseuxSeries::constant(c(1.0, 0.0), 6),
        PuiseuxSeries::monomial(c(1.0, 0.0), 1, 1, 6),
    ] {
        assert!(matches!(p_from_q(&q, &k), Err(Error::RiccatiDegenerate)));
    }
}

#[test]
fn d4_at_zero_t_is_the_log_solution() {
    let k = d4_kappa();
    let (q, p) = riccati_series::<CRat>(&FamilyId::RicD4Log { t: [c(1.0, 0.0), c(0.0, 0.0)] }, &k, 6).unwrap();
    assert_eq!(q, PuiseuxSeries::constant(exact(r(1, 1)), 6));
    // z / ((1-z) log(1-z)) = -1 - z/2 - 5z^2/12 - ...
    assert_eq!(p.coeff_at(0).unwrap(), exact(r(-1, 1)));
    assert_eq!(p.coeff_at(1).unwrap(), exact(r(-1, 2)));
    assert_eq!(p.coeff_at(2).unwrap(), exact(r(-5, 12)));
    let g = build_family::<CRat>(&FamilyId::D4 { t: t_exact() }, &k, 4).unwrap();
    assert_eq!(g.q.coeff_at(0).unwrap(), exact(r(1, 1)));
    assert_eq!(g.q.coeff_at(1).unwrap(), exact(r(3, 8)));
}

fn series_cases() -> Vec<(FamilyId, Kappa)> {
    let t = c(0.375, 0.125);
    let g = generic();
    vec![
        (FamilyId::K1K2Plus, g.clone()),
        (FamilyId::K1K2Minus, g.clone()),
        (FamilyId::K3K4Plus, g.clone()),
        (FamilyId::K3K4Minus, g.clone()),
        (FamilyId::A12 { t }, a12_kappa()),
        (FamilyId::A3 { t }, a3_kappa()),
        (FamilyId::D4 { t }, d4_kappa()),
        (FamilyId::A14A { t }, a14_kappa()),
        (FamilyId::A14B { t }, a14_kappa()),
        (FamilyId::AlgBranch { n: 2, m: 1, t }, g.clone()),
        (FamilyId::AlgBranch { n: 3, m: 1, t }, g.clone()),
        (FamilyId::AlgBranch { n: 5, m: 2, t }, g),
    ]
}

fn riccati_cases() -> Vec<(FamilyId, Kappa)> {
    let s = [c(1.0, 0.0), c(0.5, 0.2)];
    vec![
        (FamilyId::RicA1a, a1_riccati_kappa()),
        (FamilyId::RicA1b, a1_riccati_kappa()),
        (FamilyId::RicA2a, a2_riccati_kappa()),
        (FamilyId::RicA2b, a2_riccati_kappa()),
        (FamilyId::RicA2c, a2_riccati_kappa()),
        (FamilyId::RicA3 { s }, a3_kappa()),
        (FamilyId::RicA3 { s: [c(1.0, 0.0), c(0.0, 0.0)] }, a3_kappa()),
        (FamilyId::RicD4Rat { s }, d4_kappa()),
        (FamilyId::RicD4Log { t: s }, d4_kappa()),
        (FamilyId::RicD4Log { t: [c(1.0, 0.0), c(0.0, 0.0)] }, d4_kappa()),
    ]
}

#[test]
fn residual_orders_at_default_order() {
    for (id, k) in series_cases().into_iter().chain(riccati_cases()) {
        let g = build_family::<C>(&id, &k, DEFAULT_ORDER).unwrap();
        let rep = residual_order(&g).unwrap();
        assert!(rep.passes, "{}: {rep:?}", id.name());
        if id.ram() == 1 {
            assert!(rep.threshold == r(20, 1), "{}", id.name());
        }
    }
}

#[test]
fn residual_orders_exact() {
    for (id, k) in series_cases().into_iter().filter(|(id, _)| id.ram() != 3) {
        let order = if id.ram() == 1 { 8 } else { 14 };
        let g = build_family::<CRat>(&id, &k, order).unwrap();
        let rep = residual_order(&g).unwrap();
        assert!(rep.passes, "{}: {rep:?}", id.name());
    }
}

#[test]
fn corrupted_coefficient_is_flagged() {
    for (id, k) in series_cases().into_iter().take(9) {
        let mut g = build_family::<C>(&id, &k, DEFAULT_ORDER).unwrap();
        let a3 = g.q.coeff_at(3).unwrap();
        g.q = g.q.with_coeff(3, a3 + c(1e-3, 0.0));
        let rep = residual_order(&g).unwrap();
        assert!(!rep.passes, "{}: {rep:?}", id.name());
        assert!(rep.p_residual < r(8, 1), "{}: {rep:?}", id.name());
    }
}

#[test]
fn predicates_reject_bad_parameters() {
    let t = t_exact();
    let bad_k12 = kap([(1, 3), (2, 3), (1, 11), (1, 13)]);
    assert!(matches!(build_family::<C>(&FamilyId::K1K2Plus, &bad_k12, 8), Err(Error::Predicate(_))));
    assert!(build_family::<C>(&FamilyId::K1K2Minus, &bad_k12, 8).is_ok());
    assert!(matches!(build_family::<C>(&FamilyId::A12 { t }, &generic(), 8), Err(Error::Predicate(_))));
    assert!(matches!(build_family::<C>(&FamilyId::D4 { t }, &a3_kappa(), 8), Err(Error::Predicate(_))));
    assert!(matches!(algbranch::<C>(4, 2, t, &generic(), 8), Err(Error::Predicate(_))));
    assert!(matches!(algbranch::<C>(3, 1, c(0.0, 0.0), &generic(), 8), Err(Error::Predicate(_))));
    let fk = Kappa::complex(generic().values()).unwrap();
    assert!(matches!(build_family::<C>(&FamilyId::A12 { t }, &fk, 8), Err(Error::NeedRational(_))));
}

#[test]
fn resonant_recursion_is_an_error() {
    // Characteristic roots on this face are 1 +- (k1 + k2); k1 + k2 = 1 hits slot 2.
    let k = kap([(1, 3), (2, 3), (1, 11), (1, 13)]);
    let vals: Vec<C> = kappa_vals(&k);
    let seed = PuiseuxSeries::new(1, 1, vec![c(1.0 / 3.0, 0.0)], 2);
    let got = solve_series(&pvi_diffsum(), &vals, &seed, 8);
    assert!(matches!(got, Err(Error::Resonance(_))), "{got:?}");
}

/// `(E1, E2, scale)` of the Hamiltonian system at a point.
fn ham_residual(k: &[C; 5], z: C, x: [C; 4]) -> (C, C, f64) {
    let [q, p, dq, dp] = x;
    let (q1, qz) = (q - 1.0, q - z);
    let a = [k[1] * q1 * qz, (k[2] - 1.0) * q * q1, k[3] * q * qz];
    let aq = k[1] * (q1 + qz) + (k[2] - 1.0) * (q + q1) + k[3] * (q + qz);
    let zz = z * (z - 1.0);
    let e1 = zz * dq - 2.0 * q * q1 * qz * p + a.iter().sum::<C>();
    let cub = q1 * qz + q * qz + q * q1;
    let konst = k[0] * (k[0] + k[4]);
    let e2 = zz * dp + cub * p * p - aq * p + konst;
    let scale = (zz * dq).norm()
        + (q * q1 * qz * p).norm()
        + a.iter().map(|v| v.norm()).sum::<f64>()
        + (zz * dp).norm()
        + (cub * p * p).norm()
        + (aq * p).norm()
        + konst.norm();
    (e1, e2, scale)
}

fn sample_points(rng: &mut ChaCha8Rng, rmax: f64, count: usize) -> Vec<C> {
    (0..count)
        .map(|_| C::from_polar(rng.random_range(0.02..rmax), rng.random_range(-3.1..3.1)))
        .collect()
}

#[test]
fn riccati_forms_solve_the_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (id, k) in riccati_cases() {
        let v = k.values();
        for z in sample_points(&mut rng, 0.5, 20) {
            let x = riccati_point(&id, &k, z).unwrap();
            let (e1, e2, scale) = ham_residual(&v, z, x);
            assert!(e1.norm() < 1e-10 * scale.max(1.0), "{} E1 at {z}: {e1}", id.name());
            assert!(e2.norm() < 1e-10 * scale.max(1.0), "{} E2 at {z}: {e2}", id.name());
        }
    }
}

#[test]
fn riccati_series_match_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (id, k) in riccati_cases() {
        let (q, p) = riccati_series::<C>(&id, &k, DEFAULT_ORDER).unwrap();
        for z in sample_points(&mut rng, 0.1, 20) {
            let x = riccati_point(&id, &k, z).unwrap();
            assert!((q.eval(z) - x[0]).norm() < 1e-10, "{} q at {z}", id.name());
            assert!((p.eval(z) - x[1]).norm() < 1e-10, "{} p at {z}", id.name());
            assert!((q.derive().eval(z) - x[2]).norm() < 1e-10, "{} q' at {z}", id.name());
        }
    }
}

#[test]
fn riccati_special_members() {
    let k = a3_kappa();
    let (q, p) = riccati_series::<CRat>(&FamilyId::RicA3 { s: [c(1.0, 0.0), c(0.0, 0.0)] }, &k, 6).unwrap();
    assert_eq!(q, PuiseuxSeries::monomial(exact(r(1, 1)), 1, 1, 6));
    assert!(p.is_zero());
    let x = riccati_point(&FamilyId::RicD4Log { t: [c(1.0, 0.0), c(0.0, 0.0)] }, &d4_kappa(), c(0.3, 0.1)).unwrap();
    let z = c(0.3, 0.1);
    assert!((x[1] - z / ((1.0 - z) * (1.0 - z).ln())).norm() < 1e-14);
    assert_eq!(x[0], c(1.0, 0.0));
    assert!(matches!(riccati_point(&FamilyId::RicA3 { s: [c(1.0, 0.0); 2] }, &k, c(1.5, 0.0)), Err(Error::BranchCut(_))));
}

#[test]
fn exhaustiveness_on_all_strata() {
    for label in StratumLabel::all_aligned() {
        let s = classify_stratum(&label.sample_kappa()).unwrap();
        let e = exhaustiveness_count(&s).unwrap();
        assert!(e.matches, "{label:?}: {e:?}");
    }
    let count = |l: StratumLabel| exhaustiveness_count(&classify_stratum(&l.sample_kappa()).unwrap()).unwrap();
    let e = count(StratumLabel::Empty);
    assert_eq!((e.series_families, e.riccati_families, e.fix.points), (4, 0, 4));
    let e = count(StratumLabel::A2);
    assert_eq!((e.series_families, e.riccati_families), (1, 3));
    assert_eq!(e.fix.points + e.fix.riccati_points, 4);
    let e = count(StratumLabel::A1x4);
    assert_eq!((e.series_families, e.riccati_families, e.fix.lines, e.fix.riccati_curves), (2, 0, 2, 0));
}

/// Lagrange interpolation through `(x_i, y_i)` evaluated at `x`.
fn lagrange(xs: &[f64], ys: &[C], x: f64) -> C {
    let mut out = c(0.0, 0.0);
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        let w: f64 = xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &xj)| (x - xj) / (xi - xj)).product();
        out += yi * w;
    }
    out
}

fn slots_at(id: &FamilyId, k: &Kappa, slots: i64) -> Vec<C> {
    let g = build_family::<C>(id, k, slots).unwrap();
    (0..slots).map(|s| g.q.coeff_at(s).unwrap()).collect()
}

#[test]
fn coefficients_are_polynomial_in_t() {
    let nodes: Vec<f64> = (0..10).map(|i| (std::f64::consts::PI * (2 * i + 1) as f64 / 20.0).cos()).collect();
    let make: [(fn(C) -> FamilyId, Kappa); 4] = [
        (|t| FamilyId::A12 { t }, a12_kappa()),
        (|t| FamilyId::A3 { t }, a3_kappa()),
        (|t| FamilyId::D4 { t }, d4_kappa()),
        (|t| FamilyId::A14A { t }, a14_kappa()),
    ];
    for (f, k) in make {
        let samples: Vec<Vec<C>> = nodes.iter().map(|&t| slots_at(&f(c(t, 0.0)), &k, 6)).collect();
        for probe in [0.37, -0.61] {
            let direct = slots_at(&f(c(probe, 0.0)), &k, 6);
            for s in 0..6 {
                let ys: Vec<C> = samples.iter().map(|v| v[s]).collect();
                let fit = lagrange(&nodes, &ys, probe);
                assert!((fit - direct[s]).norm() < 1e-9 * (1.0 + direct[s].norm()), "{} slot {s}", f(c(probe, 0.0)).name());
            }
        }
    }
}

fn rat_strategy() -> impl Strategy<Value = Rational64> {
    (-80i64..80).prop_filter("nonzero", |n| *n != 0).prop_map(|n| Rational64::new(n, 97))
}

fn family_kappa(id: &FamilyId, a: Rational64, b: Rational64, cc: Rational64) -> Kappa {
    let zero = Rational64::zero();
    let one = Rational64::one();
    match id {
        FamilyId::A12 { .. } => Kappa::from_k1234([zero, zero, a, b]),
        FamilyId::A3 { .. } | FamilyId::RicA3 { .. } => Kappa::from_k1234([zero, zero, a, one - a]),
        FamilyId::RicA1a | FamilyId::RicA1b => Kappa::from_k1234([a, b, cc, one - a - b - cc]),
        FamilyId::RicA2a | FamilyId::RicA2b | FamilyId::RicA2c => Kappa::from_k1234([zero, a, b, one - a - b]),
        _ => Kappa::from_k1234([a, b, cc, r(3, 97) - a]),
    }
}

fn random_families() -> Vec<FamilyId> {
    let t = c(0.4, -0.2);
    vec![
        FamilyId::K1K2Plus,
        FamilyId::K1K2Minus,
        FamilyId::K3K4Plus,
        FamilyId::K3K4Minus,
        FamilyId::A12 { t },
        FamilyId::A3 { t },
        FamilyId::AlgBranch { n: 2, m: 1, t },
        FamilyId::AlgBranch { n: 3, m: 2, t },
        FamilyId::RicA1a,
        FamilyId::RicA1b,
        FamilyId::RicA2a,
        FamilyId::RicA2b,
        FamilyId::RicA2c,
        FamilyId::RicA3 { s: [c(1.0, 0.0), c(-0.3, 0.4)] },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn residuals_pass_for_random_kappa(a in rat_strategy(), b in rat_strategy(), cc in rat_strategy()) {
        for id in random_families() {
            let k = family_kappa(&id, a, b, cc);
            if id.check(&k).is_err() {
                continue;
            }
            let g = build_family::<C>(&id, &k, DEFAULT_ORDER).unwrap();
            let rep = residual_order(&g).unwrap();
            prop_assert!(rep.passes, "{} at {:?}: {:?}", id.name(), k.exact(), rep);
        }
    }

    #[test]
    fn p_is_reproduced_from_shorter_q(a in rat_strategy(), b in rat_strategy(), cc in rat_strategy()) {
        for id in random_families().into_iter().filter(|id| !id.is_closed_form()) {
            let k = family_kappa(&id, a, b, cc);
            if id.check(&k).is_err() {
                continue;
            }
            let g = build_family::<C>(&id, &k, 16).unwrap();
            let p = p_from_q(&g.q.truncate(12), &k).unwrap();
            let d = p.distance(&g.p);
            prop_assert!(d < 1e-10 * (1.0 + g.p.max_modulus()), "{}: {d}", id.name());
        }
    }

    #[test]
    fn algbranch_is_a_series_in_the_root(n in 2u32..8, m in 1u32..7, tr in -1.0f64..1.0, ti in 0.1f64..1.0) {
        prop_assume!(m < n && num::integer::gcd(m, n) == 1);
        let t = c(tr, ti);
        let g = algbranch::<C>(n, m, t, &generic(), m as i64 + 10).unwrap();
        prop_assert_eq!(g.q.ram(), n);
        prop_assert_eq!(g.q.lo(), m as i64);
        prop_assert_eq!(g.q.coeff_at(m as i64).unwrap(), t);
        prop_assert!(g.q.coeffs().iter().all(|x| x.re.is_finite() && x.im.is_finite()));
        prop_assert!(!g.p.is_zero());
    }
}
