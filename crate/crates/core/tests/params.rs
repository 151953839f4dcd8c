use num::complex::Complex64;
use num::rational::Rational64;
use proptest::prelude::*;
use pvi_core::params::*;

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn close(a: Complex64, b: f64) -> bool {
    (a - b).norm() < 1e-12
}

#[test]
fn rh_examples() {
    let th = rh_chain(&"0,0,0,0,1".parse().unwrap()).theta;
    assert!([8.0, 8.0, 8.0, 28.0].iter().zip(th.t).all(|(e, t)| close(t, *e)));
    let th = rh_chain(&"1/2,0,0,0,0".parse().unwrap()).theta;
    assert!([0.0, 0.0, 0.0, -4.0].iter().zip(th.t).all(|(e, t)| close(t, *e)));
    let im = rh_chain(&Kappa::from_k1234([r(1, 3), r(-2, 7), r(5, 9), r(1, 10)]));
    assert!(im.a.iter().all(|a| a.im.abs() < 1e-15));
    assert!(im.b.residual() < 1e-12);
}

#[test]
fn discriminant_examples() {
    let k = Kappa::from_k1234([r(0, 1), r(1, 3), r(1, 5), r(1, 7)]);
    assert!(discriminant(&rh_chain(&k).b).norm() < 1e-12);
    let k = Kappa::from_k1234([r(1, 5), r(1, 7), r(1, 11), r(1, 13)]);
    assert!(!discriminant_vanishes(&rh_chain(&k).b, 1e-9));
    assert!(!wall_pattern(&k).on_wall());
}

#[test]
fn weyl_examples() {
    let k = Kappa::from_k1234([r(1, 5), r(1, 7), r(1, 11), r(1, 13)]);
    let e = *k.exact().unwrap();
    let w0 = *weyl_act(&[Gen::Refl(0)], &k).exact().unwrap();
    assert_eq!(w0[0], -e[0]);
    for j in 1..5 {
        assert_eq!(w0[j], e[j] + e[0]);
    }
    for i in 0..5 {
        assert_eq!(weyl_act(&[Gen::Refl(i), Gen::Refl(i)], &k), k);
    }
    let s = Gen::Shift { variant: 2, i: 1, dir: 1 };
    let w = vec![s];
    assert_eq!(weyl_act(&inverse(&w), &weyl_act(&w, &k)), k);
}

#[test]
fn wall_examples() {
    let w = wall_pattern(&"0,0,0,0,1".parse().unwrap());
    assert_eq!(w.int_flags, [true; 4]);
    assert_eq!(w.parity_flags, [true; 8]);
    let w = wall_pattern(&"0,0,0,1/2,1/2".parse().unwrap());
    assert_eq!(w.int_flags, [true, true, false, false]);
    // 0 + e2*0 + e3/2 + e4/2 is odd exactly when e3 = e4
    assert_eq!(w.parity_flags, [true, true, false, false, false, false, true, true]);
}

#[test]
fn classify_examples() {
    assert_eq!(classify_stratum(&"0,0,0,0,1".parse().unwrap()).unwrap().label, StratumLabel::D4);
    assert_eq!(classify_stratum(&"1/2,0,0,0,0".parse().unwrap()).unwrap().label, StratumLabel::A1x4);
    let k = Kappa::from_k1234([r(1, 5), r(1, 7), r(1, 11), r(1, 13)]);
    assert_eq!(classify_stratum(&k).unwrap().label, StratumLabel::Empty);
}

#[test]
fn normal_form_samples_classify_to_themselves() {
    for label in StratumLabel::all_aligned() {
        let k = label.sample_kappa();
        let s = classify_stratum(&k).unwrap();
        assert_eq!(s.label, label, "{k}");
        let nf = s.normal_form.exact().unwrap();
        for i in label.pattern() {
            assert_eq!(nf[i], r(0, 1), "{label} at {i}");
        }
        assert_eq!(weyl_act(&s.word, &k), s.normal_form);
    }
}

#[test]
fn float_near_wall_is_ambiguous() {
    let v = [0.25, 0.0, 0.1, 0.2, 0.2].map(|x| Complex64::new(x, 0.0));
    let k = Kappa::complex(v).unwrap();
    assert_eq!(classify_stratum(&k), Err(pvi_core::Error::AmbiguousWall));
    let v = [0.2, 0.11, 0.13, 0.17, 0.19].map(|x| Complex64::new(x, 0.0));
    assert_eq!(classify_stratum(&Kappa::complex(v).unwrap()).unwrap().label, StratumLabel::Empty);
}

#[test]
fn constraint_violation_names_the_constraint() {
    let e = "1,0,0,0,0".parse::<Kappa>().unwrap_err();
    assert!(e.to_string().contains("2κ₀+κ₁+κ₂+κ₃+κ₄ = 1"));
}

fn small_rat() -> impl Strategy<Value = Rational64> {
    (-24i64..24, 1i64..13).prop_map(|(n, d)| Rational64::new(n, d))
}

fn kappa_strategy() -> impl Strategy<Value = Kappa> {
    [small_rat(), small_rat(), small_rat(), small_rat()].prop_map(Kappa::from_k1234)
}

fn gen_strategy() -> impl Strategy<Value = Gen> {
    prop_oneof![
        (0u8..5).prop_map(Gen::Refl),
        (1u8..4).prop_map(Gen::Klein),
        (1u8..3, 1u8..4, prop::bool::ANY).prop_map(|(variant, i, up)| Gen::Shift { variant, i, dir: if up { 1 } else { -1 } }),
    ]
}

fn kappa_float() -> impl Strategy<Value = Kappa> {
    [-1.5f64..1.5, -1.5f64..1.5, -1.5f64..1.5, -1.5f64..1.5, -0.3f64..0.3].prop_map(|v| {
        let k1234 = [Complex64::new(v[0], v[4]), Complex64::new(v[1], 0.0), Complex64::new(v[2], -v[4]), Complex64::new(v[3], 0.0)];
        let k0 = (Complex64::new(1.0, 0.0) - k1234.iter().sum::<Complex64>()) / 2.0;
        Kappa::complex([k0, k1234[0], k1234[1], k1234[2], k1234[3]]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rh_is_equivariant(k in kappa_float(), g in gen_strategy()) {
        let im = rh_chain(&k);
        let th = im.theta.t;
        let scale = im.a.iter().map(|a| 1.0 + a.norm()).product::<f64>();
        let th2 = rh_chain(&weyl_act(&[g], &k)).theta.t;
        let signs = theta_signs(g);
        for m in 0..4 {
            prop_assert!((th2[m] - th[m] * signs[m]).norm() < 1e-10 * scale);
        }
    }

    #[test]
    fn word_then_inverse_is_identity(k in kappa_strategy(), w in prop::collection::vec(gen_strategy(), 0..12)) {
        prop_assert_eq!(weyl_act(&inverse(&w), &weyl_act(&w, &k)), k);
    }

    #[test]
    fn classification_is_invariant(k in kappa_strategy(), w in prop::collection::vec(gen_strategy(), 0..12)) {
        let a = classify_stratum(&k).unwrap().label;
        let b = classify_stratum(&weyl_act(&w, &k)).unwrap().label;
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn discriminant_vanishes_exactly_on_walls(k in kappa_strategy()) {
        let on_wall = wall_pattern(&k).on_wall();
        prop_assert_eq!(discriminant_vanishes(&rh_chain(&k).b, 1e-9), on_wall);
        let empty = classify_stratum(&k).unwrap().label == StratumLabel::Empty;
        prop_assert_eq!(empty, !on_wall);
    }
}
