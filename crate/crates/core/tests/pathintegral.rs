use linkcurv_core::geometry::{Hyperlink, Role, Surface};
use linkcurv_core::invariants::{default_schedule, PiercingSettings};
use linkcurv_core::kernels::Kappa;
use linkcurv_core::liealg::{AlgebraElement, IrrepSpec, Spin};
use linkcurv_core::pathintegral::*;
use linkcurv_core::quadrature::QuadSettings;
use linkcurv_core::{Complex64, Error};
use linkcurv_oracle::fixtures::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn k(v: f64) -> Kappa {
    Kappa::new(v).unwrap()
}

#[test]
fn far_apart_terms_vanish() {
    let s = QuadSettings::default();
    let scene = far_apart();
    let a = a_lemmas(&scene, k(20.0), &s).unwrap();
    let b = b_lemma(&scene, k(20.0), &s).unwrap();
    let c = c_coefficient(&scene, k(20.0), &s).unwrap();
    assert!(a.value.iter().all(|v| v.abs() < 1e-12));
    assert!(b.value.abs() < 1e-12);
    assert!(c.value.abs() < 1e-12);
}

#[test]
fn time_constant_disk_has_no_time_space_terms() {
    let s = QuadSettings::default();
    let a = a_lemmas(&flat_disk_scene(), k(10.0), &s).unwrap();
    assert_eq!(a.value, [0.0; 3]);
}

#[test]
fn flat_disk_b_lemma_tends_to_minus_pi_lk() {
    let s = QuadSettings::default();
    let b = b_lemma(&flat_disk_scene(), k(40.0), &s).unwrap();
    assert!(b.converged);
    assert!((b.value - PI).abs() < 0.02 * PI, "{}", b.value);
}

#[test]
fn tilted_disk_lemmas_approach_their_limits() {
    let s = QuadSettings::default();
    let scene = hopf_disk();
    let mut prev_a = f64::INFINITY;
    let mut prev_b = f64::INFINITY;
    for kv in [5.0, 10.0, 20.0] {
        let a = a_lemmas(&scene, k(kv), &s).unwrap();
        let b = b_lemma(&scene, k(kv), &s).unwrap();
        let ea = a.value.iter().map(|v| (v - 2.0 * PI).abs()).fold(0.0, f64::max);
        let eb = (b.value + 2.0 * PI).abs();
        assert!(ea < prev_a && eb < prev_b);
        prev_a = ea;
        prev_b = eb;
    }
    assert!(prev_a < 0.15 * 2.0 * PI && prev_b < 0.15 * 2.0 * PI);
}

#[test]
fn term_directions_and_signs() {
    let s = QuadSettings::default();
    let scene = hopf_disk();
    let kk = k(5.0);
    let lemmas: f64 = a_lemmas(&scene, kk, &s).unwrap().value.iter().sum();
    let plus = term_a(&scene, kk, Chirality::Plus, &s).unwrap();
    let minus = term_a(&scene, kk, Chirality::Minus, &s).unwrap();
    assert_eq!(plus.value.algebra, AlgebraElement::f_plus());
    assert_eq!(minus.value.algebra, AlgebraElement::f_minus());
    let expect = Complex64::new(0.0, -lemmas / (4.0 * PI).sqrt());
    assert!((plus.value.coefficient - expect).norm() < 1e-12);
    assert!((minus.value.coefficient + expect).norm() < 1e-12);

    let b = term_b(&scene, kk, &s).unwrap();
    assert_eq!(b.value.algebra, AlgebraElement::f_plus() - AlgebraElement::f_minus());
    let lemma = b_lemma(&scene, kk, &s).unwrap().value;
    assert!((b.value.coefficient - Complex64::new(0.0, lemma / (4.0 * PI).sqrt())).norm() < 1e-12);

    let cp = term_c(&scene, kk, Chirality::Plus, &s).unwrap();
    let cm = term_c(&scene, kk, Chirality::Minus, &s).unwrap();
    assert_eq!(cp.value.coefficient, cm.value.coefficient);
    assert_eq!(cm.value.algebra, AlgebraElement::f_minus());
}

#[test]
fn split_values() {
    let c = Complex64::new(0.5, -2.0);
    let d = SplitValue::difference(c);
    assert_eq!(d.along_difference(), c);
    assert_eq!(d.along_sum(), Complex64::new(0.0, 0.0));
    let s = SplitValue::sum(c);
    assert_eq!((d + s).plus, 2.0 * c);
    let (re, im) = d.algebra_parts();
    assert_eq!(re, (AlgebraElement::f_plus() - AlgebraElement::f_minus()) * c.re);
    assert_eq!(im, (AlgebraElement::f_plus() - AlgebraElement::f_minus()) * c.im);
    let op = OperatorValue { coefficient: c, algebra: AlgebraElement::f_plus() - AlgebraElement::f_minus() };
    assert_eq!(SplitValue::from_operator(&op).unwrap(), d);
    let odd = OperatorValue { coefficient: c, algebra: AlgebraElement::new([1.0, 0.0, 0.0], [0.0; 3]) };
    assert!(SplitValue::from_operator(&odd).is_err());
}

#[test]
fn z_of_unlinked_spin_half_pair_is_four() {
    let z = z_from_sk(&[half_half()], 1.0, &[0.0]).unwrap();
    assert!((z - 4.0).abs() < 1e-15);
    assert!(z_from_sk(&[half_half()], 1.0, &[0.0, 1.0]).is_err());
}

#[test]
fn z_closed_form_for_spin_half() {
    // chi_{1/2}(x) = 2 cosh(sqrt(3) x / 2) for x = pi q sk
    let z = z_from_sk(&[half_half()], 0.3, &[2.0]).unwrap();
    let x = PI * 0.3 * 2.0;
    assert!((z - 4.0 * (3f64.sqrt() * x / 2.0).cosh()).abs() < 1e-12);
}

fn spec() -> impl Strategy<Value = IrrepSpec> {
    (0u32..6, 0u32..6).prop_map(|(a, b)| IrrepSpec::new(Spin::from_twice(a), Spin::from_twice(b)))
}

proptest! {
    #[test]
    fn z_is_real_and_factorizes(
        colors in prop::collection::vec(spec(), 1..4),
        charge in -1.0..1.0f64,
        sk in prop::collection::vec(-3i64..4, 3),
    ) {
        let sk: Vec<f64> = sk[..colors.len()].iter().map(|&v| v as f64).collect();
        let z = z_from_sk(&colors, charge, &sk).unwrap();
        let product: f64 = colors.iter().zip(&sk).map(|(c, s)| z_from_sk(&[*c], charge, &[*s]).unwrap()).product();
        prop_assert_eq!(z, product);
        for (c, s) in colors.iter().zip(&sk) {
            let x = Complex64::new(0.0, PI * charge * s);
            let v = linkcurv_core::liealg::trace_exp_character(c.plus, -x)
                + linkcurv_core::liealg::trace_exp_character(c.minus, x);
            prop_assert!(v.im.abs() <= 1e-10 * v.norm().max(1.0));
        }
    }
}

#[test]
fn z_needs_colors() {
    let mut scene = far_apart();
    scene.colors = vec![None];
    let err = z_observable(&scene, &default_schedule(), &QuadSettings::default()).unwrap_err();
    assert!(matches!(err, Error::UncoloredMatter(name) if name == "far"));
}

#[test]
fn f_hat_on_flat_disk() {
    let s = QuadSettings::default();
    let out = f_hat_operator(&flat_disk_scene(), &default_schedule(), &s, &PiercingSettings::default()).unwrap();
    let FHat::Operator { value, lk, z, sk } = out else { panic!("expected an operator") };
    assert_eq!(lk, -1);
    assert_eq!(sk, vec![0]);
    assert!((z - 4.0).abs() < 1e-12);
    let expect = Complex64::new(0.0, (4.0 * PI).sqrt() * 4.0);
    assert!((value.coefficient - expect).norm() < 1e-12);
    assert_eq!(value.algebra, AlgebraElement::f_plus() - AlgebraElement::f_minus());
}

#[test]
fn f_hat_on_empty_surface_is_z() {
    let mut scene = far_apart();
    scene.surface = Surface::default();
    let s = QuadSettings::default();
    let out = f_hat_operator(&scene, &default_schedule(), &s, &PiercingSettings::default()).unwrap();
    assert_eq!(out, FHat::Identity { z: 4.0 });
}

#[test]
fn numeric_z_approaches_integer_z() {
    let s = QuadSettings::default();
    let scene = empty_surface();
    let exact = z_observable(&scene, &default_schedule(), &s).unwrap();
    let numeric = z_numeric(&scene, k(80.0), &s).unwrap();
    assert!((numeric - exact.value).abs() < 1e-3 * exact.value, "{numeric} vs {}", exact.value);
}

#[test]
fn scene_validation() {
    let base = far_apart();
    let dup = Scene::new(
        Hyperlink::new(Role::Matter, vec![distant_matter()]),
        vec![None],
        Hyperlink::new(Role::Geometric, vec![distant_matter()]),
        Surface::default(),
        1.0,
    );
    assert!(matches!(dup, Err(Error::InvalidGeometry(m)) if m.contains("duplicate")));

    let swapped = Scene::new(base.geometric.clone(), vec![], base.matter.clone(), Surface::default(), 1.0);
    assert!(swapped.is_err());

    let sym = circle("sym", [0.0, 0.2, 0.0], [1.0, 0.0, 0.0], [0.5, 0.0, 0.0], [0.0, 0.0, 0.5]);
    let bad = Scene::new(
        Hyperlink::new(Role::Matter, vec![]),
        vec![],
        Hyperlink::new(Role::Geometric, vec![sym]),
        Surface::default(),
        1.0,
    );
    assert!(matches!(bad, Err(Error::InvalidGeometry(m)) if m.contains("time-like")));

    let touching = circle("touch", [0.0, 0.2, 0.1], [0.0; 3], [0.5, 0.0, 0.0], [0.0, 0.5, 0.0]);
    let bad = Scene::new(
        Hyperlink::new(Role::Matter, vec![]),
        vec![],
        Hyperlink::new(Role::Geometric, vec![touching]),
        Surface::new(vec![flat_disk()]),
        1.0,
    );
    assert!(matches!(bad, Err(Error::InvalidGeometry(m)) if m.contains("touches")));

    let mut nan = base.clone();
    nan.charge = f64::NAN;
    assert!(nan.validate().is_err());
}

#[test]
fn study_of_empty_surface_reports_z_only() {
    let st = convergence_study(&empty_surface(), &default_schedule(), &StudyOptions::default()).unwrap();
    assert!(st.total.is_none() && st.a_sum.is_none());
    assert_eq!(st.wilson.len(), 1);
    assert_eq!(st.wilson[0].sk, Some(6));
    let z = st.z.unwrap();
    let exact = z_from_sk(&[half_half()], 0.25, &[6.0]).unwrap();
    assert_eq!(z, exact);
    assert!(st.identity_residual <= 1e-15);
}

#[test]
fn study_of_far_apart_scene_has_zero_references() {
    let sched = [k(5.0), k(10.0), k(20.0)];
    let st = convergence_study(&far_apart(), &sched, &StudyOptions::default()).unwrap();
    assert_eq!(st.lk, 0);
    let total = st.total.unwrap();
    assert!(total.final_abs_error().unwrap() < 1e-12);
    assert_eq!(st.z, Some(4.0));
}
