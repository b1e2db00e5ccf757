use linkcurv_core::liealg::*;
use linkcurv_core::Complex64;
use linkcurv_oracle::trace_expm;
use proptest::prelude::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn element() -> impl Strategy<Value = AlgebraElement> {
    (prop::array::uniform3(-3.0..3.0f64), prop::array::uniform3(-3.0..3.0f64))
        .prop_map(|(p, m)| AlgebraElement::new(p, m))
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric(u in element(), v in element()) {
        let a = bracket(&u, &v);
        let b = bracket(&v, &u);
        prop_assert!(a.max_abs_diff(&(-b)) < 1e-12);
    }

    #[test]
    fn bracket_satisfies_jacobi(u in element(), v in element(), w in element()) {
        let total = bracket(&u, &bracket(&v, &w)) + bracket(&v, &bracket(&w, &u)) + bracket(&w, &bracket(&u, &v));
        prop_assert!(total.norm() < 1e-10);
    }

    #[test]
    fn bracket_is_bilinear(u in element(), v in element(), w in element(), k in -2.0..2.0f64) {
        let lhs = bracket(&(u * k + v), &w);
        let rhs = bracket(&u, &w) * k + bracket(&v, &w);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn representations_respect_brackets(u in element(), v in element(), twice in 0u32..6) {
        let spec = IrrepSpec::new(Spin::from_twice(twice), Spin::from_twice(5 - twice));
        let (up, um) = apply_rep(spec, &u);
        let (vp, vm) = apply_rep(spec, &v);
        let (wp, wm) = apply_rep(spec, &bracket(&u, &v));
        prop_assert!((&up.commutator(&vp) - &wp).max_abs() < 1e-10);
        prop_assert!((&um.commutator(&vm) - &wm).max_abs() < 1e-10);
    }
}

#[test]
fn basis_brackets_are_cyclic() {
    let e = |i: usize| basis_element(0, i).unwrap();
    assert_eq!(bracket(&e(1), &e(2)), e(3));
    assert_eq!(bracket(&e(2), &e(3)), e(1));
    assert_eq!(bracket(&e(3), &e(1)), e(2));
    let f = |a, b| basis_element(a, b).unwrap();
    assert_eq!(bracket(&f(2, 3), &f(3, 1)), f(1, 2));
    assert_eq!(bracket(&e(1), &f(2, 3)), AlgebraElement::ZERO);
}

#[test]
fn basis_elements_are_antisymmetric() {
    for a in 0..4 {
        for b in 0..4 {
            if a == b {
                assert_eq!(basis_element(a, b), Err(linkcurv_core::Error::DegenerateIndex(a, b)));
            } else {
                assert_eq!(basis_element(a, b).unwrap(), -basis_element(b, a).unwrap());
            }
        }
    }
    assert!(basis_element(0, 4).is_err());
    let sum_time = basis_element(0, 1).unwrap() + basis_element(0, 2).unwrap() + basis_element(0, 3).unwrap();
    assert_eq!(sum_time, AlgebraElement::f_plus());
    let sum_space = basis_element(2, 3).unwrap() + basis_element(3, 1).unwrap() + basis_element(1, 2).unwrap();
    assert_eq!(sum_space, AlgebraElement::f_minus());
}

#[test]
fn levi_civita_values() {
    assert_eq!(levi_civita(1, 2, 3), 1);
    assert_eq!(levi_civita(2, 1, 3), -1);
    assert_eq!(levi_civita(1, 1, 3), 0);
    assert_eq!(levi_civita(0, 1, 2), 0);
}

#[test]
fn spin_half_matrices() {
    let [e1, e2, e3] = spin_matrices(Spin::HALF);
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let expect = [
        [[c(0.0, 0.0), c(0.5, 0.0)], [c(-0.5, 0.0), c(0.0, 0.0)]],
        [[c(0.0, 0.0), c(0.0, 0.5)], [c(0.0, 0.5), c(0.0, 0.0)]],
        [[c(0.0, 0.5), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -0.5)]],
    ];
    for (m, x) in [e1, e2, e3].iter().zip(expect.iter()) {
        for i in 0..2 {
            for j in 0..2 {
                assert!((m.get(i, j) - x[i][j]).norm() < 1e-15);
            }
        }
    }
}

#[test]
fn casimir_is_scalar() {
    for twice in 0..=5 {
        let j = Spin::from_twice(twice);
        let mats = spin_matrices(j);
        let mut cas = RepMatrix::zeros(j.dimension());
        for m in &mats {
            cas = &cas + &m.matmul(m);
        }
        let expect = -j.value() * (j.value() + 1.0);
        for r in 0..j.dimension() {
            for c in 0..j.dimension() {
                let target = if r == c { expect } else { 0.0 };
                assert!((cas.get(r, c) - Complex64::new(target, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn spin_text_round_trip() {
    for twice in 0..9 {
        let s = Spin::from_twice(twice);
        assert_eq!(s.to_string().parse::<Spin>().unwrap(), s);
    }
    assert_eq!("1/2".parse::<Spin>().unwrap(), Spin::HALF);
    assert_eq!("2".parse::<Spin>().unwrap(), Spin::from_twice(4));
    assert_eq!(Spin::from_twice(3).to_string(), "3/2");
    assert!("1/3".parse::<Spin>().is_err());
    assert!("-1".parse::<Spin>().is_err());
    assert!("x".parse::<Spin>().is_err());
}

#[test]
fn weights_and_dimension() {
    let j = Spin::from_twice(3);
    assert_eq!(j.dimension(), 4);
    assert_eq!(j.weights().collect::<Vec<_>>(), vec![1.5, 0.5, -0.5, -1.5]);
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

#[test]
fn character_matches_independent_matrix_exponential() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for twice in 0..=5 {
        let j = Spin::from_twice(twice);
        let mats = spin_matrices(j);
        let n = j.dimension();
        let generator: Vec<Vec<Complex64>> =
            (0..n).map(|r| (0..n).map(|c| mats.iter().map(|m| m.get(r, c)).sum()).collect()).collect();
        for _ in 0..100 {
            let c = Complex64::new(uniform(&mut rng, -3.0, 3.0), uniform(&mut rng, -3.0, 3.0));
            let scaled: Vec<Vec<Complex64>> = generator.iter().map(|r| r.iter().map(|v| v * c).collect()).collect();
            let reference = trace_expm(&scaled);
            let fast = trace_exp_character(j, c);
            let dense = trace_exp_dense(j, c);
            let tol = 1e-10 * reference.norm().max(1.0);
            assert!((fast - reference).norm() < tol, "j={j} c={c}: {fast} vs {reference}");
            assert!((dense - reference).norm() < tol, "j={j} c={c}: dense {dense} vs {reference}");
        }
    }
}

#[test]
fn character_of_trivial_argument_is_dimension() {
    for twice in 0..6 {
        let j = Spin::from_twice(twice);
        let v = trace_exp_character(j, Complex64::new(0.0, 0.0));
        assert!((v - Complex64::new(j.dimension() as f64, 0.0)).norm() < 1e-15);
    }
}

#[test]
fn matrix_exponential_of_diagonal() {
    let mut m = RepMatrix::zeros(2);
    m.set(0, 0, Complex64::new(1.0, 0.0));
    m.set(1, 1, Complex64::new(0.0, std::f64::consts::PI));
    let e = m.exp();
    assert!((e.get(0, 0) - Complex64::new(std::f64::consts::E, 0.0)).norm() < 1e-13);
    assert!((e.get(1, 1) + Complex64::new(1.0, 0.0)).norm() < 1e-13);
    assert!(e.get(0, 1).norm() < 1e-15);
}
