use linkcurv_core::geometry::{FourierSeries, Hyperlink, Loop, Role, Surface};
use linkcurv_core::invariants::{gauss_linking_value, lk_hyperlink_surface, lk_loop_surface, projected_linking, PiercingSettings};
use linkcurv_core::kernels::Kappa;
use linkcurv_core::pathintegral::wilson_exponent;
use linkcurv_core::quadrature::QuadSettings;
use linkcurv_oracle::fixtures::{double_winding, flat_disk, flat_threading, hopf_disk, hopf_pair, tilted_disk, tilted_geometric};
use proptest::prelude::*;
use std::f64::consts::PI;

/// The same curve started at parameter `phase`.
fn rotated(lp: &Loop, phase: f64) -> Loop {
    let shift = |c: &FourierSeries| {
        let n = c.order();
        let mut cos = vec![0.0; n];
        let mut sin = vec![0.0; n];
        for k in 0..n {
            let a = c.cos.get(k).copied().unwrap_or(0.0);
            let b = c.sin.get(k).copied().unwrap_or(0.0);
            let (s, co) = (2.0 * PI * (k + 1) as f64 * phase).sin_cos();
            cos[k] = a * co + b * s;
            sin[k] = b * co - a * s;
        }
        FourierSeries::new(c.constant, cos, sin)
    };
    Loop { coords: core::array::from_fn(|a| shift(&lp.coords[a])), ..lp.clone() }
}

fn tight() -> QuadSettings {
    QuadSettings { rel_tol: 1e-9, abs_tol: 1e-12, ..Default::default() }
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 12, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn linking_is_invariant_under_reparametrization(phase in 0.0f64..1.0) {
        let scene = hopf_disk();
        let ring = tilted_geometric();
        let moved = rotated(&ring, phase);
        let settings = PiercingSettings::default();
        for axis in 0..4 {
            prop_assert_eq!(
                projected_linking(&moved, &scene.surface, axis, &settings).unwrap(),
                projected_linking(&ring, &scene.surface, axis, &settings).unwrap()
            );
        }
    }

    #[test]
    fn orientation_reversal_negates_linking(phase in 0.0f64..1.0, flip_loop in any::<bool>()) {
        let lp = rotated(&flat_threading(), phase);
        let surface = Surface::new(vec![flat_disk()]);
        let settings = PiercingSettings::default();
        let base = lk_loop_surface(&lp, &surface, &settings).unwrap();
        let flipped = if flip_loop {
            lk_loop_surface(&lp.reversed(), &surface, &settings).unwrap()
        } else {
            lk_loop_surface(&lp, &Surface::new(vec![flat_disk().reversed()]), &settings).unwrap()
        };
        prop_assert_eq!(flipped, -base);
        prop_assert!(base != 0);
    }

    #[test]
    fn linking_is_additive_over_components_and_patches(p in 0.0f64..1.0, q in 0.0f64..1.0) {
        let a = rotated(&tilted_geometric(), p);
        let b = rotated(&double_winding(), q);
        let settings = PiercingSettings::default();
        let both = Surface::new(vec![tilted_disk(), flat_disk()]);
        let link = Hyperlink::new(Role::Geometric, vec![a.clone(), b.clone()]);
        let total = lk_hyperlink_surface(&link, &both, &settings).unwrap();
        let mut parts = 0;
        for lp in [&a, &b] {
            for patch in [tilted_disk(), flat_disk()] {
                parts += lk_loop_surface(lp, &Surface::new(vec![patch]), &settings).unwrap();
            }
        }
        prop_assert_eq!(total, parts);
    }

    #[test]
    fn gauss_linking_is_invariant_under_reparametrization(p in 0.0f64..1.0, q in 0.0f64..1.0) {
        let (a, b) = hopf_pair();
        let base = gauss_linking_value(&a, &b, &tight()).unwrap().value;
        let moved = gauss_linking_value(&rotated(&a, p), &rotated(&b, q), &tight()).unwrap().value;
        prop_assert!((base - moved).abs() < 1e-6, "{} vs {}", base, moved);
        let reversed = gauss_linking_value(&a.reversed(), &b, &tight()).unwrap().value;
        prop_assert!((base + reversed).abs() < 1e-9);
    }

    #[test]
    fn wilson_exponent_is_invariant_under_reparametrization(p in 0.0f64..1.0, q in 0.0f64..1.0) {
        let (a, b) = hopf_pair();
        let kappa = Kappa::new(10.0).unwrap();
        let link = |lp: Loop| Hyperlink::new(Role::Geometric, vec![lp]);
        let base = wilson_exponent(&a, &link(b.clone()), kappa, &tight()).unwrap();
        let moved = wilson_exponent(&rotated(&a, p), &link(rotated(&b, q)), kappa, &tight()).unwrap();
        prop_assert!((base.value - moved.value).abs() < 1e-6 * base.value.abs().max(1.0));
        let reversed = wilson_exponent(&a.reversed(), &link(b), kappa, &tight()).unwrap();
        prop_assert!((base.value + reversed.value).abs() < 1e-6 * base.value.abs().max(1.0));
    }
}

#[test]
fn shipped_scene_projections_all_agree() {
    let scene = hopf_disk();
    let settings = PiercingSettings::default();
    let lp = &scene.geometric.components[0];
    let per_axis: Vec<i64> = (0..4).map(|a| projected_linking(lp, &scene.surface, a, &settings).unwrap()).collect();
    assert_eq!(per_axis, vec![2; 4]);
}
