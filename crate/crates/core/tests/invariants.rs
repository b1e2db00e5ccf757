use linkcurv_core::geometry::{eval_curve, FourierSeries, Hyperlink, Loop, Role, Surface};
use linkcurv_core::invariants::*;
use linkcurv_core::kernels::Kappa;
use linkcurv_core::quadrature::QuadSettings;
use linkcurv_core::Error;
use linkcurv_oracle::fixtures::*;
use linkcurv_oracle::{crossing_linking, mesh_linking};

fn flat() -> Surface {
    Surface::new(vec![flat_disk()])
}

#[test]
fn single_piercing_of_flat_disk() {
    let ps = PiercingSettings::default();
    let found = find_piercings(&flat_threading(), &flat(), 0, &ps).unwrap();
    assert_eq!(found.len(), 1);
    let p = &found[0];
    assert!((p.s - 0.5).abs() < 1e-9);
    let x = eval_curve(&flat_threading(), p.s).point;
    assert!((x[1] - 0.5).abs() < 1e-9 && x[2].abs() < 1e-9 && x[3].abs() < 1e-9);
    assert!((p.t - 0.5).abs() < 1e-9);
    assert_eq!(p.height, 1);
    assert_eq!(p.orientation, -1);
    assert_eq!(lk_loop_surface(&flat_threading(), &flat(), &ps).unwrap(), -1);
}

#[test]
fn reversing_the_loop_negates_orientation_only() {
    let ps = PiercingSettings::default();
    let fwd = find_piercings(&flat_threading(), &flat(), 0, &ps).unwrap();
    let rev = find_piercings(&flat_threading().reversed(), &flat(), 0, &ps).unwrap();
    assert_eq!(fwd.len(), rev.len());
    for (a, b) in fwd.iter().zip(&rev) {
        assert!((a.s - (1.0 - b.s)).abs() < 1e-9);
        assert_eq!(a.orientation, -b.orientation);
        assert_eq!(a.height, b.height);
    }
}

#[test]
fn reversing_the_surface_negates_lk() {
    let ps = PiercingSettings::default();
    let s = Surface::new(vec![tilted_disk().reversed()]);
    assert_eq!(lk_loop_surface(&tilted_geometric(), &s, &ps).unwrap(), -2);
}

#[test]
fn piercing_counts_agree_with_mesh_oracle() {
    let ps = PiercingSettings::default();
    let cases = [
        (tilted_geometric(), Surface::new(vec![tilted_disk()])),
        (flat_threading(), flat()),
        (double_winding(), flat()),
        (distant_matter(), flat()),
    ];
    for (lp, surface) in cases {
        for axis in 0..4 {
            let exact = projected_linking(&lp, &surface, axis, &ps).unwrap();
            let mesh = mesh_linking(&lp, &surface, axis, 600, 150);
            assert_eq!(exact, mesh, "{} axis {axis}", lp.name);
        }
    }
}

#[test]
fn tilted_disk_has_consistent_linking_in_every_projection() {
    let ps = PiercingSettings::default();
    let s = Surface::new(vec![tilted_disk()]);
    for axis in 0..4 {
        assert_eq!(projected_linking(&tilted_geometric(), &s, axis, &ps).unwrap(), 2);
    }
}

#[test]
fn far_loop_does_not_link() {
    let ps = PiercingSettings::default();
    assert_eq!(lk_loop_surface(&distant_matter(), &flat(), &ps).unwrap(), 0);
}

fn shifted(lp: &Loop, dt: f64, dx2: f64) -> Loop {
    let mut coords = lp.coords.clone();
    coords[0].constant += dt;
    coords[2].constant += dx2;
    Loop::new(format!("{}'", lp.name), coords).unwrap()
}

#[test]
fn linking_is_additive_over_components() {
    let ps = PiercingSettings::default();
    let a = flat_threading();
    let b = shifted(&a, 0.1, 0.05);
    let link = Hyperlink::new(Role::Geometric, vec![a.clone(), b.clone()]);
    let total = lk_hyperlink_surface(&link, &flat(), &ps).unwrap();
    assert_eq!(total, 2 * lk_loop_surface(&a, &flat(), &ps).unwrap());
    assert_eq!(total, -2);
}

fn loop_through(x1_center: f64) -> Loop {
    let coords = [
        FourierSeries::new(0.0, vec![], vec![0.1]),
        FourierSeries::new(x1_center, vec![0.5], vec![]),
        FourierSeries::constant(0.0),
        FourierSeries::new(0.0, vec![], vec![0.5]),
    ];
    Loop::new("edge", coords).unwrap()
}

#[test]
fn piercing_at_the_rim_is_ambiguous() {
    let err = find_piercings(&loop_through(1.5), &flat(), 0, &PiercingSettings::default()).unwrap_err();
    assert!(matches!(err, Error::AmbiguousPiercing { .. }));
}

#[test]
fn piercing_at_the_center_is_ambiguous() {
    let err = find_piercings(&loop_through(0.5), &flat(), 0, &PiercingSettings::default()).unwrap_err();
    assert!(matches!(err, Error::AmbiguousPiercing { .. }));
}

#[test]
fn invalid_axis_is_rejected() {
    assert!(matches!(
        find_piercings(&flat_threading(), &flat(), 4, &PiercingSettings::default()),
        Err(Error::InvalidAxis(4))
    ));
}

#[test]
fn gauss_linking_matches_crossing_count() {
    let s = QuadSettings::default();
    let (a, b) = hopf_pair();
    let cases = [
        (a.clone(), b.clone()),
        (a.clone(), b.reversed()),
        (a.clone(), double_winding()),
        (a.clone(), distant_matter()),
        (tilted_matter(), tilted_geometric()),
    ];
    for (x, y) in cases {
        let exact = gauss_linking_spatial(&x, &y, &s).unwrap();
        let oracle = crossing_linking(&x, &y, 1200);
        assert_eq!(exact as f64, oracle, "{} / {}", x.name, y.name);
        let value = gauss_linking_value(&x, &y, &s).unwrap().value;
        assert!((value - exact as f64).abs() < 0.05);
    }
}

#[test]
fn gauss_linking_is_symmetric_and_odd_under_reversal() {
    let s = QuadSettings::default();
    let (a, b) = hopf_pair();
    let ab = gauss_linking_spatial(&a, &b, &s).unwrap();
    assert_eq!(gauss_linking_spatial(&b, &a, &s).unwrap(), ab);
    assert_eq!(gauss_linking_spatial(&a.reversed(), &b, &s).unwrap(), -ab);
}

#[test]
fn coarse_gauss_linking_reports_insufficient_resolution() {
    let s = QuadSettings { base_points_per_axis: 4, max_refinements: 0, ..Default::default() };
    let (a, b) = hopf_pair();
    assert!(matches!(gauss_linking_spatial(&a, &b, &s), Err(Error::InsufficientResolution { .. })));
}

#[test]
fn hyperlinking_numbers_settle_on_integers() {
    let s = QuadSettings::default();
    let sched = default_schedule();
    let (a, b) = hopf_pair();
    let sweep = sk_pair(&a, &b, &sched, &s).unwrap();
    let last = sweep.table.final_row().unwrap().value.unwrap();
    assert!((last - sweep.value as f64).abs() < 0.05);
    assert!(sweep.table.tail_monotone());
    assert_eq!(sk_pair(&a, &b.reversed(), &sched, &s).unwrap().value, -sweep.value);
    assert_eq!(sk_pair(&a, &distant_matter(), &sched, &s).unwrap().value, 0);
}

#[test]
fn hyperlinking_is_additive_over_geometric_components() {
    let s = QuadSettings::default();
    let sched = default_schedule();
    let (a, b) = hopf_pair();
    let far = distant_matter();
    let single = sk_pair(&a, &b, &sched, &s).unwrap().value;
    let link = Hyperlink::new(Role::Geometric, vec![b, far]);
    assert_eq!(sk_hyperlink(&a, &link, &sched, &s).unwrap().value, single);
}

#[test]
fn short_schedules_cannot_settle() {
    let s = QuadSettings::default();
    let (a, b) = hopf_pair();
    let sched = [Kappa::new(1.0).unwrap(), Kappa::new(2.0).unwrap(), Kappa::new(3.0).unwrap()];
    assert!(matches!(sk_pair(&a, &b, &sched, &s), Err(Error::InsufficientResolution { .. })));
    assert_eq!(sk_pair(&a, &b, &[], &s).unwrap_err(), Error::EmptySchedule);
}
