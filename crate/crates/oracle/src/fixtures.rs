//! Scenes shared by the test suites. The shipped scene files describe the
//! same geometry with the same literals.

use linkcurv_core::geometry::{Disk, FourierSeries, Hyperlink, Loop, Patch, Point4, Role, Surface};
use linkcurv_core::liealg::{IrrepSpec, Spin};
use linkcurv_core::pathintegral::Scene;

/// `x0 = t0 + tc cos + ts sin`, spatial `center + cos * a + sin * b`.
pub fn circle(name: &str, time: [f64; 3], center: [f64; 3], a: [f64; 3], b: [f64; 3]) -> Loop {
    let mut coords: [FourierSeries; 4] = Default::default();
    coords[0] = FourierSeries::new(time[0], vec![time[1]], vec![time[2]]);
    for c in 0..3 {
        coords[c + 1] = FourierSeries::new(center[c], vec![a[c]], vec![b[c]]);
    }
    Loop::new(name, coords).expect("fixture loop")
}

pub fn half_half() -> IrrepSpec {
    IrrepSpec::new(Spin::HALF, Spin::HALF)
}

/// Geometric loop of the tilted-disk scene: radius 0.6 at time 0, piercing
/// the disk twice with the same sign.
pub fn tilted_geometric() -> Loop {
    circle("ring", [0.0, 0.0, 0.0], [0.0; 3], [0.58554, 0.117108, 0.058554], [0.0081972, -0.3005916, 0.5192088])
}

/// Matter loop threading the geometric ring once.
pub fn tilted_matter() -> Loop {
    circle(
        "probe",
        [1.0, 0.2, 0.3],
        [0.58554, 0.117108, 0.058554],
        [0.58554, 0.117108, 0.058554],
        [0.130674, -0.505896, -0.2949474],
    )
}

/// Disk of radius 2.5 through the origin, tilted out of every coordinate
/// hyperplane.
pub fn tilted_disk() -> Patch {
    Patch::disk(
        "disk",
        Disk {
            center: Point4::new(0.0, 0.0, 0.0, 0.0),
            u: [0.280976, 0.936586, 0.187317, 0.093659],
            w: [-0.263124, -0.129209, 0.930131, 0.221195],
            radius: 2.5,
        },
    )
}

/// The scene shipped as `hopf_disk.scene`: `lk = 2`.
pub fn hopf_disk() -> Scene {
    Scene::new(
        Hyperlink::new(Role::Matter, vec![tilted_matter()]),
        vec![Some(half_half())],
        Hyperlink::new(Role::Geometric, vec![tilted_geometric()]),
        Surface::new(vec![tilted_disk()]),
        1.0,
    )
    .expect("fixture scene")
}

/// The same loops without a surface, shipped as `empty_surface.scene`.
pub fn empty_surface() -> Scene {
    Scene::new(
        Hyperlink::new(Role::Matter, vec![tilted_matter()]),
        vec![Some(half_half())],
        Hyperlink::new(Role::Geometric, vec![tilted_geometric()]),
        Surface::default(),
        0.25,
    )
    .expect("fixture scene")
}

/// Unit disk in `{x0 = 0, x3 = 0}`.
pub fn flat_disk() -> Patch {
    Patch::disk(
        "flat",
        Disk {
            center: Point4::new(0.0, 0.0, 0.0, 0.0),
            u: [0.0, 1.0, 0.0, 0.0],
            w: [0.0, 0.0, 1.0, 0.0],
            radius: 1.0,
        },
    )
}

/// `(0.2 cos + 0.05 sin, 1 + 0.5 cos, 0, 0.5 sin)`: crosses the flat disk once.
pub fn flat_threading() -> Loop {
    circle("thread", [0.0, 0.2, 0.05], [1.0, 0.0, 0.0], [0.5, 0.0, 0.0], [0.0, 0.0, 0.5])
}

/// A matter loop far from everything else.
pub fn distant_matter() -> Loop {
    circle("far", [0.0, 0.1, 0.2], [30.0, 30.0, 30.0], [0.5, 0.0, 0.0], [0.0, 0.5, 0.0])
}

/// Flat disk, threading geometric loop (`lk = -1`) and a distant colored
/// matter loop (`sk = 0`).
pub fn flat_disk_scene() -> Scene {
    Scene::new(
        Hyperlink::new(Role::Matter, vec![distant_matter()]),
        vec![Some(half_half())],
        Hyperlink::new(Role::Geometric, vec![flat_threading()]),
        Surface::new(vec![flat_disk()]),
        1.0,
    )
    .expect("fixture scene")
}

/// Everything far apart, shipped as `far_apart.scene`.
pub fn far_apart() -> Scene {
    Scene::new(
        Hyperlink::new(Role::Matter, vec![distant_matter()]),
        vec![Some(half_half())],
        Hyperlink::new(
            Role::Geometric,
            vec![circle("ring", [0.0, 0.3, 0.1], [6.0, 6.0, 6.0], [0.5, 0.0, 0.0], [0.0, 0.5, 0.0])],
        ),
        Surface::new(vec![flat_disk()]),
        1.0,
    )
    .expect("fixture scene")
}

/// Time-like Hopf pair: unit circle in the `x1 x2` plane and a unit circle
/// through its center in the `x1 x3` plane. Gauss linking number `+-1`.
pub fn hopf_pair() -> (Loop, Loop) {
    (
        circle("a", [0.0, 0.3, 0.7], [0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
        circle("b", [0.0, -0.4, 0.5], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]),
    )
}

/// A curve winding twice around the unit circle `hopf_pair().0`.
pub fn double_winding() -> Loop {
    let r = 0.4;
    let coords = [
        FourierSeries::new(0.0, vec![-0.35, 0.0, 0.1], vec![0.6]),
        FourierSeries::new(0.0, vec![1.0 + r / 2.0, 0.0, r / 2.0], vec![]),
        FourierSeries::new(0.0, vec![], vec![1.0 - r / 2.0, 0.0, r / 2.0]),
        FourierSeries::new(0.0, vec![], vec![0.0, r]),
    ];
    Loop::new("twice", coords).expect("fixture loop")
}
