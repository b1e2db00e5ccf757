use std::path::PathBuf;

use linkcurv::connection::parse_connection_str;
use linkcurv::{parse_scene, parse_scene_str, serialize_scene};
use linkcurv_core::geometry::{Basis, ParamPatch, Patch, Surface};
use linkcurv_core::pathintegral::Scene;
use linkcurv_oracle::fixtures;

fn shipped(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenes").join(name)
}

#[test]
fn shipped_scenes_match_fixtures() {
    assert_eq!(parse_scene(&shipped("hopf_disk.scene")).unwrap(), fixtures::hopf_disk());
    assert_eq!(parse_scene(&shipped("empty_surface.scene")).unwrap(), fixtures::empty_surface());
    assert_eq!(parse_scene(&shipped("far_apart.scene")).unwrap(), fixtures::far_apart());
}

#[test]
fn hopf_disk_has_one_loop_of_each_role_and_one_disk() {
    let scene = parse_scene(&shipped("hopf_disk.scene")).unwrap();
    assert_eq!(scene.matter.components.len(), 1);
    assert_eq!(scene.geometric.components.len(), 1);
    assert_eq!(scene.surface.patches.len(), 1);
}

fn param_scene() -> Scene {
    let mut scene = fixtures::flat_disk_scene();
    let sheet = Patch::param(
        "sheet",
        ParamPatch {
            basis_t: Basis::Polynomial,
            basis_tbar: Basis::Trigonometric,
            coeffs: [
                vec![vec![5.0]],
                vec![vec![-4.0, 0.5], vec![0.25]],
                vec![vec![-4.0], vec![1.0, 0.0, -0.125]],
                vec![vec![1e-7, 3.0]],
            ],
        },
    )
    .reversed();
    scene.surface = Surface::new(vec![scene.surface.patches[0].clone(), sheet]);
    scene.geometric.components[0] = scene.geometric.components[0].reversed();
    scene.colors = vec![None];
    scene
}

#[test]
fn serialization_round_trips() {
    for scene in [fixtures::hopf_disk(), fixtures::empty_surface(), fixtures::far_apart(), param_scene()] {
        let text = serialize_scene(&scene);
        let back = parse_scene_str(&text).unwrap_or_else(|d| panic!("{d}\n{text}"));
        assert_eq!(back, scene);
        assert_eq!(serialize_scene(&back), text);
    }
}

const LOOP: &str = r#"
[[loops]]
name = "ring"
role = "geometric"
x0 = { cos = [0.2], sin = [0.1] }
x1 = { cos = [1.0] }
x2 = { sin = [1.0] }
"#;

#[test]
fn unknown_keys_are_reported_with_position() {
    let src = format!("charge = 1.0\n{LOOP}colour = 3\n");
    let d = parse_scene_str(&src).unwrap_err();
    assert_eq!(d.line, Some(9), "{d}");
    assert_eq!(d.column, Some(1));
    assert!(d.message.contains("colour"), "{d}");
}

#[test]
fn duplicate_names_are_reported_at_the_second_definition() {
    let src = format!("charge = 1.0\n{LOOP}{}", LOOP.replace("x1 = { cos = [1.0] }", "x1 = { constant = 5.0, cos = [1.0] }"));
    let d = parse_scene_str(&src).unwrap_err();
    assert!(d.message.contains("duplicate identifier ring"), "{d}");
    assert_eq!(d.line, Some(11));
    assert_eq!(d.column, Some(8));
}

#[test]
fn time_like_violations_name_both_parameters() {
    let other = LOOP.replace("\"ring\"", "\"copy\"");
    let d = parse_scene_str(&format!("charge = 1.0\n{LOOP}{other}")).unwrap_err();
    assert!(d.message.starts_with("not time-like: ring at s = "), "{d}");
    assert!(d.message.contains("copy at s = "), "{d}");
    assert_eq!(d.line, Some(4));
}

#[test]
fn malformed_fields_are_rejected() {
    let cases = [
        (format!("charge = 1.0\n{LOOP}orientation = \"sideways\"\n"), "sideways"),
        (format!("charge = 1.0\n{}", LOOP.replace("\"geometric\"", "\"matter\"\ncolor = { j_plus = \"1/3\", j_minus = \"0\" }")), "1/3"),
        (format!("charge = 1.0\n{}", LOOP.replace("geometric\"", "geometric\"\ncolor = { j_plus = \"1\", j_minus = \"0\" }")), "cannot be colored"),
        ("charge = 1.0\n[[surfaces]]\nname = \"d\"\nkind = \"disk\"\ncenter = [0.0, 0.0, 0.0, 0.0]\nu = [0.0, 1.0, 0.0, 0.0]\nw = [0.0, 0.0, 1.0, 0.0]\n".to_string(), "radius"),
        ("charge = 1.0\n[[surfaces]]\nname = \"d\"\nkind = \"param\"\nradius = 1.0\n".to_string(), "disk keys"),
        (format!("{LOOP}"), "charge"),
        ("charge = 1.0\n[[loops]]\nname = \"still\"\nrole = \"matter\"\nx1 = { constant = 1.0 }\n".to_string(), "constant"),
    ];
    for (src, needle) in cases {
        let d = parse_scene_str(&src).unwrap_err();
        assert!(d.to_string().contains(needle), "{needle}: {d}");
    }
}

#[test]
fn geometric_loops_touching_the_surface_are_rejected() {
    let src = "charge = 1.0\n[[loops]]\nname = \"ring\"\nrole = \"geometric\"\nx0 = { cos = [0.2], sin = [0.1] }\nx1 = { cos = [1.0] }\nx2 = { sin = [1.0] }\n\n[[surfaces]]\nname = \"flat\"\nkind = \"disk\"\ncenter = [0.0, 0.0, 0.0, 0.0]\nu = [0.0, 1.0, 0.0, 0.0]\nw = [0.0, 0.0, 1.0, 0.0]\nradius = 1.0\n";
    let d = parse_scene_str(src).unwrap_err();
    assert!(d.message.contains("ring touches the surface"), "{d}");
    assert_eq!(d.line, Some(3));
}

#[test]
fn connection_files_parse() {
    let omega = parse_connection_str(
        "mode = \"finite-difference\"\n[[terms]]\ncomponent = 2\npair = [3, 1]\ncoeff = 0.5\npowers = [0, 1, 0, 0]\n",
    )
    .unwrap();
    let x = [0.0, 2.0, 0.0, 0.0];
    assert_eq!(omega.component(2, 1, 3, &x).unwrap(), -1.0);
    let d = parse_connection_str("[[terms]]\ncomponent = 4\npair = [0, 1]\ncoeff = 1.0\n").unwrap_err();
    assert_eq!(d.line, Some(2));
    let d = parse_connection_str("[[terms]]\ncomponent = 1\npair = [2, 2]\ncoeff = 1.0\n").unwrap_err();
    assert!(d.message.contains("degenerate"), "{d}");
    assert!(parse_connection_str("mode = \"sloppy\"\n").is_err());
}
