use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scene(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenes").join(name)
}

fn linkcurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkcurv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn lk_prints_the_count_and_piercing_table() {
    let o = linkcurv(&["lk", path(&scene("hopf_disk.scene")), "--oracle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lk = 2");
    assert!(lines[1].starts_with("loop"));
    let rows: Vec<&str> = lines.iter().copied().filter(|l| l.starts_with("ring ")).collect();
    assert_eq!(rows.len(), 2, "{text}");
    assert_eq!(text.matches("(agrees)").count(), 3, "{text}");
}

#[test]
fn validate_reports_the_scene() {
    let o = linkcurv(&["validate", path(&scene("hopf_disk.scene"))]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("matter loops 1, geometric loops 1, patches 1"), "{text}");
    assert!(text.contains("time-like: ok"));
    assert!(text.contains("probe: color (1/2, 1/2)"));
}

#[test]
fn z_on_the_empty_surface_scene() {
    let o = linkcurv(&["z", path(&scene("empty_surface.scene"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("sk(probe) = 6"), "{text}");
    let z: f64 = text.lines().find_map(|l| l.strip_prefix("Z = ")).unwrap().parse().unwrap();
    // each spin-1/2 factor contributes 2 cosh(sqrt(3) pi q sk / 2), here q = 1/4 and sk = 6
    let expect = 4.0 * (3f64.sqrt() * std::f64::consts::PI * 0.25 * 6.0 / 2.0).cosh();
    assert!((z - expect).abs() < 1e-9 * z, "{z} vs {expect}");
    let o = linkcurv(&["fhat", path(&scene("empty_surface.scene"))]);
    assert!(stdout(&o).starts_with("surface is empty: F = identity"));
}

#[test]
fn sk_on_far_apart_is_zero() {
    let o = linkcurv(&["sk", path(&scene("far_apart.scene")), "--oracle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("sk(far) = 0"), "{text}");
    assert!(text.contains("oracle: gauss linking(far, ring) = 0"), "{text}");
}

#[test]
fn fhat_prints_coefficient_and_algebra() {
    let o = linkcurv(&["fhat", path(&scene("hopf_disk.scene"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("lk = 2\n"));
    assert!(text.contains("algebra = plus [1.000000000, 1.000000000, 1.000000000] minus [-1.000000000, -1.000000000, -1.000000000]"));
    let z: f64 = text.lines().find_map(|l| l.strip_prefix("Z = ")).unwrap().parse().unwrap();
    let coeff = text.lines().find_map(|l| l.strip_prefix("coefficient = ")).unwrap();
    let im: f64 = coeff.split_whitespace().nth(1).unwrap().trim_end_matches('i').parse().unwrap();
    let expect = -(4.0 * std::f64::consts::PI).sqrt() * 2.0 * z;
    assert!((im - expect).abs() < 1e-9 * expect.abs());
}

fn column(csv: &str, term: &str, kappa: &str, col: usize) -> f64 {
    csv.lines()
        .find(|l| l.starts_with(&format!("{kappa},{term},")))
        .unwrap_or_else(|| panic!("no {term} row at {kappa}"))
        .split(',')
        .nth(col)
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn converge_final_total_is_within_five_percent() {
    let dir = tempfile::tempdir().unwrap();
    let o = linkcurv(&["converge", path(&scene("hopf_disk.scene")), "--kappa", "5,10,20,40,80", "--out", path(dir.path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    assert!(csv.starts_with("kappa,term,re_value,im_value,err_est,re_ref,im_ref,abs_err\n"));
    let reference = -(4.0 * std::f64::consts::PI).sqrt() * 2.0;
    assert!((column(&csv, "total", "80.0", 6) - reference).abs() < 1e-12);
    let err = column(&csv, "total", "80.0", 7);
    assert!(err <= 0.05 * reference.abs(), "{err}");
    let plot = std::fs::read_to_string(dir.path().join("convergence_plot.csv")).unwrap();
    assert!(plot.starts_with("kappa,a_sum,b,c_sum,total,wilson:probe\n"), "{plot}");
    assert_eq!(plot.lines().count(), 6);
}

#[test]
fn converge_output_is_byte_identical_across_runs() {
    let runs: Vec<(Vec<u8>, Vec<u8>)> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let o = linkcurv(&["converge", path(&scene("far_apart.scene")), "--kappa", "5,10", "--out", path(dir.path())]);
            assert!(o.status.success(), "{}", stderr(&o));
            (
                std::fs::read(dir.path().join("convergence.csv")).unwrap(),
                std::fs::read(dir.path().join("convergence_plot.csv")).unwrap(),
            )
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn classical_integrates_a_connection_file() {
    let dir = tempfile::tempdir().unwrap();
    let conn = dir.path().join("omega.toml");
    // A^1_{01} = -x2 / 2, A^2_{01} = x1 / 2: F_S = area of the unit disk along E^{01}.
    std::fs::write(
        &conn,
        "[[terms]]\ncomponent = 1\npair = [0, 1]\ncoeff = -0.5\npowers = [0, 0, 1, 0]\n\n\
         [[terms]]\ncomponent = 2\npair = [0, 1]\ncoeff = 0.5\npowers = [0, 1, 0, 0]\n",
    )
    .unwrap();
    let o = linkcurv(&["classical", path(&scene("far_apart.scene")), "--connection", path(&conn), "--tol", "1e-9"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let expect = format!("F_S = plus [{:.9}, 0.000000000, 0.000000000] minus [0.000000000, 0.000000000, 0.000000000]", std::f64::consts::PI);
    assert!(text.starts_with(&expect), "{text}");
}

#[test]
fn exit_codes_distinguish_failures() {
    let dir = tempfile::tempdir().unwrap();
    let uncolored = dir.path().join("uncolored.scene");
    let src = std::fs::read_to_string(scene("empty_surface.scene")).unwrap();
    std::fs::write(&uncolored, src.replace("color = { j_plus = \"1/2\", j_minus = \"1/2\" }\n", "")).unwrap();
    let o = linkcurv(&["z", path(&uncolored)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("probe has no irreducible representation"), "{}", stderr(&o));

    let broken = dir.path().join("broken.scene");
    std::fs::write(&broken, "charge = 1.0\n\n[[loops]]\nname = 3\n").unwrap();
    let o = linkcurv(&["lk", path(&broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("broken.scene:4:8:"), "{}", stderr(&o));

    let o = linkcurv(&["sk", path(&scene("hopf_disk.scene")), "--kappa", "5,10"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));

    let o = linkcurv(&["lk", "/nonexistent/x.scene"]);
    assert_eq!(o.status.code(), Some(2));
    let o = linkcurv(&["sk", path(&scene("hopf_disk.scene")), "--kappa", "10,5"]);
    assert_eq!(o.status.code(), Some(2));
}
