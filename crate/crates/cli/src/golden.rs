//! Whole-command runs through `run`, checked against expected exit codes and report fields.

use std::fs::File;
use std::path::{Path, PathBuf};

use holext::geometry::ComplexPoint2;
use holext::slicing::GridSample;
use holext::Complex;
use serde_json::Value;

use crate::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

fn holext(args: &[&str], out: &Path) -> i32 {
    let mut argv = vec!["holext"];
    argv.extend_from_slice(args);
    let out = out.to_str().unwrap();
    argv.extend_from_slice(&["--out", out]);
    run(argv)
}

fn report(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

struct Scratch {
    dir: tempfile::TempDir,
}

impl Scratch {
    fn new() -> Self {
        Scratch {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

#[test]
fn example11_family_passes() {
    let s = Scratch::new();
    let out = s.path("r.json");
    let args = [
        "test-family",
        "--fn",
        "gallery:example11:k=3",
        "--family",
        "through:0,0.5i",
        "--density",
        "64",
        "--order",
        "256",
        "--tol",
        "1e-8",
    ];
    assert_eq!(holext(&args, &out), EXIT_OK);
    let r = report(&out);
    assert_eq!(r["command"], "test-family");
    assert_eq!(r["config"]["order"], 256);
    assert_eq!(r["config"]["density"], 64);
    assert_eq!(r["report"]["verdict"], "pass");
    assert_eq!(r["report"]["tested"], 64);
    assert!(r["report"]["residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(
        r["report"]["note"],
        "necessary-condition pass at density 64"
    );
}

#[test]
fn absw2_ball_verdict_fails_at_zero() {
    let s = Scratch::new();
    let out = s.path("r.json");
    assert_eq!(
        holext(
            &["ball-verdict", "--fn", "gallery:absw2", "--nrange", "-4..8"],
            &out
        ),
        EXIT_FAIL
    );
    let r = report(&out);
    assert_eq!(r["report"]["verdict"], "fail");
    assert_eq!(r["report"]["offending"]["n"], 0);
    assert_eq!(r["config"]["tolerance"].as_f64(), Some(1e-8));
    assert_eq!(r["config"]["parameters"]["nrange"], "-4..8");
    let expect = ["ball-verdict", "--fn", "gallery:absw2", "--expect", "fail"];
    assert_eq!(holext(&expect, &out), EXIT_OK);
    let expect = ["ball-verdict", "--fn", "gallery:absw2", "--expect", "pass"];
    assert_eq!(holext(&expect, &out), EXIT_FAIL);
}

#[test]
fn holomorphic_ball_verdict_passes() {
    let s = Scratch::new();
    let out = s.path("r.json");
    let args = [
        "ball-verdict",
        "--fn",
        "gallery:poly:z2w0=1;z1w1=1",
        "--expect",
        "pass",
    ];
    assert_eq!(holext(&args, &out), EXIT_OK);
    assert!(report(&out)["report"]["offending"].is_null());
}

#[test]
fn prop71_scan_has_no_violations() {
    let s = Scratch::new();
    let out = s.path("r.json");
    assert_eq!(
        holext(
            &["prop71", "--t", "0.5", "--eta", "0.19", "--grid", "50"],
            &out
        ),
        EXIT_OK
    );
    let r = report(&out);
    assert_eq!(r["report"]["scan"]["violations"], 0);
    assert!(r["report"]["scan"]["checked"].as_u64().unwrap() > 0);
    assert_eq!(
        holext(
            &["prop71", "--t", "0.5", "--eta", "0.9", "--grid", "20"],
            &out
        ),
        EXIT_FAIL
    );
    assert!(
        report(&out)["report"]["scan"]["violations"]
            .as_u64()
            .unwrap()
            > 0
    );
}

#[test]
fn circle_tests_on_slices() {
    let s = Scratch::new();
    let out = s.path("r.json");
    let pass = [
        "test-circle",
        "--fn",
        "gallery:mono:a=2:b=0",
        "--center",
        "0.1-0.2i",
        "--radius",
        "0.5",
    ];
    assert_eq!(holext(&pass, &out), EXIT_OK);
    // c_0 of |w|^2 is 1 - |z|^2, which has conj(z) terms on any circle.
    let fail = [
        "test-circle",
        "--fn",
        "gallery:absw2",
        "--center",
        "0.1",
        "--radius",
        "0.5",
    ];
    assert_eq!(holext(&fail, &out), EXIT_FAIL);
    let family = [
        "test-circle",
        "--fn",
        "gallery:mono:a=2:b=1",
        "--n",
        "1",
        "--family",
        r#"{"kind":"concentric-plus-moebius","params":{"t":0.5}}"#,
        "--density",
        "8",
        "--order",
        "64",
    ];
    assert_eq!(holext(&family, &out), EXIT_OK);
    let r = report(&out);
    assert!(r["report"]["tested"].as_u64().unwrap() > 0);
}

#[test]
fn circle_samples_file() {
    let s = Scratch::new();
    let samples = s.path("c.csv");
    let mut w = csv::Writer::from_writer(File::create(&samples).unwrap());
    w.write_record(["x", "y", "re", "im"]).unwrap();
    let (c, r) = (Complex::new(0.2, 0.1), 0.3);
    for k in 0..32 {
        let z = c + Complex::from_polar(r, std::f64::consts::TAU * k as f64 / 32.0);
        let v = z.conj();
        w.write_record([z.re, z.im, v.re, v.im].map(|x| x.to_string()))
            .unwrap();
    }
    w.flush().unwrap();
    let out = s.path("r.json");
    let sp = samples.to_str().unwrap();
    let args = [
        "test-circle",
        "--samples",
        sp,
        "--center",
        "0.2+0.1i",
        "--radius",
        "0.3",
        "--expect",
        "fail",
    ];
    assert_eq!(holext(&args, &out), EXIT_OK);
    let r = report(&out);
    assert_eq!(r["report"]["worst_mode"], -1, "{r}");
}

#[test]
fn line_and_grid_source() {
    let s = Scratch::new();
    let grid = s.path("g.csv");
    // z w on a product grid covering |z| <= 0.8.
    let mut rows = Vec::new();
    for i in 0..=40 {
        for j in 0..=40 {
            let (x, y) = (-0.8 + 0.04 * i as f64, -0.8 + 0.04 * j as f64);
            if x * x + y * y > 1.0 {
                continue;
            }
            for k in 0..16 {
                let theta = std::f64::consts::TAU * k as f64 / 16.0;
                let p = ComplexPoint2::new(
                    Complex::new(x, y),
                    Complex::from_polar((1.0 - x * x - y * y).max(0.0).sqrt(), theta),
                );
                rows.push(GridSample {
                    x,
                    y,
                    theta,
                    value: p.z * p.w,
                });
            }
        }
    }
    crate::grid_file::write_csv(File::create(&grid).unwrap(), &rows).unwrap();
    let source = format!("grid:{}", grid.display());
    let out = s.path("r.json");
    let args = [
        "test-line",
        "--fn",
        &source,
        "--base",
        "0.1,0",
        "--direction",
        "0.3,1",
        "--order",
        "64",
        "--tol",
        "1e-2",
    ];
    assert_eq!(holext(&args, &out), EXIT_OK);
    let r = report(&out);
    assert_eq!(r["config"]["function"], source.as_str());
    assert_eq!(r["config"]["interpolation"]["theta"], "trigonometric");
    assert_eq!(r["config"]["interpolation"]["spatial"], "bilinear");
    assert!(r["report"]["residual"].as_f64().unwrap() > 0.0);
    let args = [
        "test-line",
        "--fn",
        "gallery:conjw",
        "--base",
        "0,0",
        "--direction",
        "0,1",
    ];
    assert_eq!(holext(&args, &out), EXIT_FAIL);
}

#[test]
fn slice_table_and_probe() {
    let s = Scratch::new();
    let out = s.path("r.json");
    let args = [
        "slice",
        "--fn",
        "gallery:mono:a=1:b=2",
        "--nrange",
        "-1..3",
        "--z",
        "0.3",
        "--w",
        "0.5i",
    ];
    assert_eq!(holext(&args, &out), EXIT_OK);
    let r = report(&out);
    let coeffs = r["report"]["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 5);
    // c_2(z) = z for z w^2.
    assert!((coeffs[3]["c_n"][0].as_f64().unwrap() - 0.3).abs() < 1e-13);
    let probe = [
        "slice",
        "--fn",
        "gallery:mono:a=1:b=2",
        "--n",
        "0",
        "--probe",
        "--angular",
        "16",
    ];
    assert_eq!(holext(&probe, &out), EXIT_OK);
    assert_eq!(
        report(&out)["report"]["probe"]["radii"]
            .as_array()
            .unwrap()
            .len(),
        10
    );
}

#[test]
fn geometry_commands() {
    let s = Scratch::new();
    let out = s.path("r.json");
    assert_eq!(
        holext(&["normalize-pair", "--a", "0.2,0", "--b", "0,-0.5i"], &out),
        EXIT_OK
    );
    assert_eq!(report(&out)["report"]["case"], "A1");
    assert_eq!(
        holext(
            &["fiber", "--z", "0.1+0.2i", "--t", "0.5", "--eta", "0.19", "--points", "5"],
            &out
        ),
        EXIT_OK
    );
    assert_eq!(
        report(&out)["report"]["arc_points"]
            .as_array()
            .unwrap()
            .len(),
        5
    );
    assert_eq!(
        holext(
            &["fiber", "--z", "0.1", "--t", "0.5", "--eta", "0.19"],
            &out
        ),
        EXIT_OK
    );
    assert_eq!(report(&out)["report"]["fiber"]["kind"], "real-axis");
    let args = [
        "semiquadric-intersect",
        "--a1",
        "0",
        "--r1",
        "1",
        "--a2",
        "0.1",
        "--r2",
        "0.5",
    ];
    assert_eq!(holext(&args, &out), EXIT_OK);
    let r = report(&out);
    assert_eq!(r["report"]["nested"], true);
    assert_eq!(r["report"]["intersection"]["kind"], "point");
    assert_eq!(holext(&["gallery-list"], &out), EXIT_OK);
    assert_eq!(report(&out)["report"].as_array().unwrap().len(), 6);
}

#[test]
fn csv_reports() {
    let s = Scratch::new();
    let out = s.path("r.csv");
    let args = [
        "test-family",
        "--fn",
        "gallery:absw2",
        "--family",
        "parallel:1,0",
        "--density",
        "5",
        "--format",
        "csv",
    ];
    assert_eq!(holext(&args, &out), EXIT_OK);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("subject,residual,verdict,worst_mode"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn usage_errors_exit_two() {
    let s = Scratch::new();
    let out = s.path("r.json");
    assert_eq!(holext(&["no-such-command"], &out), EXIT_USAGE);
    assert_eq!(
        holext(
            &[
                "test-line",
                "--fn",
                "gallery:absw2",
                "--base",
                "1+,0",
                "--direction",
                "0,1"
            ],
            &out
        ),
        EXIT_USAGE
    );
    assert_eq!(
        holext(
            &[
                "test-family",
                "--fn",
                "gallery:absw2",
                "--family",
                "through:0,0",
                "--tol",
                "-1"
            ],
            &out
        ),
        EXIT_USAGE
    );
    assert_eq!(
        holext(
            &[
                "test-family",
                "--fn",
                "grid:/missing.csv",
                "--family",
                "through:0,0"
            ],
            &out
        ),
        EXIT_USAGE
    );
    assert_eq!(
        holext(
            &[
                "test-family",
                "--fn",
                "gallery:nope",
                "--family",
                "through:0,0"
            ],
            &out
        ),
        EXIT_USAGE
    );
    assert_eq!(
        holext(&["gallery-list", "--expect", "pass"], &out),
        EXIT_USAGE
    );
    assert_eq!(
        holext(&["prop71", "--t", "1.5", "--eta", "0.1"], &out),
        EXIT_USAGE
    );
    assert_eq!(
        holext(
            &[
                "slice",
                "--fn",
                "gallery:absw2",
                "--n",
                "40",
                "--z",
                "0.999999"
            ],
            &out
        ),
        EXIT_USAGE
    );
    assert_eq!(
        holext(
            &["ball-verdict", "--fn", "gallery:absw2", "--nrange", "0..8"],
            &out
        ),
        EXIT_USAGE
    );
}
