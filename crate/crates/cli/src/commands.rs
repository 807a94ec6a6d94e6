//! One function per subcommand. Each returns the rendered report and its verdict.

use holext::circle_families::{enumerate_family, FamilyMember, FamilySpec, SubFamily};
use holext::extension::{
    aggregate_family, ball_extension_verdict, circle_extension_test, disc_analyticity_from_samples,
    family_lines, line_extension_test, line_outcome, BallOptions, CircleSamples, ExtensionReport,
    LineOutcome, Verdict,
};
use holext::fourier::PeriodicRule;
use holext::gallery::{gallery_listing, GalleryInfo};
use holext::geometry::{normalize_pair, Circle, ComplexLine, ComplexPoint2, PairClassification};
use holext::notation::{format_complex, format_point};
use holext::semiquadrics::{
    eta_bound, fiber_m, prop71_separation_check, semiquadrics_intersect, FiberDecomposition,
    Intersection, Semiquadric, SeparationReport,
};
use holext::slicing::{
    boundary_limit_probe, closed_disc_slice_coefficient, min_order, slice_coefficient,
    slice_coefficients_at, slice_table, ConvergenceReport, PolarGrid,
};
use holext::Complex;
use serde::Serialize;

use crate::cli::*;
use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};
use crate::json::{fmt_f64, to_json};
use crate::parallel::{ordered_map, pool};
use crate::source::Source;

pub struct Outcome {
    pub bytes: Vec<u8>,
    pub verdict: Option<Verdict>,
}

#[derive(Serialize)]
struct Envelope<'a, R> {
    command: &'a str,
    config: &'a RunConfig,
    report: &'a R,
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn emit<R: Serialize>(
    command: &str,
    config: &RunConfig,
    report: &R,
    table: impl FnOnce() -> Table,
) -> Result<Vec<u8>> {
    match config.format {
        Format::Json => to_json(&Envelope {
            command,
            config,
            report,
        })
        .map_err(|source| CliError::Json {
            path: "<report>".into(),
            source,
        }),
        Format::Csv => {
            let table = table();
            let mut w = csv::Writer::from_writer(Vec::new());
            let wrap = |source| CliError::Csv {
                path: "<report>".into(),
                source,
            };
            w.write_record(&table.header).map_err(wrap)?;
            for row in &table.rows {
                w.write_record(row).map_err(wrap)?;
            }
            w.into_inner()
                .map_err(|e| CliError::usage(format!("cannot finish csv output: {e}")))
        }
    }
}

fn num(v: f64) -> String {
    fmt_f64(v)
}

fn opt_num(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn mode(m: Option<i64>) -> String {
    m.map(|m| m.to_string()).unwrap_or_default()
}

fn extension_table(r: &ExtensionReport) -> Table {
    let header = vec!["subject", "residual", "verdict", "worst_mode"];
    let rows = if r.details.is_empty() {
        vec![vec![
            r.subject.clone(),
            num(r.residual),
            r.verdict.as_str().into(),
            mode(r.worst_mode),
        ]]
    } else {
        r.details
            .iter()
            .map(|d| {
                vec![
                    d.label.clone(),
                    num(d.residual),
                    d.verdict.as_str().into(),
                    mode(d.worst_mode),
                ]
            })
            .collect()
    };
    Table { header, rows }
}

fn base_config(output: &OutputArgs) -> RunConfig {
    RunConfig::new(output.format, output.expect)
}

pub fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::TestCircle(a) => test_circle(a),
        Command::TestLine(a) => test_line(a),
        Command::TestFamily(a) => test_family(a),
        Command::DiscAnalyticity(a) => disc_analyticity(a),
        Command::BallVerdict(a) => ball_verdict(a),
        Command::Slice(a) => slice(a),
        Command::NormalizePair(a) => normalize(a),
        Command::Prop71(a) => prop71(a),
        Command::Fiber(a) => fiber(a),
        Command::SemiquadricIntersect(a) => intersect(a),
        Command::GalleryList(a) => gallery_list(a),
    }
}

/// `c_n` on the closed disc for `n <= 0`, on the open disc otherwise.
fn disc_value(f: &Source, n: i32, z: Complex, order: usize) -> holext::Result<Complex> {
    if n <= 0 {
        closed_disc_slice_coefficient(f, n, z, order)
    } else {
        slice_coefficient(f, n, z, order)
    }
}

fn circle_samples(
    f: &Source,
    n: i32,
    circle: Circle,
    order: usize,
) -> holext::Result<CircleSamples> {
    let rule = PeriodicRule::new(order);
    let values = rule
        .nodes()
        .map(|e| {
            disc_value(
                f,
                n,
                circle.center + e * circle.radius,
                order.max(min_order(n)),
            )
        })
        .collect::<holext::Result<Vec<_>>>()?;
    Ok(CircleSamples {
        circle,
        theta0: 0.0,
        values,
    })
}

/// Sub-family and parameter, e.g. `through-boundary-point(1+0i) r=0.25`.
/// Circles through a boundary point `p` have centre `(1 - r) p` and radius `r`.
fn member_label(m: &FamilyMember) -> String {
    match m.subfamily {
        SubFamily::Concentric => format!("concentric R={}", m.parameter),
        SubFamily::ThroughBoundaryPoint { point } => {
            format!(
                "through-boundary-point({}) r={}",
                format_complex(point),
                m.parameter
            )
        }
        SubFamily::MoebiusImage { alpha } => {
            format!("moebius-image({}) r={}", format_complex(alpha), m.parameter)
        }
        SubFamily::ProjectionCircles { t } => format!("projection(t={t}) T={}", m.parameter),
    }
}

fn test_circle(a: &TestCircleArgs) -> Result<Outcome> {
    let Numerics { order, tol } = a.numerics;
    let mut config = base_config(&a.output);
    config.tolerance = Some(tol);
    let report = if let Some(path) = &a.samples {
        let (Some(center), Some(radius)) = (a.center, a.radius) else {
            return Err(CliError::usage("--samples needs --center and --radius"));
        };
        config
            .param("samples", path.display())
            .param("center", format_complex(center))
            .param("radius", radius);
        let pairs = crate::grid_file::read_circle_samples(path)?;
        circle_extension_test(
            &CircleSamples::from_nodes(Circle::new(center, radius)?, &pairs)?,
            tol,
        )?
    } else {
        let function = a
            .function
            .as_deref()
            .ok_or_else(|| CliError::usage("--fn or --samples is required"))?;
        let source = Source::parse(function)?;
        config.source(&source);
        config.order = Some(order);
        config.param("n", a.n);
        if let Some(json) = &a.family {
            let spec: FamilySpec = serde_json::from_str(json)
                .map_err(|e| CliError::usage(format!("--family is not a circle family: {e}")))?;
            spec.validate()?;
            let canonical = serde_json::to_string(&spec).expect("family spec serializes");
            config.density = Some(a.density);
            config.param("family", &canonical);
            let members = enumerate_family(&spec, a.density)?.members;
            let pool = pool()?;
            let outcomes = ordered_map(&pool, &members, |m| {
                let label = member_label(m);
                match circle_samples(&source, a.n, m.circle, order)
                    .and_then(|s| circle_extension_test(&s, tol))
                {
                    Ok(r) => LineOutcome::Tested(ExtensionReport {
                        subject: format!("{label} {}", r.subject),
                        ..r
                    }),
                    Err(e) => LineOutcome::Skipped {
                        subject: label,
                        reason: e.to_string(),
                    },
                }
            });
            aggregate_family(
                format!("c_{} of {} on {canonical}", a.n, source.id()),
                outcomes,
                a.density,
                order,
                tol,
            )?
        } else {
            let (Some(center), Some(radius)) = (a.center, a.radius) else {
                return Err(CliError::usage("give --center and --radius, or --family"));
            };
            config
                .param("center", format_complex(center))
                .param("radius", radius);
            circle_extension_test(
                &circle_samples(&source, a.n, Circle::new(center, radius)?, order)?,
                tol,
            )?
        }
    };
    let bytes = emit("test-circle", &config, &report, || extension_table(&report))?;
    Ok(Outcome {
        bytes,
        verdict: Some(report.verdict),
    })
}

fn test_line(a: &TestLineArgs) -> Result<Outcome> {
    let Numerics { order, tol } = a.numerics;
    let source = Source::parse(&a.function)?;
    let mut config = base_config(&a.output);
    config.source(&source);
    config.order = Some(order);
    config.tolerance = Some(tol);
    config
        .param("base", format_point(a.base))
        .param("direction", format_point(a.direction));
    let line = ComplexLine::new(a.base, a.direction)?;
    let report = line_extension_test(&source, &line, order, tol)?;
    let bytes = emit("test-line", &config, &report, || extension_table(&report))?;
    Ok(Outcome {
        bytes,
        verdict: Some(report.verdict),
    })
}

fn test_family(a: &TestFamilyArgs) -> Result<Outcome> {
    let Numerics { order, tol } = a.numerics;
    let source = Source::parse(&a.function)?;
    let mut config = base_config(&a.output);
    config.source(&source);
    config.order = Some(order);
    config.tolerance = Some(tol);
    config.density = Some(a.density);
    config.param("family", a.family.id());
    let lines = family_lines(&a.family, a.density)?;
    let outcomes = ordered_map(&pool()?, &lines, |line| {
        line_outcome(&source, line, order, tol)
    })
    .into_iter()
    .collect::<holext::Result<Vec<_>>>()?;
    let report = aggregate_family(a.family.id(), outcomes, a.density, order, tol)?;
    let bytes = emit("test-family", &config, &report, || extension_table(&report))?;
    Ok(Outcome {
        bytes,
        verdict: Some(report.verdict),
    })
}

fn disc_analyticity(a: &DiscArgs) -> Result<Outcome> {
    let Numerics { order, tol } = a.numerics;
    let consistency_tol = a.consistency_tol.unwrap_or(tol);
    let source = Source::parse(&a.function)?;
    let mut config = base_config(&a.output);
    config.source(&source);
    config.order = Some(order);
    config.tolerance = Some(tol);
    config.consistency_tolerance = Some(consistency_tol);
    config
        .param("n", a.n)
        .param("radii", join(&a.radii.0))
        .param("angular", a.angular);
    let grid = PolarGrid::new(a.radii.0.clone(), a.angular)?;
    let table = slice_table(&source, a.n, a.n, &grid, order)?;
    let rings: Vec<Vec<Complex>> = (0..grid.radii.len())
        .map(|i| table.ring(a.n, i).expect("ring in table").to_vec())
        .collect();
    let subject = format!("c_{} of {}", a.n, source.id());
    let report = disc_analyticity_from_samples(subject, &grid.radii, &rings, tol, consistency_tol)?;
    let bytes = emit("disc-analyticity", &config, &report, || Table {
        header: vec!["radius", "negative_residual"],
        rows: report
            .radii
            .iter()
            .zip(&report.negative_residuals)
            .map(|(r, v)| vec![num(*r), num(*v)])
            .collect(),
    })?;
    Ok(Outcome {
        bytes,
        verdict: Some(report.verdict),
    })
}

fn ball_verdict(a: &BallArgs) -> Result<Outcome> {
    let Numerics { order, tol } = a.numerics;
    let consistency_tol = a.consistency_tol.unwrap_or(tol);
    let source = Source::parse(&a.function)?;
    let mut config = base_config(&a.output);
    config.source(&source);
    config.order = Some(order);
    config.tolerance = Some(tol);
    config.consistency_tolerance = Some(consistency_tol);
    config
        .param("nrange", a.nrange)
        .param("radii", join(&a.radii.0))
        .param("angular", a.angular);
    let options = BallOptions {
        n_min: a.nrange.0,
        n_max: a.nrange.1,
        grid: PolarGrid::new(a.radii.0.clone(), a.angular)?,
        order,
        tolerance: tol,
        consistency_tolerance: consistency_tol,
    };
    let report = ball_extension_verdict(&source, source.id(), &options)?;
    let bytes = emit("ball-verdict", &config, &report, || Table {
        header: vec!["n", "residual", "consistency_defect", "verdict"],
        rows: report
            .slices
            .iter()
            .map(|s| {
                vec![
                    s.n.to_string(),
                    num(s.residual),
                    opt_num(s.consistency_defect),
                    s.verdict.as_str().into(),
                ]
            })
            .collect(),
    })?;
    Ok(Outcome {
        bytes,
        verdict: Some(report.verdict),
    })
}

#[derive(Serialize)]
struct SliceValue {
    n: i32,
    c_n: Complex,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi: Option<Complex>,
}

#[derive(Serialize)]
struct SliceReport {
    subject: String,
    z: Complex,
    #[serde(skip_serializing_if = "Option::is_none")]
    w: Option<Complex>,
    order: usize,
    coefficients: Vec<SliceValue>,
}

#[derive(Serialize)]
struct ProbeReport {
    subject: String,
    tolerance: f64,
    verdict: Verdict,
    probe: ConvergenceReport,
}

/// `2^-1, ..., 2^-10`.
pub fn default_probe_radii() -> Vec<f64> {
    (1..=10).map(|k| 0.5f64.powi(k)).collect()
}

fn slice(a: &SliceArgs) -> Result<Outcome> {
    let source = Source::parse(&a.function)?;
    let mut config = base_config(&a.output);
    config.source(&source);
    config.order = Some(a.order);
    if a.probe {
        let n = a.n.ok_or_else(|| CliError::usage("--probe needs --n"))?;
        let radii = a
            .radii
            .as_ref()
            .map(|r| r.0.clone())
            .unwrap_or_else(default_probe_radii);
        config.tolerance = Some(a.probe_tol);
        config
            .param("n", n)
            .param("radii", join(&radii))
            .param("angular", a.angular)
            .param("mode", "probe");
        let probe = boundary_limit_probe(&source, n, &radii, a.angular, a.order)?;
        let verdict = if probe.monotone && probe.final_difference < a.probe_tol {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let report = ProbeReport {
            subject: source.id(),
            tolerance: a.probe_tol,
            verdict,
            probe,
        };
        let bytes = emit("slice", &config, &report, || Table {
            header: vec!["radius", "sup_difference"],
            rows: report.probe.radii[1..]
                .iter()
                .zip(&report.probe.sup_differences)
                .map(|(r, d)| vec![num(*r), num(*d)])
                .collect(),
        })?;
        return Ok(Outcome {
            bytes,
            verdict: Some(verdict),
        });
    }
    let z =
        a.z.ok_or_else(|| CliError::usage("slice needs --z or --probe"))?;
    let NRange(n_min, n_max) = a.nrange.unwrap_or_else(|| {
        let n = a.n.unwrap_or(0);
        NRange(n, n)
    });
    config
        .param("nrange", NRange(n_min, n_max))
        .param("z", format_complex(z));
    if let Some(w) = a.w {
        config.param("w", format_complex(w));
    }
    let values = slice_coefficients_at(&source, n_min, n_max, z, &PeriodicRule::new(a.order))?;
    let coefficients = (n_min..=n_max)
        .zip(values)
        .map(|(n, c_n)| SliceValue {
            n,
            c_n,
            psi: a.w.map(|w| w.powi(n) * c_n),
        })
        .collect();
    let report = SliceReport {
        subject: source.id(),
        z,
        w: a.w,
        order: a.order,
        coefficients,
    };
    let bytes = emit("slice", &config, &report, || Table {
        header: vec!["n", "re_c", "im_c", "re_psi", "im_psi"],
        rows: report
            .coefficients
            .iter()
            .map(|v| {
                vec![
                    v.n.to_string(),
                    num(v.c_n.re),
                    num(v.c_n.im),
                    opt_num(v.psi.map(|p| p.re)),
                    opt_num(v.psi.map(|p| p.im)),
                ]
            })
            .collect(),
    })?;
    Ok(Outcome {
        bytes,
        verdict: None,
    })
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report fragment serializes")
}

fn normalize(a: &NormalizePairArgs) -> Result<Outcome> {
    let mut config = base_config(&a.output);
    config
        .param("a", format_point(a.a))
        .param("b", format_point(a.b));
    let report: PairClassification = normalize_pair(a.a, a.b)?;
    let bytes = emit("normalize-pair", &config, &report, || Table {
        header: vec!["case", "canonical", "pencils"],
        rows: vec![vec![
            compact(&report.case),
            compact(&report.canonical),
            compact(&report.pencils),
        ]],
    })?;
    Ok(Outcome {
        bytes,
        verdict: None,
    })
}

#[derive(Serialize)]
struct Prop71Report {
    eta_bound: f64,
    verdict: Verdict,
    scan: SeparationReport,
}

fn prop71(a: &Prop71Args) -> Result<Outcome> {
    let mut config = base_config(&a.output);
    config
        .param("t", a.t)
        .param("eta", a.eta)
        .param("grid", format!("{},{},{}", a.grid.x, a.grid.r, a.grid.t));
    let scan = prop71_separation_check(a.t, a.eta, a.grid)?;
    let verdict = if scan.violations == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let report = Prop71Report {
        eta_bound: eta_bound(a.t),
        verdict,
        scan,
    };
    let bytes = emit("prop71", &config, &report, || Table {
        header: vec!["x", "family", "parameter", "y", "violation"],
        rows: report
            .scan
            .counterexamples
            .iter()
            .map(|c| {
                vec![
                    num(c.x),
                    compact(&c.family),
                    num(c.parameter),
                    num(c.y),
                    num(c.violation),
                ]
            })
            .collect(),
    })?;
    Ok(Outcome {
        bytes,
        verdict: Some(verdict),
    })
}

#[derive(Serialize)]
struct FiberReport {
    fiber: FiberDecomposition,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    segment_points: Vec<Complex>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    arc_points: Vec<Complex>,
}

fn fiber(a: &FiberArgs) -> Result<Outcome> {
    let mut config = base_config(&a.output);
    config
        .param("z", format_complex(a.z))
        .param("t", a.t)
        .param("eta", a.eta)
        .param("points", a.points);
    let fiber = fiber_m(a.z, a.t, a.eta)?;
    let (segment_points, arc_points) = match &fiber {
        FiberDecomposition::Curve(c) => (c.segment_points(a.points), c.arc_points(a.points)),
        FiberDecomposition::RealAxis { .. } => (Vec::new(), Vec::new()),
    };
    let report = FiberReport {
        fiber,
        segment_points,
        arc_points,
    };
    let bytes = emit("fiber", &config, &report, || {
        let rows = [
            ("segment", &report.segment_points),
            ("arc", &report.arc_points),
        ]
        .into_iter()
        .flat_map(|(piece, pts)| {
            pts.iter()
                .enumerate()
                .map(move |(i, p)| vec![piece.to_string(), i.to_string(), num(p.re), num(p.im)])
        })
        .collect();
        Table {
            header: vec!["piece", "index", "re_w", "im_w"],
            rows,
        }
    })?;
    Ok(Outcome {
        bytes,
        verdict: None,
    })
}

#[derive(Serialize)]
struct IntersectReport {
    first: Semiquadric,
    second: Semiquadric,
    /// One circle strictly inside the other.
    nested: bool,
    intersection: Intersection,
    #[serde(skip_serializing_if = "Option::is_none")]
    residuals: Option<[f64; 2]>,
}

fn intersect(a: &IntersectArgs) -> Result<Outcome> {
    let mut config = base_config(&a.output);
    config
        .param("a1", format_complex(a.a1))
        .param("r1", a.r1)
        .param("a2", format_complex(a.a2))
        .param("r2", a.r2);
    let (first, second) = (Semiquadric::new(a.a1, a.r1)?, Semiquadric::new(a.a2, a.r2)?);
    let intersection = semiquadrics_intersect(&first, &second)?;
    let nested =
        first.circle().surrounds(&second.circle()) || second.circle().surrounds(&first.circle());
    let residuals = match intersection {
        Intersection::Point(p) | Intersection::Degenerate(p) => Some([
            first.defining_residual(p).norm(),
            second.defining_residual(p).norm(),
        ]),
        Intersection::Empty => None,
    };
    let report = IntersectReport {
        first,
        second,
        nested,
        intersection,
        residuals,
    };
    let bytes = emit("semiquadric-intersect", &config, &report, || {
        let (kind, p) = match report.intersection {
            Intersection::Empty => ("empty", None),
            Intersection::Point(p) => ("point", Some(p)),
            Intersection::Degenerate(p) => ("degenerate", Some(p)),
        };
        let p: Option<ComplexPoint2> = p;
        Table {
            header: vec!["kind", "re_z", "im_z", "re_w", "im_w"],
            rows: vec![vec![
                kind.to_string(),
                opt_num(p.map(|p| p.z.re)),
                opt_num(p.map(|p| p.z.im)),
                opt_num(p.map(|p| p.w.re)),
                opt_num(p.map(|p| p.w.im)),
            ]],
        }
    })?;
    Ok(Outcome {
        bytes,
        verdict: None,
    })
}

fn gallery_list(a: &GalleryArgs) -> Result<Outcome> {
    let config = base_config(&a.output);
    let report: Vec<GalleryInfo> = gallery_listing();
    let bytes = emit("gallery-list", &config, &report, || Table {
        header: vec!["schema", "example", "ball", "real_analytic"],
        rows: report
            .iter()
            .map(|g| {
                vec![
                    g.schema.to_string(),
                    g.example.clone(),
                    g.expected.ball.as_str().to_string(),
                    g.expected.real_analytic.to_string(),
                ]
            })
            .collect(),
    })?;
    Ok(Outcome {
        bytes,
        verdict: None,
    })
}

fn join(v: &[f64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
