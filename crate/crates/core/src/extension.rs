//! Decision procedures for holomorphic extendibility.
//!
//! A continuous function on a circle extends holomorphically into the disc it
//! bounds iff its negative Fourier coefficients vanish. Everything here reduces
//! to that test on sampled circles.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::fourier::PeriodicRule;
use crate::geometry::{line_sphere_circle, BallAutomorphism, Circle, ComplexLine, ComplexPoint2};
use crate::notation::format_point;
use crate::slicing::{
    closed_disc_slice_coefficient, slice_coefficient, slice_table, BoundaryFunction, PolarGrid,
};
use crate::{Complex, Error, Result};

/// Lines whose `L ∩ B` disc is thinner than this are skipped in family sweeps.
pub const NEAR_TANGENT_RADIUS: f64 = 1e-6;
/// Radial consistency ignores `(m, R)` pairs with `R^m` below this.
pub const RADIAL_AMPLIFICATION_FLOOR: f64 = 1e-4;
pub const MIN_CIRCLE_SAMPLES: usize = 16;
pub const DEFAULT_RADII: [f64; 4] = [0.3, 0.5, 0.7, 0.9];
pub const DEFAULT_ANGULAR: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_residual(residual: f64, tol: f64) -> Self {
        if residual <= tol {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Detail {
    pub label: String,
    pub residual: f64,
    pub verdict: Verdict,
    pub worst_mode: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtensionReport {
    pub subject: String,
    pub residual: f64,
    pub tolerance: f64,
    pub order: usize,
    pub verdict: Verdict,
    /// Negative mode with the largest coefficient.
    pub worst_mode: Option<i64>,
    pub tested: usize,
    pub skipped: usize,
    pub note: Option<String>,
    pub details: Vec<Detail>,
}

impl ExtensionReport {
    fn single(
        subject: String,
        residual: f64,
        worst_mode: Option<i64>,
        order: usize,
        tol: f64,
    ) -> Self {
        ExtensionReport {
            subject,
            residual,
            tolerance: tol,
            order,
            verdict: Verdict::from_residual(residual, tol),
            worst_mode,
            tested: 1,
            skipped: 0,
            note: None,
            details: Vec::new(),
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("tolerance must be positive"))
    }
}

/// Values of a function at `center + radius e^{i(theta0 + 2πk/N)}`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CircleSamples {
    pub circle: Circle,
    pub theta0: f64,
    pub values: Vec<Complex>,
}

impl CircleSamples {
    pub fn uniform<G: Fn(Complex) -> Complex>(circle: Circle, order: usize, g: G) -> Self {
        let rule = PeriodicRule::new(order);
        let values = rule
            .nodes()
            .map(|e| g(circle.center + e * circle.radius))
            .collect();
        CircleSamples {
            circle,
            theta0: 0.0,
            values,
        }
    }

    /// Accepts `(point, value)` pairs and checks they sit on uniform nodes in order.
    pub fn from_nodes(circle: Circle, samples: &[(Complex, Complex)]) -> Result<Self> {
        let n = samples.len();
        if n == 0 {
            return Err(Error::invalid("no samples"));
        }
        let theta0 = (samples[0].0 - circle.center).arg();
        let tol = 1e-9 * (1.0 + circle.radius);
        for (k, (p, _)) in samples.iter().enumerate() {
            let expect = circle.point_at(theta0 + TAU * k as f64 / n as f64);
            if (p - expect).norm() > tol {
                return Err(Error::invalid(
                    "samples are not on uniform nodes of the circle",
                ));
            }
        }
        Ok(CircleSamples {
            circle,
            theta0,
            values: samples.iter().map(|s| s.1).collect(),
        })
    }
}

/// Negative-coefficient test on one circle; `order` is the sample count.
pub fn circle_extension_test(samples: &CircleSamples, tol: f64) -> Result<ExtensionReport> {
    check_tol(tol)?;
    let order = samples.values.len();
    if order < MIN_CIRCLE_SAMPLES {
        return Err(Error::invalid("circle test needs at least 16 samples"));
    }
    if samples.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite circle sample"));
    }
    let rule = PeriodicRule::new(order);
    let (residual, worst) = rule.negative_residual(&samples.values);
    let c = samples.circle;
    let subject = format!("circle:{}+{}i,r={}", c.center.re, c.center.im, c.radius);
    Ok(ExtensionReport::single(
        subject, residual, worst, order, tol,
    ))
}

pub fn line_subject(line: &ComplexLine) -> String {
    format!(
        "line:{}+u*{}",
        format_point(line.base),
        format_point(line.direction)
    )
}

/// Restricts `f` to `L ∩ bB` and runs the circle test in the parameter `ζ`.
pub fn line_extension_test<F: BoundaryFunction + ?Sized>(
    f: &F,
    line: &ComplexLine,
    order: usize,
    tol: f64,
) -> Result<ExtensionReport> {
    check_tol(tol)?;
    if order < MIN_CIRCLE_SAMPLES {
        return Err(Error::invalid("circle test needs at least 16 samples"));
    }
    let lsc = line_sphere_circle(line)?;
    let rule = PeriodicRule::new(order);
    let values: Vec<Complex> = rule.nodes().map(|e| f.eval(lsc.point_at(e))).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite boundary value on the line"));
    }
    let (residual, worst) = rule.negative_residual(&values);
    Ok(ExtensionReport::single(
        line_subject(line),
        residual,
        worst,
        order,
        tol,
    ))
}

/// A pencil of complex lines.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", content = "point", rename_all = "kebab-case")
)]
pub enum LineFamily {
    Through(ComplexPoint2),
    Parallel(ComplexPoint2),
}

impl LineFamily {
    pub fn id(&self) -> String {
        match self {
            LineFamily::Through(p) => format!("through:{}", format_point(*p)),
            LineFamily::Parallel(d) => format!("parallel:{}", format_point(*d)),
        }
    }
}

const GOLDEN_ANGLE: f64 = PI * 0.763_932_022_500_210_3;

/// `count` points of a sunflower spiral filling the disc of radius `radius`, none at 0.
fn sunflower(count: usize, radius: f64) -> impl Iterator<Item = Complex> {
    (0..count).map(move |j| {
        let rho = radius * ((j as f64 + 0.5) / count as f64).sqrt();
        Complex::from_polar(rho, GOLDEN_ANGLE * j as f64)
    })
}

/// `density` lines of the pencil.
///
/// Through a point: directions `(u, 1)` and `(1, v)` with `u, v` on sunflower
/// grids in the disc of radius 2, split evenly between the two charts.
/// Parallel to `d`: offsets on a sunflower grid of the unit disc in the
/// complex line orthogonal to `d`, so every line meets `B`.
pub fn family_lines(family: &LineFamily, density: usize) -> Result<Vec<ComplexLine>> {
    if density < 2 {
        return Err(Error::invalid("density must be at least 2"));
    }
    let one = Complex::new(1.0, 0.0);
    match *family {
        LineFamily::Through(p) => {
            let first = density.div_ceil(2);
            sunflower(first, 2.0)
                .map(|u| ComplexPoint2::new(u, one))
                .chain(sunflower(density - first, 2.0).map(|v| ComplexPoint2::new(one, v)))
                .map(|d| ComplexLine::through(p, d))
                .collect()
        }
        LineFamily::Parallel(d) => {
            let norm = d.norm();
            if !(norm > 0.0) || !d.is_finite() {
                return Err(Error::invalid("direction must be non-zero"));
            }
            let normal = ComplexPoint2::new(-d.w.conj(), d.z.conj()) * (1.0 / norm);
            sunflower(density, 1.0)
                .map(|c| ComplexLine::parallel(normal * c, d))
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LineOutcome {
    Tested(ExtensionReport),
    Skipped { subject: String, reason: String },
}

/// Runs one member of a family sweep; near-tangent and missing lines are skipped.
pub fn line_outcome<F: BoundaryFunction + ?Sized>(
    f: &F,
    line: &ComplexLine,
    order: usize,
    tol: f64,
) -> Result<LineOutcome> {
    match line_sphere_circle(line) {
        Ok(lsc) if lsc.disc_radius() < NEAR_TANGENT_RADIUS => Ok(LineOutcome::Skipped {
            subject: line_subject(line),
            reason: String::from("near-tangent"),
        }),
        Ok(_) => line_extension_test(f, line, order, tol).map(LineOutcome::Tested),
        Err(e @ (Error::NoIntersection | Error::Tangent { .. })) => Ok(LineOutcome::Skipped {
            subject: line_subject(line),
            reason: format!("{e}"),
        }),
        Err(e) => Err(e),
    }
}

/// Folds per-member outcomes, in order, into one report. Circle families reuse it.
pub fn aggregate_family(
    subject: String,
    outcomes: Vec<LineOutcome>,
    density: usize,
    order: usize,
    tol: f64,
) -> Result<ExtensionReport> {
    let mut residual: f64 = 0.0;
    let mut worst_mode = None;
    let mut tested = 0;
    let mut skipped = 0;
    let mut details = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        match outcome {
            LineOutcome::Tested(r) => {
                tested += 1;
                if r.residual > residual || worst_mode.is_none() {
                    residual = residual.max(r.residual);
                    worst_mode = r.worst_mode;
                }
                details.push(Detail {
                    label: r.subject,
                    residual: r.residual,
                    verdict: r.verdict,
                    worst_mode: r.worst_mode,
                });
            }
            LineOutcome::Skipped { .. } => skipped += 1,
        }
    }
    if tested == 0 {
        return Err(Error::invalid("no member of the family could be tested"));
    }
    let verdict = Verdict::from_residual(residual, tol);
    let note = match verdict {
        Verdict::Pass => Some(format!("necessary-condition pass at density {density}")),
        Verdict::Fail => {
            let failing = details.iter().filter(|d| !d.verdict.is_pass()).count();
            Some(format!("{failing} of {tested} tested members fail"))
        }
    };
    Ok(ExtensionReport {
        subject,
        residual,
        tolerance: tol,
        order,
        verdict,
        worst_mode,
        tested,
        skipped,
        note,
        details,
    })
}

pub fn family_extension_test<F: BoundaryFunction + ?Sized>(
    f: &F,
    family: &LineFamily,
    density: usize,
    order: usize,
    tol: f64,
) -> Result<ExtensionReport> {
    check_tol(tol)?;
    let outcomes = family_lines(family, density)?
        .iter()
        .map(|line| line_outcome(f, line, order, tol))
        .collect::<Result<Vec<_>>>()?;
    aggregate_family(family.id(), outcomes, density, order, tol)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RadialCoefficient {
    pub m: usize,
    /// `a_m(R)` per radius; `None` where `R^m` is below the amplification floor.
    pub values: Vec<Option<Complex>>,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiscAnalyticityReport {
    pub subject: String,
    pub radii: Vec<f64>,
    pub order: usize,
    pub negative_residuals: Vec<f64>,
    pub negative_tolerance: f64,
    pub radial: Vec<RadialCoefficient>,
    pub consistency_defect: f64,
    pub consistency_worst_mode: Option<usize>,
    pub consistency_tolerance: f64,
    pub verdict: Verdict,
}

impl DiscAnalyticityReport {
    pub fn negative_residual(&self) -> f64 {
        self.negative_residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Worst failing circle by residual, if any.
    pub fn failing_radius(&self) -> Option<f64> {
        self.negative_residuals
            .iter()
            .zip(&self.radii)
            .filter(|(r, _)| **r > self.negative_tolerance)
            .max_by(|a, b| a.0.total_cmp(b.0))
            .map(|(_, radius)| *radius)
    }
}

/// Disc analyticity from samples on concentric circles `|z| = R_i`.
///
/// Each ring must hold `order` values at `R e^{2πik/order}`.
pub fn disc_analyticity_from_samples(
    subject: String,
    radii: &[f64],
    rings: &[Vec<Complex>],
    negative_tol: f64,
    consistency_tol: f64,
) -> Result<DiscAnalyticityReport> {
    check_tol(negative_tol)?;
    check_tol(consistency_tol)?;
    let mut distinct = radii.to_vec();
    distinct.sort_by(|a, b| a.total_cmp(b));
    distinct.dedup();
    if distinct.len() < 3 || distinct.len() != radii.len() {
        return Err(Error::invalid("need at least 3 distinct radii"));
    }
    if radii.iter().any(|r| !(*r > 0.0 && *r <= 1.0)) {
        return Err(Error::invalid("radii must lie in (0, 1]"));
    }
    if rings.len() != radii.len() {
        return Err(Error::invalid("one sample ring per radius"));
    }
    let order = rings[0].len();
    if order < MIN_CIRCLE_SAMPLES || rings.iter().any(|r| r.len() != order) {
        return Err(Error::invalid(
            "rings need equal sample counts of at least 16",
        ));
    }
    if rings.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite disc sample"));
    }
    let rule = PeriodicRule::new(order);
    let negative_residuals: Vec<f64> = rings.iter().map(|r| rule.negative_residual(r).0).collect();
    // Reference radius for the relative spread: the largest one, least amplified.
    let reference = radii
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut radial = Vec::new();
    let mut consistency_defect: f64 = 0.0;
    let mut consistency_worst_mode = None;
    for m in 0..=order / 4 {
        let values: Vec<Option<Complex>> = rings
            .iter()
            .zip(radii)
            .map(|(ring, &r)| {
                let scale = r.powi(m as i32);
                (scale >= RADIAL_AMPLIFICATION_FLOOR)
                    .then(|| rule.coefficient(ring, m as i64) / scale)
            })
            .collect();
        let present: Vec<Complex> = values.iter().flatten().copied().collect();
        let mut spread: f64 = 0.0;
        for (i, a) in present.iter().enumerate() {
            for b in &present[i + 1..] {
                spread = spread.max((a - b).norm());
            }
        }
        let anchor = values[reference]
            .or(present.last().copied())
            .unwrap_or_default();
        let defect = spread / (1.0 + anchor.norm());
        if defect > consistency_defect || consistency_worst_mode.is_none() {
            consistency_defect = consistency_defect.max(defect);
            consistency_worst_mode = Some(m);
        }
        radial.push(RadialCoefficient { m, values, defect });
    }
    let negative_ok = negative_residuals.iter().all(|r| *r <= negative_tol);
    let verdict = if negative_ok && consistency_defect <= consistency_tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(DiscAnalyticityReport {
        subject,
        radii: radii.to_vec(),
        order,
        negative_residuals,
        negative_tolerance: negative_tol,
        radial,
        consistency_defect,
        consistency_worst_mode,
        consistency_tolerance: consistency_tol,
        verdict,
    })
}

pub fn disc_analyticity_test<G: Fn(Complex) -> Complex>(
    phi: G,
    radii: &[f64],
    order: usize,
    negative_tol: f64,
    consistency_tol: f64,
) -> Result<DiscAnalyticityReport> {
    let rule = PeriodicRule::new(order.max(1));
    let rings: Vec<Vec<Complex>> = radii
        .iter()
        .map(|&r| rule.nodes().map(|e| phi(e * r)).collect())
        .collect();
    disc_analyticity_from_samples(
        String::from("disc"),
        radii,
        &rings,
        negative_tol,
        consistency_tol,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Offense {
    /// `c_n` for negative `n` is not negligible.
    NegativeSlice,
    /// `c_n` has a negative Fourier coefficient on some circle.
    CircleResidual,
    /// `c_n` restricted to circles is not the trace of one disc function.
    RadialInconsistency,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Offending {
    pub n: i32,
    pub kind: Offense,
    pub location: Option<Complex>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SliceSummary {
    pub n: i32,
    /// Max `|c_n|` over the grid for negative `n`; disc residual otherwise.
    pub residual: f64,
    pub consistency_defect: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BallReport {
    pub subject: String,
    pub n_min: i32,
    pub n_max: i32,
    pub order: usize,
    pub grid: PolarGrid,
    pub tolerance: f64,
    pub consistency_tolerance: f64,
    pub verdict: Verdict,
    pub offending: Option<Offending>,
    pub slices: Vec<SliceSummary>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BallOptions {
    pub n_min: i32,
    pub n_max: i32,
    pub grid: PolarGrid,
    pub order: usize,
    pub tolerance: f64,
    pub consistency_tolerance: f64,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            n_min: -4,
            n_max: 8,
            grid: default_ball_grid(),
            order: crate::DEFAULT_ORDER,
            tolerance: crate::DEFAULT_TOLERANCE,
            consistency_tolerance: crate::DEFAULT_TOLERANCE,
        }
    }
}

/// `f` extends through the ball iff every `c_n`, `n < 0`, vanishes and every
/// `c_n`, `n >= 0`, is holomorphic on the disc. The first failing `n` is
/// reported, negative indices first.
pub fn ball_extension_verdict<F: BoundaryFunction + ?Sized>(
    f: &F,
    subject: String,
    options: &BallOptions,
) -> Result<BallReport> {
    let BallOptions {
        n_min,
        n_max,
        ref grid,
        order,
        tolerance: tol,
        consistency_tolerance: consistency_tol,
    } = *options;
    check_tol(tol)?;
    if n_min > -4 || n_max < 8 {
        return Err(Error::invalid("n-range must cover -4..8"));
    }
    let table = slice_table(f, n_min, n_max, grid, order)?;
    let mut slices = Vec::new();
    let mut offending = None;
    for n in n_min..=n_max {
        let values = table.get(n).expect("n in range");
        if n < 0 {
            let (idx, worst) = values
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.norm()))
                .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            let verdict = Verdict::from_residual(worst, tol);
            if !verdict.is_pass() && offending.is_none() {
                let location = grid.points().nth(idx);
                offending = Some(Offending {
                    n,
                    kind: Offense::NegativeSlice,
                    location,
                    residual: worst,
                });
            }
            slices.push(SliceSummary {
                n,
                residual: worst,
                consistency_defect: None,
                verdict,
            });
            continue;
        }
        let rings: Vec<Vec<Complex>> = (0..grid.radii.len())
            .map(|i| table.ring(n, i).expect("ring").to_vec())
            .collect();
        let disc = disc_analyticity_from_samples(
            format!("c_{n}"),
            &grid.radii,
            &rings,
            tol,
            consistency_tol,
        )?;
        if !disc.verdict.is_pass() && offending.is_none() {
            let (kind, location, residual) = match disc.failing_radius() {
                Some(r) => (
                    Offense::CircleResidual,
                    Some(Complex::new(r, 0.0)),
                    disc.negative_residual(),
                ),
                None => (Offense::RadialInconsistency, None, disc.consistency_defect),
            };
            offending = Some(Offending {
                n,
                kind,
                location,
                residual,
            });
        }
        slices.push(SliceSummary {
            n,
            residual: disc.negative_residual(),
            consistency_defect: Some(disc.consistency_defect),
            verdict: disc.verdict,
        });
    }
    let verdict = if offending.is_none() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(BallReport {
        subject,
        n_min,
        n_max,
        order,
        grid: grid.clone(),
        tolerance: tol,
        consistency_tolerance: consistency_tol,
        verdict,
        offending,
        slices,
    })
}

pub fn default_ball_grid() -> PolarGrid {
    PolarGrid {
        radii: DEFAULT_RADII.to_vec(),
        angular: DEFAULT_ANGULAR,
    }
}

/// Circle test of `z -> (z - z0)^n c_n(z)` on `π_1(L ∩ bB)` for a line through `(z0, 0)`.
///
/// When `|z0| = 1` the projected circle touches the unit circle at `z0`. There
/// the product takes its continuous limit: `c_n` itself for `n <= 0`, and 0
/// for `n > 0` because `c_n` stays bounded. Any other node that cannot be
/// evaluated takes the average of its neighbours.
pub fn prop33_factor_test<F: BoundaryFunction + ?Sized>(
    f: &F,
    z0: Complex,
    n: i32,
    line: &ComplexLine,
    order: usize,
    tol: f64,
) -> Result<ExtensionReport> {
    check_tol(tol)?;
    let anchor = ComplexPoint2::new(z0, Complex::new(0.0, 0.0));
    if line.distance_to(anchor) > 1e-9 * (1.0 + z0.norm()) {
        return Err(Error::invalid("line must pass through (z0, 0)"));
    }
    let d = line.direction;
    let scale = d.norm();
    if d.w.norm() <= 1e-12 * scale {
        return Err(Error::invalid("line must not be the z-axis"));
    }
    if d.z.norm() <= 1e-12 * scale {
        return Err(Error::invalid("line must not be parallel to the w-axis"));
    }
    let lsc = line_sphere_circle(line)?;
    let circle = lsc
        .z_circle()
        .ok_or(Error::invalid("projected circle is degenerate"))?;
    let slice_order = order.max(crate::slicing::min_order(n));
    let rule = PeriodicRule::new(order);
    let mut values: Vec<Option<Complex>> = rule
        .nodes()
        .map(|e| {
            let z = circle.center + e * circle.radius;
            if n > 0 && (z - z0).norm() <= 1e-12 && z0.norm() >= 1.0 - 1e-12 {
                return Some(Complex::new(0.0, 0.0));
            }
            let c = if n <= 0 {
                closed_disc_slice_coefficient(f, n, z, slice_order)
            } else {
                slice_coefficient(f, n, z, slice_order)
            };
            c.ok()
                .map(|c| (z - z0).powi(n) * c)
                .filter(|v| v.is_finite())
        })
        .collect();
    let missing: Vec<usize> = (0..order).filter(|&k| values[k].is_none()).collect();
    if missing.len() > 1 {
        return Err(Error::invalid(
            "more than one projected node outside the open disc",
        ));
    }
    for k in missing {
        let prev = values[(k + order - 1) % order];
        let next = values[(k + 1) % order];
        values[k] = match (prev, next) {
            (Some(a), Some(b)) => Some((a + b) * 0.5),
            _ => return Err(Error::invalid("cannot fill the boundary node")),
        };
    }
    let values: Vec<Complex> = values.into_iter().map(|v| v.expect("filled")).collect();
    let samples = CircleSamples {
        circle,
        theta0: 0.0,
        values,
    };
    let mut report = circle_extension_test(&samples, tol)?;
    report.subject = format!(
        "prop33:n={n},z0={}+{}i,{}",
        z0.re,
        z0.im,
        line_subject(line)
    );
    Ok(report)
}

/// `f ∘ φ_a`.
#[derive(Debug, Clone, Copy)]
pub struct PullBack<'a, F: ?Sized> {
    pub f: &'a F,
    pub phi: BallAutomorphism,
}

impl<F: BoundaryFunction + ?Sized> BoundaryFunction for PullBack<'_, F> {
    fn eval(&self, p: ComplexPoint2) -> Complex {
        match self.phi.apply(p) {
            Ok(q) => self.f.eval(q),
            Err(_) => Complex::new(f64::NAN, f64::NAN),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn circle_examples() {
        let s = CircleSamples::uniform(Circle::unit(), 64, |z| z * z);
        let r = circle_extension_test(&s, 1e-8).unwrap();
        assert!(r.residual < 1e-15 && r.verdict.is_pass());
        let s = CircleSamples::uniform(Circle::unit(), 64, |z| z.conj());
        let r = circle_extension_test(&s, 1e-8).unwrap();
        assert!((r.residual - 1.0).abs() < 1e-14);
        assert_eq!(r.worst_mode, Some(-1));
        assert!(!r.verdict.is_pass());
        let s = CircleSamples::uniform(Circle::unit(), 8, |z| z);
        assert!(circle_extension_test(&s, 1e-8).is_err());
    }

    #[test]
    fn from_nodes_checks_uniformity() {
        let circle = Circle::new(c(0.2, 0.1), 0.5).unwrap();
        let mut pts: Vec<(Complex, Complex)> = (0..32)
            .map(|k| {
                let z = circle.point_at(0.3 + TAU * k as f64 / 32.0);
                (z, z)
            })
            .collect();
        assert!(CircleSamples::from_nodes(circle, &pts).is_ok());
        pts[5].0 += 1e-3;
        assert!(CircleSamples::from_nodes(circle, &pts).is_err());
    }

    #[test]
    fn example11_circle_surrounding_origin_passes() {
        let circle = Circle::new(c(0.1, -0.2), 0.6).unwrap();
        let s = CircleSamples::uniform(circle, 256, |z| z.powi(5) / z.conj());
        assert!(circle_extension_test(&s, 1e-8).unwrap().verdict.is_pass());
    }

    #[test]
    fn line_examples() {
        let absw2 = |p: ComplexPoint2| c(p.w.norm_sqr(), 0.0);
        let line = ComplexLine::through(
            ComplexPoint2::ORIGIN,
            ComplexPoint2::new(c(1.0, 0.0), c(0.5, 0.5)),
        )
        .unwrap();
        let r = line_extension_test(&absw2, &line, 64, 1e-10).unwrap();
        assert!(r.residual < 1e-15);
        let conj_z = |p: ComplexPoint2| p.z.conj();
        let line = ComplexLine::parallel(
            ComplexPoint2::new(c(0.0, 0.0), c(0.6, 0.0)),
            ComplexPoint2::new(c(1.0, 0.0), c(0.0, 0.0)),
        )
        .unwrap();
        let r = line_extension_test(&conj_z, &line, 64, 1e-8).unwrap();
        assert!((r.residual - 0.8).abs() < 1e-14);
        assert!(!r.verdict.is_pass());
    }

    #[test]
    fn family_lines_meet_ball_and_lie_in_pencil() {
        let p = ComplexPoint2::new(c(0.0, 0.0), c(0.0, 0.5));
        let lines = family_lines(&LineFamily::Through(p), 20).unwrap();
        assert_eq!(lines.len(), 20);
        for l in &lines {
            assert!(l.distance_to(p) < 1e-14);
            assert!(line_sphere_circle(l).is_ok());
        }
        let d = ComplexPoint2::new(c(1.0, 0.0), c(-1.0, 0.0));
        let lines = family_lines(&LineFamily::Parallel(d), 50).unwrap();
        assert_eq!(lines.len(), 50);
        for l in &lines {
            assert!(l.direction_defect(d) < 1e-14);
            assert!(l.foot_of_origin().norm() < 1.0);
        }
        assert!(family_lines(&LineFamily::Parallel(d), 1).is_err());
    }

    #[test]
    fn holomorphic_family_and_conj_w_family() {
        let f = |p: ComplexPoint2| p.z * p.z + p.z * p.w;
        let through = LineFamily::Through(ComplexPoint2::new(c(0.3, 0.0), c(0.0, 0.2)));
        let r = family_extension_test(&f, &through, 16, 64, 1e-12).unwrap();
        assert!(r.verdict.is_pass(), "{}", r.residual);
        assert_eq!(
            r.note.as_deref(),
            Some("necessary-condition pass at density 16")
        );
        let g = |p: ComplexPoint2| p.w.conj();
        let r = family_extension_test(
            &g,
            &LineFamily::Through(ComplexPoint2::ORIGIN),
            16,
            64,
            1e-8,
        )
        .unwrap();
        assert!(r.details.iter().all(|d| !d.verdict.is_pass()));
    }

    #[test]
    fn family_outside_ball_is_error() {
        let f = |p: ComplexPoint2| p.z;
        let far = LineFamily::Through(ComplexPoint2::new(c(50.0, 0.0), c(50.0, 0.0)));
        // Some lines through a far point still meet the ball; all must not be skipped silently.
        match family_extension_test(&f, &far, 4, 32, 1e-8) {
            Ok(r) => assert_eq!(r.tested + r.skipped, 4),
            Err(e) => assert!(matches!(e, Error::Invalid(_))),
        }
    }

    #[test]
    fn disc_examples() {
        let radii = [0.3, 0.5, 0.7, 0.9];
        let r = disc_analyticity_test(|z| z * z * z, &radii, 64, 1e-8, 1e-8).unwrap();
        assert!(r.verdict.is_pass() && r.consistency_defect < 1e-13);
        let r = disc_analyticity_test(|z| z.conj(), &radii, 64, 1e-8, 1e-8).unwrap();
        assert!(r.negative_residuals.iter().all(|x| *x > 0.1));
        assert!(!r.verdict.is_pass());
        let r = disc_analyticity_test(|z| z.powi(5) / z.conj(), &radii, 64, 1e-8, 1e-8).unwrap();
        assert!(r.negative_residual() < 1e-12);
        assert!(!r.verdict.is_pass());
        assert_eq!(r.consistency_worst_mode, Some(6));
        assert!(disc_analyticity_test(|z| z, &[0.5, 0.9], 64, 1e-8, 1e-8).is_err());
    }

    #[test]
    fn ball_examples() {
        let opts = BallOptions::default();
        let f = |p: ComplexPoint2| p.z * p.z + p.w * p.w * p.w;
        let r = ball_extension_verdict(&f, String::from("f"), &opts).unwrap();
        assert!(r.verdict.is_pass(), "{:?}", r.offending);
        let g = |p: ComplexPoint2| c(p.w.norm_sqr(), 0.0);
        let r = ball_extension_verdict(&g, String::from("g"), &opts).unwrap();
        assert_eq!(r.offending.as_ref().map(|o| o.n), Some(0));
        let narrow = BallOptions { n_min: -2, ..opts };
        assert!(ball_extension_verdict(&g, String::from("g"), &narrow).is_err());
    }

    #[test]
    fn prop33_holomorphic_and_exclusions() {
        let f = |p: ComplexPoint2| p.z * p.w + p.z * p.z * p.w * p.w;
        let z0 = c(0.2, 0.1);
        let line = ComplexLine::through(
            ComplexPoint2::new(z0, c(0.0, 0.0)),
            ComplexPoint2::new(c(1.0, 0.0), c(0.3, 0.4)),
        )
        .unwrap();
        for n in 0..3 {
            let r = prop33_factor_test(&f, z0, n, &line, 64, 1e-8).unwrap();
            assert!(r.verdict.is_pass(), "n={n} residual={}", r.residual);
        }
        let axis = ComplexLine::through(
            ComplexPoint2::ORIGIN,
            ComplexPoint2::new(c(1.0, 0.0), c(0.0, 0.0)),
        )
        .unwrap();
        assert!(prop33_factor_test(&f, c(0.0, 0.0), 0, &axis, 64, 1e-8).is_err());
        let vertical = ComplexLine::through(
            ComplexPoint2::ORIGIN,
            ComplexPoint2::new(c(0.0, 0.0), c(1.0, 0.0)),
        )
        .unwrap();
        assert!(prop33_factor_test(&f, c(0.0, 0.0), 0, &vertical, 64, 1e-8).is_err());
    }

    #[test]
    fn prop33_boundary_anchor_uses_limit() {
        let f = |p: ComplexPoint2| p.z * p.z + p.w;
        let z0 = c(0.0, 1.0);
        let line = ComplexLine::through(
            ComplexPoint2::new(z0, c(0.0, 0.0)),
            ComplexPoint2::new(c(1.0, 0.0), c(1.0, 0.0)),
        )
        .unwrap();
        for n in 0..3 {
            let r = prop33_factor_test(&f, z0, n, &line, 64, 1e-8).unwrap();
            assert!(r.verdict.is_pass(), "n={n} residual={}", r.residual);
        }
    }
}
