//! Semiquadrics `Λ(a, r) = {(z, w) : (z - a)(w - conj a) = r^2, 0 < |z - a| < r}`
//! attached to the diagonal `{(ζ, conj ζ)}` along the lift of `bΔ(a, r)`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::{Circle, ComplexPoint2};
use crate::{Complex, Error, Result};

/// Band around `|z - a| = r` inside which an intersection is reported as degenerate.
pub const GRAZING_BAND: f64 = 1e-10;
/// Threshold above which a fiber value counts as a violation of the separation claim.
pub const VIOLATION_SLACK: f64 = 1e-12;
const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Semiquadric {
    pub a: Complex,
    pub r: f64,
}

/// A point of the Riemann sphere; only used for semiquadric graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ExtendedComplex {
    Finite(Complex),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(self) -> Option<Complex> {
        match self {
            ExtendedComplex::Finite(c) => Some(c),
            ExtendedComplex::Infinity => None,
        }
    }
}

impl Semiquadric {
    pub fn new(a: Complex, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite() && a.is_finite()) {
            return Err(Error::invalid("semiquadric radius must be positive"));
        }
        Ok(Semiquadric { a, r })
    }

    pub fn circle(&self) -> Circle {
        Circle {
            center: self.a,
            radius: self.r,
        }
    }

    /// `(z - a)(w - conj a) - r^2`.
    pub fn defining_residual(&self, p: ComplexPoint2) -> Complex {
        (p.z - self.a) * (p.w - self.a.conj()) - self.r * self.r
    }

    /// `w = conj(a) + r^2 / (z - a)` over the disc `|z - a| < r`; infinity at `z = a`.
    pub fn graph(&self, z: Complex) -> Result<ExtendedComplex> {
        let d = z - self.a;
        if !(d.norm() < self.r) {
            return Err(Error::OutsideDomain("|z - a| must be below r"));
        }
        if d.norm_sqr() == 0.0 {
            return Ok(ExtendedComplex::Infinity);
        }
        Ok(ExtendedComplex::Finite(
            self.a.conj() + d.inv() * (self.r * self.r),
        ))
    }
}

pub fn semiquadric_graph(s: &Semiquadric, z: Complex) -> Result<ExtendedComplex> {
    s.graph(z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", content = "point", rename_all = "kebab-case")
)]
pub enum Intersection {
    Empty,
    Point(ComplexPoint2),
    /// A root within `GRAZING_BAND` of one of the boundary circles.
    Degenerate(ComplexPoint2),
}

fn quadratic_roots(a: Complex, b: Complex, c: Complex) -> [Complex; 2] {
    let sq = (b * b - a * c * 4.0).sqrt();
    let sq = if (b.conj() * sq).re >= 0.0 { sq } else { -sq };
    let q = -(b + sq) * 0.5;
    if q.norm_sqr() == 0.0 {
        return [Complex::new(0.0, 0.0); 2];
    }
    [q / a, c / q]
}

/// The unique common point of two semiquadrics, if any.
///
/// Eliminating `w` leaves a quadratic in `z`; roots are kept when they satisfy
/// `0 < |z - a_i| < r_i` for both semiquadrics. A root within `GRAZING_BAND`
/// of one circle and inside the other is reported as degenerate.
pub fn semiquadrics_intersect(s1: &Semiquadric, s2: &Semiquadric) -> Result<Intersection> {
    if s1.a == s2.a && s1.r == s2.r {
        return Err(Error::invalid("semiquadrics must differ"));
    }
    let delta = s1.a.conj() - s2.a.conj();
    if delta.norm() == 0.0 {
        // Only z = a solves the linear remainder, and that point is excluded.
        return Ok(Intersection::Empty);
    }
    let (r1, r2) = (s1.r * s1.r, s2.r * s2.r);
    let b = -delta * (s1.a + s2.a) + (r1 - r2);
    let c = delta * s1.a * s2.a - s2.a * r1 + s1.a * r2;
    let mut strict = Vec::new();
    let mut grazing = Vec::new();
    for z in quadratic_roots(delta, b, c) {
        let d1 = (z - s1.a).norm();
        let d2 = (z - s2.a).norm();
        if d1 <= GRAZING_BAND || d2 <= GRAZING_BAND {
            continue;
        }
        let in1 = d1 < s1.r - GRAZING_BAND;
        let in2 = d2 < s2.r - GRAZING_BAND;
        let on1 = (d1 - s1.r).abs() <= GRAZING_BAND;
        let on2 = (d2 - s2.r).abs() <= GRAZING_BAND;
        let inside = in1 && in2;
        // Crossing points of the two circles solve the quadratic but lie on
        // both boundaries, hence in neither semiquadric.
        let near = (on1 && in2) || (in1 && on2);
        let w = s1.a.conj() + (z - s1.a).inv() * r1;
        let point = ComplexPoint2::new(z, w);
        if inside {
            strict.push(point);
        } else if near {
            grazing.push(point);
        }
    }
    match (strict.len(), grazing.first()) {
        (0, None) => Ok(Intersection::Empty),
        (0, Some(p)) => Ok(Intersection::Degenerate(*p)),
        (1, _) => Ok(Intersection::Point(strict[0])),
        _ => Err(Error::NonUniqueIntersection),
    }
}

/// Upper bound on `eta`: `1 / (2 (t + 1/t))`.
pub fn eta_bound(t: f64) -> f64 {
    1.0 / (2.0 * (t + 1.0 / t))
}

/// Real fiber over `x` of the semiquadrics `S_T`, `0 <= T <= T0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeparationProfile {
    pub x: f64,
    pub t: f64,
    /// Largest `T` whose disc still contains `x`.
    pub t0: f64,
}

impl SeparationProfile {
    fn sum(&self) -> f64 {
        self.t + 1.0 / self.t
    }

    /// `y(T) = T + (1 - (t + 1/t) T + T^2) / (x - T)`.
    pub fn y(&self, big_t: f64) -> f64 {
        big_t + (1.0 - self.sum() * big_t + big_t * big_t) / (self.x - big_t)
    }

    /// `dy/dT = (x^2 - (t + 1/t) x + 1) / (x - T)^2`.
    pub fn dy_dt(&self, big_t: f64) -> f64 {
        let x = self.x;
        (x * x - self.sum() * x + 1.0) / ((x - big_t) * (x - big_t))
    }
}

pub fn separation_profile(x: f64, t: f64) -> Result<SeparationProfile> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::invalid("t must lie in (0, 1)"));
    }
    if !(x > 0.0 && x < eta_bound(t)) {
        return Err(Error::invalid("x must lie in (0, 1/(2(t + 1/t)))"));
    }
    let t0 = (1.0 - x * x) / ((t + 1.0 / t) - 2.0 * x);
    Ok(SeparationProfile { x, t, t0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanGrid {
    pub x: usize,
    pub r: usize,
    pub t: usize,
}

impl ScanGrid {
    pub fn cube(n: usize) -> Self {
        ScanGrid { x: n, r: n, t: n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FiberFamily {
    /// `Λ(0, R)`; parameter `R`.
    Concentric,
    /// `Λ(T, sqrt((T - t)(T - 1/t)))`; parameter `T`.
    Shifted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Counterexample {
    pub x: f64,
    pub family: FiberFamily,
    pub parameter: f64,
    pub y: f64,
    pub violation: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeparationReport {
    pub t: f64,
    pub eta: f64,
    pub grid: ScanGrid,
    pub max_violation: f64,
    pub violations: usize,
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Brute-force scan of the real fibers `{x} × C`, `0 < x < eta`.
///
/// Concentric fibers must satisfy `x < y < 1/x`; shifted fibers must satisfy
/// `y > 1/x` or `y < x`. The violation measure is positive exactly when a
/// fiber value lands in the forbidden range.
pub fn prop71_separation_check(t: f64, eta: f64, grid: ScanGrid) -> Result<SeparationReport> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::invalid("t must lie in (0, 1)"));
    }
    if !(eta > 0.0 && eta < 1.0) || grid.x == 0 || grid.r == 0 || grid.t == 0 {
        return Err(Error::invalid(
            "eta must lie in (0, 1) and grid sizes must be positive",
        ));
    }
    let mut report = SeparationReport {
        t,
        eta,
        grid,
        max_violation: f64::NEG_INFINITY,
        violations: 0,
        checked: 0,
        counterexamples: Vec::new(),
    };
    let record = |report: &mut SeparationReport, cx: Counterexample| {
        report.checked += 1;
        report.max_violation = report.max_violation.max(cx.violation);
        if cx.violation > VIOLATION_SLACK {
            report.violations += 1;
            if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                report.counterexamples.push(cx);
            }
        }
    };
    for i in 0..grid.x {
        let x = eta * (i + 1) as f64 / (grid.x + 1) as f64;
        for j in 0..grid.r {
            let big_r = (j + 1) as f64 / (grid.r + 1) as f64;
            if big_r <= x {
                continue;
            }
            let y = big_r * big_r / x;
            let violation = (x - y).max(y - 1.0 / x);
            record(
                &mut report,
                Counterexample {
                    x,
                    family: FiberFamily::Concentric,
                    parameter: big_r,
                    y,
                    violation,
                },
            );
        }
        for k in 0..grid.t {
            let big_t = t * (k + 1) as f64 / (grid.t + 1) as f64;
            let rho2 = (big_t - t) * (big_t - 1.0 / t);
            let d = x - big_t;
            if d == 0.0 || d * d >= rho2 {
                continue;
            }
            let y = big_t + rho2 / d;
            let violation = (y - x).min(1.0 / x - y);
            record(
                &mut report,
                Counterexample {
                    x,
                    family: FiberFamily::Shifted,
                    parameter: big_t,
                    y,
                    violation,
                },
            );
        }
    }
    Ok(report)
}

/// Fiber `M_z` of the glued CR manifold over a point `z` of
/// `Δ \ ((-1, 0] ∪ [eta, 1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum FiberDecomposition {
    /// Over real `x` the fiber is the whole real axis.
    RealAxis {
        x: f64,
    },
    Curve(CurveFiber),
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurveFiber {
    pub z: Complex,
    pub t: f64,
    /// Endpoints `conj(z)` and `1/z` of the concentric part.
    pub segment: (Complex, Complex),
    /// Circle through `t`, `1/t` and `conj(z)`.
    pub circle: Circle,
    /// The arc is `w(T)` for `0 <= T <= arc_end`, with `w(arc_end) = conj(z)`.
    pub arc_end: f64,
}

impl CurveFiber {
    /// `w(T) = (T z - t T - T/t + 1) / (z - T)`.
    pub fn arc_point(&self, big_t: f64) -> Complex {
        let (z, t) = (self.z, self.t);
        (z * big_t - t * big_t - big_t / t + 1.0) / (z - big_t)
    }

    pub fn arc_points(&self, n: usize) -> Vec<Complex> {
        let n = n.max(2);
        (0..n)
            .map(|k| self.arc_point(self.arc_end * k as f64 / (n - 1) as f64))
            .collect()
    }

    /// `R^2 / z` for `|z| <= R <= 1`.
    pub fn segment_points(&self, n: usize) -> Vec<Complex> {
        let n = n.max(2);
        let lo = self.z.norm();
        (0..n)
            .map(|k| {
                let big_r = lo + (1.0 - lo) * k as f64 / (n - 1) as f64;
                self.z.inv() * (big_r * big_r)
            })
            .collect()
    }
}

pub fn fiber_m(z: Complex, t: f64, eta: f64) -> Result<FiberDecomposition> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::invalid("t must lie in (0, 1)"));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid("eta must lie in (0, 1)"));
    }
    if !(z.norm_sqr() < 1.0) {
        return Err(Error::OutsideDomain("z must lie in the open unit disc"));
    }
    if z.im == 0.0 {
        if z.re > 0.0 && z.re < eta {
            return Ok(FiberDecomposition::RealAxis { x: z.re });
        }
        return Err(Error::OutsideDomain("z lies on a removed slit"));
    }
    let circle = Circle::through_three(Complex::new(t, 0.0), Complex::new(1.0 / t, 0.0), z.conj())
        .ok_or(Error::OutsideDomain("z too close to the real axis"))?;
    let arc_end = (1.0 - z.norm_sqr()) / ((t + 1.0 / t) - 2.0 * z.re);
    Ok(FiberDecomposition::Curve(CurveFiber {
        z,
        t,
        segment: (z.conj(), z.inv()),
        circle,
        arc_end,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn graph_examples() {
        let unit = Semiquadric::new(c(0.0, 0.0), 1.0).unwrap();
        let z = Complex::from_polar(0.999_999_999, 0.7);
        let w = unit.graph(z).unwrap().finite().unwrap();
        assert!((w - z.inv()).norm() < 1e-15);
        assert_eq!(unit.graph(c(0.0, 0.0)).unwrap(), ExtendedComplex::Infinity);
        let s = Semiquadric::new(c(0.2, 0.0), 0.3).unwrap();
        let w = s.graph(c(0.25, 0.0)).unwrap().finite().unwrap();
        assert!((w - c(2.0, 0.0)).norm() < 1e-13);
        assert!(
            s.defining_residual(ComplexPoint2::new(c(0.25, 0.0), w))
                .norm()
                < 1e-15
        );
        assert!(s.graph(c(0.6, 0.0)).is_err());
    }

    #[test]
    fn intersection_examples() {
        let unit = Semiquadric::new(c(0.0, 0.0), 1.0).unwrap();
        let half = Semiquadric::new(c(0.0, 0.0), 0.5).unwrap();
        assert_eq!(
            semiquadrics_intersect(&unit, &half).unwrap(),
            Intersection::Empty
        );
        let inner = Semiquadric::new(c(0.2, 0.0), 0.3).unwrap();
        let Intersection::Point(p) = semiquadrics_intersect(&unit, &inner).unwrap() else {
            panic!("expected one point");
        };
        let root = (4.75 - (4.75f64 * 4.75 - 4.0).sqrt()) / 2.0;
        assert!((p.z - c(root, 0.0)).norm() < 1e-14);
        assert!((p.w - p.z.inv()).norm() < 1e-13);
        assert!(unit.defining_residual(p).norm() < 1e-12);
        assert!(inner.defining_residual(p).norm() < 1e-12);
        let left = Semiquadric::new(c(0.0, 0.0), 0.5).unwrap();
        let right = Semiquadric::new(c(2.0, 0.0), 0.5).unwrap();
        assert_eq!(
            semiquadrics_intersect(&left, &right).unwrap(),
            Intersection::Empty
        );
        assert!(semiquadrics_intersect(&unit, &unit).is_err());
    }

    #[test]
    fn profile_values() {
        let p = separation_profile(0.19, 0.5).unwrap();
        assert!((p.t0 - 0.9639 / 2.12).abs() < 1e-15);
        assert!((p.y(0.0) - 1.0 / 0.19).abs() < 1e-14);
        assert!(separation_profile(0.2, 0.5).is_err());
        assert!(separation_profile(0.1, 1.5).is_err());
    }

    #[test]
    fn profile_t0_solves_boundary_condition() {
        // Bisection on (x - T)^2 = (T - t)(T - 1/t) over (x, t).
        let (x, t) = (0.19, 0.5);
        let g = |tt: f64| (x - tt) * (x - tt) - (tt - t) * (tt - 1.0 / t);
        let (mut lo, mut hi) = (x, t);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo) * g(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let p = separation_profile(x, t).unwrap();
        assert!((p.t0 - 0.5 * (lo + hi)).abs() < 1e-12);
        assert!((p.t0 - 0.454_670).abs() < 1e-6);
    }

    #[test]
    fn no_concentric_fiber_below_radius() {
        let report = prop71_separation_check(0.5, 0.19, ScanGrid { x: 10, r: 10, t: 1 }).unwrap();
        // Every concentric point has R > x, so for x ~ eta small radii drop out.
        let max_points = 10 * 10 + 10;
        assert!(report.checked < max_points);
    }

    #[test]
    fn scan_detects_violations_beyond_t() {
        let ok = prop71_separation_check(0.5, 0.19, ScanGrid::cube(20)).unwrap();
        assert_eq!(ok.violations, 0);
        assert!(ok.max_violation <= VIOLATION_SLACK);
        let bad = prop71_separation_check(0.5, 0.9, ScanGrid::cube(20)).unwrap();
        assert!(bad.violations > 0);
        assert!(!bad.counterexamples.is_empty());
    }

    #[test]
    fn fiber_real_and_curve() {
        assert_eq!(
            fiber_m(c(0.1, 0.0), 0.5, 0.19).unwrap(),
            FiberDecomposition::RealAxis { x: 0.1 }
        );
        assert!(fiber_m(c(-0.3, 0.0), 0.5, 0.19).is_err());
        assert!(fiber_m(c(0.5, 0.0), 0.5, 0.19).is_err());
        assert!(fiber_m(c(0.9, 0.9), 0.5, 0.19).is_err());
        let FiberDecomposition::Curve(f) = fiber_m(c(0.0, 0.1), 0.5, 0.19).unwrap() else {
            panic!("expected a curve fiber");
        };
        assert!((f.arc_point(0.0) - c(0.0, 0.1).inv()).norm() < 1e-12);
        assert!((f.arc_point(f.arc_end) - c(0.0, -0.1)).norm() < 1e-12);
        for w in f.arc_points(64) {
            assert!(f.circle.signed_distance(w).abs() < 1e-12 * (1.0 + f.circle.radius));
        }
        assert!((f.arc_point(0.5) - c(0.5, 0.0)).norm() < 1e-12);
        assert!((f.arc_point(2.0) - c(2.0, 0.0)).norm() < 1e-12);
    }
}
