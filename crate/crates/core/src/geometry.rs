//! Complex lines in C², automorphisms of the unit ball, line-sphere
//! intersections, projection circles and reduction of a point pair to one of
//! the canonical line-pencil configurations.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Complex, Error, Result};

/// Lines whose slice disc is smaller than this are treated as tangent.
pub const TANGENCY_RADIUS: f64 = 1e-10;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComplexPoint2 {
    pub z: Complex,
    pub w: Complex,
}

impl ComplexPoint2 {
    pub const ORIGIN: ComplexPoint2 = ComplexPoint2 { z: ZERO, w: ZERO };

    pub const fn new(z: Complex, w: Complex) -> Self {
        ComplexPoint2 { z, w }
    }

    pub fn real(z: f64, w: f64) -> Self {
        ComplexPoint2::new(Complex::new(z, 0.0), Complex::new(w, 0.0))
    }

    /// Hermitian product `<self|other> = z conj(z') + w conj(w')`.
    pub fn inner(&self, other: &ComplexPoint2) -> Complex {
        self.z * other.z.conj() + self.w * other.w.conj()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z.norm_sqr() + self.w.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex) -> Self {
        ComplexPoint2::new(self.z * c, self.w * c)
    }

    pub fn is_finite(&self) -> bool {
        self.z.is_finite() && self.w.is_finite()
    }

    /// `| |z|^2 + |w|^2 - 1 |`.
    pub fn sphere_residual(&self) -> f64 {
        (self.norm_sqr() - 1.0).abs()
    }

    pub fn in_ball(&self) -> bool {
        self.norm_sqr() < 1.0
    }
}

impl Add for ComplexPoint2 {
    type Output = ComplexPoint2;
    fn add(self, rhs: Self) -> Self {
        ComplexPoint2::new(self.z + rhs.z, self.w + rhs.w)
    }
}

impl Sub for ComplexPoint2 {
    type Output = ComplexPoint2;
    fn sub(self, rhs: Self) -> Self {
        ComplexPoint2::new(self.z - rhs.z, self.w - rhs.w)
    }
}

impl Neg for ComplexPoint2 {
    type Output = ComplexPoint2;
    fn neg(self) -> Self {
        ComplexPoint2::new(-self.z, -self.w)
    }
}

impl Mul<Complex> for ComplexPoint2 {
    type Output = ComplexPoint2;
    fn mul(self, rhs: Complex) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for ComplexPoint2 {
    type Output = ComplexPoint2;
    fn mul(self, rhs: f64) -> Self {
        ComplexPoint2::new(self.z * rhs, self.w * rhs)
    }
}

/// A family of complex lines: all lines through a point, or all lines sharing a direction.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", content = "point", rename_all = "kebab-case")
)]
pub enum Pencil {
    Through(ComplexPoint2),
    Parallel(ComplexPoint2),
}

/// `{ base + u * direction : u in C }`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComplexLine {
    pub base: ComplexPoint2,
    pub direction: ComplexPoint2,
    pub pencil: Option<Pencil>,
}

impl ComplexLine {
    pub fn new(base: ComplexPoint2, direction: ComplexPoint2) -> Result<Self> {
        if !(base.is_finite() && direction.is_finite()) {
            return Err(Error::invalid("line data must be finite"));
        }
        if direction.norm_sqr() == 0.0 {
            return Err(Error::invalid("line direction must be nonzero"));
        }
        Ok(ComplexLine {
            base,
            direction,
            pencil: None,
        })
    }

    /// Member of the pencil through `point`.
    pub fn through(point: ComplexPoint2, direction: ComplexPoint2) -> Result<Self> {
        let mut line = ComplexLine::new(point, direction)?;
        line.pencil = Some(Pencil::Through(point));
        Ok(line)
    }

    /// Member of the parallel pencil with the given direction.
    pub fn parallel(base: ComplexPoint2, direction: ComplexPoint2) -> Result<Self> {
        let mut line = ComplexLine::new(base, direction)?;
        line.pencil = Some(Pencil::Parallel(direction));
        Ok(line)
    }

    /// The line through two distinct points.
    pub fn through_points(a: ComplexPoint2, b: ComplexPoint2) -> Result<Self> {
        ComplexLine::new(a, b - a)
    }

    pub fn point_at(&self, u: Complex) -> ComplexPoint2 {
        self.base + self.direction * u
    }

    /// Point of the line closest to the origin.
    pub fn foot_of_origin(&self) -> ComplexPoint2 {
        let c = self.base.inner(&self.direction) / self.direction.norm_sqr();
        self.base - self.direction * c
    }

    pub fn distance_to(&self, p: ComplexPoint2) -> f64 {
        let diff = p - self.base;
        let c = diff.inner(&self.direction) / self.direction.norm_sqr();
        (diff - self.direction * c).norm()
    }

    /// `|sin|` of the angle between the direction and `dir`.
    pub fn direction_defect(&self, dir: ComplexPoint2) -> f64 {
        let d = self.direction;
        (d.z * dir.w - d.w * dir.z).norm() / (d.norm() * dir.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Circle {
    pub center: Complex,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Complex, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(Error::invalid("circle radius must be positive and finite"));
        }
        Ok(Circle { center, radius })
    }

    pub fn unit() -> Self {
        Circle {
            center: ZERO,
            radius: 1.0,
        }
    }

    pub fn point_at(&self, theta: f64) -> Complex {
        self.center + Complex::from_polar(self.radius, theta)
    }

    /// `|point - center| - radius`: negative inside, zero on, positive outside.
    pub fn signed_distance(&self, point: Complex) -> f64 {
        (point - self.center).norm() - self.radius
    }

    pub fn surrounds_point(&self, point: Complex) -> bool {
        self.signed_distance(point) < 0.0
    }

    /// The closed disc of `other` lies in the open disc of `self`.
    pub fn surrounds(&self, other: &Circle) -> bool {
        (self.center - other.center).norm() + other.radius < self.radius
    }

    /// Circle through three points, or `None` when they are collinear.
    pub fn through_three(a: Complex, b: Complex, c: Complex) -> Option<Circle> {
        let ab = b - a;
        let ac = c - a;
        let det = 2.0 * (ab.re * ac.im - ab.im * ac.re);
        let scale = ab.norm() * ac.norm();
        if det.abs() <= 1e-14 * scale {
            return None;
        }
        let ux = (ac.im * ab.norm_sqr() - ab.im * ac.norm_sqr()) / det;
        let uy = (ab.re * ac.norm_sqr() - ac.re * ab.norm_sqr()) / det;
        let offset = Complex::new(ux, uy);
        Some(Circle {
            center: a + offset,
            radius: offset.norm(),
        })
    }
}

/// `(alpha - zeta) / (1 - conj(alpha) zeta)`, an involution of the unit disc.
pub fn disc_moebius(alpha: Complex, zeta: Complex) -> Result<Complex> {
    if !(alpha.norm_sqr() < 1.0) {
        return Err(Error::invalid(
            "Moebius parameter must lie in the open unit disc",
        ));
    }
    let denom = ONE - alpha.conj() * zeta;
    if denom.norm() <= 1e-14 * (1.0 + zeta.norm()) {
        return Err(Error::Pole);
    }
    Ok((alpha - zeta) / denom)
}

/// The involutive automorphism `phi_a` of the ball exchanging `a` and the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BallAutomorphism {
    a: ComplexPoint2,
    s: f64,
}

impl BallAutomorphism {
    pub fn new(a: ComplexPoint2) -> Result<Self> {
        let n2 = a.norm_sqr();
        if !(n2 < 1.0) || !a.is_finite() {
            return Err(Error::invalid(
                "automorphism centre must lie in the open unit ball",
            ));
        }
        Ok(BallAutomorphism {
            a,
            s: (1.0 - n2).sqrt(),
        })
    }

    pub fn center(&self) -> ComplexPoint2 {
        self.a
    }

    /// `s_a = sqrt(1 - |a|^2)`.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Orthogonal projection onto the span of `a` (zero when `a = 0`).
    pub fn project(&self, x: ComplexPoint2) -> ComplexPoint2 {
        let n2 = self.a.norm_sqr();
        if n2 == 0.0 {
            return ComplexPoint2::ORIGIN;
        }
        self.a * (x.inner(&self.a) / n2)
    }

    pub fn complement(&self, x: ComplexPoint2) -> ComplexPoint2 {
        x - self.project(x)
    }

    pub fn apply(&self, x: ComplexPoint2) -> Result<ComplexPoint2> {
        let denom = ONE - x.inner(&self.a);
        if denom.norm() <= 1e-14 {
            return Err(Error::Singular);
        }
        let p = self.project(x);
        let q = x - p;
        let num = self.a - p - q * self.s;
        Ok(num * denom.inv())
    }

    /// Direction of the image lines of the pencil through a point `b` with `<b|a> = 1`.
    fn escape_direction(&self, b: ComplexPoint2) -> ComplexPoint2 {
        self.a - self.project(b) - self.complement(b) * self.s
    }

    /// Image of the line. Pencil tags are carried to the image pencil.
    pub fn map_line(&self, line: &ComplexLine) -> Result<ComplexLine> {
        let candidates = [
            ZERO,
            ONE,
            -ONE,
            Complex::new(0.0, 1.0),
            Complex::new(0.0, -1.0),
            Complex::new(2.0, 0.0),
            Complex::new(0.5, 0.5),
        ];
        let mut images = Vec::with_capacity(2);
        for u in candidates {
            let x = line.point_at(u);
            if (ONE - x.inner(&self.a)).norm() < 1e-6 {
                continue;
            }
            images.push(self.apply(x)?);
            if images.len() == 2 {
                break;
            }
        }
        if images.len() < 2 {
            return Err(Error::Singular);
        }
        let mut image = ComplexLine::through_points(images[0], images[1])?;
        image.pencil = match line.pencil {
            None => None,
            Some(Pencil::Through(p)) => match self.apply(p) {
                Ok(q) => Some(Pencil::Through(q)),
                Err(_) => Some(Pencil::Parallel(self.escape_direction(p))),
            },
            Some(Pencil::Parallel(d)) => {
                // The common point at infinity goes to the limit of phi(x + u d).
                let da = d.inner(&self.a);
                let lim = self.project(d) + self.complement(d) * self.s;
                if da.norm() > 1e-14 {
                    Some(Pencil::Through(lim * da.inv()))
                } else {
                    Some(Pencil::Parallel(lim))
                }
            }
        };
        Ok(image)
    }
}

/// A 2x2 unitary matrix acting on C².
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Unitary2 {
    pub m: [[Complex; 2]; 2],
}

impl Unitary2 {
    pub fn identity() -> Self {
        Unitary2 {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    /// Unitary sending `v` to `(|v|, 0)`.
    pub fn aligning(v: ComplexPoint2) -> Self {
        let n = v.norm();
        assert!(n > 0.0, "cannot align the zero vector");
        Unitary2 {
            m: [[v.z.conj() / n, v.w.conj() / n], [-v.w / n, v.z / n]],
        }
    }

    /// `(z, w) -> (w, z)`.
    pub fn swap() -> Self {
        Unitary2 {
            m: [[ZERO, ONE], [ONE, ZERO]],
        }
    }

    /// `(z, w) -> (e^{i omega} z, w)`.
    pub fn rotate_z(omega: f64) -> Self {
        Unitary2 {
            m: [[Complex::from_polar(1.0, omega), ZERO], [ZERO, ONE]],
        }
    }

    pub fn apply(&self, x: ComplexPoint2) -> ComplexPoint2 {
        ComplexPoint2::new(
            self.m[0][0] * x.z + self.m[0][1] * x.w,
            self.m[1][0] * x.z + self.m[1][1] * x.w,
        )
    }

    pub fn compose(&self, inner: &Unitary2) -> Unitary2 {
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.m[i][0] * inner.m[0][j] + self.m[i][1] * inner.m[1][j];
            }
        }
        Unitary2 { m }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.m[0][0] - ONE).norm() <= tol
            && (self.m[1][1] - ONE).norm() <= tol
            && self.m[0][1].norm() <= tol
            && self.m[1][0].norm() <= tol
    }

    pub fn map_line(&self, line: &ComplexLine) -> ComplexLine {
        ComplexLine {
            base: self.apply(line.base),
            direction: self.apply(line.direction),
            pencil: line.pencil.map(|p| match p {
                Pencil::Through(x) => Pencil::Through(self.apply(x)),
                Pencil::Parallel(d) => Pencil::Parallel(self.apply(d)),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum TransformStep {
    Automorphism(BallAutomorphism),
    Unitary(Unitary2),
}

/// Steps applied left to right.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NormalizingTransform {
    pub steps: Vec<TransformStep>,
}

impl NormalizingTransform {
    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    fn push_unitary(&mut self, u: Unitary2) {
        if !u.is_identity(1e-15) {
            self.steps.push(TransformStep::Unitary(u));
        }
    }

    pub fn apply(&self, x: ComplexPoint2) -> Result<ComplexPoint2> {
        self.steps.iter().try_fold(x, |x, step| match step {
            TransformStep::Automorphism(phi) => phi.apply(x),
            TransformStep::Unitary(u) => Ok(u.apply(x)),
        })
    }

    pub fn map_line(&self, line: &ComplexLine) -> Result<ComplexLine> {
        self.steps.iter().try_fold(*line, |l, step| match step {
            TransformStep::Automorphism(phi) => phi.map_line(&l),
            TransformStep::Unitary(u) => Ok(u.map_line(&l)),
        })
    }
}

/// `zeta -> (p + zeta q, r + zeta s)` traces `L ∩ bB` over the unit circle.
///
/// The line parameter is `u = param_center + param_scale * zeta`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LineSphereCircle {
    pub p: Complex,
    pub q: Complex,
    pub r: Complex,
    pub s: Complex,
    pub param_center: Complex,
    pub param_scale: Complex,
}

impl LineSphereCircle {
    pub fn point_at(&self, zeta: Complex) -> ComplexPoint2 {
        ComplexPoint2::new(self.p + zeta * self.q, self.r + zeta * self.s)
    }

    /// Radius of the disc `L ∩ B` measured in C².
    pub fn disc_radius(&self) -> f64 {
        (self.q.norm_sqr() + self.s.norm_sqr()).sqrt()
    }

    /// Projection of the circle to the z-plane, `None` when it is a point.
    pub fn z_circle(&self) -> Option<Circle> {
        Circle::new(self.p, self.q.norm()).ok()
    }
}

/// Parameterizes `L ∩ bB` over the unit circle.
///
/// Substituting `base + u direction` into `|z|^2 + |w|^2 = 1` gives a disc in
/// the `u`-plane; it is recentred and rescaled to the unit disc, with the
/// rotation fixed so that `q` (or `s` when `q = 0`) is real and positive.
pub fn line_sphere_circle(line: &ComplexLine) -> Result<LineSphereCircle> {
    let d = line.direction;
    let dd = d.norm_sqr();
    let shift = line.base.inner(&d) / dd;
    let foot = line.base - d * shift;
    let gap = 1.0 - foot.norm_sqr();
    if gap < -2.0 * TANGENCY_RADIUS {
        return Err(Error::NoIntersection);
    }
    let radius = gap.max(0.0).sqrt();
    if radius < TANGENCY_RADIUS {
        return Err(Error::Tangent { radius });
    }
    let dn = dd.sqrt();
    let phase = if d.z.norm() > 1e-15 * dn {
        d.z.conj() / d.z.norm()
    } else {
        d.w.conj() / d.w.norm()
    };
    let scale = phase * (radius / dn);
    Ok(LineSphereCircle {
        p: foot.z,
        q: d.z * scale,
        r: foot.w,
        s: d.w * scale,
        param_center: -shift,
        param_scale: scale,
    })
}

/// Projection to the z-plane of `L ∩ bB` for the line through `(t, 0)` that
/// is the image of the line through the origin with `|z|`-radius `R`.
///
/// For `t > 1` the family of projected circles coincides with the one for
/// `1/t`, so that branch is evaluated at `1/t`.
pub fn projection_circle(t: f64, big_r: f64) -> Result<Circle> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid("t must be positive"));
    }
    if (t - 1.0).abs() < 1e-12 {
        return Err(Error::UseThroughBoundaryFamily);
    }
    if !(big_r > 0.0 && big_r <= 1.0) {
        return Err(Error::invalid("R must lie in (0, 1]"));
    }
    let t = if t > 1.0 { 1.0 / t } else { t };
    let denom = 1.0 - t * t * big_r * big_r;
    let center = t * (1.0 - big_r * big_r) / denom;
    let radius = big_r * (1.0 - t * t) / denom;
    Circle::new(Complex::new(center, 0.0), radius)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PairCase {
    A1,
    A2,
    B1,
    B2,
    TangentExcluded,
}

/// Canonical pencil pair after normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum CanonicalConfig {
    /// Lines through the origin and through `(t, 0)`, `t > 0`.
    OriginAndPoint {
        t: f64,
    },
    /// Lines through `(alpha, 0)` and `(beta, 0)` with `|alpha| = |beta| = 1`.
    TwoBoundaryPoints {
        alpha: Complex,
        beta: Complex,
    },
    /// Lines parallel to the z-axis and lines through `(t, 0)`, `t >= 1`.
    ParallelAndPoint {
        t: f64,
    },
    /// Lines through the origin and lines parallel to the z-axis.
    OriginAndParallel,
    /// Lines parallel to `(1, eta_a)` and to `(1, eta_b)`.
    TwoParallel {
        eta_a: Complex,
        eta_b: Complex,
    },
    Tangent,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairClassification {
    pub case: PairCase,
    pub transform: NormalizingTransform,
    pub canonical: CanonicalConfig,
    /// Image pencils of `L(a)` and `L(b)`, in input order.
    pub pencils: Option<[Pencil; 2]>,
}

const UNIT_Z: ComplexPoint2 = ComplexPoint2 { z: ONE, w: ZERO };

fn on_axis(x: Complex) -> ComplexPoint2 {
    ComplexPoint2::new(x, ZERO)
}

/// Reduces `L(a) ∪ L(b)` to one of the canonical configurations by ball
/// automorphisms and unitary maps.
pub fn normalize_pair(a: ComplexPoint2, b: ComplexPoint2) -> Result<PairClassification> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::invalid("points must be finite"));
    }
    if (a - b).norm() < 1e-14 {
        return Err(Error::invalid("the two points must differ"));
    }
    if a.in_ball() || b.in_ball() {
        let swapped = !a.in_ball();
        let (inner_pt, other) = if swapped { (b, a) } else { (a, b) };
        let order = |first: Pencil, second: Pencil| {
            if swapped {
                [second, first]
            } else {
                [first, second]
            }
        };
        let mut transform = NormalizingTransform::default();
        let phi = BallAutomorphism::new(inner_pt)?;
        if (other.inner(&inner_pt) - ONE).norm() < 1e-12 {
            transform.steps.push(TransformStep::Automorphism(phi));
            transform.push_unitary(Unitary2::aligning(phi.escape_direction(other)));
            return Ok(PairClassification {
                case: PairCase::A2,
                transform,
                canonical: CanonicalConfig::OriginAndParallel,
                pencils: Some(order(
                    Pencil::Through(ComplexPoint2::ORIGIN),
                    Pencil::Parallel(UNIT_Z),
                )),
            });
        }
        let moved = if inner_pt.norm_sqr() == 0.0 {
            other
        } else {
            transform.steps.push(TransformStep::Automorphism(phi));
            phi.apply(other)?
        };
        let t = moved.norm();
        transform.push_unitary(Unitary2::aligning(moved));
        return Ok(PairClassification {
            case: PairCase::A1,
            transform,
            canonical: CanonicalConfig::OriginAndPoint { t },
            pencils: Some(order(
                Pencil::Through(ComplexPoint2::ORIGIN),
                Pencil::Through(ComplexPoint2::real(t, 0.0)),
            )),
        });
    }

    let joining = ComplexLine::through_points(a, b)?;
    let foot = joining.foot_of_origin();
    let dist = foot.norm();
    if (dist - 1.0).abs() < TANGENCY_RADIUS {
        return Ok(PairClassification {
            case: PairCase::TangentExcluded,
            transform: NormalizingTransform::default(),
            canonical: CanonicalConfig::Tangent,
            pencils: None,
        });
    }

    let mut transform = NormalizingTransform::default();
    if dist > 1.0 {
        // Joining line becomes {z = mu}; then (2.2) with lambda = 1/mu.
        let align = Unitary2::aligning(foot);
        transform.push_unitary(align);
        let (a1, b1) = (align.apply(a), align.apply(b));
        let mu = dist;
        let phi = BallAutomorphism::new(ComplexPoint2::real(1.0 / mu, 0.0))?;
        transform.steps.push(TransformStep::Automorphism(phi));
        let k = (mu * mu - 1.0).sqrt();
        let (eta_a, eta_b) = (a1.w / k, b1.w / k);
        return Ok(PairClassification {
            case: PairCase::B2,
            transform,
            canonical: CanonicalConfig::TwoParallel { eta_a, eta_b },
            pencils: Some([
                Pencil::Parallel(ComplexPoint2::new(ONE, eta_a)),
                Pencil::Parallel(ComplexPoint2::new(ONE, eta_b)),
            ]),
        });
    }

    // B1: move the joining line to {z = lambda}, then to the w-axis, then swap
    // coordinates so both points sit on the z-axis.
    let align = if dist > 1e-14 {
        Unitary2::aligning(foot)
    } else {
        Unitary2::swap().compose(&Unitary2::aligning(joining.direction))
    };
    transform.push_unitary(align);
    let (mut a1, mut b1) = (align.apply(a), align.apply(b));
    if dist > 1e-14 {
        let phi = BallAutomorphism::new(ComplexPoint2::real(dist, 0.0))?;
        transform.steps.push(TransformStep::Automorphism(phi));
        a1 = phi.apply(a1)?;
        b1 = phi.apply(b1)?;
    }
    transform.push_unitary(Unitary2::swap());
    let (alpha, beta) = (a1.w, b1.w);

    if (alpha.norm() - 1.0).abs() < 1e-12 && (beta.norm() - 1.0).abs() < 1e-12 {
        return Ok(PairClassification {
            case: PairCase::B1,
            transform,
            canonical: CanonicalConfig::TwoBoundaryPoints { alpha, beta },
            pencils: Some([
                Pencil::Through(on_axis(alpha)),
                Pencil::Through(on_axis(beta)),
            ]),
        });
    }

    // The point farther out is sent to infinity along the z-axis.
    let a_is_far = alpha.norm() >= beta.norm();
    let (far, near) = if a_is_far {
        (alpha, beta)
    } else {
        (beta, alpha)
    };
    let phi = BallAutomorphism::new(on_axis(far.conj().inv()))?;
    transform.steps.push(TransformStep::Automorphism(phi));
    let near_image = phi.apply(on_axis(near))?.z;
    transform.push_unitary(Unitary2::rotate_z(-near_image.arg()));
    let t = near_image.norm();
    let parallel = Pencil::Parallel(UNIT_Z);
    let through = Pencil::Through(ComplexPoint2::real(t, 0.0));
    Ok(PairClassification {
        case: PairCase::B1,
        transform,
        canonical: CanonicalConfig::ParallelAndPoint { t },
        pencils: Some(if a_is_far {
            [parallel, through]
        } else {
            [through, parallel]
        }),
    })
}

/// The two canonical pencils of a configuration.
pub fn canonical_pencils(config: &CanonicalConfig) -> Vec<Pencil> {
    match *config {
        CanonicalConfig::OriginAndPoint { t } => vec![
            Pencil::Through(ComplexPoint2::ORIGIN),
            Pencil::Through(ComplexPoint2::real(t, 0.0)),
        ],
        CanonicalConfig::TwoBoundaryPoints { alpha, beta } => {
            vec![
                Pencil::Through(on_axis(alpha)),
                Pencil::Through(on_axis(beta)),
            ]
        }
        CanonicalConfig::ParallelAndPoint { t } => vec![
            Pencil::Parallel(UNIT_Z),
            Pencil::Through(ComplexPoint2::real(t, 0.0)),
        ],
        CanonicalConfig::OriginAndParallel => {
            vec![
                Pencil::Through(ComplexPoint2::ORIGIN),
                Pencil::Parallel(UNIT_Z),
            ]
        }
        CanonicalConfig::TwoParallel { eta_a, eta_b } => vec![
            Pencil::Parallel(ComplexPoint2::new(ONE, eta_a)),
            Pencil::Parallel(ComplexPoint2::new(ONE, eta_b)),
        ],
        CanonicalConfig::Tangent => Vec::new(),
    }
}

/// Whether `line` belongs to `pencil` up to `tol`.
pub fn line_in_pencil(line: &ComplexLine, pencil: &Pencil, tol: f64) -> bool {
    match pencil {
        Pencil::Through(p) => line.distance_to(*p) <= tol,
        Pencil::Parallel(d) => line.direction_defect(*d) <= tol,
    }
}
