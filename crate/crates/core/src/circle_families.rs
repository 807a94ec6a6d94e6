//! Sampled circle families in the closed unit disc.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::Circle;
use crate::{Complex, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", content = "params", rename_all = "kebab-case")
)]
pub enum FamilySpec {
    /// Circles in the closed disc through `alpha` and through `beta`, both on the unit circle.
    #[cfg_attr(feature = "serde", serde(rename = "through-two-boundary-points"))]
    ThroughTwoBoundaryPoints { alpha: Complex, beta: Complex },
    /// Circles centred at the origin and circles through 1.
    #[cfg_attr(feature = "serde", serde(rename = "concentric-plus-through-1"))]
    ConcentricPlusThroughOne,
    /// Circles centred at the origin and their images under `z -> (t - z)/(1 - t z)`.
    #[cfg_attr(feature = "serde", serde(rename = "concentric-plus-moebius"))]
    ConcentricPlusMoebius { t: f64 },
    /// Moebius images of concentric circles for two parameters in the open disc.
    #[cfg_attr(feature = "serde", serde(rename = "moebius-pair"))]
    MoebiusPair { alpha: Complex, beta: Complex },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum SubFamily {
    /// Parameter is the radius `R`.
    Concentric,
    /// Circles internally tangent to the unit circle at `point`; parameter is the radius.
    ThroughBoundaryPoint { point: Complex },
    /// Image of the concentric circle of radius `r` under the disc Moebius map of `alpha`.
    MoebiusImage { alpha: Complex },
    /// `bΔ(T, sqrt((T - t)(T - 1/t)))`; parameter is the centre `T`.
    ProjectionCircles { t: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilyMember {
    pub circle: Circle,
    pub subfamily: SubFamily,
    pub parameter: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilySample {
    pub members: Vec<FamilyMember>,
}

impl FamilySample {
    pub fn circles(&self) -> impl Iterator<Item = &Circle> + '_ {
        self.members.iter().map(|m| &m.circle)
    }
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::ThroughTwoBoundaryPoints { alpha, beta } => {
                if (alpha.norm() - 1.0).abs() > 1e-12 || (beta.norm() - 1.0).abs() > 1e-12 {
                    return Err(Error::invalid("alpha and beta must lie on the unit circle"));
                }
                if (alpha - beta).norm() <= 1e-12 {
                    return Err(Error::invalid("alpha and beta must differ"));
                }
            }
            FamilySpec::ConcentricPlusThroughOne => {}
            FamilySpec::ConcentricPlusMoebius { t } => {
                if !(t > 0.0 && t < 1.0) {
                    return Err(Error::invalid("t must lie in (0, 1)"));
                }
            }
            FamilySpec::MoebiusPair { alpha, beta } => {
                if !(alpha.norm() < 1.0 && beta.norm() < 1.0) {
                    return Err(Error::invalid(
                        "Moebius parameters must lie in the open disc",
                    ));
                }
                if (alpha - beta).norm() <= 1e-12 {
                    return Err(Error::invalid("Moebius parameters must differ"));
                }
            }
        }
        Ok(())
    }
}

/// Image of `{|zeta| = r}` under `zeta -> (alpha - zeta)/(1 - conj(alpha) zeta)`.
pub fn moebius_image_of_concentric(alpha: Complex, r: f64) -> Result<Circle> {
    let a2 = alpha.norm_sqr();
    if !(a2 < 1.0) {
        return Err(Error::invalid(
            "Moebius parameter must lie in the open disc",
        ));
    }
    let denom = 1.0 - a2 * r * r;
    Circle::new(alpha * ((1.0 - r * r) / denom), r * (1.0 - a2) / denom)
}

/// `bΔ(T, sqrt((T - t)(T - 1/t)))`.
pub fn projection_family_circle(t: f64, center: f64) -> Result<Circle> {
    let rho2 = (center - t) * (center - 1.0 / t);
    if !(rho2 > 0.0) {
        return Err(Error::invalid("centre outside the admissible range"));
    }
    Circle::new(Complex::new(center, 0.0), rho2.sqrt())
}

/// Circle of radius `r` in the closed disc touching the unit circle at `point`.
pub fn tangent_circle(point: Complex, r: f64) -> Result<Circle> {
    Circle::new(point * (1.0 - r), r)
}

fn radii(density: usize) -> impl Iterator<Item = f64> {
    (1..=density).map(move |i| i as f64 / density as f64)
}

/// Samples `density` members of each sub-family, uniformly in the family parameter.
pub fn enumerate_family(spec: &FamilySpec, density: usize) -> Result<FamilySample> {
    if density < 2 {
        return Err(Error::invalid("density must be at least 2"));
    }
    spec.validate()?;
    let mut members = Vec::with_capacity(2 * density);
    let concentric = |members: &mut Vec<FamilyMember>| -> Result<()> {
        for r in radii(density) {
            members.push(FamilyMember {
                circle: Circle::new(Complex::new(0.0, 0.0), r)?,
                subfamily: SubFamily::Concentric,
                parameter: r,
            });
        }
        Ok(())
    };
    let tangent = |members: &mut Vec<FamilyMember>, point: Complex| -> Result<()> {
        for r in radii(density) {
            members.push(FamilyMember {
                circle: tangent_circle(point, r)?,
                subfamily: SubFamily::ThroughBoundaryPoint { point },
                parameter: r,
            });
        }
        Ok(())
    };
    let moebius = |members: &mut Vec<FamilyMember>, alpha: Complex| -> Result<()> {
        for r in radii(density) {
            members.push(FamilyMember {
                circle: moebius_image_of_concentric(alpha, r)?,
                subfamily: SubFamily::MoebiusImage { alpha },
                parameter: r,
            });
        }
        Ok(())
    };
    match *spec {
        FamilySpec::ThroughTwoBoundaryPoints { alpha, beta } => {
            tangent(&mut members, alpha)?;
            tangent(&mut members, beta)?;
        }
        FamilySpec::ConcentricPlusThroughOne => {
            concentric(&mut members)?;
            tangent(&mut members, Complex::new(1.0, 0.0))?;
        }
        FamilySpec::ConcentricPlusMoebius { t } => {
            concentric(&mut members)?;
            for i in 0..density {
                let center = t * i as f64 / density as f64;
                members.push(FamilyMember {
                    circle: projection_family_circle(t, center)?,
                    subfamily: SubFamily::ProjectionCircles { t },
                    parameter: center,
                });
            }
        }
        FamilySpec::MoebiusPair { alpha, beta } => {
            moebius(&mut members, alpha)?;
            moebius(&mut members, beta)?;
        }
    }
    Ok(FamilySample { members })
}

/// Signed distance from `point` to the circle (negative inside).
pub fn circle_membership(circle: &Circle, point: Complex) -> f64 {
    circle.signed_distance(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::disc_moebius;

    #[test]
    fn projection_family_endpoints() {
        let unit = projection_family_circle(0.5, 0.0).unwrap();
        assert!(unit.center.norm() == 0.0 && (unit.radius - 1.0).abs() < 1e-15);
        let c = projection_family_circle(0.5, 0.4).unwrap();
        // (0.4 - 0.5)(0.4 - 2) = 0.16
        assert!((c.radius - 0.4).abs() < 1e-15);
    }

    #[test]
    fn moebius_image_matches_fitted_circle() {
        let c = projection_family_circle(0.5, 0.4).unwrap();
        // R with T(R) = 0.4 at t = 0.5 is R = 0.5.
        let img = moebius_image_of_concentric(Complex::new(0.5, 0.0), 0.5).unwrap();
        assert!((img.center - c.center).norm() < 1e-15);
        assert!((img.radius - c.radius).abs() < 1e-15);
        let three: alloc::vec::Vec<_> = [0.0, 2.0, 4.0]
            .iter()
            .map(|&th| disc_moebius(Complex::new(0.5, 0.0), Complex::from_polar(0.5, th)).unwrap())
            .collect();
        let fit = Circle::through_three(three[0], three[1], three[2]).unwrap();
        assert!((fit.center - c.center).norm() < 1e-14);
        assert!((fit.radius - c.radius).abs() < 1e-14);
    }

    #[test]
    fn alpha_zero_gives_concentric() {
        let sample = enumerate_family(
            &FamilySpec::MoebiusPair {
                alpha: Complex::new(0.0, 0.0),
                beta: Complex::new(0.3, 0.0),
            },
            4,
        )
        .unwrap();
        for m in sample.members.iter().take(4) {
            assert!(m.circle.center.norm() < 1e-15);
            assert!((m.circle.radius - m.parameter).abs() < 1e-15);
        }
    }

    #[test]
    fn membership_examples() {
        let unit = Circle::unit();
        assert_eq!(circle_membership(&unit, Complex::new(0.0, 0.0)), -1.0);
        assert_eq!(circle_membership(&unit, Complex::new(1.0, 0.0)), 0.0);
        let c = Circle::new(Complex::new(0.4, 0.0), 0.4).unwrap();
        assert!((circle_membership(&c, Complex::new(0.5, 0.0)) + 0.3).abs() < 1e-15);
    }

    #[test]
    fn invalid_specs() {
        let bad = [
            FamilySpec::ThroughTwoBoundaryPoints {
                alpha: Complex::new(1.0, 0.0),
                beta: Complex::new(1.0, 0.0),
            },
            FamilySpec::ThroughTwoBoundaryPoints {
                alpha: Complex::new(0.5, 0.0),
                beta: Complex::new(-1.0, 0.0),
            },
            FamilySpec::ConcentricPlusMoebius { t: 1.0 },
            FamilySpec::ConcentricPlusMoebius { t: 0.0 },
            FamilySpec::MoebiusPair {
                alpha: Complex::new(0.2, 0.0),
                beta: Complex::new(0.2, 0.0),
            },
        ];
        for spec in bad {
            assert!(enumerate_family(&spec, 8).is_err(), "{spec:?}");
        }
        assert!(enumerate_family(&FamilySpec::ConcentricPlusThroughOne, 1).is_err());
    }

    #[test]
    fn through_one_circles_pass_through_one() {
        let sample = enumerate_family(&FamilySpec::ConcentricPlusThroughOne, 16).unwrap();
        let through: alloc::vec::Vec<_> = sample
            .members
            .iter()
            .filter(|m| matches!(m.subfamily, SubFamily::ThroughBoundaryPoint { .. }))
            .collect();
        assert_eq!(through.len(), 16);
        for m in through {
            assert!(circle_membership(&m.circle, Complex::new(1.0, 0.0)).abs() < 1e-12);
        }
    }
}
