use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input sits on the pole of a disc Moebius map.
    Pole,
    /// `<x|a> = 1` for a ball automorphism.
    Singular,
    /// The complex line misses the closed ball.
    NoIntersection,
    /// The complex line only touches the sphere.
    Tangent { radius: f64 },
    /// Argument lies outside the domain of the operation.
    OutsideDomain(&'static str),
    /// Malformed or inconsistent parameters.
    Invalid(String),
    /// `(1-|z|^2)^{n/2}` too small to divide by.
    AmplificationRefused { n: i32, scale: f64 },
    /// `t = 1` in the projection-circle formula; the circles through 1 apply instead.
    UseThroughBoundaryFamily,
    /// Evaluation point is not on the unit sphere.
    OffSphere { residual: f64 },
    /// Unknown gallery identifier.
    UnknownEntry(String),
    /// Two admissible roots where at most one is possible.
    NonUniqueIntersection,
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole => write!(f, "point is the pole of the Moebius map"),
            Error::Singular => write!(f, "point lies on the singular hyperplane <x|a> = 1"),
            Error::NoIntersection => write!(f, "complex line does not meet the closed unit ball"),
            Error::Tangent { radius } => {
                write!(
                    f,
                    "complex line is tangent to the sphere (disc radius {radius:e})"
                )
            }
            Error::OutsideDomain(what) => write!(f, "argument outside domain: {what}"),
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::AmplificationRefused { n, scale } => write!(
                f,
                "refusing c_{n}: (1-|z|^2)^(n/2) = {scale:e} is below 1e-12"
            ),
            Error::UseThroughBoundaryFamily => write!(
                f,
                "t = 1: use the family of circles through 1 instead of the projection formula"
            ),
            Error::OffSphere { residual } => {
                write!(
                    f,
                    "point is off the unit sphere (| |z|^2+|w|^2-1 | = {residual:e})"
                )
            }
            Error::UnknownEntry(name) => write!(f, "unknown gallery entry `{name}`"),
            Error::NonUniqueIntersection => write!(f, "semiquadrics meet in more than one point"),
        }
    }
}

impl core::error::Error for Error {}
