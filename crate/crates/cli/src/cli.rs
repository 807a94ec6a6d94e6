//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use holext::extension::LineFamily;
use holext::geometry::ComplexPoint2;
use holext::notation::{parse_complex, parse_point};
use holext::semiquadrics::ScanGrid;
use holext::Complex;

use crate::config::{self, Expect, Format};

#[derive(Debug, Parser)]
#[command(
    name = "holext",
    version,
    about = "Holomorphic extendibility tests on the unit ball of C^2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Negative-coefficient test of c_n on one circle or a circle family
    TestCircle(TestCircleArgs),
    /// Extension test along one complex line
    TestLine(TestLineArgs),
    /// Extension test over a pencil of complex lines
    TestFamily(TestFamilyArgs),
    /// Holomorphy of c_n on the disc from concentric circles
    DiscAnalyticity(DiscArgs),
    /// Extension through the ball from the slice coefficients
    BallVerdict(BallArgs),
    /// Slice coefficients at a point, or the boundary-limit probe
    Slice(SliceArgs),
    /// Canonical form of two line pencils
    NormalizePair(NormalizePairArgs),
    /// Brute-force separation scan for the glued semiquadric family
    Prop71(Prop71Args),
    /// Fiber of the glued manifold over a point
    Fiber(FiberArgs),
    /// Common point of two semiquadrics
    SemiquadricIntersect(IntersectArgs),
    /// Gallery entries and their expected verdicts
    GalleryList(GalleryArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Exit 0 only if the verdict matches
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
}

#[derive(Debug, Clone, Args)]
pub struct Numerics {
    /// Quadrature nodes per circle
    #[arg(long, default_value_t = config::ORDER, value_parser = positive_usize)]
    pub order: usize,
    #[arg(long, default_value_t = config::TOLERANCE, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct TestCircleArgs {
    /// gallery:<id> or grid:<path>
    #[arg(long = "fn", value_name = "SOURCE")]
    pub function: Option<String>,
    /// Slice index of the disc function c_n
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub n: i32,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub center: Option<Complex>,
    #[arg(long, value_parser = positive_f64)]
    pub radius: Option<f64>,
    /// Circle family as JSON, e.g. {"kind":"concentric-plus-moebius","params":{"t":0.5}}
    #[arg(long, value_name = "JSON", conflicts_with_all = ["center", "radius"])]
    pub family: Option<String>,
    #[arg(long, default_value_t = config::DENSITY, value_parser = positive_usize)]
    pub density: usize,
    /// Circle samples with header x,y,re,im instead of --fn
    #[arg(long, value_name = "PATH", conflicts_with_all = ["function", "family"])]
    pub samples: Option<PathBuf>,
    #[command(flatten)]
    pub numerics: Numerics,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TestLineArgs {
    #[arg(long = "fn", value_name = "SOURCE")]
    pub function: String,
    /// Point on the line, z,w
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    pub base: ComplexPoint2,
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    pub direction: ComplexPoint2,
    #[command(flatten)]
    pub numerics: Numerics,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TestFamilyArgs {
    #[arg(long = "fn", value_name = "SOURCE")]
    pub function: String,
    /// through:z,w or parallel:z,w
    #[arg(long, value_parser = line_family_arg, allow_hyphen_values = true)]
    pub family: LineFamily,
    /// Number of sampled lines
    #[arg(long, default_value_t = config::DENSITY, value_parser = positive_usize)]
    pub density: usize,
    #[command(flatten)]
    pub numerics: Numerics,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DiscArgs {
    #[arg(long = "fn", value_name = "SOURCE")]
    pub function: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub n: i32,
    #[arg(long, default_value = "0.3,0.5,0.7,0.9", value_parser = radii_arg)]
    pub radii: Radii,
    /// Samples per circle
    #[arg(long, default_value_t = config::ANGULAR, value_parser = positive_usize)]
    pub angular: usize,
    /// Radial consistency tolerance; defaults to --tol
    #[arg(long, value_parser = positive_f64)]
    pub consistency_tol: Option<f64>,
    #[command(flatten)]
    pub numerics: Numerics,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BallArgs {
    #[arg(long = "fn", value_name = "SOURCE")]
    pub function: String,
    /// Inclusive slice range a..b
    #[arg(long, default_value = "-4..8", value_parser = nrange_arg, allow_hyphen_values = true)]
    pub nrange: NRange,
    #[arg(long, default_value = "0.3,0.5,0.7,0.9", value_parser = radii_arg)]
    pub radii: Radii,
    #[arg(long, default_value_t = config::ANGULAR, value_parser = positive_usize)]
    pub angular: usize,
    #[arg(long, value_parser = positive_f64)]
    pub consistency_tol: Option<f64>,
    #[command(flatten)]
    pub numerics: Numerics,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SliceArgs {
    #[arg(long = "fn", value_name = "SOURCE")]
    pub function: String,
    /// Inclusive slice range a..b
    #[arg(long, value_parser = nrange_arg, allow_hyphen_values = true, conflicts_with = "n")]
    pub nrange: Option<NRange>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i32>,
    /// Disc point for the coefficient table
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub z: Option<Complex>,
    /// Also report Psi_n(z, w) = w^n c_n(z)
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true, requires = "z")]
    pub w: Option<Complex>,
    /// Track c_n toward the unit circle instead
    #[arg(long, conflicts_with = "z")]
    pub probe: bool,
    /// Probe radii R, strictly decreasing; default 2^-1 .. 2^-10
    #[arg(long, value_parser = radii_arg, requires = "probe")]
    pub radii: Option<Radii>,
    #[arg(long, default_value_t = config::ANGULAR, value_parser = positive_usize)]
    pub angular: usize,
    /// Final sup-difference a probe must reach to pass
    #[arg(long, default_value_t = 1e-3, value_parser = positive_f64)]
    pub probe_tol: f64,
    #[arg(long, default_value_t = config::ORDER, value_parser = positive_usize)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NormalizePairArgs {
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    pub a: ComplexPoint2,
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    pub b: ComplexPoint2,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Prop71Args {
    #[arg(long, value_parser = positive_f64)]
    pub t: f64,
    #[arg(long, value_parser = positive_f64)]
    pub eta: f64,
    /// n for an n^3 grid, or nx,nr,nt
    #[arg(long, default_value = "50", value_parser = scan_grid_arg)]
    pub grid: ScanGrid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FiberArgs {
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub z: Complex,
    #[arg(long, value_parser = positive_f64)]
    pub t: f64,
    #[arg(long, value_parser = positive_f64)]
    pub eta: f64,
    /// Sampled points on each piece of the fiber
    #[arg(long, default_value_t = 32, value_parser = positive_usize)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct IntersectArgs {
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub a1: Complex,
    #[arg(long, value_parser = positive_f64)]
    pub r1: f64,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub a2: Complex,
    #[arg(long, value_parser = positive_f64)]
    pub r2: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GalleryArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Radii(pub Vec<f64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange(pub i32, pub i32);

impl std::fmt::Display for NRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.0, self.1)
    }
}

fn complex_arg(s: &str) -> Result<Complex, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn point_arg(s: &str) -> Result<ComplexPoint2, String> {
    parse_point(s).map_err(|e| e.to_string())
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn radii_arg(s: &str) -> Result<Radii, String> {
    s.split(',')
        .map(positive_f64)
        .collect::<Result<_, _>>()
        .map(Radii)
}

fn nrange_arg(s: &str) -> Result<NRange, String> {
    let bad = || format!("expected a..b, got `{s}`");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i32 = a.parse().map_err(|_| bad())?;
    let b: i32 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok(NRange(a, b))
}

fn line_family_arg(s: &str) -> Result<LineFamily, String> {
    if let Some(p) = s.strip_prefix("through:") {
        point_arg(p).map(LineFamily::Through)
    } else if let Some(d) = s.strip_prefix("parallel:") {
        point_arg(d).map(LineFamily::Parallel)
    } else {
        Err(format!("expected through:z,w or parallel:z,w, got `{s}`"))
    }
}

fn scan_grid_arg(s: &str) -> Result<ScanGrid, String> {
    let parts: Vec<usize> = s.split(',').map(positive_usize).collect::<Result<_, _>>()?;
    match parts[..] {
        [n] => Ok(ScanGrid::cube(n)),
        [x, r, t] => Ok(ScanGrid { x, r, t }),
        _ => Err(format!("expected n or nx,nr,nt, got `{s}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn value_parsers() {
        assert_eq!(nrange_arg("-4..8"), Ok(NRange(-4, 8)));
        assert!(nrange_arg("3..1").is_err());
        assert_eq!(scan_grid_arg("50"), Ok(ScanGrid::cube(50)));
        assert_eq!(scan_grid_arg("4,5,6"), Ok(ScanGrid { x: 4, r: 5, t: 6 }));
        assert!(scan_grid_arg("4,5").is_err());
        assert!(positive_f64("-1").is_err());
        assert_eq!(radii_arg("0.3,0.5").map(|r| r.0), Ok(vec![0.3, 0.5]));
        let fam = line_family_arg("through:0,0.5i").unwrap();
        assert_eq!(
            fam,
            LineFamily::Through(ComplexPoint2::new(
                Complex::new(0.0, 0.0),
                Complex::new(0.0, 0.5)
            ))
        );
        assert!(line_family_arg("pencil:0,0").is_err());
    }
}
