//! Built-in boundary functions with closed-form evaluators.
//!
//! Identifiers: `example11:k=<int>`, `absw2`, `km:p=<c>:q=<c>`,
//! `mono:a=<int>:b=<int>`, `poly:z<a>w<b>=<c>;...` and `conjw`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::extension::{LineFamily, Verdict};
use crate::geometry::ComplexPoint2;
use crate::notation::{format_complex, parse_complex};
use crate::slicing::BoundaryFunction;
use crate::{Complex, Error, Result};

/// Evaluation points must satisfy `| |z|^2 + |w|^2 - 1 | <= SPHERE_TOLERANCE`.
pub const SPHERE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Term {
    pub coefficient: Complex,
    pub a: u32,
    pub b: u32,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "name", rename_all = "kebab-case"))]
pub enum GalleryFunction {
    /// `z^{k+2} / conj(z)`, and 0 at `z = 0`; of class `C^k` on the sphere.
    Example11 { k: u32 },
    /// `|w|^2`.
    AbsW2,
    /// `conj(z) [z(1+|p|^2) + conj(p)(w - pz)] [z(1+|q|^2) + conj(q)(w - qz)]`.
    Km { p: Complex, q: Complex },
    /// `z^a w^b`.
    Monomial { a: u32, b: u32 },
    /// Finite sum of `c z^a w^b`.
    Polynomial { terms: Vec<Term> },
    /// `conj(w)`, which extends along no line through the origin except `w = 0`.
    ConjW,
}

fn parse_param<'a>(part: &'a str, key: &str) -> Result<&'a str> {
    part.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::invalid(format!("expected `{key}=...`, found `{part}`")))
}

fn parse_uint(text: &str) -> Result<u32> {
    text.parse()
        .map_err(|_| Error::invalid(format!("`{text}` is not a non-negative integer")))
}

fn parse_term(text: &str) -> Result<Term> {
    let (mono, coef) = text
        .split_once('=')
        .ok_or_else(|| Error::invalid(format!("polynomial term `{text}` needs `z<a>w<b>=<c>`")))?;
    let rest = mono
        .strip_prefix('z')
        .ok_or_else(|| Error::invalid(format!("polynomial term `{text}` needs `z<a>w<b>=<c>`")))?;
    let (a, b) = rest
        .split_once('w')
        .ok_or_else(|| Error::invalid(format!("polynomial term `{text}` needs `z<a>w<b>=<c>`")))?;
    Ok(Term {
        coefficient: parse_complex(coef)?,
        a: parse_uint(a)?,
        b: parse_uint(b)?,
    })
}

impl GalleryFunction {
    pub fn parse(id: &str) -> Result<Self> {
        let mut parts = id.split(':');
        let name = parts.next().unwrap_or_default();
        let params: Vec<&str> = parts.collect();
        let arity = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::invalid(format!("`{name}` takes {n} parameter(s)")))
            }
        };
        let f = match name {
            "example11" => {
                arity(1)?;
                let k = parse_uint(parse_param(params[0], "k")?)?;
                if k == 0 {
                    return Err(Error::invalid("example11 needs k >= 1"));
                }
                GalleryFunction::Example11 { k }
            }
            "absw2" => {
                arity(0)?;
                GalleryFunction::AbsW2
            }
            "conjw" => {
                arity(0)?;
                GalleryFunction::ConjW
            }
            "km" => {
                arity(2)?;
                let p = parse_complex(parse_param(params[0], "p")?)?;
                let q = parse_complex(parse_param(params[1], "q")?)?;
                if p == q {
                    return Err(Error::invalid("km needs p != q"));
                }
                GalleryFunction::Km { p, q }
            }
            "mono" => {
                arity(2)?;
                let a = parse_uint(parse_param(params[0], "a")?)?;
                let b = parse_uint(parse_param(params[1], "b")?)?;
                GalleryFunction::Monomial { a, b }
            }
            "poly" => {
                arity(1)?;
                let terms = params[0]
                    .split(';')
                    .map(parse_term)
                    .collect::<Result<Vec<_>>>()?;
                if terms.is_empty() {
                    return Err(Error::invalid("poly needs at least one term"));
                }
                GalleryFunction::Polynomial { terms }
            }
            _ => return Err(Error::UnknownEntry(id.to_string())),
        };
        Ok(f)
    }

    pub fn id(&self) -> String {
        match self {
            GalleryFunction::Example11 { k } => format!("example11:k={k}"),
            GalleryFunction::AbsW2 => String::from("absw2"),
            GalleryFunction::Km { p, q } => {
                format!("km:p={}:q={}", format_complex(*p), format_complex(*q))
            }
            GalleryFunction::Monomial { a, b } => format!("mono:a={a}:b={b}"),
            GalleryFunction::Polynomial { terms } => {
                let body: Vec<String> = terms
                    .iter()
                    .map(|t| format!("z{}w{}={}", t.a, t.b, format_complex(t.coefficient)))
                    .collect();
                format!("poly:{}", body.join(";"))
            }
            GalleryFunction::ConjW => String::from("conjw"),
        }
    }

    /// Closed-form value without the sphere check.
    pub fn value(&self, p: ComplexPoint2) -> Complex {
        let (z, w) = (p.z, p.w);
        match self {
            GalleryFunction::Example11 { k } => {
                if z.norm_sqr() == 0.0 {
                    Complex::new(0.0, 0.0)
                } else {
                    z.powu(k + 2) / z.conj()
                }
            }
            GalleryFunction::AbsW2 => Complex::new(w.norm_sqr(), 0.0),
            GalleryFunction::Km { p, q } => {
                let first = z * (1.0 + p.norm_sqr()) + p.conj() * (w - p * z);
                let second = z * (1.0 + q.norm_sqr()) + q.conj() * (w - q * z);
                z.conj() * first * second
            }
            GalleryFunction::Monomial { a, b } => z.powu(*a) * w.powu(*b),
            GalleryFunction::Polynomial { terms } => terms
                .iter()
                .map(|t| t.coefficient * z.powu(t.a) * w.powu(t.b))
                .sum(),
            GalleryFunction::ConjW => w.conj(),
        }
    }

    pub fn is_holomorphic(&self) -> bool {
        matches!(
            self,
            GalleryFunction::Monomial { .. } | GalleryFunction::Polynomial { .. }
        )
    }

    pub fn expected(&self) -> ExpectedBehavior {
        let pass = |family| ExpectedFamily {
            family,
            verdict: Verdict::Pass,
        };
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        match self {
            GalleryFunction::Example11 { .. } => ExpectedBehavior {
                families: vec![pass(FamilyClass::ThroughWDisc)],
                ball: Verdict::Fail,
                real_analytic: false,
            },
            GalleryFunction::AbsW2 => ExpectedBehavior {
                families: vec![
                    pass(FamilyClass::Pencil(LineFamily::Through(
                        ComplexPoint2::ORIGIN,
                    ))),
                    pass(FamilyClass::Pencil(LineFamily::Parallel(
                        ComplexPoint2::new(one, zero),
                    ))),
                ],
                ball: Verdict::Fail,
                real_analytic: true,
            },
            GalleryFunction::Km { p, q } => ExpectedBehavior {
                families: vec![
                    pass(FamilyClass::Pencil(LineFamily::Parallel(
                        ComplexPoint2::new(one, *p),
                    ))),
                    pass(FamilyClass::Pencil(LineFamily::Parallel(
                        ComplexPoint2::new(one, *q),
                    ))),
                ],
                ball: Verdict::Fail,
                real_analytic: true,
            },
            GalleryFunction::Monomial { .. } | GalleryFunction::Polynomial { .. } => {
                ExpectedBehavior {
                    families: vec![pass(FamilyClass::Every)],
                    ball: Verdict::Pass,
                    real_analytic: true,
                }
            }
            GalleryFunction::ConjW => ExpectedBehavior {
                families: vec![ExpectedFamily {
                    family: FamilyClass::Pencil(LineFamily::Through(ComplexPoint2::ORIGIN)),
                    verdict: Verdict::Fail,
                }],
                ball: Verdict::Fail,
                real_analytic: true,
            },
        }
    }
}

impl BoundaryFunction for GalleryFunction {
    fn eval(&self, p: ComplexPoint2) -> Complex {
        self.value(p)
    }
}

/// Checked evaluation at a point of the unit sphere.
pub fn gallery_eval(f: &GalleryFunction, p: ComplexPoint2) -> Result<Complex> {
    let residual = p.sphere_residual();
    if !(residual <= SPHERE_TOLERANCE) {
        return Err(Error::OffSphere { residual });
    }
    Ok(f.value(p))
}

pub fn gallery_eval_id(id: &str, p: ComplexPoint2) -> Result<Complex> {
    gallery_eval(&GalleryFunction::parse(id)?, p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", content = "family", rename_all = "kebab-case")
)]
pub enum FamilyClass {
    /// Every pencil through a point `(0, c)`, `|c| < 1`.
    ThroughWDisc,
    Pencil(LineFamily),
    /// Every complex line meeting the ball.
    Every,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpectedFamily {
    pub family: FamilyClass,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpectedBehavior {
    pub families: Vec<ExpectedFamily>,
    pub ball: Verdict,
    pub real_analytic: bool,
}

pub fn gallery_expected(id: &str) -> Result<ExpectedBehavior> {
    Ok(GalleryFunction::parse(id)?.expected())
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GalleryInfo {
    pub schema: &'static str,
    pub example: String,
    pub description: &'static str,
    pub expected: ExpectedBehavior,
}

pub fn gallery_listing() -> Vec<GalleryInfo> {
    let entries: [(&str, &str, &str); 6] = [
        (
            "example11:k=<int>",
            "example11:k=3",
            "z^(k+2)/conj(z), 0 at z = 0; C^k on the sphere",
        ),
        ("absw2", "absw2", "|w|^2"),
        (
            "km:p=<c>:q=<c>",
            "km:p=1:q=-1",
            "conj(z)[z(1+|p|^2)+conj(p)(w-pz)][z(1+|q|^2)+conj(q)(w-qz)]",
        ),
        ("mono:a=<int>:b=<int>", "mono:a=2:b=1", "z^a w^b"),
        (
            "poly:z<a>w<b>=<c>;...",
            "poly:z2w0=1;z1w1=1",
            "sum of c z^a w^b",
        ),
        ("conjw", "conjw", "conj(w)"),
    ];
    entries
        .iter()
        .map(|&(schema, example, description)| GalleryInfo {
            schema,
            example: example.to_string(),
            description,
            expected: GalleryFunction::parse(example)
                .expect("listed example parses")
                .expected(),
        })
        .collect()
}
