//! Text notation for complex scalars (`a+bi`, no spaces) and points of C² (`z,w`).

use alloc::format;
use alloc::string::String;

use crate::geometry::ComplexPoint2;
use crate::{Complex, Error, Result};

fn parse_real(s: &str, whole: &str) -> Result<f64> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => s
            .parse::<f64>()
            .map_err(|_| Error::invalid(format!("malformed complex number `{whole}`"))),
    }
}

/// Parses `1.5`, `-2i`, `i`, `0.3-0.4i`, `1e-3+2.5e-2i`.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let s = text.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(Error::invalid(format!("malformed complex number `{text}`")));
    }
    let Some(body) = s.strip_suffix('i') else {
        let re = s
            .parse::<f64>()
            .map_err(|_| Error::invalid(format!("malformed complex number `{text}`")))?;
        return Ok(Complex::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(pos) => {
            let re = parse_real(&body[..pos], text)?;
            if body[..pos].is_empty() || matches!(&body[..pos], "+" | "-") {
                return Err(Error::invalid(format!("malformed complex number `{text}`")));
            }
            let im = parse_real(&body[pos..], text)?;
            Ok(Complex::new(re, im))
        }
        None => Ok(Complex::new(0.0, parse_real(body, text)?)),
    }
}

/// Parses `z,w`, for example `0,0.5i` or `2,-0.7`.
pub fn parse_point(text: &str) -> Result<ComplexPoint2> {
    let mut parts = text.split(',');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(z), Some(w), None) => Ok(ComplexPoint2::new(parse_complex(z)?, parse_complex(w)?)),
        _ => Err(Error::invalid(format!("expected `z,w`, got `{text}`"))),
    }
}

pub fn format_complex(c: Complex) -> String {
    if c.im < 0.0 || (c.im == 0.0 && c.im.is_sign_negative()) {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

pub fn format_point(p: ComplexPoint2) -> String {
    format!("{},{}", format_complex(p.z), format_complex(p.w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        let cases = [
            ("1.5", Complex::new(1.5, 0.0)),
            ("-2i", Complex::new(0.0, -2.0)),
            ("i", Complex::new(0.0, 1.0)),
            ("-i", Complex::new(0.0, -1.0)),
            ("0.3-0.4i", Complex::new(0.3, -0.4)),
            ("1e-3+2.5e-2i", Complex::new(1e-3, 2.5e-2)),
            ("-1E+2-i", Complex::new(-100.0, -1.0)),
            ("0.5i", Complex::new(0.0, 0.5)),
        ];
        for (text, want) in cases {
            assert_eq!(parse_complex(text).unwrap(), want, "{text}");
        }
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1 + 2i", "abc", "1+2j", "+i+", "--1"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn round_trips_formatting() {
        let c = Complex::new(-0.25, 1e-7);
        assert_eq!(parse_complex(&format_complex(c)).unwrap(), c);
        let p = parse_point("0,0.5i").unwrap();
        assert_eq!(
            p,
            ComplexPoint2::new(Complex::new(0.0, 0.0), Complex::new(0.0, 0.5))
        );
        assert!(parse_point("1,2,3").is_err());
    }
}
