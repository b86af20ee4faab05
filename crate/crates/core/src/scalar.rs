//! Complex scalar helpers and the textual literal format used by the CLI.
//!
//! Literals accept `a`, `bi`, `a+bi` and `a-bi`, where each component may be
//! an integer, a rational `p/q` or a decimal. Rationals are reduced exactly
//! before the single rounding to `f64`.

use crate::error::{Error, Result};
pub use num_complex::Complex64 as Scalar;

/// Imaginary parts below this magnitude are suppressed by the formatters.
pub const IMAG_DISPLAY_EPS: f64 = 1e-12;

#[inline]
pub fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

/// Division that rejects an exactly zero denominator.
pub fn checked_div(num: Scalar, den: Scalar) -> Result<Scalar> {
    if den.re == 0.0 && den.im == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok(num / den)
}

pub fn is_finite(z: Scalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Parses a real component: integer, `p/q` rational, or decimal.
fn parse_real(text: &str) -> Result<f64> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: i128 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{t}`")))?;
        let q: i128 = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{t}`")))?;
        if q == 0 {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i128;
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        return Ok(p as f64 / q as f64);
    }
    t.parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad number `{t}`")))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn parse_imag(body: &str) -> Result<f64> {
    // body excludes the trailing `i`; a bare sign means unit magnitude.
    match body.trim() {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        t => {
            let (sign, rest) = match t.as_bytes()[0] {
                b'+' => (1.0, &t[1..]),
                b'-' => (-1.0, &t[1..]),
                _ => (1.0, t),
            };
            let rest = rest.trim().trim_end_matches('*');
            if rest.is_empty() {
                Ok(sign)
            } else {
                Ok(sign * parse_real(rest)?)
            }
        }
    }
}

/// Parses one complex literal such as `8+2i`, `-1/3`, `2i` or `1-i`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty literal".into()));
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(re(parse_real(&t)?));
    };
    // Split at the last sign that is not leading and not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    match split {
        Some(p) => Ok(Scalar::new(parse_real(&body[..p])?, parse_imag(&body[p..])?)),
        None => Ok(Scalar::new(0.0, parse_imag(body)?)),
    }
}

/// Parses a comma separated list of complex literals.
pub fn parse_scalar_list(text: &str) -> Result<Vec<Scalar>> {
    text.split(',').map(parse_scalar).collect()
}

/// Renders a scalar for humans, hiding negligible imaginary parts.
pub fn format_scalar(z: Scalar) -> String {
    if z.im.abs() <= IMAG_DISPLAY_EPS * z.re.abs().max(1.0) {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Imaginary part with display suppression applied.
pub fn display_imag(z: Scalar) -> f64 {
    if z.im.abs() <= IMAG_DISPLAY_EPS * z.re.abs().max(1.0) {
        0.0
    } else {
        z.im
    }
}
