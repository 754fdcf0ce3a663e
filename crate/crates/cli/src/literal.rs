//! The one complex-literal syntax every command accepts.
//!
//! Accepted: `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, `a+i`, with optional
//! exponents on either part (`1e-3-2.5E2i`). Whitespace is ignored.

use zetakit::numeric::c;
use zetakit::ComplexVal;

pub fn parse_complex(text: &str) -> Result<ComplexVal, String> {
    let s: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = || format!("invalid complex literal {text:?}; expected a+bi");
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(&s).ok_or_else(bad).map(|re| c(re, 0.0));
    };
    // last sign that is not an exponent sign splits real from imaginary
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_text.is_empty() { 0.0 } else { parse_real(re_text).ok_or_else(bad)? };
    let im = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => parse_real(t).ok_or_else(bad)?,
    };
    Ok(c(re, im))
}

fn parse_real(t: &str) -> Option<f64> {
    // f64's parser also takes "inf" and "nan"; neither is a literal here
    if !t.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-')) {
        return None;
    }
    t.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Canonical form that parses back to the same bits.
pub fn format_complex(z: ComplexVal) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}

/// 17 significant digits.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_forms() {
        assert_eq!(parse_complex("2+0i").unwrap(), c(2.0, 0.0));
        assert_eq!(parse_complex("0.5+14.134725i").unwrap(), c(0.5, 14.134725));
        assert_eq!(parse_complex("-1.5e-3-2E2i").unwrap(), c(-1.5e-3, -200.0));
        assert_eq!(parse_complex("1e+2").unwrap(), c(100.0, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("3-i").unwrap(), c(3.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        assert_eq!(parse_complex(" 1 + 2i ").unwrap(), c(1.0, 2.0));
    }

    #[test]
    fn rejects_garbage() {
        for t in ["", "i2", "1+2", "1++2i", "abc", "inf", "nan+1i", "1e999", "1+2j", "--1"] {
            assert!(parse_complex(t).is_err(), "{t}");
        }
    }

    #[test]
    fn canonical_roundtrip() {
        for z in [c(0.1, -0.2), c(-0.0, 1e-300), c(1.0 / 3.0, 14.134725141734693), c(5e307, -0.0)] {
            let back = parse_complex(&format_complex(z)).unwrap();
            assert_eq!(back.re.to_bits(), z.re.to_bits());
            assert_eq!(back.im.to_bits(), z.im.to_bits());
        }
    }
}
