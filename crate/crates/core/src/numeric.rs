//! Complex elementary functions on the principal branch and the Gamma function.
//!
//! | function            | domain                         | notes                                  |
//! |---------------------|--------------------------------|----------------------------------------|
//! | [`principal_log`]   | z != 0                         | Im in (-pi, pi], -0.0 read as +0       |
//! | [`principal_pow`]   | base != 0, or base = 0 with Re(w) > 0 | exp(w log z)                    |
//! | [`gamma`]           | s not in {0, -1, -2, ...}      | Lanczos g = 607/128, reflection below 1/2 |
//! | [`reciprocal_gamma`]| all s                          | zero at the poles of Gamma             |
//! | [`ln_gamma`]        | s not in {0, -1, -2, ...}      | some branch of log Gamma               |

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex number type used throughout the crate.
pub type ComplexVal = Complex64;

const LANCZOS_G: f64 = 607.0 / 128.0;

const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

#[inline]
pub fn c(re: f64, im: f64) -> ComplexVal {
    Complex64::new(re, im)
}

#[inline]
fn clean_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// Principal logarithm with imaginary part in (-pi, pi].
///
/// A negative zero imaginary part is treated as +0, so negative reals map to +i*pi.
pub fn principal_log(z: ComplexVal) -> Result<ComplexVal> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("log of non-finite value {z}")));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("log(0)".into()));
    }
    let im = clean_zero(z.im);
    let arg = im.atan2(z.re);
    Ok(c(z.re.hypot(im).ln(), arg))
}

/// Principal power `base^exponent = exp(exponent * log base)`.
pub fn principal_pow(base: ComplexVal, exponent: ComplexVal) -> Result<ComplexVal> {
    if base.re == 0.0 && base.im == 0.0 {
        if exponent.re > 0.0 {
            return Ok(c(0.0, 0.0));
        }
        return Err(Error::Domain(format!("0^{exponent} is undefined")));
    }
    let l = principal_log(base)?;
    let v = (exponent * l).exp();
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Overflow(format!("{base}^{exponent}")));
    }
    Ok(v)
}

/// `n^(-s)` for a positive real base, used by the finite sums and series.
#[inline]
pub fn real_pow_neg(n: f64, s: ComplexVal) -> ComplexVal {
    (-s * n.ln()).exp()
}

/// A branch-tagged power: stores base, exponent and the principal value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedPower {
    pub base: ComplexVal,
    pub exponent: ComplexVal,
    pub value: ComplexVal,
}

impl BranchedPower {
    pub fn new(base: ComplexVal, exponent: ComplexVal) -> Result<Self> {
        let value = principal_pow(base, exponent)?;
        Ok(Self {
            base,
            exponent,
            value,
        })
    }
}

/// If `s` is an exact nonpositive integer, return it.
pub fn nonpositive_integer(s: ComplexVal) -> Option<i64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 && s.re > -1e15 {
        Some(s.re as i64)
    } else {
        None
    }
}

/// If `s` is an exact positive integer, return it.
pub fn positive_integer(s: ComplexVal) -> Option<i64> {
    if s.im == 0.0 && s.re >= 1.0 && s.re.fract() == 0.0 && s.re < 1e15 {
        Some(s.re as i64)
    } else {
        None
    }
}

/// sin(pi s) with the integer part of Re(s) removed exactly first.
pub fn sin_pi(s: ComplexVal) -> ComplexVal {
    let n = s.re.round();
    let r = c(s.re - n, s.im);
    let v = (r * PI).sin();
    if (n as i64).rem_euclid(2) == 1 {
        -v
    } else {
        v
    }
}

/// log of sin(pi s), stable for large |Im s|. Any branch.
pub(crate) fn ln_sin_pi(s: ComplexVal) -> ComplexVal {
    if s.im.abs() < 20.0 {
        return sin_pi(s).ln();
    }
    // sin(pi s) = e^{-i pi s} (e^{2 i pi s} - 1) / (2i) for Im s > 0; mirror otherwise.
    let i = c(0.0, 1.0);
    if s.im > 0.0 {
        let e = (i * 2.0 * PI * s).exp();
        -i * PI * s + ((e - 1.0) / (i * 2.0)).ln()
    } else {
        let e = (-i * 2.0 * PI * s).exp();
        i * PI * s + ((1.0 - e) / (i * 2.0)).ln()
    }
}

/// log Gamma for Re(s) >= 1/2 via Lanczos.
fn ln_gamma_right(s: ComplexVal) -> ComplexVal {
    let z = s - 1.0;
    let mut x = c(LANCZOS_COEFFS[0], 0.0);
    for (k, &ck) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += ck / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + x.ln() + HALF_LN_TWO_PI
}

/// A branch of log Gamma(s). Exponentiating gives Gamma(s).
pub fn ln_gamma(s: ComplexVal) -> Result<ComplexVal> {
    if let Some(k) = nonpositive_integer(s) {
        return Err(Error::Pole(format!("Gamma has a pole at {k}")));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("Gamma of non-finite value {s}")));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s))
    } else {
        Ok(c(PI.ln(), 0.0) - ln_sin_pi(s) - ln_gamma_right(1.0 - s))
    }
}

/// Gamma(s) for complex s.
pub fn gamma(s: ComplexVal) -> Result<ComplexVal> {
    let v = ln_gamma(s)?.exp();
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Overflow(format!("Gamma({s})")));
    }
    Ok(v)
}

/// 1/Gamma(s), exactly zero at the poles of Gamma.
pub fn reciprocal_gamma(s: ComplexVal) -> ComplexVal {
    if nonpositive_integer(s).is_some() {
        return c(0.0, 0.0);
    }
    if s.re >= 0.5 {
        (-ln_gamma_right(s)).exp()
    } else {
        (ln_sin_pi(s) + ln_gamma_right(1.0 - s) - PI.ln()).exp()
    }
}

/// Compensated (Neumaier) complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: ComplexVal,
    comp: ComplexVal,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: ComplexVal) {
        neumaier(&mut self.sum.re, &mut self.comp.re, x.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    pub fn value(&self) -> ComplexVal {
        self.sum + self.comp
    }
}

impl FromIterator<ComplexVal> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = ComplexVal>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// |a - b| / max(1, |b|).
pub fn mixed_error(a: ComplexVal, b: ComplexVal) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
