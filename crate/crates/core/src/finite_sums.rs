//! Alternating binomial sums
//!
//! ```text
//! S_n(s)  = sum_{k=0}^{n-1} (-1)^k C(n-1, k) (k+1)^(-s)
//! S~_n(s) = sum_{k=0}^{n-1} (-1)^k C(n-1, k) (k+2)^(-s)
//! D_n(s)  = sum_{k=1}^{n}   (-1)^k C(n, k)   k^(1-s)       = -n S_n(s)
//! ```
//!
//! The direct sums lose about n*log10(2) digits; they are accumulated in
//! extended precision, and for large n the sums come from the Mellin form
//! `S_n(s) = 1/Gamma(s) * int_0^inf (1-e^-t)^(n-1) e^-t t^(s-1) dt`
//! (with e^-2t for S~_n), which has a nonnegative kernel.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::extended::alternating_binomial_sum;
use crate::numeric::{c, nonpositive_integer, positive_integer, real_pow_neg, reciprocal_gamma, ComplexVal};
use crate::quad::{integrate_semi_infinite_from, QuadTolerance};
use crate::special::binomial;

/// Largest n for which `auto` uses the direct sum.
pub const DIRECT_SWITCH: usize = 30;

/// Largest n accepted by explicit direct mode.
pub const DIRECT_MAX: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FiniteSumMode {
    Direct,
    Integral,
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticRegime {
    NonintegralS,
    PositiveIntegerS,
    NonpositiveIntegerS,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPrediction {
    pub predicted: ComplexVal,
    pub regime: AsymptoticRegime,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be a positive integer".into()));
    }
    Ok(())
}

/// Exact S_n(-k) = sum_j (-1)^j C(n-1, j) (j+1)^k.
pub fn s_sum_exact_nonpositive(n: usize, k: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..n {
        let term = binomial(n as u64 - 1, j as i64) * BigInt::from(j as u64 + 1).pow(k);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn exact_to_complex(v: BigInt) -> Result<ComplexVal> {
    let f = v.to_f64().unwrap_or(f64::INFINITY);
    if !f.is_finite() {
        return Err(Error::Overflow("exact finite sum exceeds double range".into()));
    }
    Ok(c(f, 0.0))
}

/// Direct alternating sum with base offset `shift` (1 for S_n, 2 for S~_n).
fn direct(n: usize, s: ComplexVal, shift: usize) -> Result<ComplexVal> {
    if n > DIRECT_MAX {
        return Err(Error::MethodUnavailable(format!(
            "direct summation is limited to n <= {DIRECT_MAX}"
        )));
    }
    Ok(alternating_binomial_sum(n - 1, 0, shift, s))
}

fn integral_tolerance() -> QuadTolerance {
    QuadTolerance::relative_to_norm(1e-13, 2e-14)
}

/// 1/Gamma(s) * int_0^inf (1-e^-t)^(n-1) e^(-shift t) t^(s-1) dt.
///
/// The integrand behaves like t^(s+n-2) at 0, so the integral continues the
/// sum analytically to Re(s) > 1 - (n-1).
fn mellin_form(n: usize, s: ComplexVal, shift: f64) -> Result<ComplexVal> {
    if s.re <= 2.0 - n as f64 {
        return Err(Error::Domain(format!("the integral form of S_{n} needs Re(s) > {}", 2.0 - n as f64)));
    }
    let m = (n - 1) as f64;
    let sm1 = s - 1.0;
    let f = move |t: f64| -> ComplexVal {
        if t <= 0.0 {
            return c(0.0, 0.0);
        }
        let lu = if m > 0.0 { m * (-(-t).exp()).ln_1p() } else { 0.0 };
        (sm1 * t.ln() + (lu - shift * t)).exp()
    };
    let peak = (n as f64).ln();
    let mut points = vec![0.0];
    if peak - 4.0 > 0.5 {
        points.push(peak - 4.0);
    }
    points.push(peak + 0.5);
    points.push(peak + 4.0);
    let r = integrate_semi_infinite_from(f, &points, integral_tolerance(), shift, true)?;
    Ok(r.value * reciprocal_gamma(s))
}

fn require_right_half(s: ComplexVal) -> Result<()> {
    if s.re <= 0.0 {
        return Err(Error::Domain("integral mode needs Re(s) > 0".into()));
    }
    Ok(())
}

/// S_n(s) in the requested mode.
///
/// `Auto` uses exact integers at s = 0, -1, -2, ..., the direct sum up to
/// n = 30 and the integral form above, continued to Re(s) > 2 - n.
pub fn s_sum(n: usize, s: ComplexVal, mode: FiniteSumMode) -> Result<ComplexVal> {
    check_n(n)?;
    if n == 1 {
        return Ok(c(1.0, 0.0));
    }
    let exact = nonpositive_integer(s);
    match mode {
        FiniteSumMode::Integral => {
            require_right_half(s)?;
            mellin_form(n, s, 1.0)
        }
        FiniteSumMode::Direct => match exact {
            Some(k) => exact_to_complex(s_sum_exact_nonpositive(n, (-k) as u32)),
            None => direct(n, s, 1),
        },
        FiniteSumMode::Auto => {
            if let Some(k) = exact {
                exact_to_complex(s_sum_exact_nonpositive(n, (-k) as u32))
            } else if n <= DIRECT_SWITCH {
                direct(n, s, 1)
            } else {
                mellin_form(n, s, 1.0)
            }
        }
    }
}

/// S~_n(s), direct alternating sum.
pub fn s_tilde_sum(n: usize, s: ComplexVal) -> Result<ComplexVal> {
    check_n(n)?;
    direct(n, s, 2)
}

/// S~_n(s) with the same mode rules as [`s_sum`].
pub fn s_tilde_sum_mode(n: usize, s: ComplexVal, mode: FiniteSumMode) -> Result<ComplexVal> {
    check_n(n)?;
    if n == 1 {
        return Ok(real_pow_neg(2.0, s));
    }
    match mode {
        FiniteSumMode::Direct => direct(n, s, 2),
        FiniteSumMode::Integral => {
            require_right_half(s)?;
            mellin_form(n, s, 2.0)
        }
        FiniteSumMode::Auto => {
            if n <= DIRECT_SWITCH {
                direct(n, s, 2)
            } else {
                mellin_form(n, s, 2.0)
            }
        }
    }
}

/// D_n(s) = sum_{k=1}^n (-1)^k C(n, k) k^(1-s), direct.
pub fn delta_sum(n: usize, s: ComplexVal) -> Result<ComplexVal> {
    check_n(n)?;
    if n > DIRECT_MAX {
        return Err(Error::MethodUnavailable(format!(
            "direct summation is limited to n <= {DIRECT_MAX}"
        )));
    }
    Ok(alternating_binomial_sum(n, 1, 0, s - 1.0))
}

/// Leading-order large-n behavior of S_n(s):
/// `(log n)^(s-1) / (n Gamma(s))`, and exactly 0 at nonpositive integers.
pub fn s_sum_asymptotic(n: usize, s: ComplexVal) -> Result<AsymptoticPrediction> {
    if n < 2 {
        return Err(Error::Domain("asymptotic prediction needs n >= 2".into()));
    }
    if nonpositive_integer(s).is_some() {
        return Ok(AsymptoticPrediction {
            predicted: c(0.0, 0.0),
            regime: AsymptoticRegime::NonpositiveIntegerS,
        });
    }
    let ln_n = (n as f64).ln();
    let predicted = ((s - 1.0) * ln_n.ln()).exp() * reciprocal_gamma(s) / n as f64;
    let regime = if positive_integer(s).is_some() {
        AsymptoticRegime::PositiveIntegerS
    } else {
        AsymptoticRegime::NonintegralS
    };
    Ok(AsymptoticPrediction { predicted, regime })
}

/// max_t (1 - e^-t)^(n-1) e^(-t/2), attained at e^-t = 1/(2n-1).
pub fn kernel_peak(n: usize) -> f64 {
    let m = 2.0 * n as f64 - 1.0;
    (1.0 - 1.0 / m).powi(n as i32 - 1) / m.sqrt()
}
