//! Numerical experiments around zeros of zeta: the continuous ratio
//! zeta(s)/zeta(1-s), scans of |int_x^1 Li_s| / |int_x^1 Li_{1-s}| as x -> 1,
//! the amplitude and exponent conditions on expansions of Z near x = 1, and
//! critical-line zeros from sign changes of Hardy's Z function.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::numeric::{c, ln_gamma, mixed_error, reciprocal_gamma, ComplexVal};
use crate::param_zeta::tail_integral;
use crate::polylog::{hurwitz_zeta_hermite, HurwitzArg};
use crate::series::zeta_reference;

/// Largest k accepted in x = 1 - 10^-k scan schedules.
pub const MAX_SCAN_K: u32 = 12;

/// Default (kmin, kmax) for scans.
pub const DEFAULT_SCAN_K: (u32, u32) = (2, 8);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalRatio {
    pub value: ComplexVal,
    /// mixed error against zeta(s)/zeta(1-s), when zeta(1-s) is not tiny.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioScanRow {
    pub x: f64,
    pub num_abs: f64,
    pub den_abs: f64,
    /// None when den_abs = 0.
    pub ratio: Option<f64>,
    pub predicted_factor: f64,
    pub target: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionProfile {
    pub a_coeff: ComplexVal,
    pub m_exponent: ComplexVal,
}

impl ExpansionProfile {
    /// a(s) = -1/Gamma(s+1), m(s) = s: the error term of Z(s, x) near x = 1.
    pub fn error_term(s: ComplexVal) -> Self {
        Self {
            a_coeff: -reciprocal_gamma(s + 1.0),
            m_exponent: s,
        }
    }

    /// a(s) = s(s-1) zeta(s+1), m = 1: first-order Taylor term of (s-1) zeta(s, x).
    pub fn hurwitz(s: ComplexVal) -> Result<Self> {
        Ok(Self {
            a_coeff: s * (s - 1.0) * zeta_reference(s + 1.0)?,
            m_exponent: c(1.0, 0.0),
        })
    }
}

fn ln_gamma_pole_free(z: ComplexVal, what: &str) -> Result<ComplexVal> {
    ln_gamma(z).map_err(|_| Error::Pole(format!("Gamma({what}) has a pole")))
}

/// pi^(-(1-s)/2) Gamma((1-s)/2) / (pi^(-s/2) Gamma(s/2)), finite at zeros of zeta.
pub fn functional_ratio(s: ComplexVal) -> Result<FunctionalRatio> {
    let lp = PI.ln();
    let num = ln_gamma_pole_free((1.0 - s) * 0.5, "(1-s)/2")? - (1.0 - s) * 0.5 * lp;
    let den = ln_gamma_pole_free(s * 0.5, "s/2")? - s * 0.5 * lp;
    let value = (num - den).exp();
    let residual = match (zeta_reference(s), zeta_reference(1.0 - s)) {
        (Ok(a), Ok(b)) if b.norm() > 1e-8 => Some(mixed_error(value, a / b)),
        _ => None,
    };
    Ok(FunctionalRatio { value, residual })
}

/// L(x) = -ln(1/x - 1), positive for x in (1/2, 1).
pub fn log_l(x: f64) -> Result<f64> {
    if !(x > 0.5 && x < 1.0) {
        return Err(Error::Domain(format!("L(x) needs 1/2 < x < 1, got {x}")));
    }
    Ok(-(1.0 / x - 1.0).ln())
}

/// L(x)^(2 sigma0 - 1).
pub fn log_power_factor(sigma0: f64, x: f64) -> Result<f64> {
    if !sigma0.is_finite() {
        return Err(Error::Domain("sigma0 must be finite".into()));
    }
    Ok(log_l(x)?.powf(2.0 * sigma0 - 1.0))
}

/// x = 1 - 10^-k for k in kmin..=kmax.
pub fn scan_points(kmin: u32, kmax: u32) -> Result<Vec<f64>> {
    if kmin == 0 || kmin > kmax {
        return Err(Error::Domain(format!("k-range {kmin}:{kmax} must satisfy 1 <= kmin <= kmax")));
    }
    if kmax > MAX_SCAN_K {
        return Err(Error::Domain(format!(
            "k = {kmax} exceeds {MAX_SCAN_K}; 1/x - 1 loses all precision beyond that"
        )));
    }
    Ok((kmin..=kmax).map(|k| 1.0 - 10f64.powi(-(k as i32))).collect())
}

/// |(s0 - 1) R(s0) / (-s0)|.
pub fn ratio_target(s0: ComplexVal) -> Result<f64> {
    let r = functional_ratio(s0)?.value;
    Ok(((s0 - 1.0) * r / (-s0)).norm())
}

/// Rows of |int_x^1 Li_s0| / |int_x^1 Li_{1-s0}| with the predicted
/// |Gamma(1-s0)(1-s0) / (Gamma(s0) s0)| L(x)^(2 sigma0 - 1).
pub fn ratio_scan(s0: ComplexVal, xs: &[f64]) -> Result<Vec<RatioScanRow>> {
    ratio_scan_with(s0, xs, Execution::default())
}

pub fn ratio_scan_with(s0: ComplexVal, xs: &[f64], exec: Execution) -> Result<Vec<RatioScanRow>> {
    if !(s0.re > 0.0 && s0.re < 1.0) {
        return Err(Error::Domain(format!("s0 = {s0} is outside the critical strip")));
    }
    if xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("scan points must increase strictly".into()));
    }
    for &x in xs {
        log_l(x)?;
    }
    let s1 = 1.0 - s0;
    let constant = ((ln_gamma(s1)? - ln_gamma(s0)?).exp() * s1 / s0).norm();
    let target = ratio_target(s0)?;
    let rows = map_ordered(exec, xs, |&x| -> Result<RatioScanRow> {
        let num_abs = tail_integral(s0, c(x, 0.0))?.value.norm();
        let den_abs = tail_integral(s1, c(x, 0.0))?.value.norm();
        Ok(RatioScanRow {
            x,
            num_abs,
            den_abs,
            ratio: (den_abs > 0.0).then(|| num_abs / den_abs),
            predicted_factor: constant * log_power_factor(s0.re, x)?,
            target,
        })
    });
    rows.into_iter().collect()
}

/// (| |a(s0)/a(1-s0)| - |(s0-1) R(s0)/(-s0)| |, |Re m(s0) - Re m(1-s0)|).
pub fn necessary_conditions(s0: ComplexVal, at_s0: ExpansionProfile, at_1ms0: ExpansionProfile) -> Result<(f64, f64)> {
    if at_1ms0.a_coeff.norm() == 0.0 {
        return Err(Error::Degenerate("a(1 - s0) vanishes".into()));
    }
    let amp = (at_s0.a_coeff / at_1ms0.a_coeff).norm();
    let amp_residual = (amp - ratio_target(s0)?).abs();
    let exp_residual = (at_s0.m_exponent.re - at_1ms0.m_exponent.re).abs();
    Ok((amp_residual, exp_residual))
}

/// |(s-1) zeta(s,x) - (s-1) zeta(s) - s(s-1) zeta(s+1)(1-x)| / |1-x|^2.
pub fn hurwitz_expansion_check(s: ComplexVal, x: f64) -> Result<f64> {
    let h = 1.0 - x;
    if !(h.abs() < 1.0) || h == 0.0 {
        return Err(Error::Domain("the expansion check needs 0 < |1 - x| < 1".into()));
    }
    if !(s.re > 0.0) || s == c(1.0, 0.0) {
        return Err(Error::Domain("the expansion check needs Re(s) > 0 and s != 1".into()));
    }
    // zeta(s, x) = zeta(1 - s', x) with s' = 1 - s
    let zx = hurwitz_zeta_hermite(HurwitzArg {
        s_param: 1.0 - s,
        a_param: c(x, 0.0),
    })?;
    let sm1 = s - 1.0;
    let lin = sm1 * zeta_reference(s)? + s * sm1 * zeta_reference(s + 1.0)? * h;
    Ok((sm1 * zx - lin).norm() / (h * h))
}

/// |s(s+1)(s-1) zeta(s+2) / 2|, the limit of [`hurwitz_expansion_check`] as x -> 1.
pub fn hurwitz_second_order_scale(s: ComplexVal) -> Result<f64> {
    Ok((s * (s + 1.0) * (s - 1.0) * zeta_reference(s + 2.0)? * 0.5).norm())
}

/// theta(t) = Im ln Gamma(1/4 + it/2) - (t/2) ln pi, up to a multiple of 2 pi.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    Ok(ln_gamma(c(0.25, 0.5 * t))?.im - 0.5 * t * PI.ln())
}

/// Hardy's Z(t) = e^(i theta(t)) zeta(1/2 + it), real for real t.
pub fn hardy_z(t: f64) -> Result<f64> {
    let z = zeta_reference(c(0.5, t))?;
    Ok((c(0.0, riemann_siegel_theta(t)?).exp() * z).re)
}

/// Bisection on a sign change of Hardy's Z in [lo, hi].
pub fn refine_zero(lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = hardy_z(a)?;
    let fb = hardy_z(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Domain(format!("no sign change of Z(t) on [{lo}, {hi}]")));
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = hardy_z(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Ordinates of the first `count` zeros on the critical line, from sign
/// changes of Z(t) on a 0.1 grid starting at t = 10.
pub fn critical_line_zeros(count: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    let step = 0.1;
    let mut t = 10.0;
    let mut prev = hardy_z(t)?;
    while out.len() < count {
        if t > 1000.0 {
            return Err(Error::NonConvergence {
                best: c(f64::NAN, 0.0),
                error_estimate: f64::NAN,
                evaluations: out.len(),
            });
        }
        let next = hardy_z(t + step)?;
        if prev.signum() != next.signum() {
            out.push(refine_zero(t, t + step, 1e-12)?);
        }
        prev = next;
        t += step;
    }
    Ok(out)
}
