//! Riemann zeta by Euler-Maclaurin summation, reflected for Re(s) < 0.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numeric::{c, ln_gamma, ln_sin_pi, real_pow_neg, CompensatedSum, ComplexVal};
use crate::special::{bernoulli_number, rational_to_f64};

/// B_{2k} / (2k)! for k = 1..=31.
fn bernoulli_weights() -> &'static [f64] {
    static W: OnceLock<Vec<f64>> = OnceLock::new();
    W.get_or_init(|| {
        let mut fact = 1.0f64;
        let mut out = Vec::new();
        for k in 1..=31usize {
            fact *= (2 * k - 1) as f64 * (2 * k) as f64;
            let b = rational_to_f64(&bernoulli_number(2 * k).expect("table covers 62"));
            out.push(b / fact);
        }
        out
    })
}

fn zeta_right(s: ComplexVal) -> ComplexVal {
    let n = (20.0 + 0.5 * s.norm()).ceil();
    let mut acc = CompensatedSum::new();
    for k in 1..(n as usize) {
        acc.add(real_pow_neg(k as f64, s));
    }
    let n_s = real_pow_neg(n, s);
    acc.add(n_s * n / (s - 1.0));
    acc.add(n_s * 0.5);
    // rising product s(s+1)...(s+2k-2) times N^(-s-2k+1)
    let mut rising = s;
    let mut power = n_s / n;
    let inv_n2 = 1.0 / (n * n);
    for (k, w) in bernoulli_weights().iter().enumerate() {
        let term = rising * power * *w;
        acc.add(term);
        if term.norm() < 1e-18 * acc.value().norm().max(1e-300) {
            break;
        }
        let j = 2.0 * k as f64 + 1.0;
        rising = rising * (s + j) * (s + j + 1.0);
        power *= inv_n2;
    }
    acc.value()
}

/// zeta(s) for s != 1.
pub fn zeta(s: ComplexVal) -> Result<ComplexVal> {
    if s == c(1.0, 0.0) {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("zeta of non-finite value {s}")));
    }
    if s.re >= 0.0 {
        return Ok(zeta_right(s));
    }
    if s.im == 0.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 == 0 {
        return Ok(c(0.0, 0.0));
    }
    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    let one_minus = 1.0 - s;
    let log_factor = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_sin_pi(s * 0.5) + ln_gamma(one_minus)?;
    let v = log_factor.exp() * zeta_right(one_minus);
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Overflow(format!("zeta({s})")));
    }
    Ok(v)
}
