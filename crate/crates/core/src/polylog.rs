//! Polylogarithm on the principal branch (cut along [1, inf)), Hurwitz zeta
//! from Hermite's integral, and the inversion identity tying Li_s(x) to
//! Li_s(1/x).
//!
//! | method          | region                                      | cost            |
//! |-----------------|---------------------------------------------|-----------------|
//! | power series    | \|x\| <= 0.5 (0.9 when Re s <= 0)           | geometric       |
//! | log series      | \|ln x\| <= 3.8, s not a positive integer   | ~80 zeta values |
//! | Appell integral | Re s > 0                                    | quadrature      |
//! | inversion       | x outside [0, 1]                            | Hermite + series|
//! | Eulerian        | s = 0, -1, -2, ...                          | rational        |
//!
//! The Appell integral loses about pi |Im s| / (2 ln 10) digits to
//! cancellation when Li_s(x) is of moderate size, so `Auto` prefers the log
//! series or the inversion identity when |Im s| is large.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::euler_maclaurin;
use crate::numeric::{c, ln_gamma, nonpositive_integer, positive_integer, principal_log, real_pow_neg, reciprocal_gamma, CompensatedSum, ComplexVal};
use crate::quad::{integrate_semi_infinite_from, QuadTolerance};
use crate::special::{bernoulli_number, eulerian_polynomial, rational_to_f64};

/// Default power-series radius.
pub const SERIES_RADIUS: f64 = 0.5;
/// Power-series radius allowed when Re(s) <= 0.
pub const EXTENDED_SERIES_RADIUS: f64 = 0.9;
/// Largest |ln x| served by the log series.
pub const LOG_SERIES_RADIUS: f64 = 3.8;
/// |Im s| above which `Auto` uses the inversion identity instead of Appell's integral.
pub const APPELL_IMAG_LIMIT: f64 = 5.0;

const LOG_SERIES_TERMS: usize = 110;
const SERIES_MAX_TERMS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolylogMethod {
    PowerSeries,
    AppellIntegral,
    LogSeries,
    Inversion,
    Eulerian,
    #[default]
    Auto,
}

impl PolylogMethod {
    pub fn name(self) -> &'static str {
        match self {
            PolylogMethod::PowerSeries => "power_series",
            PolylogMethod::AppellIntegral => "appell_integral",
            PolylogMethod::LogSeries => "log_series",
            PolylogMethod::Inversion => "inversion",
            PolylogMethod::Eulerian => "eulerian",
            PolylogMethod::Auto => "auto",
        }
    }
}

/// Which form of the Hurwitz argument the inversion identity uses.
///
/// * `NegativeLog`: a = 1/2 + ln(-x)/(2 pi i), for x outside [0, 1].
/// * `ReciprocalLog`: a = 1/2 - ln(-1/x)/(2 pi i), for x outside [1, inf).
/// * `PrincipalLog`: a = ln(x)/(2 pi i), for x outside [0, inf).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionVariant {
    NegativeLog,
    ReciprocalLog,
    PrincipalLog,
}

/// Arguments of zeta(1 - s, a) in Hermite's representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HurwitzArg {
    pub s_param: ComplexVal,
    pub a_param: ComplexVal,
}

fn is_zero(x: ComplexVal) -> bool {
    x.re == 0.0 && x.im == 0.0
}

fn on_cut(x: ComplexVal) -> bool {
    x.im == 0.0 && x.re >= 1.0
}

fn on_unit_segment(x: ComplexVal) -> bool {
    x.im == 0.0 && (0.0..=1.0).contains(&x.re)
}

fn finite(v: ComplexVal, what: &str) -> Result<ComplexVal> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(what.to_string()))
    }
}

fn series_radius(s: ComplexVal) -> f64 {
    if s.re <= 0.0 {
        EXTENDED_SERIES_RADIUS
    } else {
        SERIES_RADIUS
    }
}

fn power_series(s: ComplexVal, x: ComplexVal) -> Result<ComplexVal> {
    let ax = x.norm();
    if ax == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let la = ax.ln();
    // terms |x|^n n^-sigma grow until n = sigma / ln|x| when sigma < 0
    let n_peak = (s.re / la).max(1.0);
    let mut acc = CompensatedSum::new();
    let mut xn = c(1.0, 0.0);
    for n in 1..=SERIES_MAX_TERMS {
        xn *= x;
        let nf = n as f64;
        acc.add(xn * real_pow_neg(nf, s));
        let bound = (nf * la - s.re * nf.ln()).exp();
        let floor = 1e-17 * (1.0 - ax) * acc.value().norm().max(ax.min(1.0));
        if nf > n_peak && bound < floor {
            return Ok(acc.value());
        }
    }
    Err(Error::NonConvergence {
        best: acc.value(),
        error_estimate: f64::NAN,
        evaluations: SERIES_MAX_TERMS,
    })
}

/// Largest k for the exact Eulerian row; the row costs O(k^2) big integers.
pub const EULERIAN_MAX_ORDER: u32 = 1000;

fn eulerian_closed(k: u32, x: ComplexVal) -> Result<ComplexVal> {
    if k > EULERIAN_MAX_ORDER {
        return Err(Error::Capacity {
            requested: k as usize,
            limit: EULERIAN_MAX_ORDER as usize,
        });
    }
    // Li_{-k}(x) = x A_k(x) / (1 - x)^(k+1)
    let a = eulerian_polynomial(k).eval_complex(x);
    finite(x * a / (1.0 - x).powi(k as i32 + 1), "Eulerian closed form")
}

fn appell_tolerance() -> QuadTolerance {
    QuadTolerance::relative_to_norm(1e-14, 2e-14)
}

fn appell(s: ComplexVal, x: ComplexVal) -> Result<ComplexVal> {
    if s.re <= 0.0 {
        return Err(Error::MethodUnavailable("Appell's integral needs Re(s) > 0".into()));
    }
    if is_zero(x) {
        return Ok(c(0.0, 0.0));
    }
    let lx = principal_log(x)?;
    let two_pi_i = c(0.0, 2.0 * PI);
    let rho = [lx, lx + two_pi_i, lx - two_pi_i]
        .iter()
        .map(|v| v.norm())
        .fold(f64::INFINITY, f64::min);
    let delta = (rho / 4.0).min(1.0);
    let h0 = 1.0 - x;

    // Taylor coefficients of 1/(e^t - x) at t = 0
    const K: usize = 32;
    let mut g = [c(0.0, 0.0); K];
    let inv_h0 = 1.0 / h0;
    let mut inv_fact = [0.0f64; K];
    inv_fact[0] = 1.0;
    for j in 1..K {
        inv_fact[j] = inv_fact[j - 1] / j as f64;
    }
    g[0] = inv_h0;
    for k in 1..K {
        let mut acc = c(0.0, 0.0);
        for j in 1..=k {
            acc += g[k - j] * inv_fact[j];
        }
        g[k] = -acc * inv_h0;
    }
    let mut head = c(0.0, 0.0);
    let mut dk = 1.0;
    for (k, gk) in g.iter().enumerate() {
        head += *gk * dk / (s + k as f64);
        dk *= delta;
    }
    head *= (s * delta.ln()).exp();

    let sm1 = s - 1.0;
    let f = move |t: f64| -> ComplexVal { (sm1 * t.ln()).exp() / (t.exp_m1() + h0) };
    let mut points = vec![delta];
    let lre = lx.re;
    for p in [lre - 3.0, lre, lre + 3.0] {
        if p > *points.last().expect("nonempty") + 0.25 {
            points.push(p);
        }
    }
    if points.len() == 1 {
        points.push(delta + 1.0);
    }
    let tail = integrate_semi_infinite_from(f, &points, appell_tolerance(), 1.0, false)?;
    finite(x * reciprocal_gamma(s) * (head + tail.value), "Appell integral")
}

/// zeta(s - k) for k = 0..LOG_SERIES_TERMS.
fn log_series_zetas(s: ComplexVal) -> Result<Vec<ComplexVal>> {
    (0..LOG_SERIES_TERMS)
        .map(|k| euler_maclaurin::zeta(s - k as f64))
        .collect()
}

fn log_series(s: ComplexVal, x: ComplexVal, zetas: &[ComplexVal]) -> Result<ComplexVal> {
    let mu = principal_log(x)?;
    if mu.norm() > LOG_SERIES_RADIUS {
        return Err(Error::MethodUnavailable(format!(
            "log series needs |ln x| <= {LOG_SERIES_RADIUS}"
        )));
    }
    let mut acc = CompensatedSum::new();
    // Gamma(1-s) (-mu)^(s-1)
    let lead = (ln_gamma(1.0 - s)? + (s - 1.0) * principal_log(-mu)?).exp();
    acc.add(lead);
    // the sum may cancel to far below its terms, so stop relative to their size
    let mut scale = lead.norm();
    let mut pw = c(1.0, 0.0);
    let mut small = 0;
    for (k, z) in zetas.iter().enumerate() {
        if k > 0 {
            pw = pw * mu / k as f64;
        }
        let term = *z * pw;
        acc.add(term);
        scale = scale.max(term.norm());
        if k > 8 && term.norm() < 1e-17 * acc.value().norm().max(1e-3 * scale) {
            small += 1;
            if small >= 3 {
                return finite(acc.value(), "log series");
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        best: acc.value(),
        error_estimate: f64::NAN,
        evaluations: zetas.len(),
    })
}

fn hermite_tolerance() -> QuadTolerance {
    QuadTolerance::relative_to_norm(1e-14, 2e-14)
}

/// zeta(1 - s, a) from Hermite's representation, Re(a) > 0.
pub fn hurwitz_zeta_hermite(arg: HurwitzArg) -> Result<ComplexVal> {
    let HurwitzArg {
        s_param: s,
        a_param: a,
    } = arg;
    if !(a.re > 0.0) {
        return Err(Error::Domain("Hermite's representation needs Re(a) > 0".into()));
    }
    if is_zero(s) {
        return Err(Error::Domain("Hermite's representation needs s != 0".into()));
    }
    let la = principal_log(a)?;
    let closed = ((s - 1.0) * la).exp() * 0.5 - (s * la).exp() / s;
    if s == c(1.0, 0.0) {
        return Ok(closed);
    }
    let sm1 = s - 1.0;
    let limit = (1.0 - s) * ((s - 2.0) * la).exp() / PI;
    let f = move |t: f64| -> ComplexVal {
        if t < 1e-6 {
            return limit;
        }
        let it = c(0.0, t);
        let minus = (sm1 * (a - it).ln()).exp();
        let plus = (sm1 * (a + it).ln()).exp();
        (minus - plus) / c(0.0, (2.0 * PI * t).exp_m1())
    };
    // a + it passes closest to 0 at t = |Im a|
    let mut points = vec![0.0, 0.5];
    let near = a.im.abs();
    if near > 1e-3 && (near - 0.5).abs() > 1e-3 {
        points.push(near);
        points.sort_by(f64::total_cmp);
    }
    let r = integrate_semi_infinite_from(f, &points, hermite_tolerance(), 2.0 * PI, false)?;
    finite(closed + r.value, "Hurwitz zeta")
}

fn inversion_a(x: ComplexVal, variant: InversionVariant) -> Result<ComplexVal> {
    if is_zero(x) {
        return Err(Error::Domain("inversion needs x != 0".into()));
    }
    let two_pi_i = c(0.0, 2.0 * PI);
    let a = match variant {
        InversionVariant::NegativeLog => {
            if on_unit_segment(x) {
                return Err(Error::Domain("this inversion form needs x outside [0, 1]".into()));
            }
            0.5 + principal_log(-x)? / two_pi_i
        }
        InversionVariant::ReciprocalLog => {
            if on_cut(x) {
                return Err(Error::Domain("this inversion form needs x outside [1, inf)".into()));
            }
            0.5 - principal_log(-1.0 / x)? / two_pi_i
        }
        InversionVariant::PrincipalLog => {
            if x.im == 0.0 && x.re >= 0.0 {
                return Err(Error::Domain("this inversion form needs x outside [0, inf)".into()));
            }
            principal_log(x)? / two_pi_i
        }
    };
    if !(a.re > 0.0) {
        return Err(Error::Domain(format!(
            "Hurwitz argument {a} has Re(a) <= 0 for x = {x}"
        )));
    }
    Ok(a)
}

/// (2 pi i)^s / Gamma(s) * zeta(1 - s, a(x)) for the chosen variant.
pub fn inversion_formula_rhs(s: ComplexVal, x: ComplexVal, variant: InversionVariant) -> Result<ComplexVal> {
    let a = inversion_a(x, variant)?;
    let z = hurwitz_zeta_hermite(HurwitzArg {
        s_param: s,
        a_param: a,
    })?;
    let pref = (s * c((2.0 * PI).ln(), 0.5 * PI)).exp() * reciprocal_gamma(s);
    finite(pref * z, "inversion right-hand side")
}

/// (-1)^s taken as e^(i pi s).
pub fn minus_one_pow(s: ComplexVal) -> ComplexVal {
    (c(0.0, PI) * s).exp()
}

/// Li_s(x) + (-1)^s Li_s(1/x) - rhs, each polylog by `Auto`.
pub fn inversion_residual(s: ComplexVal, x: ComplexVal, variant: InversionVariant) -> Result<ComplexVal> {
    let p = Polylog::new(s);
    let lhs = p.eval(x, PolylogMethod::Auto)? + minus_one_pow(s) * p.eval(1.0 / x, PolylogMethod::Auto)?;
    Ok(lhs - inversion_formula_rhs(s, x, variant)?)
}

/// Polylogarithm of a fixed order s; caches the zeta values used by the log series.
#[derive(Debug)]
pub struct Polylog {
    s: ComplexVal,
    zetas: OnceLock<Result<Vec<ComplexVal>>>,
}

impl Polylog {
    pub fn new(s: ComplexVal) -> Self {
        Self {
            s,
            zetas: OnceLock::new(),
        }
    }

    pub fn order(&self) -> ComplexVal {
        self.s
    }

    fn zetas(&self) -> Result<&[ComplexVal]> {
        match self.zetas.get_or_init(|| log_series_zetas(self.s)) {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn eval(&self, x: ComplexVal, method: PolylogMethod) -> Result<ComplexVal> {
        self.eval_with_method(x, method).map(|r| r.0)
    }

    /// Value together with the method that produced it.
    pub fn eval_with_method(&self, x: ComplexVal, method: PolylogMethod) -> Result<(ComplexVal, PolylogMethod)> {
        let s = self.s;
        if !(x.re.is_finite() && x.im.is_finite() && s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::Domain("non-finite input".into()));
        }
        if on_cut(x) {
            return Err(Error::BranchCut(format!("x = {x} lies on the cut [1, inf)")));
        }
        if is_zero(x) {
            return Ok((c(0.0, 0.0), if method == PolylogMethod::Auto { PolylogMethod::PowerSeries } else { method }));
        }
        let method = match method {
            PolylogMethod::Auto => self.choose(x)?,
            m => m,
        };
        let v = match method {
            PolylogMethod::PowerSeries => {
                let r = series_radius(s);
                if x.norm() > r {
                    return Err(Error::MethodUnavailable(format!("power series needs |x| <= {r}")));
                }
                power_series(s, x)?
            }
            PolylogMethod::AppellIntegral => appell(s, x)?,
            PolylogMethod::LogSeries => {
                if positive_integer(s).is_some() {
                    return Err(Error::MethodUnavailable(
                        "log series is not used at positive integer s".into(),
                    ));
                }
                log_series(s, x, self.zetas()?)?
            }
            PolylogMethod::Inversion => self.inversion(x)?,
            PolylogMethod::Eulerian => match nonpositive_integer(s) {
                Some(k) => eulerian_closed((-k) as u32, x)?,
                None => {
                    return Err(Error::MethodUnavailable(
                        "Eulerian closed form needs s in {0, -1, -2, ...}".into(),
                    ))
                }
            },
            PolylogMethod::Auto => unreachable!("resolved above"),
        };
        Ok((v, method))
    }

    fn choose(&self, x: ComplexVal) -> Result<PolylogMethod> {
        let s = self.s;
        if nonpositive_integer(s).is_some() {
            return Ok(PolylogMethod::Eulerian);
        }
        let ax = x.norm();
        if ax <= SERIES_RADIUS || (s.re <= 0.0 && ax <= EXTENDED_SERIES_RADIUS) {
            return Ok(PolylogMethod::PowerSeries);
        }
        if s.re > 0.0 {
            if positive_integer(s).is_none() && principal_log(x)?.norm() <= LOG_SERIES_RADIUS {
                return Ok(PolylogMethod::LogSeries);
            }
            if s.im.abs() > APPELL_IMAG_LIMIT && !on_unit_segment(x) && ax >= 2.0 {
                return Ok(PolylogMethod::Inversion);
            }
            return Ok(PolylogMethod::AppellIntegral);
        }
        if !on_unit_segment(x) && ax >= 1.0 / EXTENDED_SERIES_RADIUS {
            return Ok(PolylogMethod::Inversion);
        }
        // the annulus around |x| = 1; Re(s) <= 0 keeps ln x well inside 2 pi
        if principal_log(x)?.norm() <= LOG_SERIES_RADIUS {
            return Ok(PolylogMethod::LogSeries);
        }
        Err(Error::MethodUnavailable(format!(
            "no method covers Re(s) <= 0 with |x| = {ax} in (0.9, 1.11)"
        )))
    }

    fn inversion(&self, x: ComplexVal) -> Result<ComplexVal> {
        let s = self.s;
        if on_unit_segment(x) {
            return Err(Error::MethodUnavailable("inversion needs x outside [0, 1]".into()));
        }
        if s.im < 0.0 {
            // |e^(i pi s)| = e^(pi |Im s|) would amplify Li_s(1/x); use Li_s(x) = conj Li_conj(s)(conj x)
            return Polylog::new(s.conj()).inversion(x.conj()).map(|v| v.conj());
        }
        let inv = 1.0 / x;
        let inner = if inv.norm() <= series_radius(s) {
            power_series(s, inv)?
        } else {
            let m = self.choose(inv)?;
            if m == PolylogMethod::Inversion {
                return Err(Error::MethodUnavailable("inversion would recurse".into()));
            }
            self.eval(inv, m)?
        };
        let rhs = inversion_formula_rhs(s, x, InversionVariant::NegativeLog)?;
        finite(rhs - minus_one_pow(s) * inner, "inversion")
    }
}

/// Li_s(x) by the requested method.
pub fn polylog(s: ComplexVal, x: ComplexVal, method: PolylogMethod) -> Result<ComplexVal> {
    Polylog::new(s).eval(x, method)
}

/// Large-|x| expansion of Li_s(x).
///
/// Order 0 is the leading term -(ln(-x))^s / Gamma(s+1). Order m >= 1 keeps
/// the boundary term and the Bernoulli-weighted terms k = 0..m of
/// `eps i pi / Gamma(s) L^(s-1) - sum_k (-1)^k (2 pi)^(2k) B_2k/(2k)! L^(s-2k) / Gamma(s+1-2k)`
/// with L = ln(-x) + eps i pi and eps = sign of Im x (+1 on the real axis).
pub fn polylog_asymptotic(s: ComplexVal, x: ComplexVal, order: usize) -> Result<ComplexVal> {
    if x.norm() < 10.0 {
        return Err(Error::Domain("asymptotic expansion needs |x| >= 10".into()));
    }
    if x.im == 0.0 && x.re >= 0.0 {
        return Err(Error::Domain("asymptotic expansion needs x outside [0, inf)".into()));
    }
    if order > 8 {
        return Err(Error::Domain("asymptotic order is limited to 8".into()));
    }
    let lnm = principal_log(-x)?;
    if order == 0 {
        return finite(-(s * principal_log(lnm)?).exp() * reciprocal_gamma(s + 1.0), "asymptotic");
    }
    let eps = if x.im >= 0.0 { 1.0 } else { -1.0 };
    let l = lnm + c(0.0, eps * PI);
    let ll = principal_log(l)?;
    let mut acc = c(0.0, eps * PI) * reciprocal_gamma(s) * ((s - 1.0) * ll).exp();
    let mut fact = 1.0f64;
    let mut two_pi_pow = 1.0f64;
    for k in 0..=order {
        if k > 0 {
            fact *= (2 * k - 1) as f64 * (2 * k) as f64;
            two_pi_pow *= (2.0 * PI) * (2.0 * PI);
        }
        let b = rational_to_f64(&bernoulli_number(2 * k)?);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * two_pi_pow * b / fact;
        acc -= w * ((s - 2.0 * k as f64) * ll).exp() * reciprocal_gamma(s + 1.0 - 2.0 * k as f64);
    }
    finite(acc, "asymptotic")
}

/// phi(s, x) = -Li_s(x / (x - 1)).
pub fn phi(s: ComplexVal, x: ComplexVal) -> Result<ComplexVal> {
    phi_with(&Polylog::new(s), x)
}

/// `phi` with a shared polylog evaluator.
pub fn phi_with(p: &Polylog, x: ComplexVal) -> Result<ComplexVal> {
    if x.im == 0.0 {
        if x.re == 1.0 {
            return Err(Error::Pole("phi(s, x) is singular at x = 1".into()));
        }
        if x.re > 1.0 || x.re < 0.0 {
            return Err(Error::BranchCut(format!("x = {x} is outside the domain of phi")));
        }
    }
    if is_zero(x) {
        return Ok(c(0.0, 0.0));
    }
    Ok(-p.eval(x / (x - 1.0), PolylogMethod::Auto)?)
}
