//! The parametrized zeta function
//!
//! ```text
//! Z(s, x) = sum_{n>=1} S_n(s) x^(n+1) / (n+1) = -int_0^x Li_s(z/(z-1)) dz
//!         = (s-1) zeta(s) + int_x^1 Li_s(z/(z-1)) dz
//! ```
//!
//! Integrals run along straight segments. The piece from x to 1 uses
//! z = 1 - (1-x) e^-tau, which maps it onto tau in [0, inf) and turns the
//! logarithmic blow-up of the integrand at z = 1 into polynomial growth in tau
//! against e^-tau.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::finite_sums::{s_sum, s_sum_asymptotic, FiniteSumMode};
use crate::numeric::{c, nonpositive_integer, positive_integer, principal_log, reciprocal_gamma, ComplexVal};
use crate::polylog::{phi_with, Polylog, PolylogMethod};
use crate::quad::{integrate_finite, integrate_semi_infinite_from, QuadResult, QuadTolerance};
use crate::series::zeta_reference;
use crate::special::{eulerian_row, PolynomialQ};

/// Below this |1 - x| the integral method uses the form anchored at x = 1.
pub const NEAR_ONE_RADIUS: f64 = 0.2;
/// Integer orders with a closed form.
pub const CLOSED_FORM_RANGE: (i64, i64) = (-8, 2);

/// Default truncation for the series form of Z.
pub const DEFAULT_SERIES_TERMS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZEvalMethod {
    Series,
    Integral,
    ClosedForm,
    #[default]
    Auto,
}

impl ZEvalMethod {
    pub fn name(self) -> &'static str {
        match self {
            ZEvalMethod::Series => "series",
            ZEvalMethod::Integral => "integral",
            ZEvalMethod::ClosedForm => "closed_form",
            ZEvalMethod::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZValue {
    pub value: ComplexVal,
    pub error_estimate: f64,
    /// The method that produced the value (never `Auto`).
    pub method: ZEvalMethod,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorTermEstimate {
    pub x: ComplexVal,
    pub exact_tail: ComplexVal,
    pub leading_asymptotic: ComplexVal,
    pub ratio: ComplexVal,
}

fn z_tolerance() -> QuadTolerance {
    QuadTolerance::relative_to_norm(1e-12, 2e-14)
}

fn closed_form_order(s: ComplexVal) -> Option<i64> {
    let k = nonpositive_integer(s).or_else(|| positive_integer(s))?;
    (CLOSED_FORM_RANGE.0..=CLOSED_FORM_RANGE.1).contains(&k).then_some(k)
}

/// int_x^1 Li_s(z/(z-1)) dz for x != 1, via z = 1 - (1-x) e^-tau.
pub fn tail_integral(s: ComplexVal, x: ComplexVal) -> Result<QuadResult> {
    tail_integral_with(&Polylog::new(s), x)
}

fn tail_integral_with(p: &Polylog, x: ComplexVal) -> Result<QuadResult> {
    let h = 1.0 - x;
    if h.norm() == 0.0 {
        return Ok(QuadResult {
            value: c(0.0, 0.0),
            abs_error_estimate: 0.0,
            evaluations: 1,
            l1_norm: 0.0,
        });
    }
    check_segment_from_zero(x)?;
    // after the first failure the integrand is 0, so the rule finishes fast
    let failure = std::cell::RefCell::new(None);
    let f = |tau: f64| -> ComplexVal {
        if failure.borrow().is_some() {
            return c(0.0, 0.0);
        }
        let w = 1.0 - tau.exp() / h;
        match p.eval(w, PolylogMethod::Auto) {
            Ok(v) => v * h * (-tau).exp(),
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                c(0.0, 0.0)
            }
        }
    };
    let r = integrate_semi_infinite_from(f, &[0.0, 1.0, 4.0], z_tolerance(), 1.0, false);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    r
}

/// int_0^x Li_s(z/(z-1)) dz along the segment [0, x].
pub fn head_integral(s: ComplexVal, x: ComplexVal) -> Result<QuadResult> {
    head_integral_with(&Polylog::new(s), x)
}

fn head_integral_with(p: &Polylog, x: ComplexVal) -> Result<QuadResult> {
    if x.norm() == 0.0 {
        return Ok(QuadResult {
            value: c(0.0, 0.0),
            abs_error_estimate: 0.0,
            evaluations: 1,
            l1_norm: 0.0,
        });
    }
    check_segment_from_zero(x)?;
    let failure = std::cell::RefCell::new(None);
    // Li_s(z/(z-1)) = -phi(s, z), z = x v
    let f = |v: f64| -> ComplexVal {
        if failure.borrow().is_some() {
            return c(0.0, 0.0);
        }
        match phi_with(p, x * v) {
            Ok(val) => -val * x,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                c(0.0, 0.0)
            }
        }
    };
    let r = integrate_finite(f, 0.0, 1.0, z_tolerance());
    if let Some(e) = failure.take() {
        return Err(e);
    }
    r
}

fn check_segment_from_zero(x: ComplexVal) -> Result<()> {
    if x.im == 0.0 && (x.re < 0.0 || x.re > 1.0) {
        return Err(Error::BranchCut(format!("x = {x} lies on the cut of Z(s, x)")));
    }
    if x.im != 0.0 && x.im.abs() < 1e-12 && (x.re < 0.0 || x.re > 1.0) {
        return Err(Error::BranchCut(format!("x = {x} is within 1e-12 of the cut")));
    }
    Ok(())
}

fn integral_value(p: &Polylog, s: ComplexVal, x: ComplexVal) -> Result<ZValue> {
    let d = (1.0 - x).norm();
    let (value, err) = if d == 0.0 {
        // -(int_0^1/2 + int_1/2^1); no zeta value involved
        let left = head_integral_with(p, c(0.5, 0.0))?;
        let right = tail_integral_with(p, c(0.5, 0.0))?;
        (-(left.value + right.value), left.abs_error_estimate + right.abs_error_estimate)
    } else if d < NEAR_ONE_RADIUS {
        let t = tail_integral_with(p, x)?;
        // (s-1) zeta(s) -> 1 at the pole
        let anchor = if s == c(1.0, 0.0) { c(1.0, 0.0) } else { (s - 1.0) * zeta_reference(s)? };
        (anchor + t.value, t.abs_error_estimate + 1e-14 * anchor.norm())
    } else {
        let h = head_integral_with(p, x)?;
        (-h.value, h.abs_error_estimate)
    };
    Ok(ZValue {
        value,
        error_estimate: err,
        method: ZEvalMethod::Integral,
    })
}

/// Partial sum of the defining series with `terms` terms and a tail bound
/// from the leading-order size of S_n.
fn series_value(s: ComplexVal, x: ComplexVal, terms: usize, exec: Execution) -> Result<ZValue> {
    let ax = x.norm();
    if ax >= 1.0 {
        return Err(Error::Domain("the series form of Z needs |x| < 1".into()));
    }
    if terms == 0 {
        return Err(Error::Domain("terms must be at least 1".into()));
    }
    let exact_len = nonpositive_integer(s).map(|k| (1 - k) as usize);
    let n_max = exact_len.map_or(terms, |l| l.min(terms));
    let idx: Vec<usize> = (1..=n_max).collect();
    let sums = map_ordered(exec, &idx, |&n| s_sum(n, s, FiniteSumMode::Auto));
    let mut acc = c(0.0, 0.0);
    let mut xp = x;
    for (n, sn) in idx.iter().zip(sums) {
        xp *= x;
        acc += sn? * xp / (*n as f64 + 1.0);
    }
    let err = match exact_len {
        Some(l) if terms >= l => 0.0,
        _ => {
            let nf = n_max as f64;
            let size = s_sum_asymptotic(n_max.max(2), s)?.predicted.norm().max(1e-300);
            size * ax.powf(nf + 2.0) / ((nf + 2.0) * (1.0 - ax))
        }
    };
    Ok(ZValue {
        value: acc,
        error_estimate: err,
        method: ZEvalMethod::Series,
    })
}

/// Z(-k, x) as an exact polynomial with rational coefficients.
///
/// Li_{-k}(z/(z-1)) = (-1)^(k+1) sum_j <k,j> z^(j+1) (z-1)^(k-j).
pub fn z_polynomial(k: u32) -> PolynomialQ {
    let one = BigRational::from_integer(BigInt::from(1));
    let zm1 = PolynomialQ::new(vec![-one.clone(), one.clone()]);
    let mut integrand = PolynomialQ::zero();
    for (j, a) in eulerian_row(k).into_iter().enumerate() {
        let term = PolynomialQ::monomial(BigRational::from_integer(a), j + 1).mul(&zm1.pow(k as usize - j));
        integrand = integrand.add(&term);
    }
    // Z = -int_0^x integrand, and integrand carries (-1)^(k+1)
    let sign = if k % 2 == 0 { one } else { -one };
    integrand.integral().scale(&sign)
}

/// Closed forms at integer s in [-8, 2].
pub fn z_closed_form(s: i64, x: ComplexVal) -> Result<ComplexVal> {
    if !(CLOSED_FORM_RANGE.0..=CLOSED_FORM_RANGE.1).contains(&s) {
        return Err(Error::Domain(format!("closed forms cover integer s in [-8, 2], got {s}")));
    }
    if s <= 0 {
        return Ok(z_polynomial((-s) as u32).eval_complex(x));
    }
    if x.im == 0.0 && x.re > 1.0 {
        return Err(Error::BranchCut(format!("x = {x} lies on the cut [1, inf)")));
    }
    if x == c(1.0, 0.0) {
        return if s == 1 { Ok(c(1.0, 0.0)) } else { zeta_reference(c(2.0, 0.0)) };
    }
    let l = principal_log(1.0 - x)?;
    if s == 1 {
        // 1 + (x-1)(1 - ln(1-x))
        return Ok(1.0 + (x - 1.0) * (1.0 - l));
    }
    // x Li_2(x) - (1-x) ln^2(1-x) / 2
    let li2 = Polylog::new(c(2.0, 0.0)).eval(x, PolylogMethod::Auto)?;
    Ok(x * li2 - 0.5 * (1.0 - x) * l * l)
}

/// Z(s, x) with the requested method; `terms` bounds the series.
pub fn z_value(s: ComplexVal, x: ComplexVal, method: ZEvalMethod, terms: usize) -> Result<ZValue> {
    z_value_with(s, x, method, terms, Execution::default())
}

pub fn z_value_with(s: ComplexVal, x: ComplexVal, method: ZEvalMethod, terms: usize, exec: Execution) -> Result<ZValue> {
    if !(s.re.is_finite() && s.im.is_finite() && x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::Domain("non-finite input".into()));
    }
    if x.norm() == 0.0 {
        let m = if method == ZEvalMethod::Auto { ZEvalMethod::Series } else { method };
        return Ok(ZValue {
            value: c(0.0, 0.0),
            error_estimate: 0.0,
            method: m,
        });
    }
    match method {
        ZEvalMethod::Series => series_value(s, x, terms, exec),
        ZEvalMethod::Integral => integral_value(&Polylog::new(s), s, x),
        ZEvalMethod::ClosedForm => match closed_form_order(s) {
            Some(k) => Ok(ZValue {
                value: z_closed_form(k, x)?,
                error_estimate: 0.0,
                method: ZEvalMethod::ClosedForm,
            }),
            None => Err(Error::MethodUnavailable(format!(
                "no closed form for s = {s}; closed forms cover integers in [-8, 2]"
            ))),
        },
        ZEvalMethod::Auto => {
            if closed_form_order(s).is_some() {
                z_value_with(s, x, ZEvalMethod::ClosedForm, terms, exec)
            } else {
                integral_value(&Polylog::new(s), s, x)
            }
        }
    }
}

/// Compares int_x^1 Li_s(z/(z-1)) dz with -(1-x) L^s / Gamma(1+s),
/// L = -ln(1/x - 1). The ratio tends to 1 as x -> 1.
pub fn error_term_probe(s: ComplexVal, x: f64) -> Result<ErrorTermEstimate> {
    if !(s.re > 0.0) {
        return Err(Error::Domain("the error-term probe needs Re(s) > 0".into()));
    }
    if !(x > 0.5 && x < 1.0) {
        return Err(Error::Domain("the error-term probe needs 1/2 < x < 1".into()));
    }
    let tail = tail_integral(s, c(x, 0.0))?.value;
    let l = -(1.0 / x - 1.0).ln();
    let leading = -reciprocal_gamma(s + 1.0) * (1.0 - x) * (s * l.ln()).exp();
    let ratio = if leading.norm() > 0.0 { tail / leading } else { c(f64::NAN, f64::NAN) };
    Ok(ErrorTermEstimate {
        x: c(x, 0.0),
        exact_tail: tail,
        leading_asymptotic: leading,
        ratio,
    })
}

/// (int_0^1/2, int_1/2^1) of Li_s(z/(z-1)) dz. At a zero of zeta they cancel.
pub fn zero_split_identity(s: ComplexVal) -> Result<(ComplexVal, ComplexVal)> {
    let p = Polylog::new(s);
    let left = head_integral_with(&p, c(0.5, 0.0))?;
    let right = tail_integral_with(&p, c(0.5, 0.0))?;
    Ok((left.value, right.value))
}

/// eta(s) = -Li_s(-1), which vanishes with zeta off s = 1.
pub fn eta(s: ComplexVal) -> Result<ComplexVal> {
    Ok(-Polylog::new(s).eval(c(-1.0, 0.0), PolylogMethod::Auto)?)
}

/// Z(1, x) = 1 + (x - 1)(1 - ln(1 - x)); the closed tail at s = 1 is Z(1, x) - 1.
pub fn closed_tail_s1(x: f64) -> f64 {
    (x - 1.0) * (1.0 - (1.0 - x).ln())
}
