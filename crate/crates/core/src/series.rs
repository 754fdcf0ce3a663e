//! Five globally convergent series for zeta(s) built from the finite sums.
//!
//! | kind          | sum                              | equals                 |
//! |---------------|----------------------------------|------------------------|
//! | `ThisPaper`   | sum_{n>=1} S_n(s) / (n+1)        | (s-1) zeta(s)          |
//! | `Hasse`       | sum_{n>=1} S_n(s-1) / n          | (s-1) zeta(s)          |
//! | `Ser`         | sum_{n>=1} \|G_n\| S_n(s)        | zeta(s) - 1/(s-1)      |
//! | `Blagouchine` | sum_{n>=1} C_n S~_n(s)           | s/(s-1) - zeta(s)      |
//! | `Knopp`       | sum_{n>=0} 2^(-n-1) S_{n+1}(s)   | (1 - 2^(1-s)) zeta(s)  |
//!
//! Every kind reports zeta(s). Except for Knopp the terms decay only like a
//! power of log n over n^2, so a plain partial sum is accurate to a few digits
//! at best. With [`TailMode::Integral`] the remainder after N terms is added
//! exactly: writing each S_m as a Mellin integral over u = 1 - e^-t,
//!
//! ```text
//! sum_{m>N} c_m S_m(s) = 1/Gamma(s) int_0^inf e^(-w t) t^(s-1) sum_{m>N} c_m u^(m-1) dt
//! ```
//!
//! and the coefficient tail has a closed form for every kind.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::euler_maclaurin;
use crate::exec::{map_ordered, Execution};
use crate::finite_sums::{s_sum, s_tilde_sum_mode, FiniteSumMode, DIRECT_SWITCH};
use crate::numeric::{c, nonpositive_integer, reciprocal_gamma, ComplexVal};
use crate::quad::{integrate_semi_infinite_from, QuadTolerance};
use crate::special::{cauchy_2nd_f64, gregory_abs_f64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    ThisPaper,
    Hasse,
    Ser,
    Blagouchine,
    Knopp,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 5] = [
        SeriesKind::ThisPaper,
        SeriesKind::Hasse,
        SeriesKind::Ser,
        SeriesKind::Blagouchine,
        SeriesKind::Knopp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::ThisPaper => "this_paper",
            SeriesKind::Hasse => "hasse",
            SeriesKind::Ser => "ser",
            SeriesKind::Blagouchine => "blagouchine",
            SeriesKind::Knopp => "knopp",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Trace index of the first term.
    fn first_index(self) -> usize {
        match self {
            SeriesKind::Knopp => 0,
            _ => 1,
        }
    }
}

/// How the remainder after the last computed term is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailMode {
    /// Plain partial sum; the remainder is only estimated.
    None,
    /// Remainder added as a Mellin integral of the coefficient tail.
    #[default]
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub max_terms: usize,
    pub term_mode: FiniteSumMode,
    pub target_tol: f64,
    pub tail: TailMode,
    pub execution: Execution,
}

impl SeriesSpec {
    pub const DEFAULT_MAX_TERMS: usize = 64;
    pub const DEFAULT_TARGET_TOL: f64 = 1e-12;

    pub fn new(kind: SeriesKind) -> Self {
        Self {
            kind,
            max_terms: Self::DEFAULT_MAX_TERMS,
            term_mode: FiniteSumMode::Auto,
            target_tol: Self::DEFAULT_TARGET_TOL,
            tail: TailMode::Integral,
            execution: Execution::default(),
        }
    }

    pub fn with_max_terms(mut self, n: usize) -> Self {
        self.max_terms = n;
        self
    }

    pub fn with_term_mode(mut self, mode: FiniteSumMode) -> Self {
        self.term_mode = mode;
        self
    }

    pub fn with_target_tol(mut self, tol: f64) -> Self {
        self.target_tol = tol;
        self
    }

    pub fn with_tail(mut self, tail: TailMode) -> Self {
        self.tail = tail;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.execution = exec;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub n: usize,
    pub term: ComplexVal,
    pub partial: ComplexVal,
    /// |u_n| from the leading-order rate; 0 where log n vanishes.
    pub predicted_term_magnitude: f64,
    /// |term| / prediction, when the prediction is positive.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PartialSumTrace {
    pub rows: Vec<TraceRow>,
}

impl PartialSumTrace {
    pub fn last_partial(&self) -> ComplexVal {
        self.rows.last().map(|r| r.partial).unwrap_or(c(0.0, 0.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    /// zeta(s).
    pub value: ComplexVal,
    /// The series' own sum (partial sum plus remainder) before normalization.
    pub raw_sum: ComplexVal,
    /// Remainder added after the last trace row (zero with `TailMode::None`).
    pub tail: ComplexVal,
    /// Error bound of the remainder integral, or the estimated truncation
    /// error with `TailMode::None`.
    pub tail_error: f64,
    pub trace: PartialSumTrace,
}

fn check_spec(s: ComplexVal, spec: &SeriesSpec) -> Result<()> {
    if spec.max_terms == 0 {
        return Err(Error::Domain("max_terms must be at least 1".into()));
    }
    if !(spec.target_tol >= 0.0) {
        return Err(Error::Domain("target_tol must be nonnegative".into()));
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain("s must be finite".into()));
    }
    if s == c(1.0, 0.0) {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    if spec.kind == SeriesKind::Knopp && eta_factor(s).norm() < 1e-300 {
        return Err(Error::Degenerate("1 - 2^(1-s) vanishes; Knopp's sum cannot recover zeta".into()));
    }
    Ok(())
}

fn eta_factor(s: ComplexVal) -> ComplexVal {
    1.0 - ((1.0 - s) * LN_2).exp()
}

/// Order of the finite sum used by the kind, and its e^(-w t) weight.
fn sum_order(kind: SeriesKind, s: ComplexVal) -> (ComplexVal, f64) {
    match kind {
        SeriesKind::Hasse => (s - 1.0, 1.0),
        SeriesKind::Blagouchine => (s, 2.0),
        _ => (s, 1.0),
    }
}

/// Weight c_m of S_m (S~_m for Blagouchine), m >= 1.
struct Coefficients {
    kind: SeriesKind,
    table: Vec<f64>,
}

impl Coefficients {
    fn new(kind: SeriesKind, up_to: usize) -> Self {
        let table = match kind {
            SeriesKind::Ser => gregory_abs_f64(up_to + 1),
            SeriesKind::Blagouchine => cauchy_2nd_f64(up_to + 1),
            _ => Vec::new(),
        };
        Self { kind, table }
    }

    fn get(&self, m: usize) -> f64 {
        match self.kind {
            SeriesKind::ThisPaper => 1.0 / (m as f64 + 1.0),
            SeriesKind::Hasse => 1.0 / m as f64,
            SeriesKind::Ser | SeriesKind::Blagouchine => self.table[m],
            SeriesKind::Knopp => (-(m as f64) * LN_2).exp(),
        }
    }
}

fn term_sum(kind: SeriesKind, m: usize, order: ComplexVal, mode: FiniteSumMode) -> Result<ComplexVal> {
    match kind {
        SeriesKind::Blagouchine => s_tilde_sum_mode(m, order, mode),
        _ => s_sum(m, order, mode),
    }
}

fn predicted(kind: SeriesKind, n: usize, s: ComplexVal) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    let ll = nf.ln().ln();
    // |(log n)^a / Gamma(b)| = exp(Re(a) ln ln n) |1/Gamma(b)|
    let (a, b, den) = match kind {
        SeriesKind::ThisPaper => (s - 1.0, s, nf * (nf + 1.0)),
        SeriesKind::Hasse => (s - 2.0, s - 1.0, nf * nf),
        SeriesKind::Ser => (s - 3.0, s, nf * nf),
        SeriesKind::Blagouchine => (s - 2.0, s, nf * nf),
        SeriesKind::Knopp => (s - 1.0, s, nf * (nf * LN_2).exp()),
    };
    (a.re * ll).exp() * reciprocal_gamma(b).norm() / den
}

fn trace(s: ComplexVal, spec: &SeriesSpec) -> Result<PartialSumTrace> {
    let kind = spec.kind;
    let mut max_terms = spec.max_terms;
    if spec.term_mode == FiniteSumMode::Direct {
        max_terms = max_terms.min(DIRECT_SWITCH);
    }
    let first = kind.first_index();
    let indices: Vec<usize> = (first..first + max_terms).collect();
    let coeffs = Coefficients::new(kind, max_terms + 1);
    let (order, _) = sum_order(kind, s);
    let mode = spec.term_mode;
    let terms: Vec<Result<ComplexVal>> = map_ordered(spec.execution, &indices, |&n| {
        let m = if kind == SeriesKind::Knopp { n + 1 } else { n };
        Ok(coeffs.get(m) * term_sum(kind, m, order, mode)?)
    });
    let mut rows = Vec::with_capacity(max_terms);
    let mut partial = c(0.0, 0.0);
    let mut quiet = 0;
    for (n, term) in indices.into_iter().zip(terms) {
        let term = term?;
        partial += term;
        let p = predicted(kind, n, s);
        let ratio = (p > 0.0 && p.is_finite()).then(|| term.norm() / p);
        rows.push(TraceRow {
            n,
            term,
            partial,
            predicted_term_magnitude: p,
            ratio,
        });
        if term.norm() < spec.target_tol {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(PartialSumTrace { rows })
}

/// sum_{m>N} c_m u^(m-1), with t = -ln(1-u).
fn coefficient_tail(kind: SeriesKind, n: usize, t: f64, coeffs: &Coefficients) -> f64 {
    let u = -(-t).exp_m1();
    if kind == SeriesKind::Knopp {
        return (n as f64 * (0.5 * u).ln()).exp() / (2.0 - u);
    }
    let one_minus = (-t).exp();
    let nf = n as f64;
    if u >= 0.5 && nf * one_minus <= 7.0 {
        // closed form of the full generating function minus the first N terms
        let full = match kind {
            SeriesKind::ThisPaper => (t - u) / (u * u),
            SeriesKind::Hasse => t / u,
            SeriesKind::Ser => 1.0 / u - 1.0 / t,
            SeriesKind::Blagouchine => t.exp() / t - 1.0 / u,
            SeriesKind::Knopp => unreachable!(),
        };
        let mut head = 0.0;
        for m in (1..=n).rev() {
            head = head * u + coeffs.get(m);
        }
        return full - head;
    }
    if u == 0.0 {
        return 0.0;
    }
    let mut pw = (nf * u.ln()).exp();
    let mut acc = 0.0;
    let mut m = n + 1;
    loop {
        let term = coeffs.get(m) * pw;
        acc += term;
        if term <= 1e-18 * acc {
            return acc;
        }
        pw *= u;
        m += 1;
    }
}

/// `scale` multiplies the integral afterwards; the absolute floor keeps the
/// scaled error near 1e-14 when the remainder itself is tiny.
fn tail_tolerance(scale: f64) -> QuadTolerance {
    let mut tol = QuadTolerance::relative_to_norm(2e-13, 2e-14).with_max_evaluations(400_000);
    if scale > 0.0 {
        tol.abs_tol = 1e-14 / scale;
    }
    tol
}

/// Remainder sum_{m>N} c_m S_m after N terms, with its error bound.
fn tail_integral(kind: SeriesKind, s: ComplexVal, n_terms: usize) -> Result<(ComplexVal, f64)> {
    let (order, weight) = sum_order(kind, s);
    // n = number of S_m already summed
    let n = n_terms;
    if let Some(k) = nonpositive_integer(order) {
        if n as i64 >= 1 - k {
            // S_m(-k) = 0 for m >= k+2
            return Ok((c(0.0, 0.0), 0.0));
        }
    }
    if order.re <= 1.0 - n as f64 {
        return Err(Error::MethodUnavailable(format!(
            "the remainder integral after {n} terms needs Re(s) > {}",
            1.0 - n as f64
        )));
    }
    // the direct branch of `coefficient_tail` stops before index 8N + 64
    let coeffs = Coefficients::new(kind, 8 * n + 64);
    let sm1 = order - 1.0;
    let f = |t: f64| -> ComplexVal {
        if t <= 0.0 {
            return c(0.0, 0.0);
        }
        let d = coefficient_tail(kind, n, t, &coeffs);
        if d == 0.0 {
            return c(0.0, 0.0);
        }
        (sm1 * t.ln() + (d.ln() - weight * t)).exp()
    };
    let peak = (n as f64).max(1.0).ln();
    let mut points = vec![0.0];
    for p in [peak - 4.0, peak, peak + 4.0] {
        if p > points.last().expect("nonempty") + 0.5 {
            points.push(p);
        }
    }
    let g = reciprocal_gamma(order);
    let r = integrate_semi_infinite_from(f, &points, tail_tolerance(g.norm()), 1.0, true)?;
    Ok((r.value * g, r.abs_error_estimate * g.norm()))
}

fn coefficient_capacity_ok(kind: SeriesKind, n: usize) -> Result<()> {
    // the coefficient table for the remainder holds 8N + 64 entries
    if matches!(kind, SeriesKind::Ser | SeriesKind::Blagouchine) && n > 200_000 {
        return Err(Error::Capacity {
            requested: n,
            limit: 200_000,
        });
    }
    Ok(())
}

fn normalize(kind: SeriesKind, s: ComplexVal, raw: ComplexVal) -> ComplexVal {
    match kind {
        SeriesKind::ThisPaper | SeriesKind::Hasse => raw / (s - 1.0),
        SeriesKind::Ser => raw + 1.0 / (s - 1.0),
        SeriesKind::Blagouchine => s / (s - 1.0) - raw,
        SeriesKind::Knopp => raw / eta_factor(s),
    }
}

/// d value / d raw_sum.
fn normalize_slope(kind: SeriesKind, s: ComplexVal) -> ComplexVal {
    match kind {
        SeriesKind::ThisPaper | SeriesKind::Hasse => 1.0 / (s - 1.0),
        SeriesKind::Ser => c(1.0, 0.0),
        SeriesKind::Blagouchine => c(-1.0, 0.0),
        SeriesKind::Knopp => 1.0 / eta_factor(s),
    }
}

/// Rough size of the neglected remainder of a plain partial sum.
fn truncation_estimate(kind: SeriesKind, s: ComplexVal, last_n: usize) -> f64 {
    let p = predicted(kind, last_n.max(2), s);
    match kind {
        SeriesKind::Knopp => p,
        _ => p * last_n as f64,
    }
}

/// Largest remainder error bound, relative to max(1, |zeta|), that
/// [`zeta_via_series`] reports as a value rather than as `NonConvergence`.
pub const SWAMP_LIMIT: f64 = 1e-2;

/// zeta(s) from the chosen series, with the partial-sum trace.
pub fn zeta_via_series(s: ComplexVal, spec: &SeriesSpec) -> Result<SeriesResult> {
    check_spec(s, spec)?;
    let kind = spec.kind;
    let trace = trace(s, spec)?;
    let partial = trace.last_partial();
    let rows = trace.rows.len();
    let (tail, tail_error) = match spec.tail {
        TailMode::Integral => {
            coefficient_capacity_ok(kind, rows)?;
            tail_integral(kind, s, rows)?
        }
        TailMode::None => {
            let last = trace.rows.last().map(|r| r.n).unwrap_or(1);
            (c(0.0, 0.0), truncation_estimate(kind, s, last))
        }
    };
    let raw_sum = partial + tail;
    let value = normalize(kind, s, raw_sum);
    // cancellation at large |Im s| can swamp the sum; refuse to hand that out
    let value_error = tail_error * normalize_slope(kind, s).norm();
    let swamped = spec.tail == TailMode::Integral && !(value_error <= SWAMP_LIMIT * value.norm().max(1.0));
    if !(value.re.is_finite() && value.im.is_finite()) || swamped {
        return Err(Error::NonConvergence {
            best: value,
            error_estimate: tail_error,
            evaluations: rows,
        });
    }
    Ok(SeriesResult {
        value,
        raw_sum,
        tail,
        tail_error,
        trace,
    })
}

/// The trace alone, with predicted magnitudes and ratios per row.
pub fn convergence_report(s: ComplexVal, spec: &SeriesSpec) -> Result<PartialSumTrace> {
    check_spec(s, spec)?;
    trace(s, spec)
}

/// Euler-Maclaurin zeta, independent of the series above.
pub fn zeta_reference(s: ComplexVal) -> Result<ComplexVal> {
    euler_maclaurin::zeta(s)
}

/// 1 - 2^(1-s), the factor relating Knopp's sum to zeta.
pub fn knopp_factor(s: ComplexVal) -> ComplexVal {
    eta_factor(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zeta_two_every_kind() {
        for kind in SeriesKind::ALL {
            let r = zeta_via_series(c(2.0, 0.0), &SeriesSpec::new(kind)).unwrap();
            assert!((r.value - c(PI * PI / 6.0, 0.0)).norm() < 1e-10, "{kind:?} {}", r.value);
        }
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(
            zeta_via_series(c(1.0, 0.0), &SeriesSpec::new(SeriesKind::Ser)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn coefficient_tail_branches_meet() {
        // direct series and closed form agree where both are usable
        let coeffs = Coefficients::new(SeriesKind::Ser, 100_000);
        for kind in [SeriesKind::ThisPaper, SeriesKind::Hasse, SeriesKind::Ser] {
            let coeffs = if kind == SeriesKind::Ser { &coeffs } else { &Coefficients::new(kind, 0) };
            let n = 40;
            let t = (n as f64 / 6.9).ln();
            let closed = coefficient_tail(kind, n, t, coeffs);
            let u: f64 = 1.0 - (-t).exp();
            let mut direct = 0.0;
            for m in n + 1..100_000 {
                direct += coeffs.get(m) * u.powi(m as i32 - 1);
            }
            assert!((closed - direct).abs() < 1e-11 * direct, "{kind:?} {closed} {direct}");
        }
    }

    #[test]
    fn plain_partial_sum_trace_is_consistent() {
        let spec = SeriesSpec::new(SeriesKind::Knopp).with_tail(TailMode::None).with_max_terms(10);
        let r = zeta_via_series(c(3.0, 0.0), &spec).unwrap();
        let mut acc = c(0.0, 0.0);
        for row in &r.trace.rows {
            acc += row.term;
            assert_eq!(acc, row.partial);
        }
        assert_eq!(r.trace.rows[0].n, 0);
    }
}
