//! Adaptive Gauss-Kronrod (10/21) quadrature for complex-valued integrands.
//!
//! Subdivision is global: the segment with the largest error estimate is
//! bisected until the total estimate meets the tolerance. Segments are kept in
//! a fixed order and summed left to right, so results are reproducible.

use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, ComplexVal};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Stopping rule for the adaptive integrators.
///
/// A result is accepted when its error estimate is at most
/// `max(abs_tol, rel_tol * |I|, norm_tol * integral of |f|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadTolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub norm_tol: f64,
    pub max_evaluations: usize,
}

impl Default for QuadTolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            norm_tol: 0.0,
            max_evaluations: 200_000,
        }
    }
}

impl QuadTolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    /// Tolerance for integrands whose value may cancel far below their size.
    pub fn relative_to_norm(rel_tol: f64, norm_tol: f64) -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol,
            norm_tol,
            max_evaluations: 200_000,
        }
    }

    pub fn with_max_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !(ok(self.abs_tol) && ok(self.rel_tol) && ok(self.norm_tol)) {
            return Err(Error::Domain("tolerances must be finite and nonnegative".into()));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 && self.norm_tol == 0.0 {
            return Err(Error::Domain("at least one tolerance must be positive".into()));
        }
        if self.max_evaluations < 21 {
            return Err(Error::Domain("max_evaluations must allow one rule application".into()));
        }
        Ok(())
    }

    fn target(&self, value: ComplexVal, l1: f64) -> f64 {
        self.abs_tol
            .max(self.rel_tol * value.norm())
            .max(self.norm_tol * l1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: ComplexVal,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    /// Estimate of the integral of |f|.
    pub l1_norm: f64,
}

#[derive(Debug, Clone, Copy)]
enum Mapping {
    Identity,
    /// t = a + (b - a) u^2 on u in [0, 1].
    LeftStretch { a: f64, b: f64 },
    /// t = a + (b - a)(3u^2 - 2u^3) on u in [0, 1].
    Smooth { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    map: Mapping,
}

impl Piece {
    fn plain(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            map: Mapping::Identity,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    piece: usize,
    a: f64,
    b: f64,
    value: ComplexVal,
    err: f64,
    l1: f64,
    splittable: bool,
}

fn eval_mapped<F: Fn(f64) -> ComplexVal>(f: &F, map: Mapping, u: f64) -> ComplexVal {
    match map {
        Mapping::Identity => f(u),
        Mapping::LeftStretch { a, b } => {
            let w = b - a;
            let jac = 2.0 * w * u;
            if jac == 0.0 {
                return ComplexVal::new(0.0, 0.0);
            }
            f(a + w * u * u) * jac
        }
        Mapping::Smooth { a, b } => {
            let w = b - a;
            let jac = 6.0 * w * u * (1.0 - u);
            if jac == 0.0 {
                return ComplexVal::new(0.0, 0.0);
            }
            let phi = u * u * (3.0 - 2.0 * u);
            let t = if u < 0.5 {
                a + w * phi
            } else {
                // (1 - phi) keeps relative precision near b
                let v = 1.0 - u;
                b - w * v * v * (3.0 - 2.0 * v)
            };
            f(t) * jac
        }
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut e = err;
    if resasc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / resasc).powf(1.5);
        e = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let floor = 50.0 * f64::EPSILON * resabs;
        if floor > e {
            e = floor;
        }
    }
    e
}

fn gk21<F: Fn(f64) -> ComplexVal>(f: &F, piece: usize, map: Mapping, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv = [ComplexVal::new(0.0, 0.0); 21];
    fv[10] = eval_mapped(f, map, center);
    for j in 0..10 {
        let dx = half * XGK[j];
        fv[j] = eval_mapped(f, map, center - dx);
        fv[20 - j] = eval_mapped(f, map, center + dx);
    }
    let mut resk = fv[10] * WGK[10];
    let mut resg = ComplexVal::new(0.0, 0.0);
    let mut resabs = fv[10].norm() * WGK[10];
    for j in 0..10 {
        let pair = fv[j] + fv[20 - j];
        resk += pair * WGK[j];
        resabs += (fv[j].norm() + fv[20 - j].norm()) * WGK[j];
        if j % 2 == 1 {
            resg += pair * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fv[10] - mean).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((fv[j] - mean).norm() + (fv[20 - j] - mean).norm());
    }
    let h = half.abs();
    let value = resk * half;
    let raw = ((resk - resg) * half).norm();
    let mut err = rescale_error(raw, resabs * h, resasc * h);
    if !value.re.is_finite() || !value.im.is_finite() {
        err = f64::INFINITY;
    }
    Segment {
        piece,
        a,
        b,
        value,
        err,
        l1: resabs * h,
        splittable: true,
    }
}

fn adaptive<F: Fn(f64) -> ComplexVal>(
    f: &F,
    pieces: &[Piece],
    tol: &QuadTolerance,
    extra_err: f64,
) -> Result<QuadResult> {
    tol.validate()?;
    let mut segs: Vec<Segment> = Vec::with_capacity(pieces.len() * 8);
    let mut evaluations = 0usize;
    for (i, p) in pieces.iter().enumerate() {
        let (a, b) = match p.map {
            Mapping::Identity => (p.a, p.b),
            _ => (0.0, 1.0),
        };
        segs.push(gk21(f, i, p.map, a, b));
        evaluations += 21;
    }
    loop {
        let value: CompensatedSum = segs.iter().map(|s| s.value).collect();
        let value = value.value();
        let err: f64 = segs.iter().map(|s| s.err).sum::<f64>() + extra_err;
        let l1: f64 = segs.iter().map(|s| s.l1).sum();
        if err <= tol.target(value, l1) {
            return Ok(QuadResult {
                value,
                abs_error_estimate: err,
                evaluations,
                l1_norm: l1,
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.splittable)
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err).then(y.0.cmp(&x.0)))
            .map(|(i, _)| i);
        let stop = |evaluations| Error::NonConvergence {
            best: value,
            error_estimate: err,
            evaluations,
        };
        let Some(i) = worst else {
            return Err(stop(evaluations));
        };
        if !err.is_finite() && !segs[i].err.is_finite() && (segs[i].b - segs[i].a).abs() < 1e-12 {
            return Err(stop(evaluations));
        }
        if evaluations + 42 > tol.max_evaluations {
            return Err(stop(evaluations));
        }
        let s = segs[i];
        let mid = 0.5 * (s.a + s.b);
        let width = (s.b - s.a).abs();
        if mid <= s.a || mid >= s.b || width <= 4.0 * f64::EPSILON * s.a.abs().max(s.b.abs()) {
            segs[i].splittable = false;
            continue;
        }
        let map = pieces[s.piece].map;
        let left = gk21(f, s.piece, map, s.a, mid);
        let right = gk21(f, s.piece, map, mid, s.b);
        evaluations += 42;
        segs[i] = left;
        segs.insert(i + 1, right);
    }
}

/// Integral over [a, b] with an endpoint stretch that absorbs integrable
/// power-law singularities at either end. Reversed limits negate the result.
pub fn integrate_finite<F: Fn(f64) -> ComplexVal>(
    f: F,
    a: f64,
    b: f64,
    tol: QuadTolerance,
) -> Result<QuadResult> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain("finite integration needs finite limits".into()));
    }
    if a == b {
        tol.validate()?;
        return Ok(QuadResult {
            value: ComplexVal::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            evaluations: 0,
            l1_norm: 0.0,
        });
    }
    if a > b {
        let r = integrate_finite(f, b, a, tol)?;
        return Ok(QuadResult {
            value: -r.value,
            ..r
        });
    }
    let piece = Piece {
        a,
        b,
        map: Mapping::Smooth { a, b },
    };
    adaptive(&f, &[piece], &tol, 0.0)
}

/// Integral over consecutive breakpoints without any variable change.
pub fn integrate_breakpoints<F: Fn(f64) -> ComplexVal>(
    f: F,
    points: &[f64],
    tol: QuadTolerance,
) -> Result<QuadResult> {
    check_points(points)?;
    let pieces: Vec<Piece> = points.windows(2).map(|w| Piece::plain(w[0], w[1])).collect();
    if pieces.is_empty() {
        return Err(Error::Domain("need at least two breakpoints".into()));
    }
    adaptive(&f, &pieces, &tol, 0.0)
}

fn check_points(points: &[f64]) -> Result<()> {
    if points.is_empty() || points.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain("breakpoints must be finite".into()));
    }
    if points.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("breakpoints must be strictly increasing".into()));
    }
    Ok(())
}

/// Integral over [a, inf) for an integrand decaying at least like exp(-decay_hint t).
pub fn integrate_semi_infinite<F: Fn(f64) -> ComplexVal>(
    f: F,
    a: f64,
    tol: QuadTolerance,
    decay_hint: f64,
) -> Result<QuadResult> {
    integrate_semi_infinite_from(f, &[a], tol, decay_hint, true)
}

/// Semi-infinite integral starting at `points[0]`, with the listed interior
/// breakpoints. The truncation point is found by scanning |f| beyond the last
/// breakpoint; the bound |f(T)| / decay_hint is added to the error estimate.
/// With `left_singular`, the first piece gets an endpoint stretch.
pub fn integrate_semi_infinite_from<F: Fn(f64) -> ComplexVal>(
    f: F,
    points: &[f64],
    tol: QuadTolerance,
    decay_hint: f64,
    left_singular: bool,
) -> Result<QuadResult> {
    tol.validate()?;
    check_points(points)?;
    if !(decay_hint.is_finite() && decay_hint > 0.0) {
        return Err(Error::Domain("decay_hint must be positive".into()));
    }
    let mut bps: Vec<f64> = points.to_vec();
    let start = *bps.last().expect("nonempty");
    let h0 = 1.0 / decay_hint;
    // magnitude proxy from a few interior samples
    let mut peak = 0.0f64;
    for w in bps.windows(2) {
        for frac in [0.25, 0.5, 0.75] {
            peak = peak.max(f(w[0] + frac * (w[1] - w[0])).norm());
        }
    }
    let rel = match (tol.rel_tol > 0.0, tol.norm_tol > 0.0) {
        (true, true) => tol.rel_tol.min(tol.norm_tol),
        (true, false) => tol.rel_tol,
        (false, true) => tol.norm_tol,
        (false, false) => 0.0,
    };
    let limit = start + 1e4 * h0;
    let mut t = start;
    let mut step = h0;
    let mut quiet = 0;
    let mut tail_bound;
    loop {
        t += step;
        step *= 1.25;
        let v = f(t).norm();
        peak = peak.max(if v.is_finite() { v } else { 0.0 });
        tail_bound = v / decay_hint;
        let thresh = 1e-2 * tol.abs_tol.max(rel * peak * h0);
        bps.push(t);
        if v.is_finite() && tail_bound <= thresh {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        if t > limit || bps.len() > 400 {
            return Err(Error::NonConvergence {
                best: ComplexVal::new(f64::NAN, f64::NAN),
                error_estimate: f64::INFINITY,
                evaluations: bps.len(),
            });
        }
    }
    let mut pieces: Vec<Piece> = bps.windows(2).map(|w| Piece::plain(w[0], w[1])).collect();
    if left_singular {
        let p = pieces[0];
        pieces[0].map = Mapping::LeftStretch { a: p.a, b: p.b };
    }
    adaptive(&f, &pieces, &tol, tail_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    #[test]
    fn inverse_sqrt_endpoint() {
        let r = integrate_finite(|t| c(t.powf(-0.5), 0.0), 0.0, 1.0, QuadTolerance::new(1e-13, 1e-13))
            .unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn reversal_negates() {
        let tol = QuadTolerance::default();
        let f = |t: f64| c(t.sin(), t * t);
        let a = integrate_finite(f, 0.0, 2.0, tol).unwrap();
        let b = integrate_finite(f, 2.0, 0.0, tol).unwrap();
        assert_eq!(a.value, -b.value);
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_semi_infinite(|t| c((-t).exp(), 0.0), 0.0, QuadTolerance::new(1e-13, 1e-13), 1.0)
            .unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_reports_best() {
        let tol = QuadTolerance::new(1e-15, 0.0).with_max_evaluations(100);
        let err = integrate_finite(|t| c((1.0 / (t + 1e-3)).sin(), 0.0), 0.0, 1.0, tol).unwrap_err();
        assert!(err.is_non_convergence());
    }
}
