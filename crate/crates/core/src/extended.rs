//! Extended-precision alternating binomial sums.
//!
//! The direct sums cancel about one bit per term, so every term is formed and
//! accumulated with `n + 128` bits and only the final value is rounded.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use crate::numeric::{c, ComplexVal};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Option<Consts>> = const { RefCell::new(None) };
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cell| {
        let mut slot = cell.borrow_mut();
        let cc = slot.get_or_insert_with(|| Consts::new().expect("constant cache"));
        f(cc)
    })
}

pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().unwrap_or(&0);
    let next = if words.len() >= 2 { words[words.len() - 2] } else { 0 };
    // round the top word to 53 bits with the rest as sticky
    let mut v = top as f64;
    if next != 0 && (top & 0x7ff) == 0x400 {
        v = (top | 1) as f64;
    }
    let e = exp as i32 - 64;
    let mag = if e < -1000 {
        v * 2f64.powi(-1000) * 2f64.powi(e + 1000)
    } else {
        v * 2f64.powi(e)
    };
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

/// sum_{k=first}^{m} (-1)^k C(m, k) (k + offset)^(-s).
pub(crate) fn alternating_binomial_sum(m: usize, first: usize, offset: usize, s: ComplexVal) -> ComplexVal {
    let p = ((m + 128).div_ceil(64) + 1) * 64;
    with_consts(|cc| {
        let sigma = BigFloat::from_f64(s.re, p);
        let tau = BigFloat::from_f64(s.im, p);
        let mut re = BigFloat::from_f64(0.0, p);
        let mut im = BigFloat::from_f64(0.0, p);
        let mut binom = BigFloat::from_f64(1.0, p);
        for k in 0..=m {
            if k >= first {
                let base = k + offset;
                let (tr, ti) = if base == 1 {
                    (BigFloat::from_f64(1.0, p), BigFloat::from_f64(0.0, p))
                } else {
                    let l = BigFloat::from_u64(base as u64, p).ln(p, RM, cc);
                    let mag = sigma.mul(&l, p, RM).neg().exp(p, RM, cc);
                    let theta = tau.mul(&l, p, RM);
                    (
                        mag.mul(&theta.cos(p, RM, cc), p, RM),
                        mag.mul(&theta.sin(p, RM, cc), p, RM).neg(),
                    )
                };
                let tr = tr.mul(&binom, p, RM);
                let ti = ti.mul(&binom, p, RM);
                if k % 2 == 0 {
                    re = re.add(&tr, p, RM);
                    im = im.add(&ti, p, RM);
                } else {
                    re = re.sub(&tr, p, RM);
                    im = im.sub(&ti, p, RM);
                }
            }
            if k < m {
                binom = binom
                    .mul(&BigFloat::from_u64((m - k) as u64, p), p, RM)
                    .div(&BigFloat::from_u64(k as u64 + 1, p), p, RM);
            }
        }
        c(to_f64(&re), to_f64(&im))
    })
}
