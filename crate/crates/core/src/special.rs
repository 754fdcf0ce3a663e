//! Exact rational tables: Bernoulli, Eulerian, Gregory and Cauchy numbers.
//!
//! Bernoulli numbers use B_1 = -1/2. Gregory coefficients are the signed
//! expansion coefficients of z / log(1+z) = 1 + sum G_n z^n, so G_1 = 1/2 and
//! G_2 = -1/12. Cauchy numbers of the second kind are C_n = 1 - sum_{k<=n} |G_k|.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type RationalNumber = BigRational;

/// Largest order served by the default Bernoulli table.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// Largest exact Gregory / Cauchy table length.
pub const MAX_SERIES_COEFFS: usize = 128;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialQ {
    coeffs: Vec<BigRational>,
}

impl PolynomialQ {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn monomial(coeff: BigRational, degree: usize) -> Self {
        let mut c = vec![BigRational::zero(); degree + 1];
        c[degree] = coeff;
        Self::new(c)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rational_to_f64(c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coefficient(k) + other.coefficient(k)).collect())
    }

    pub fn scale(&self, f: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * f).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::new(vec![BigRational::one()]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Antiderivative vanishing at 0.
    pub fn integral(&self) -> Self {
        let mut out = vec![BigRational::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / BigRational::from_integer(BigInt::from(k as u64 + 1)));
        }
        Self::new(out)
    }
}

/// Binomial coefficient C(n, k); zero for k outside [0, n].
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli numbers B_0..=B_max computed once via Akiyama-Tanigawa.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    numbers: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn with_max_order(max: usize) -> Self {
        let mut numbers = Vec::with_capacity(max + 1);
        let mut a: Vec<BigRational> = Vec::with_capacity(max + 1);
        for m in 0..=max {
            a.push(rat(1, m as i64 + 1));
            for j in (1..=m).rev() {
                let jj = BigRational::from_integer(BigInt::from(j as u64));
                a[j - 1] = jj * (&a[j - 1] - &a[j]);
            }
            numbers.push(a[0].clone());
        }
        // Akiyama-Tanigawa yields B_1 = +1/2.
        if max >= 1 {
            numbers[1] = rat(-1, 2);
        }
        Self { numbers }
    }

    pub fn max_order(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn number(&self, k: usize) -> Result<&BigRational> {
        self.numbers.get(k).ok_or(Error::Capacity {
            requested: k,
            limit: self.max_order(),
        })
    }

    /// B_k(x) = sum_j C(k, j) B_j x^(k-j).
    pub fn polynomial(&self, k: usize) -> Result<PolynomialQ> {
        self.number(k)?;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        for j in 0..=k {
            let b = BigRational::from_integer(binomial(k as u64, j as i64));
            coeffs[k - j] = b * &self.numbers[j];
        }
        Ok(PolynomialQ::new(coeffs))
    }
}

fn default_bernoulli() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::with_max_order(DEFAULT_MAX_ORDER))
}

/// B_k from the shared table (k <= 64).
pub fn bernoulli_number(k: usize) -> Result<BigRational> {
    default_bernoulli().number(k).cloned()
}

pub fn bernoulli_polynomial(k: usize) -> Result<PolynomialQ> {
    default_bernoulli().polynomial(k)
}

/// Eulerian number <k, j>: permutations of k elements with j ascents.
pub fn eulerian_number(k: u32, j: i64) -> BigInt {
    if k == 0 {
        return if j == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if j < 0 || j >= k as i64 {
        return BigInt::zero();
    }
    eulerian_row(k)[j as usize].clone()
}

/// Row <k, 0>, ..., <k, k-1> (just [1] for k = 0).
pub fn eulerian_row(k: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for n in 2..=k as usize {
        let mut next = vec![BigInt::zero(); n];
        for j in 0..n {
            let mut v = BigInt::zero();
            if j < row.len() {
                v += BigInt::from(j as u64 + 1) * &row[j];
            }
            if j >= 1 && j - 1 < row.len() {
                v += BigInt::from((n - j) as u64) * &row[j - 1];
            }
            next[j] = v;
        }
        row = next;
    }
    row
}

/// A_k(z) = sum_j <k, j> z^j.
pub fn eulerian_polynomial(k: u32) -> PolynomialQ {
    PolynomialQ::new(
        eulerian_row(k)
            .into_iter()
            .map(BigRational::from_integer)
            .collect(),
    )
}

fn check_series_len(count: usize) -> Result<()> {
    if count > MAX_SERIES_COEFFS + 1 {
        return Err(Error::Capacity {
            requested: count,
            limit: MAX_SERIES_COEFFS + 1,
        });
    }
    Ok(())
}

/// Signed Gregory coefficients G_0..G_{count-1} (G_0 = 1).
pub fn gregory_coefficients(count: usize) -> Result<Vec<BigRational>> {
    check_series_len(count)?;
    // log(1+z)/z = sum (-1)^k z^k / (k+1); invert the series.
    let p: Vec<BigRational> = (0..count)
        .map(|k| rat(if k % 2 == 0 { 1 } else { -1 }, k as i64 + 1))
        .collect();
    let mut g: Vec<BigRational> = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            g.push(BigRational::one());
            continue;
        }
        let mut acc = BigRational::zero();
        for k in 1..=n {
            acc += &p[k] * &g[n - k];
        }
        g.push(-acc);
    }
    Ok(g)
}

/// Cauchy numbers of the second kind C_0..C_{count-1} (C_0 = 1).
pub fn cauchy_numbers_2nd(count: usize) -> Result<Vec<BigRational>> {
    let g = gregory_coefficients(count)?;
    let mut out = Vec::with_capacity(count);
    let mut acc = BigRational::one();
    for (n, gn) in g.iter().enumerate() {
        if n > 0 {
            acc -= gn.abs();
        }
        out.push(acc.clone());
    }
    Ok(out)
}

fn gregory_cache() -> &'static Mutex<Vec<f64>> {
    static CACHE: OnceLock<Mutex<Vec<f64>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(
            gregory_coefficients(MAX_SERIES_COEFFS + 1)
                .expect("within capacity")
                .iter()
                .map(|g| rational_to_f64(&g.abs()))
                .collect(),
        )
    })
}

/// |G_0|..|G_{count-1}| as doubles: exact below the table limit, recurrence above.
pub fn gregory_abs_f64(count: usize) -> Vec<f64> {
    let mut out = gregory_cache().lock().unwrap_or_else(|e| e.into_inner());
    // |G_n| = 1/(n+1) - sum_{k=1}^{n-1} |G_{n-k}| / (k+1)
    for n in out.len()..count {
        let mut acc = 1.0 / (n as f64 + 1.0);
        let mut corr = 0.0;
        for k in 1..n {
            let y = -out[n - k] / (k as f64 + 1.0) - corr;
            let t = acc + y;
            corr = (t - acc) - y;
            acc = t;
        }
        out.push(acc);
    }
    out[..count].to_vec()
}

/// C_0..C_{count-1} as doubles.
pub fn cauchy_2nd_f64(count: usize) -> Vec<f64> {
    let exact = count.min(MAX_SERIES_COEFFS + 1);
    let mut out: Vec<f64> = cauchy_numbers_2nd(exact)
        .expect("within capacity")
        .iter()
        .map(rational_to_f64)
        .collect();
    if count > exact {
        let g = gregory_abs_f64(count);
        let mut last = out[exact - 1];
        for gn in &g[exact..count] {
            last -= gn;
            out.push(last);
        }
    }
    out
}
