//! Truncated Laurent series in an auxiliary variable `u` with polynomial
//! coefficients, and the series coefficients feeding the determinant
//! pipeline.
//!
//! The central object is the two-parameter family `G_m^{[p,q]}` defined by
//!
//! ```text
//! sum_m G_m u^m = (1 + beta u^-1)^-1
//!              * prod_{i<=p} (1 + beta x_i) / (1 - x_i u)
//!              * prod_{j<=q} (1 + (u + beta) b_j)
//! ```
//!
//! Every coefficient here is computed exactly in the quotient ring that
//! discards xb-degrees above a [`TruncationOrder`]: the geometric factors
//! are expanded to a finite u-order, multiplied as windowed series, and the
//! `(1 + beta u^-1)^-1` factor becomes a finite convolution because the
//! u^n coefficient of the product has minimum xb-degree n, hence vanishes
//! in the quotient once n exceeds the truncation bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{truncate, Monomial, Polynomial, TruncationOrder};
use crate::{Error, Result};

/// A Laurent series in `u` known exactly (modulo the degree truncation of
/// its coefficients) on the window `lo..=hi`, with no terms below `lo`.
///
/// Multiplication shrinks windows: the product of series known on
/// `[a_lo, a_hi]` and `[b_lo, b_hi]` is known on
/// `[a_lo + b_lo, min(a_hi + b_lo, a_lo + b_hi)]`, because a coefficient
/// past that point would need a factor coefficient outside its window.
/// Requesting a coefficient outside the window is an error, never a
/// silent zero.
#[derive(Debug, Clone)]
pub struct TruncatedLaurentSeries {
    lo: i64,
    hi: i64,
    coeffs: BTreeMap<i64, Polynomial>,
    trunc: TruncationOrder,
}

impl TruncatedLaurentSeries {
    /// Builds a series from consecutive coefficients starting at `u^lo`.
    pub fn from_coeffs(lo: i64, coeffs: Vec<Polynomial>, trunc: TruncationOrder) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series window must contain at least one coefficient".into(),
            ));
        }
        let hi = lo + coeffs.len() as i64 - 1;
        let coeffs = coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| (lo + k as i64, truncate(&c, trunc)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(TruncatedLaurentSeries {
            lo,
            hi,
            coeffs,
            trunc,
        })
    }

    /// The constant series `1` known on `0..=hi`.
    pub fn one(hi: i64, trunc: TruncationOrder) -> Self {
        TruncatedLaurentSeries {
            lo: 0,
            hi,
            coeffs: BTreeMap::from([(0, Polynomial::one())]),
            trunc,
        }
    }

    /// The factor `(1 + beta x_i) / (1 - x_i u)` expanded to `u^hi`:
    /// coefficient of `u^n` is `(1 + beta x_i) x_i^n`.
    pub fn geometric_x_factor(i: u32, hi: i64, trunc: TruncationOrder) -> Result<Self> {
        if i < 1 {
            return Err(Error::InvalidArgument(format!(
                "x-variable index must be positive, got {i}"
            )));
        }
        let unit = &Polynomial::one() + &(&Polynomial::beta() * &Polynomial::var_x(i));
        let mut coeffs = Vec::new();
        let mut power = Polynomial::one();
        for n in 0..=hi {
            coeffs.push((&unit * &power).clone());
            if n < hi {
                power = truncate(&(&power * &Polynomial::var_x(i)), trunc);
            }
        }
        Self::from_coeffs(0, coeffs, trunc)
    }

    /// The factor `1 + (u + beta) b_j`, a genuine polynomial in `u`,
    /// recorded on the window `0..=hi`.
    pub fn linear_b_factor(j: u32, hi: i64, trunc: TruncationOrder) -> Result<Self> {
        if j < 1 {
            return Err(Error::InvalidArgument(format!(
                "b-variable index must be positive, got {j}"
            )));
        }
        let bj = Polynomial::var_b(j);
        let mut coeffs = vec![&Polynomial::one() + &(&Polynomial::beta() * &bj)];
        if hi >= 1 {
            coeffs.push(bj);
            coeffs.resize(hi as usize + 1, Polynomial::zero());
        }
        Self::from_coeffs(0, coeffs, trunc)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn trunc(&self) -> TruncationOrder {
        self.trunc
    }

    /// The coefficient of `u^n`; an error outside the known window.
    pub fn coeff(&self, n: i64) -> Result<Polynomial> {
        if n < self.lo || n > self.hi {
            return Err(Error::InvalidArgument(format!(
                "coefficient of u^{n} requested outside the known window {}..={}",
                self.lo, self.hi
            )));
        }
        Ok(self.coeffs.get(&n).cloned().unwrap_or_default())
    }

    /// Windowed exact product; the truncation orders must agree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.trunc != other.trunc {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply series truncated at {} and {}",
                self.trunc.bound, other.trunc.bound
            )));
        }
        let lo = self.lo + other.lo;
        let hi = (self.hi + other.lo).min(self.lo + other.hi);
        if hi < lo {
            return Err(Error::InvalidArgument(
                "series product has an empty exactly-known window".into(),
            ));
        }
        let mut coeffs: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (&na, ca) in &self.coeffs {
            for (&nb, cb) in &other.coeffs {
                let n = na + nb;
                if n > hi {
                    continue;
                }
                let prod = ca.mul_truncated(cb, self.trunc);
                if prod.is_zero() {
                    continue;
                }
                *coeffs.entry(n).or_default() += &prod;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(TruncatedLaurentSeries {
            lo,
            hi,
            coeffs,
            trunc: self.trunc,
        })
    }
}

/// The generalized binomial coefficient `n (n-1) ... (n-s+1) / s!` with an
/// arbitrary integer top; zero when `0 <= n < s`.
pub fn binomial_generalized(n: i64, s: u32) -> BigInt {
    let mut c = BigInt::one();
    for t in 0..i64::from(s) {
        c *= n - t;
        c /= t + 1; // exact: the running product of k consecutive integers is divisible by k!
    }
    c
}

/// The product `prod_{i<=p} (1 + beta x_i)/(1 - x_i u) * prod_{j<=q}
/// (1 + (u + beta) b_j)` expanded on the window `0..=n_max`.
pub(crate) fn series_product(
    p: u32,
    q: u32,
    n_max: i64,
    trunc: TruncationOrder,
) -> Result<TruncatedLaurentSeries> {
    let mut acc = TruncatedLaurentSeries::one(n_max, trunc);
    for i in 1..=p {
        acc = acc.mul(&TruncatedLaurentSeries::geometric_x_factor(i, n_max, trunc)?)?;
    }
    for j in 1..=q {
        acc = acc.mul(&TruncatedLaurentSeries::linear_b_factor(j, n_max, trunc)?)?;
    }
    Ok(acc)
}

/// `(-beta)^k` as a polynomial term.
fn neg_beta_pow(k: u32) -> (Monomial, BigInt) {
    let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    (Monomial::from_parts(k, [], []), sign)
}

/// Convolves the series with the truncated expansion of `(1+beta u^-1)^-1
/// = sum_k (-beta)^k u^-k` to extract the `u^m` coefficient.
///
/// Contributions with `m + k` above the truncation bound vanish in the
/// quotient ring (the `u^n` coefficient of the product has minimum
/// xb-degree `n`), so the sum stops at the series window's top, which must
/// be at least the truncation bound.
pub(crate) fn gf_from_series(
    series: &TruncatedLaurentSeries,
    m: i64,
    trunc: TruncationOrder,
) -> Result<Polynomial> {
    let top = i64::from(trunc.bound);
    if series.lo() > 0 || series.hi() < top {
        return Err(Error::InvalidArgument(format!(
            "series window {}..={} does not cover 0..={top}",
            series.lo(),
            series.hi()
        )));
    }
    let mut out = Polynomial::zero();
    for n in m.max(0)..=top {
        let k = u32::try_from(n - m).map_err(|_| {
            Error::InvalidArgument(format!("coefficient index m={m} is unreasonably low"))
        })?;
        let coeff = series.coeff(n)?;
        if coeff.is_zero() {
            continue;
        }
        let (mono, sign) = neg_beta_pow(k);
        out += &coeff.mul_term(&mono, &sign);
    }
    Ok(truncate(&out, trunc))
}

/// The coefficient `G_m^{[p,q]}` exactly modulo the truncation.
///
/// For `m <= 0` this reproduces `(-beta)^{-m}`; for `m` above the bound the
/// truncated coefficient is zero.
pub fn gf_coefficient(p: u32, q: u32, m: i64, trunc: TruncationOrder) -> Result<Polynomial> {
    let series = series_product(p, q, i64::from(trunc.bound), trunc)?;
    gf_from_series(&series, m, trunc)
}

/// One entry of the determinant at row `i`, column `j` (both 1-based) for a
/// row of shape `lam_i` with flag `f_i`:
///
/// ```text
/// sum_{s>=0} binom(i-j, s) beta^s G_{lam_i - i + j + s}^{[f_i, f_i + lam_i - i]}
/// ```
///
/// For `i >= j` the binomial support makes the sum finite; for `i < j` it
/// is cut when the summand's minimum xb-degree passes the truncation
/// bound.  A negative family bound `f_i + lam_i - i` clamps to an empty
/// b-product (it only occurs for `i >= j`, where the finite support
/// governs).
pub fn jt_entry(lam_i: u32, f_i: u32, i: u32, j: u32, trunc: TruncationOrder) -> Result<Polynomial> {
    if lam_i < 1 {
        return Err(Error::InvalidArgument(format!(
            "row shape must be positive, got {lam_i}"
        )));
    }
    let q = (i64::from(f_i) + i64::from(lam_i) - i64::from(i)).max(0) as u32;
    let series = series_product(f_i, q, i64::from(trunc.bound), trunc)?;
    jt_entry_with(&series, lam_i, f_i, i, j, trunc)
}

/// [`jt_entry`] against a prebuilt windowed product; all entries of one
/// matrix row share their series, so callers assembling a whole matrix
/// build it once per row.
pub(crate) fn jt_entry_with(
    series: &TruncatedLaurentSeries,
    lam_i: u32,
    f_i: u32,
    i: u32,
    j: u32,
    trunc: TruncationOrder,
) -> Result<Polynomial> {
    if i < 1 || j < 1 {
        return Err(Error::InvalidArgument(format!(
            "matrix positions are 1-based, got ({i},{j})"
        )));
    }
    if lam_i < 1 {
        return Err(Error::InvalidArgument(format!(
            "row shape must be positive, got {lam_i}"
        )));
    }
    let (i, j) = (i64::from(i), i64::from(j));
    let m = i64::from(lam_i) - i + j;
    let d = i64::from(trunc.bound);
    let s_max = if i >= j {
        (i - j).min(d - m)
    } else {
        // the nominal cutoff D + f_i - j; terms past D - m vanish anyway
        (d + i64::from(f_i) - j).min(d - m)
    };
    if s_max < 0 {
        return Ok(Polynomial::zero());
    }
    let mut out = Polynomial::zero();
    for s in 0..=s_max as u32 {
        let c = binomial_generalized(i - j, s);
        if c.is_zero() {
            continue;
        }
        let g = gf_from_series(series, m + i64::from(s), trunc)?;
        if g.is_zero() {
            continue;
        }
        out += &g.mul_term(&Monomial::from_parts(s, [], []), &c);
    }
    let out = truncate(&out, trunc);
    #[cfg(debug_assertions)]
    if trunc.bound <= 8 {
        let closed = jt_entry_closed_form(lam_i, f_i, i as u32, j as u32, trunc)?;
        if closed != out {
            return Err(Error::InternalConsistency(format!(
                "entry ({i},{j}) disagrees between the binomial sum and its closed form"
            )));
        }
    }
    Ok(out)
}

/// Closed form of the same entry: collapsing the double sum over `s` and
/// the `(-beta)^k` tail gives a single pass over the series coefficients,
///
/// ```text
/// entry(i,j) = sum_n binom(i-j-1, n-m) beta^{n-m} A_n,   m = lam_i - i + j,
/// ```
///
/// where `A_n` is the `u^n` coefficient of the windowed product.  Kept as a
/// cross-check against [`jt_entry`]; the two must agree identically.
pub fn jt_entry_closed_form(
    lam_i: u32,
    f_i: u32,
    i: u32,
    j: u32,
    trunc: TruncationOrder,
) -> Result<Polynomial> {
    if i < 1 || j < 1 || lam_i < 1 {
        return Err(Error::InvalidArgument(
            "matrix positions are 1-based and the row shape must be positive".into(),
        ));
    }
    let (i, j) = (i64::from(i), i64::from(j));
    let m = i64::from(lam_i) - i + j;
    let q = (i64::from(f_i) + i64::from(lam_i) - i).max(0) as u32;
    let d = i64::from(trunc.bound);
    let series = series_product(f_i, q, d, trunc)?;
    let mut out = Polynomial::zero();
    for n in m.max(0)..=d {
        let k = (n - m) as u32;
        let c = binomial_generalized(i - j - 1, k);
        if c.is_zero() {
            continue;
        }
        let a = series.coeff(n)?;
        if a.is_zero() {
            continue;
        }
        out += &a.mul_term(&Monomial::from_parts(k, [], []), &c);
    }
    Ok(truncate(&out, trunc))
}
