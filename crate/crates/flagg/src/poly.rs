//! Sparse exact polynomial arithmetic over the ring Z[beta][x, b].
//!
//! A [`Monomial`] records exponents of the degree-(-1) parameter `beta` and
//! of the two variable families `x_i`, `b_j` (sparse index-to-exponent maps,
//! never storing a zero exponent).  A [`Polynomial`] maps monomials to
//! nonzero big-integer coefficients, so equality of polynomials is equality
//! of maps.  Monomials carry a canonical total order (beta exponent first,
//! then x-exponent vectors compared so that higher powers of lower-indexed
//! variables come first, then the same for b), which fixes the rendering
//! order of every term everywhere in the crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A power product `beta^k * x^alpha * b^gamma` in canonical sparse form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    beta_exp: u32,
    x_exps: BTreeMap<u32, u32>,
    b_exps: BTreeMap<u32, u32>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial from exponent lists, dropping zero exponents.
    ///
    /// Variable indices must be positive; a zero index is a programming
    /// error and panics.
    pub fn from_parts(
        beta_exp: u32,
        x: impl IntoIterator<Item = (u32, u32)>,
        b: impl IntoIterator<Item = (u32, u32)>,
    ) -> Self {
        let mut m = Monomial {
            beta_exp,
            x_exps: BTreeMap::new(),
            b_exps: BTreeMap::new(),
        };
        for (i, e) in x {
            assert!(i >= 1, "x-variable index must be positive");
            if e > 0 {
                *m.x_exps.entry(i).or_insert(0) += e;
            }
        }
        for (j, e) in b {
            assert!(j >= 1, "b-variable index must be positive");
            if e > 0 {
                *m.b_exps.entry(j).or_insert(0) += e;
            }
        }
        m
    }

    pub fn beta_exp(&self) -> u32 {
        self.beta_exp
    }

    pub fn x_exps(&self) -> &BTreeMap<u32, u32> {
        &self.x_exps
    }

    pub fn b_exps(&self) -> &BTreeMap<u32, u32> {
        &self.b_exps
    }

    /// Total degree in the x and b variables (beta excluded).
    pub fn xb_degree(&self) -> u32 {
        self.x_exps.values().sum::<u32>() + self.b_exps.values().sum::<u32>()
    }

    /// Degree with `deg beta = -1`, `deg x_i = deg b_j = 1`; may be negative.
    pub fn graded_degree(&self) -> i64 {
        i64::from(self.xb_degree()) - i64::from(self.beta_exp)
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.beta_exp += other.beta_exp;
        for (&i, &e) in &other.x_exps {
            *out.x_exps.entry(i).or_insert(0) += e;
        }
        for (&j, &e) in &other.b_exps {
            *out.b_exps.entry(j).or_insert(0) += e;
        }
        out
    }
}

/// Compares exponent maps so that, at the lowest index where they differ,
/// the map with the larger exponent sorts first.  This puts `x1^2` before
/// `x1`, and `x1` before `x2` or before a monomial with no x at all.
fn cmp_exps_desc(a: &BTreeMap<u32, u32>, b: &BTreeMap<u32, u32>) -> Ordering {
    let mut ia = a.iter();
    let mut ib = b.iter();
    let (mut na, mut nb) = (ia.next(), ib.next());
    loop {
        match (na, nb) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some((&ka, &ea)), Some((&kb, &eb))) => {
                if ka < kb {
                    return Ordering::Less;
                }
                if kb < ka {
                    return Ordering::Greater;
                }
                if ea != eb {
                    return eb.cmp(&ea);
                }
                na = ia.next();
                nb = ib.next();
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.beta_exp
            .cmp(&other.beta_exp)
            .then_with(|| cmp_exps_desc(&self.x_exps, &other.x_exps))
            .then_with(|| cmp_exps_desc(&self.b_exps, &other.b_exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree cutoff: monomials with `xb_degree > bound` are discarded.
///
/// Truncation at a fixed bound is a quotient of the polynomial ring, so it
/// commutes with addition and multiplication; only x/b-degree counts, beta
/// never does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TruncationOrder {
    pub bound: u32,
}

impl TruncationOrder {
    pub fn new(bound: u32) -> Self {
        TruncationOrder { bound }
    }
}

/// A sparse exact polynomial: canonical map from monomials to nonzero
/// big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        let mut p = Polynomial::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    /// The single term `c * m`.
    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut p = Polynomial::default();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `x_i` (index must be positive).
    pub fn var_x(i: u32) -> Self {
        Self::term(Monomial::from_parts(0, [(i, 1)], []), BigInt::one())
    }

    /// The variable `b_j` (index must be positive).
    pub fn var_b(j: u32) -> Self {
        Self::term(Monomial::from_parts(0, [], [(j, 1)]), BigInt::one())
    }

    /// The parameter `beta`.
    pub fn beta() -> Self {
        Self::term(Monomial::from_parts(1, [], []), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Read-only access to the canonical term map.
    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    /// Adds `c * m` in place, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest xb-degree among the terms, or `None` for the zero polynomial.
    pub fn max_xb_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::xb_degree).max()
    }

    /// `Some(d)` when every term has graded degree `d` (beta counting as
    /// -1); `None` for the zero polynomial or mixed degrees.
    pub fn homogeneous_graded_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(Monomial::graded_degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Multiplies by a single term in place.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Polynomial {
        let mut out = Polynomial::default();
        if c.is_zero() {
            return out;
        }
        for (mm, cc) in &self.terms {
            out.terms.insert(mm.mul(m), cc * c);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        self.mul_term(&Monomial::one(), c)
    }

    /// Product with all output terms of xb-degree above `d` discarded.
    ///
    /// Input pairs whose degrees already sum past the bound are skipped, so
    /// this is also the fast path for products in the truncated ring.
    pub fn mul_truncated(&self, rhs: &Polynomial, d: TruncationOrder) -> Polynomial {
        let mut out = Polynomial::default();
        for (ma, ca) in &self.terms {
            let da = ma.xb_degree();
            if da > d.bound {
                continue;
            }
            for (mb, cb) in &rhs.terms {
                if da + mb.xb_degree() > d.bound {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Rebuilds the polynomial with each monomial rewritten by `f`,
    /// merging any collisions.
    fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// The linear factor `x_i (+) b_j = x_i + b_j + beta * x_i * b_j`.
pub fn linear_factor(i: u32, j: u32) -> Result<Polynomial> {
    if i < 1 || j < 1 {
        return Err(Error::InvalidArgument(format!(
            "linear_factor requires positive indices, got x-index {i}, b-index {j}"
        )));
    }
    let mut p = Polynomial::default();
    p.add_term(Monomial::from_parts(0, [(i, 1)], []), BigInt::one());
    p.add_term(Monomial::from_parts(0, [], [(j, 1)]), BigInt::one());
    p.add_term(Monomial::from_parts(1, [(i, 1)], [(j, 1)]), BigInt::one());
    Ok(p)
}

/// The transposition `s_i` exchanging `x_i` and `x_{i+1}`; `b` and `beta`
/// are untouched.  An involution.
pub fn swap_x(p: &Polynomial, i: u32) -> Result<Polynomial> {
    if i < 1 {
        return Err(Error::InvalidArgument(format!(
            "swap_x requires a positive index, got {i}"
        )));
    }
    Ok(p.map_monomials(|m| {
        let mut x = m.x_exps().clone();
        let ei = x.remove(&i);
        let ej = x.remove(&(i + 1));
        if let Some(e) = ej {
            x.insert(i, e);
        }
        if let Some(e) = ei {
            x.insert(i + 1, e);
        }
        Monomial::from_parts(m.beta_exp(), x, m.b_exps().clone())
    }))
}

/// The shift replacing every `x_i` by `x_{i+1}`; not an involution.
pub fn star_shift(p: &Polynomial) -> Polynomial {
    p.map_monomials(|m| {
        let x = m.x_exps().iter().map(|(&i, &e)| (i + 1, e));
        Monomial::from_parts(m.beta_exp(), x, m.b_exps().clone())
    })
}

/// Splits `p` by the exponent of `x_i`, removing `x_i` from each part.
/// Entry `d` of the result collects the coefficient of `x_i^d`.
fn split_by_x(p: &Polynomial, i: u32) -> Vec<Polynomial> {
    let mut parts: Vec<Polynomial> = Vec::new();
    for (m, c) in p.terms() {
        let d = m.x_exps().get(&i).copied().unwrap_or(0) as usize;
        if parts.len() <= d {
            parts.resize_with(d + 1, Polynomial::default);
        }
        let mut x = m.x_exps().clone();
        x.remove(&i);
        parts[d].add_term(
            Monomial::from_parts(m.beta_exp(), x, m.b_exps().clone()),
            c.clone(),
        );
    }
    if parts.is_empty() {
        parts.push(Polynomial::zero());
    }
    parts
}

/// The K-theoretic divided-difference operator
/// `pi_i(f) = ((1 + beta x_{i+1}) f - (1 + beta x_i) s_i(f)) / (x_i - x_{i+1})`.
///
/// The numerator is always exactly divisible; the division is performed
/// synthetically in `x_i` and a nonzero remainder reports an internal
/// consistency error (a bug, never a property of the input).
pub fn divided_difference(p: &Polynomial, i: u32) -> Result<Polynomial> {
    if i < 1 {
        return Err(Error::InvalidArgument(format!(
            "divided_difference requires a positive index, got {i}"
        )));
    }
    let swapped = swap_x(p, i)?;
    let xi = Polynomial::var_x(i);
    let xj = Polynomial::var_x(i + 1);
    let beta = Polynomial::beta();
    let numerator =
        &(&(&Polynomial::one() + &(&beta * &xj)) * p) - &(&(&Polynomial::one() + &(&beta * &xi)) * &swapped);

    // Synthetic division of the numerator by (x_i - x_{i+1}), viewing it as
    // a univariate polynomial in x_i.  Coefficients may still involve
    // x_{i+1}; the divisor is monic in x_i so no ring division is needed.
    let coeffs = split_by_x(&numerator, i);
    let n = coeffs.len() - 1;
    if n == 0 {
        if !coeffs[0].is_zero() {
            return Err(Error::InternalConsistency(format!(
                "divided_difference numerator has no x{i} but is nonzero"
            )));
        }
        return Ok(Polynomial::zero());
    }
    let mut quotient: Vec<Polynomial> = vec![Polynomial::zero(); n];
    quotient[n - 1] = coeffs[n].clone();
    for d in (0..n - 1).rev() {
        quotient[d] = &coeffs[d + 1] + &(&xj * &quotient[d + 1]);
    }
    let remainder = &coeffs[0] + &(&xj * &quotient[0]);
    if !remainder.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "divided_difference by x{i} - x{} left a nonzero remainder",
            i + 1
        )));
    }
    let mut out = Polynomial::default();
    for (d, q) in quotient.iter().enumerate() {
        let xi_pow = Monomial::from_parts(0, [(i, d as u32)], []);
        for (m, c) in q.terms() {
            out.add_term(m.mul(&xi_pow), c.clone());
        }
    }
    Ok(out)
}

/// Applies divided differences along a word of indices, first index first:
/// for the word `(i1, ..., ik)` this computes `pi_ik ( ... pi_i1(p) ... )`.
/// The empty word is the identity.
pub fn apply_word(p: &Polynomial, word: &[u32]) -> Result<Polynomial> {
    let mut out = p.clone();
    for &i in word {
        out = divided_difference(&out, i)?;
    }
    Ok(out)
}

/// Drops every term of xb-degree above the bound (beta-degree never counts).
pub fn truncate(p: &Polynomial, d: TruncationOrder) -> Polynomial {
    let mut out = Polynomial::default();
    for (m, c) in p.terms() {
        if m.xb_degree() <= d.bound {
            out.terms.insert(m.clone(), c.clone());
        }
    }
    out
}

/// An exact-integer substitution: any subset of `beta`, individual
/// variables, or whole variable families can be assigned.  Individual
/// assignments win over the family-wide ones.
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    pub beta: Option<BigInt>,
    pub x: BTreeMap<u32, BigInt>,
    pub b: BTreeMap<u32, BigInt>,
    pub all_x: Option<BigInt>,
    pub all_b: Option<BigInt>,
}

impl Assignment {
    pub fn set_beta(mut self, v: i64) -> Self {
        self.beta = Some(BigInt::from(v));
        self
    }

    pub fn set_x(mut self, i: u32, v: i64) -> Self {
        self.x.insert(i, BigInt::from(v));
        self
    }

    pub fn set_b(mut self, j: u32, v: i64) -> Self {
        self.b.insert(j, BigInt::from(v));
        self
    }

    pub fn set_all_x(mut self, v: i64) -> Self {
        self.all_x = Some(BigInt::from(v));
        self
    }

    pub fn set_all_b(mut self, v: i64) -> Self {
        self.all_b = Some(BigInt::from(v));
        self
    }
}

/// Evaluates the assigned variables exactly; unassigned variables survive.
pub fn substitute(p: &Polynomial, a: &Assignment) -> Polynomial {
    let mut out = Polynomial::default();
    'term: for (m, c) in p.terms() {
        let mut coef = c.clone();
        let mut beta_exp = m.beta_exp();
        if let Some(v) = &a.beta {
            if beta_exp > 0 {
                coef *= v.pow(beta_exp);
                beta_exp = 0;
            }
        }
        let mut x = BTreeMap::new();
        for (&i, &e) in m.x_exps() {
            match a.x.get(&i).or(a.all_x.as_ref()) {
                Some(v) => {
                    if v.is_zero() {
                        continue 'term;
                    }
                    coef *= v.pow(e);
                }
                None => {
                    x.insert(i, e);
                }
            }
        }
        let mut b = BTreeMap::new();
        for (&j, &e) in m.b_exps() {
            match a.b.get(&j).or(a.all_b.as_ref()) {
                Some(v) => {
                    if v.is_zero() {
                        continue 'term;
                    }
                    coef *= v.pow(e);
                }
                None => {
                    b.insert(j, e);
                }
            }
        }
        out.add_term(Monomial::from_parts(beta_exp, x, b), coef);
    }
    out
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.beta_exp {
            0 => {}
            1 => parts.push("beta".into()),
            k => parts.push(format!("beta^{k}")),
        }
        for (&i, &e) in &self.x_exps {
            parts.push(if e == 1 {
                format!("x{i}")
            } else {
                format!("x{i}^{e}")
            });
        }
        for (&j, &e) in &self.b_exps {
            parts.push(if e == 1 {
                format!("b{j}")
            } else {
                format!("b{j}^{e}")
            });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text rendering, e.g. `3*beta^2*x1^2*b3 + x1 - b2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            let trivial_mono = m == &Monomial::one();
            if !mag.is_one() || trivial_mono {
                write!(f, "{mag}")?;
                if !trivial_mono {
                    write!(f, "*")?;
                }
            }
            if !trivial_mono {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}
