//! Finite sums of products of the rational series
//! `p(e,i) = L^e T^i / (1 - L^e T^i)` with coefficients in a pluggable ring.
//!
//! The module structure is all that is needed: terms are keyed by the
//! multiset of `(e, i)` factors, two terms with the same multiset merge by
//! adding coefficients, and the `T -> oo` limit sends a product of `k`
//! factors to `(-1)^k` times its coefficient.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lpoly::LPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("the T-degree of a series generator must be positive, got {0}")]
    NonPositiveDegree(i64),
}

/// Coefficient ring interface: an abelian group with an action of `L^e`
/// and of the integers.
pub trait SeriesCoeff: Clone + PartialEq {
    fn coeff_zero() -> Self;
    fn coeff_is_zero(&self) -> bool;
    fn coeff_add(&self, other: &Self) -> Self;
    fn coeff_neg(&self) -> Self;
    fn coeff_mul_l_pow(&self, e: i64) -> Self;
    fn coeff_mul_int(&self, k: i64) -> Self;
}

/// Coefficient rings with a genuine product (used for series products).
pub trait SeriesCoeffMul: SeriesCoeff {
    fn coeff_one() -> Self;
    fn coeff_mul(&self, other: &Self) -> Self;
}

impl SeriesCoeff for LPoly {
    fn coeff_zero() -> Self {
        LPoly::zero()
    }
    fn coeff_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn coeff_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn coeff_neg(&self) -> Self {
        self.neg()
    }
    fn coeff_mul_l_pow(&self, e: i64) -> Self {
        self.shift(e)
    }
    fn coeff_mul_int(&self, k: i64) -> Self {
        self.mul_int(k)
    }
}

impl SeriesCoeffMul for LPoly {
    fn coeff_one() -> Self {
        LPoly::one()
    }
    fn coeff_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// One normalized term: a coefficient times the product of `p(e,i)` over the
/// factor multiset (kept as a sorted list; the empty list is the constant).
/// Serializes as the nested array `[coeff, [[e, i], ...]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SrTerm<C> {
    pub coeff: C,
    pub factors: Vec<(i64, i64)>,
}

impl<C: Serialize> Serialize for SrTerm<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (&self.coeff, &self.factors).serialize(serializer)
    }
}

/// A normalized element of the series module.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SrSeries<C> {
    terms: Vec<SrTerm<C>>,
}

impl<C: SeriesCoeff> Default for SrSeries<C> {
    fn default() -> Self {
        Self { terms: vec![] }
    }
}

impl<C: SeriesCoeff> SrSeries<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::from_terms(vec![SrTerm {
            coeff: c,
            factors: vec![],
        }])
    }

    pub fn from_terms(terms: Vec<SrTerm<C>>) -> Self {
        let mut s = Self { terms };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        for t in &mut self.terms {
            t.factors.sort_unstable();
        }
        self.terms.sort_by(|a, b| a.factors.cmp(&b.factors));
        let mut merged: Vec<SrTerm<C>> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.factors == t.factors => {
                    last.coeff = last.coeff.coeff_add(&t.coeff);
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.coeff_is_zero());
        self.terms = merged;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[SrTerm<C>] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(terms)
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| SrTerm {
                    coeff: t.coeff.coeff_neg(),
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Apply a map to every coefficient (e.g. tensoring with a class).
    pub fn map_coeff<D: SeriesCoeff>(&self, f: impl Fn(&C) -> D) -> SrSeries<D> {
        SrSeries::from_terms(
            self.terms
                .iter()
                .map(|t| SrTerm {
                    coeff: f(&t.coeff),
                    factors: t.factors.clone(),
                })
                .collect(),
        )
    }

    /// Exact coefficient of `T^n` after expanding every factor as the
    /// geometric series `p(e,i) = sum_{m >= 1} L^{em} T^{im}`.
    pub fn coefficient(&self, n: u32) -> C {
        let n = n as i64;
        let mut acc = C::coeff_zero();
        for t in &self.terms {
            if t.factors.is_empty() {
                if n == 0 {
                    acc = acc.coeff_add(&t.coeff);
                }
                continue;
            }
            if n == 0 {
                continue;
            }
            expand(&t.factors, 0, n, 0, &mut |l_exp| {
                acc = acc.coeff_add(&t.coeff.coeff_mul_l_pow(l_exp));
            });
        }
        acc
    }

    /// The module morphism sending each product of `k` generators to `(-1)^k`.
    pub fn limit_t_infinity(&self) -> C {
        let mut acc = C::coeff_zero();
        for t in &self.terms {
            let sign = if t.factors.len() % 2 == 0 { 1 } else { -1 };
            acc = acc.coeff_add(&t.coeff.coeff_mul_int(sign));
        }
        acc
    }
}

/// Enumerate exponent choices `m_f >= 1` per factor with `sum i_f m_f = n`,
/// reporting the total `L`-exponent `sum e_f m_f` of each choice.
fn expand(factors: &[(i64, i64)], idx: usize, remaining: i64, l_exp: i64, f: &mut impl FnMut(i64)) {
    if idx == factors.len() {
        if remaining == 0 {
            f(l_exp);
        }
        return;
    }
    let (e, i) = factors[idx];
    let mut m = 1i64;
    while m * i <= remaining {
        expand(factors, idx + 1, remaining - m * i, l_exp + e * m, f);
        m += 1;
    }
}

impl<C: SeriesCoeffMul> SrSeries<C> {
    /// The generator `p(e, i)`; `i` must be positive.
    pub fn p_term(e: i64, i: i64) -> Result<Self, SeriesError> {
        if i <= 0 {
            return Err(SeriesError::NonPositiveDegree(i));
        }
        Ok(Self::from_terms(vec![SrTerm {
            coeff: C::coeff_one(),
            factors: vec![(e, i)],
        }]))
    }

    /// The factor `1 / (T^{-N} L^nu - 1)`, which equals `p(-nu, N)`.
    pub fn from_resolution_factor(n: u32, nu: u32) -> Result<Self, SeriesError> {
        Self::p_term(-(nu as i64), n as i64)
    }

    pub fn one() -> Self {
        Self::constant(C::coeff_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend_from_slice(&b.factors);
                terms.push(SrTerm {
                    coeff: a.coeff.coeff_mul(&b.coeff),
                    factors,
                });
            }
        }
        Self::from_terms(terms)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeff(|k| k.coeff_mul(c))
    }
}

impl<C: fmt::Display> fmt::Display for SrSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            for (e, d) in &t.factors {
                write!(f, "*p({e},{d})")?;
            }
        }
        Ok(())
    }
}
