//! Laurent polynomials in the Lefschetz symbol `L` with integer coefficients.
//!
//! These are the scalars acting on geometric class expressions, and the
//! coefficient ring of the rational series module when no geometry is
//! attached. The two numeric realizations used throughout the crate are
//! evaluation at `L = 1` (Euler characteristics) and at `L = q` (point
//! counts over a finite field with `q` elements).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// `sum c_e L^e` with `e` ranging over integers, no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(0, c);
        }
        Self { coeffs }
    }

    /// The monomial `L^e`.
    pub fn l_pow(e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, 1);
        Self { coeffs }
    }

    /// Build from low-to-high coefficients `[c0, c1, ...]` (no negative powers).
    pub fn from_coeff_list(cs: &[i64]) -> Self {
        let mut out = Self::zero();
        for (e, &c) in cs.iter().enumerate() {
            out.add_term(e as i64, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.coeffs {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn mul_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, c * k)).collect(),
        }
    }

    /// Multiply by `L^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k + e, c)).collect(),
        }
    }

    /// Evaluate at `L = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Evaluate at `L = q` exactly; negative powers become `1/q^k`.
    pub fn eval_rational(&self, q: i64) -> BigRational {
        let qq = BigInt::from(q);
        let mut acc = BigRational::zero();
        for (&e, &c) in &self.coeffs {
            let term = if e >= 0 {
                BigRational::from_integer(qq.pow(e as u32) * BigInt::from(c))
            } else {
                BigRational::new(BigInt::from(c), qq.pow((-e) as u32))
            };
            acc += term;
        }
        acc
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest power first
        for (&e, &c) in self.coeffs.iter().rev() {
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "L")?,
                (1, m) => write!(f, "{m}*L")?,
                (e, 1) => write!(f, "L^{e}")?,
                (e, m) => write!(f, "{m}*L^{e}")?,
            }
        }
        Ok(())
    }
}
