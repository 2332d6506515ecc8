//! Exact sparse multivariate (Laurent) polynomials over the rationals.
//!
//! Exponent vectors are plain `Vec<i64>`; coefficients are `BigRational` and
//! never zero in the stored map. Negative exponents are permitted so torus
//! coordinates can be inverted, but every consumer building Newton polyhedra
//! rejects them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg;

pub type Coeff = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("zero polynomial has no quasi-degree data")]
    ZeroPolynomial,
    #[error("support does not lie on an admissible weight hyperplane")]
    NotQuasiHomogeneous,
    #[error("no nonnegative weight vector found for the support")]
    NoAdmissibleWeights,
    #[error("denominator of a coefficient is divisible by {q}")]
    BadDenominator { q: u64 },
    #[error("{q} is not prime")]
    NotPrime { q: u64 },
    #[error("negative exponent where a polynomial (not Laurent) is required")]
    NegativeExponent,
    #[error("evaluation at a zero coordinate with negative exponent")]
    ZeroToNegativePower,
}

/// Sparse polynomial: map from exponent vector to nonzero rational coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Coeff>,
}

impl Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, render_rational(c)))?;
        }
        seq.end()
    }
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn variable(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Self::monomial(e, Coeff::one())
    }

    pub fn monomial(exps: Vec<i64>, c: Coeff) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, Coeff)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, e: &[i64]) -> Coeff {
        self.terms.get(e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    fn add_term(&mut self, e: Vec<i64>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Partial derivative with respect to variable `idx` (Laurent rule).
    pub fn partial(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[idx];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(e2, c * Coeff::from_integer(BigInt::from(k)));
        }
        out
    }

    /// All partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Keep the terms whose exponents satisfy `<a, e> = c`.
    pub fn restrict_to_hyperplane(&self, a: &[i64], c: i64) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| linalg::dot(a, e) == c)
                .map(|(e, k)| (e.clone(), k.clone()))
                .collect(),
        }
    }

    /// Substitute each variable by a monomial in `r` new variables:
    /// variable `j` maps to the monomial with exponent vector `map[j]`.
    pub fn compose_monomials(&self, map: &[Vec<u32>]) -> Result<Self, PolyError> {
        assert_eq!(map.len(), self.nvars, "monomial map arity mismatch");
        let r = map.first().map_or(0, |m| m.len());
        let mut out = Self::zero(r);
        for (e, c) in &self.terms {
            let mut img = vec![0i64; r];
            for (j, &a) in e.iter().enumerate() {
                if a < 0 {
                    return Err(PolyError::NegativeExponent);
                }
                for (i, &m) in map[j].iter().enumerate() {
                    img[i] += a * m as i64;
                }
            }
            out.add_term(img, c.clone());
        }
        Ok(out)
    }

    /// Set the variables in `kill` to zero and drop them, keeping the others
    /// in order. Terms with a positive exponent on a killed variable vanish.
    pub fn set_vars_to_zero(&self, kill: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.nvars).filter(|i| !kill.contains(i)).collect();
        let mut out = Self::zero(keep.len());
        'term: for (e, c) in &self.terms {
            for &k in kill {
                if e[k] != 0 {
                    continue 'term;
                }
            }
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        out
    }

    /// Exact evaluation at a rational point. Negative exponents require the
    /// corresponding coordinate to be nonzero.
    pub fn eval_rational(&self, point: &[Coeff]) -> Result<Coeff, PolyError> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Coeff::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if x.is_zero() && k < 0 {
                    return Err(PolyError::ZeroToNegativePower);
                }
                let p = pow_rational(x, k.unsigned_abs() as u32);
                t = if k > 0 { t * p } else { t / p };
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact evaluation in the field with `q` elements.
    pub fn eval_finite_field(&self, point: &[u64], q: u64) -> Result<u64, PolyError> {
        ff::check_prime(q)?;
        assert_eq!(point.len(), self.nvars);
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = ff::coeff_mod(c, q)?;
            for (&x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                let base = x % q;
                if base == 0 {
                    if k < 0 {
                        return Err(PolyError::ZeroToNegativePower);
                    }
                    t = 0;
                    continue;
                }
                let p = ff::pow(base, k.unsigned_abs(), q);
                let p = if k > 0 { p } else { ff::inv(p, q) };
                t = ff::mul(t, p, q);
            }
            acc = ff::add(acc, t, q);
        }
        Ok(acc)
    }

    /// Weight vector `w >= 0` and degree `N` with `<w, e> = N` on the whole
    /// support. When several admissible hyperplanes exist the strictly
    /// positive lexicographically smallest primitive `w` is chosen.
    pub fn quasi_degree(&self) -> Result<(Vec<i64>, i64), PolyError> {
        let supp = self.support();
        if supp.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        let p = self.nvars;
        let base = &supp[0];
        let diffs: Vec<Vec<i64>> = supp[1..]
            .iter()
            .map(|e| e.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let ns = linalg::nullspace_int(&diffs, p);
        let w = match ns.len() {
            0 => return Err(PolyError::NotQuasiHomogeneous),
            1 => {
                let v = &ns[0];
                if v.iter().all(|&x| x >= 0) {
                    v.clone()
                } else if v.iter().all(|&x| x <= 0) {
                    v.iter().map(|x| -x).collect()
                } else {
                    return Err(PolyError::NoAdmissibleWeights);
                }
            }
            _ => lex_min_positive_weight(&diffs, p).ok_or(PolyError::NoAdmissibleWeights)?,
        };
        Ok((w.clone(), linalg::dot(&w, base)))
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, PolyError> {
        parser::parse(text, vars)
    }

    /// Deterministic normal-form rendering; `parse . render` is the identity.
    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".into();
        }
        // lexicographically largest exponent vector first
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(render_rational(&mag));
            }
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[j].to_string()),
                    _ => factors.push(format!("{}^{}", names[j], k)),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

fn pow_rational(x: &Coeff, k: u32) -> Coeff {
    let mut acc = Coeff::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

fn render_rational(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Lexicographically smallest strictly positive primitive integer vector
/// orthogonal to every row of `diffs`. Bounded search; the underdetermined
/// cases that occur in practice (monomials, low-dimensional faces) are found
/// at tiny entry bounds.
fn lex_min_positive_weight(diffs: &[Vec<i64>], p: usize) -> Option<Vec<i64>> {
    if p > 6 {
        return None;
    }
    for bound in [4i64, 16, 48] {
        let mut w = vec![1i64; p];
        'search: loop {
            if diffs.iter().all(|d| linalg::dot(d, &w) == 0) && linalg::vec_gcd(&w) == 1 {
                return Some(w);
            }
            let mut i = p;
            while i > 0 {
                i -= 1;
                if w[i] < bound {
                    w[i] += 1;
                    for x in w.iter_mut().skip(i + 1) {
                        *x = 1;
                    }
                    continue 'search;
                }
            }
            break;
        }
    }
    None
}

/// Small prime-field helpers shared by evaluation, probing and jet counting.
pub(crate) mod ff {
    use super::{Coeff, PolyError};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive, Zero};

    pub fn is_prime(q: u64) -> bool {
        if q < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= q {
            if q % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    pub fn check_prime(q: u64) -> Result<(), PolyError> {
        if is_prime(q) {
            Ok(())
        } else {
            Err(PolyError::NotPrime { q })
        }
    }

    pub fn add(a: u64, b: u64, q: u64) -> u64 {
        (a + b) % q
    }

    pub fn mul(a: u64, b: u64, q: u64) -> u64 {
        (a * b) % q
    }

    pub fn pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
        let mut acc = 1u64;
        base %= q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, q);
            }
            base = mul(base, base, q);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(a: u64, q: u64) -> u64 {
        debug_assert!(a % q != 0);
        pow(a, q - 2, q)
    }

    fn bigint_mod(x: &BigInt, q: u64) -> u64 {
        let m = BigInt::from(q);
        let r = x.mod_floor(&m);
        debug_assert!(!r.is_negative());
        r.to_u64().expect("residue fits u64")
    }

    /// Reduce an exact rational mod q; the denominator must be invertible.
    pub fn coeff_mod(c: &Coeff, q: u64) -> Result<u64, PolyError> {
        let den = bigint_mod(c.denom(), q);
        if den == 0 {
            return Err(PolyError::BadDenominator { q });
        }
        if c.numer().is_zero() {
            return Ok(0);
        }
        Ok(mul(bigint_mod(c.numer(), q), inv(den, q), q))
    }
}

mod parser {
    use super::{Coeff, PolyError, SparsePoly};
    use num_bigint::BigInt;
    use num_traits::One;

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Num(BigInt),
        Ident(String),
        Plus,
        Minus,
        Star,
        Slash,
        Caret,
        LParen,
        RParen,
    }

    struct Lexer {
        toks: Vec<(Tok, usize)>,
        pos: usize,
    }

    fn lex(text: &str) -> Result<Lexer, PolyError> {
        let bytes = text.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                b'+' => {
                    toks.push((Tok::Plus, i));
                    i += 1;
                }
                b'-' => {
                    toks.push((Tok::Minus, i));
                    i += 1;
                }
                b'*' => {
                    toks.push((Tok::Star, i));
                    i += 1;
                }
                b'/' => {
                    toks.push((Tok::Slash, i));
                    i += 1;
                }
                b'^' => {
                    toks.push((Tok::Caret, i));
                    i += 1;
                }
                b'(' => {
                    toks.push((Tok::LParen, i));
                    i += 1;
                }
                b')' => {
                    toks.push((Tok::RParen, i));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: BigInt = text[start..i].parse().expect("digits parse");
                    toks.push((Tok::Num(n), start));
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    toks.push((Tok::Ident(text[start..i].to_string()), start));
                }
                _ => {
                    return Err(PolyError::Syntax {
                        pos: i,
                        msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                    })
                }
            }
        }
        Ok(Lexer { toks, pos: 0 })
    }

    impl Lexer {
        fn peek(&self) -> Option<&(Tok, usize)> {
            self.toks.get(self.pos)
        }

        fn next(&mut self) -> Option<(Tok, usize)> {
            let t = self.toks.get(self.pos).cloned();
            if t.is_some() {
                self.pos += 1;
            }
            t
        }

        fn end_pos(&self) -> usize {
            self.toks.last().map_or(0, |(_, p)| p + 1)
        }
    }

    struct Ctx<'a> {
        vars: &'a [&'a str],
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<SparsePoly, PolyError> {
        let mut lx = lex(text)?;
        let ctx = Ctx { vars };
        let poly = expr(&mut lx, &ctx)?;
        if let Some((_, pos)) = lx.peek() {
            return Err(PolyError::Syntax {
                pos: *pos,
                msg: "trailing input".into(),
            });
        }
        Ok(poly)
    }

    fn expr(lx: &mut Lexer, ctx: &Ctx) -> Result<SparsePoly, PolyError> {
        let mut acc = term(lx, ctx)?;
        while let Some((tok, _)) = lx.peek() {
            match tok {
                Tok::Plus => {
                    lx.next();
                    acc = acc.add(&term(lx, ctx)?);
                }
                Tok::Minus => {
                    lx.next();
                    acc = acc.sub(&term(lx, ctx)?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(lx: &mut Lexer, ctx: &Ctx) -> Result<SparsePoly, PolyError> {
        let mut sign = false;
        while let Some((tok, _)) = lx.peek() {
            match tok {
                Tok::Minus => {
                    sign = !sign;
                    lx.next();
                }
                Tok::Plus => {
                    lx.next();
                }
                _ => break,
            }
        }
        let mut acc = factor(lx, ctx)?;
        while let Some((Tok::Star, _)) = lx.peek() {
            lx.next();
            acc = acc.mul(&factor(lx, ctx)?);
        }
        if sign {
            acc = acc.neg();
        }
        Ok(acc)
    }

    fn factor(lx: &mut Lexer, ctx: &Ctx) -> Result<SparsePoly, PolyError> {
        let base = primary(lx, ctx)?;
        if let Some((Tok::Caret, _)) = lx.peek() {
            lx.next();
            let (exp, pos) = int_exponent(lx)?;
            return pow_poly(&base, exp, pos);
        }
        Ok(base)
    }

    fn int_exponent(lx: &mut Lexer) -> Result<(i64, usize), PolyError> {
        let mut neg = false;
        if let Some((Tok::Minus, _)) = lx.peek() {
            neg = true;
            lx.next();
        }
        match lx.next() {
            Some((Tok::Num(n), pos)) => {
                let v: i64 = n.try_into().map_err(|_| PolyError::Syntax {
                    pos,
                    msg: "exponent too large".into(),
                })?;
                Ok((if neg { -v } else { v }, pos))
            }
            Some((_, pos)) => Err(PolyError::Syntax {
                pos,
                msg: "expected integer exponent after `^`".into(),
            }),
            None => Err(PolyError::Syntax {
                pos: lx.end_pos(),
                msg: "expected integer exponent after `^`".into(),
            }),
        }
    }

    fn pow_poly(base: &SparsePoly, exp: i64, pos: usize) -> Result<SparsePoly, PolyError> {
        if exp >= 0 {
            let mut acc = SparsePoly::constant(base.nvars(), Coeff::one());
            for _ in 0..exp {
                acc = acc.mul(base);
            }
            return Ok(acc);
        }
        // negative powers only of single monomials (Laurent)
        if base.num_terms() == 1 {
            let (e, c) = base.terms().next().unwrap();
            let eneg: Vec<i64> = e.iter().map(|&k| k * exp).collect();
            let mut cc = Coeff::one();
            for _ in 0..(-exp) {
                cc /= c;
            }
            return Ok(SparsePoly::monomial(eneg, cc));
        }
        Err(PolyError::Syntax {
            pos,
            msg: "negative exponent on a non-monomial".into(),
        })
    }

    fn primary(lx: &mut Lexer, ctx: &Ctx) -> Result<SparsePoly, PolyError> {
        match lx.next() {
            Some((Tok::Num(n), _)) => {
                // optional rational literal `a/b`
                if let Some((Tok::Slash, _)) = lx.peek() {
                    lx.next();
                    match lx.next() {
                        Some((Tok::Num(d), pos)) => {
                            if d == BigInt::from(0) {
                                return Err(PolyError::Syntax {
                                    pos,
                                    msg: "zero denominator".into(),
                                });
                            }
                            Ok(SparsePoly::constant(ctx.vars.len(), Coeff::new(n, d)))
                        }
                        Some((_, pos)) => Err(PolyError::Syntax {
                            pos,
                            msg: "expected integer after `/`".into(),
                        }),
                        None => Err(PolyError::Syntax {
                            pos: lx.end_pos(),
                            msg: "expected integer after `/`".into(),
                        }),
                    }
                } else {
                    Ok(SparsePoly::constant(
                        ctx.vars.len(),
                        Coeff::from_integer(n),
                    ))
                }
            }
            Some((Tok::Ident(name), pos)) => {
                match ctx.vars.iter().position(|v| *v == name) {
                    Some(idx) => Ok(SparsePoly::variable(ctx.vars.len(), idx)),
                    None => Err(PolyError::UnknownVariable { name, pos }),
                }
            }
            Some((Tok::LParen, _)) => {
                let inner = expr(lx, ctx)?;
                match lx.next() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    Some((_, pos)) => Err(PolyError::Syntax {
                        pos,
                        msg: "expected `)`".into(),
                    }),
                    None => Err(PolyError::Syntax {
                        pos: lx.end_pos(),
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some((tok, pos)) => Err(PolyError::Syntax {
                pos,
                msg: format!("unexpected token {tok:?}"),
            }),
            None => Err(PolyError::Syntax {
                pos: lx.end_pos(),
                msg: "unexpected end of input".into(),
            }),
        }
    }

}
