//! Brute-force jet-space point counting over small prime fields.
//!
//! Counts truncated arcs with prescribed contact order along one or several
//! polynomials, together with the histogram of the angular component (the
//! leading coefficient). Enumeration fixes arc coefficients level by level,
//! lowest order first, so violated order conditions prune whole subtrees.
//! The outermost coefficient block is data parallel with a deterministic sum
//! reduction.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::par;
use crate::poly::{ff, PolyError, SparsePoly};

const GUARD: u128 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JetError {
    #[error("enumeration size q^(d (n+1)) = {size} exceeds the guard {GUARD}")]
    GuardExceeded { size: u128 },
    #[error("multi-jet orders must be positive")]
    OrderZero,
    #[error("polynomials must share one variable set")]
    VarMismatch,
    #[error("Laurent exponents are not allowed in jet counting")]
    NegativeExponent,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetCount {
    pub total: u64,
    /// Histogram over the angular component `ac(g)`, the coefficient of
    /// `t^n`; keys are nonzero residues.
    pub by_ac: BTreeMap<u64, u64>,
}

struct ReducedPoly {
    terms: Vec<(u64, Vec<u32>)>,
}

fn reduce_poly(g: &SparsePoly, q: u64) -> Result<ReducedPoly, JetError> {
    ff::check_prime(q)?;
    let mut terms = Vec::new();
    for (e, c) in g.terms() {
        if e.iter().any(|&x| x < 0) {
            return Err(JetError::NegativeExponent);
        }
        let cc = ff::coeff_mod(c, q)?;
        if cc != 0 {
            terms.push((cc, e.iter().map(|&x| x as u32).collect()));
        }
    }
    Ok(ReducedPoly { terms })
}

fn series_mul(a: &[u64], b: &[u64], q: u64, trunc: usize) -> Vec<u64> {
    let mut out = vec![0u64; trunc + 1];
    for (i, &x) in a.iter().enumerate().take(trunc + 1) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(trunc + 1 - i) {
            if y != 0 {
                out[i + j] = ff::add(out[i + j], ff::mul(x, y, q), q);
            }
        }
    }
    out
}

/// Coefficient of `t^level` in `g(arc)`, truncated; only reads arc
/// coefficients of order `<= level`.
fn compose_coeff(g: &ReducedPoly, arcs: &[Vec<u64>], q: u64, level: usize) -> u64 {
    let mut acc = vec![0u64; level + 1];
    for (c, exps) in &g.terms {
        let mut term = vec![0u64; level + 1];
        term[0] = *c;
        for (var, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = series_mul(&term, &arcs[var][..=level.min(arcs[var].len() - 1)], q, level);
            }
        }
        for (i, &x) in term.iter().enumerate() {
            acc[i] = ff::add(acc[i], x, q);
        }
    }
    acc[level]
}

/// Per-level order condition for one tracked polynomial.
#[derive(Clone, Copy)]
enum Cond {
    Zero,
    NonZero,
    Free,
}

struct Enumeration<'a> {
    polys: Vec<&'a ReducedPoly>,
    orders: Vec<u32>,
    q: u64,
    d: usize,
    trunc: usize,
    /// record the angular component histogram for this polynomial index
    ac_of: Option<usize>,
}

impl Enumeration<'_> {
    fn cond(&self, poly_idx: usize, level: usize) -> Cond {
        let n = self.orders[poly_idx] as usize;
        if level < n {
            Cond::Zero
        } else if level == n {
            Cond::NonZero
        } else {
            Cond::Free
        }
    }

    fn max_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(0) as usize
    }

    /// Count completions of `arcs` from `level` on.
    fn recurse(&self, arcs: &mut Vec<Vec<u64>>, level: usize, out: &mut JetCount) {
        if level > self.trunc {
            unreachable!("levels beyond the truncation are folded in bulk");
        }
        let q = self.q;
        let mut coeffs = vec![0u64; self.d];
        loop {
            for (i, &c) in coeffs.iter().enumerate() {
                arcs[i][level] = c;
            }
            let mut ok = true;
            let mut ac_value = None;
            for (pi, g) in self.polys.iter().enumerate() {
                match self.cond(pi, level) {
                    Cond::Free => {}
                    Cond::Zero => {
                        if compose_coeff(g, arcs, q, level) != 0 {
                            ok = false;
                            break;
                        }
                    }
                    Cond::NonZero => {
                        let v = compose_coeff(g, arcs, q, level);
                        if v == 0 {
                            ok = false;
                            break;
                        }
                        if self.ac_of == Some(pi) {
                            ac_value = Some(v);
                        }
                    }
                }
            }
            if ok {
                if level == self.max_order() {
                    // all conditions are resolved; the remaining levels are free
                    let free_levels = (self.trunc - level) as u32;
                    let bulk = q.pow(self.d as u32 * free_levels);
                    out.total += bulk;
                    if let Some(v) = ac_value {
                        *out.by_ac.entry(v).or_insert(0) += bulk;
                    }
                } else {
                    self.recurse(arcs, level + 1, out);
                }
            }
            // odometer over F_q^d
            let mut i = 0;
            loop {
                if i == self.d {
                    return;
                }
                if coeffs[i] + 1 < q {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

fn check_guard(d: usize, trunc: usize, q: u64) -> Result<(), JetError> {
    let size = (q as u128).checked_pow((d * (trunc + 1)) as u32);
    match size {
        Some(s) if s <= GUARD => Ok(()),
        Some(s) => Err(JetError::GuardExceeded { size: s }),
        None => Err(JetError::GuardExceeded { size: u128::MAX }),
    }
}

fn run(enumeration: &Enumeration<'_>, parallel: bool) -> JetCount {
    let q = enumeration.q;
    let d = enumeration.d;
    let trunc = enumeration.trunc;
    let first_block = q.pow(d as u32);
    let blocks: Vec<u64> = (0..first_block).collect();
    let work = |b: u64| {
        let mut arcs = vec![vec![0u64; trunc + 1]; d];
        let mut idx = b;
        for arc in arcs.iter_mut() {
            arc[0] = idx % q;
            idx /= q;
        }
        let mut out = JetCount {
            total: 0,
            by_ac: BTreeMap::new(),
        };
        // level-0 conditions, then recurse or fold
        let mut ok = true;
        let mut ac_value = None;
        for (pi, g) in enumeration.polys.iter().enumerate() {
            match enumeration.cond(pi, 0) {
                Cond::Free => {}
                Cond::Zero => {
                    if compose_coeff(g, &arcs, q, 0) != 0 {
                        ok = false;
                        break;
                    }
                }
                Cond::NonZero => {
                    let v = compose_coeff(g, &arcs, q, 0);
                    if v == 0 {
                        ok = false;
                        break;
                    }
                    if enumeration.ac_of == Some(pi) {
                        ac_value = Some(v);
                    }
                }
            }
        }
        if ok {
            if enumeration.max_order() == 0 {
                let bulk = q.pow(d as u32 * trunc as u32);
                out.total += bulk;
                if let Some(v) = ac_value {
                    *out.by_ac.entry(v).or_insert(0) += bulk;
                }
            } else {
                enumeration.recurse(&mut arcs, 1, &mut out);
            }
        }
        out
    };
    let merge = |mut a: JetCount, b: JetCount| {
        a.total += b.total;
        for (k, v) in b.by_ac {
            *a.by_ac.entry(k).or_insert(0) += v;
        }
        a
    };
    if parallel {
        par::map_reduce(
            blocks,
            work,
            || JetCount {
                total: 0,
                by_ac: BTreeMap::new(),
            },
            merge,
        )
    } else {
        blocks.into_iter().map(work).fold(
            JetCount {
                total: 0,
                by_ac: BTreeMap::new(),
            },
            merge,
        )
    }
}

/// Count truncated arcs with `ord_t g = n` exactly over the field with `q`
/// elements, plus the histogram of the angular component.
pub fn jet_count(g: &SparsePoly, n: u32, q: u64) -> Result<JetCount, JetError> {
    jet_count_impl(g, n, q, true)
}

/// Sequential reference path for `jet_count`; used by the benchmarks and the
/// determinism tests. Results are identical to the parallel path.
pub fn jet_count_serial(g: &SparsePoly, n: u32, q: u64) -> Result<JetCount, JetError> {
    jet_count_impl(g, n, q, false)
}

fn jet_count_impl(g: &SparsePoly, n: u32, q: u64, parallel: bool) -> Result<JetCount, JetError> {
    let d = g.nvars();
    check_guard(d, n as usize, q)?;
    let reduced = reduce_poly(g, q)?;
    let enumeration = Enumeration {
        polys: vec![&reduced],
        orders: vec![n],
        q,
        d,
        trunc: n as usize,
        ac_of: Some(0),
    };
    Ok(run(&enumeration, parallel))
}

/// Count truncated arcs with `ord_t f_j = n_j` for every `j`, at truncation
/// level `sum n_j`.
pub fn multi_jet_count(fs: &[SparsePoly], orders: &[u32], q: u64) -> Result<u64, JetError> {
    assert_eq!(fs.len(), orders.len());
    if orders.iter().any(|&n| n == 0) {
        return Err(JetError::OrderZero);
    }
    let d = fs.first().map(|f| f.nvars()).ok_or(JetError::VarMismatch)?;
    if fs.iter().any(|f| f.nvars() != d) {
        return Err(JetError::VarMismatch);
    }
    let s: u32 = orders.iter().sum();
    check_guard(d, s as usize, q)?;
    let reduced: Vec<ReducedPoly> = fs
        .iter()
        .map(|f| reduce_poly(f, q))
        .collect::<Result<_, _>>()?;
    let enumeration = Enumeration {
        polys: reduced.iter().collect(),
        orders: orders.to_vec(),
        q,
        d,
        trunc: s as usize,
        ac_of: None,
    };
    Ok(run(&enumeration, true).total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, vars: &[&str]) -> SparsePoly {
        SparsePoly::parse(s, vars).unwrap()
    }

    #[test]
    fn line_closed_form() {
        // ord x = n on the line: exactly q - 1 arcs at every truncation
        let g = poly("x", &["x"]);
        for n in 0..=4u32 {
            for q in [2u64, 3, 5, 7] {
                let c = jet_count(&g, n, q).unwrap();
                assert_eq!(c.total, q - 1, "n={n} q={q}");
                assert_eq!(c.by_ac.len() as u64, q - 1);
            }
        }
    }

    #[test]
    fn node_case_split() {
        // ord(xy) = 2 at q = 3: 3 (q-1)^2 q^2 = 108 from the case split over
        // (ord x, ord y) in {(0,2), (1,1), (2,0)}
        let g = poly("x*y", &["x", "y"]);
        let c = jet_count(&g, 2, 3).unwrap();
        assert_eq!(c.total, 108);
    }

    #[test]
    fn cusp_small_value() {
        // q (q-1)^2 arcs with ord = 1: smooth points of the curve carry
        // q(q-1) admissible level-1 choices each
        let g = poly("x^2 + y^3", &["x", "y"]);
        for q in [2u64, 3, 5] {
            let c = jet_count(&g, 1, q).unwrap();
            assert_eq!(c.total, q * (q - 1) * (q - 1), "q={q}");
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let g = poly("x^2 + y^3", &["x", "y"]);
        for (n, q) in [(2u32, 3u64), (3, 3), (2, 5)] {
            let a = jet_count(&g, n, q).unwrap();
            let b = jet_count_serial(&g, n, q).unwrap();
            assert_eq!(a.total, b.total);
            assert_eq!(a.by_ac, b.by_ac);
        }
    }

    #[test]
    fn multi_jet_examples() {
        let f = [poly("x", &["x", "y"]), poly("y", &["x", "y"])];
        // independent coordinates: ((q-1) q)^2 at level 2
        assert_eq!(multi_jet_count(&f, &[1, 1], 3).unwrap(), 36);
        // (q-1) q^2 (q-1) q at level 3
        assert_eq!(multi_jet_count(&f, &[1, 2], 3).unwrap(), 108);
        assert_eq!(
            multi_jet_count(&f, &[1, 0], 3).unwrap_err(),
            JetError::OrderZero
        );
    }

    #[test]
    fn guard_rejects_large_spaces() {
        let g = poly("x^2 + y^3", &["x", "y"]);
        assert!(matches!(
            jet_count(&g, 12, 13),
            Err(JetError::GuardExceeded { .. })
        ));
    }
}
