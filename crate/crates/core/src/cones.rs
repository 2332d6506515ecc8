//! Relatively open rational polyhedral cones `{x : Ax = 0, Bx > 0}`.
//!
//! Exact feasibility and dimension via Fourier-Motzkin elimination, compactly
//! supported Euler characteristics, preimages under nonnegative linear maps,
//! and lattice-point generating series for simplicial cones computed through
//! a unimodular stellar subdivision.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, q_int, Q};
use crate::lpoly::LPoly;
use crate::srseries::{SrSeries, SrTerm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("cone map entries must be nonnegative")]
    NegativeMapEntry,
    #[error("map arity does not match cone ambient dimension")]
    DimensionMismatch,
    #[error("cone closure contains a line; extreme rays are undefined")]
    NotPointed,
    #[error("cone is not simplicial: {rays} extreme rays in dimension {dim}")]
    NotSimplicial { rays: usize, dim: usize },
    #[error("a ray of the cone has nonpositive T-weight {0}")]
    NonPositiveWeight(i64),
    #[error("fundamental parallelepiped search space too large")]
    TooComplex,
    #[error("cone literal error: {0}")]
    Parse(String),
}

/// `{x in R^ambient : eq . x = 0 for all eqs, s . x > 0 for all stricts}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelOpenCone {
    ambient: usize,
    eqs: Vec<Vec<i64>>,
    stricts: Vec<Vec<i64>>,
}

/// The linear map `k -> sum_i k_i N_i` with nonnegative integer columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeMap {
    target: usize,
    columns: Vec<Vec<i64>>,
}

impl ConeMap {
    pub fn new(target: usize, columns: Vec<Vec<i64>>) -> Result<Self, ConeError> {
        for c in &columns {
            if c.len() != target {
                return Err(ConeError::DimensionMismatch);
            }
            if c.iter().any(|&x| x < 0) {
                return Err(ConeError::NegativeMapEntry);
            }
        }
        Ok(Self { target, columns })
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                c
            })
            .collect();
        Self { target: n, columns }
    }

    pub fn source_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    /// Pull a covector on the target back along the map.
    fn pull_back(&self, covector: &[i64]) -> Vec<i64> {
        self.columns
            .iter()
            .map(|c| linalg::dot(covector, c))
            .collect()
    }
}

impl RelOpenCone {
    pub fn new(ambient: usize, eqs: Vec<Vec<i64>>, stricts: Vec<Vec<i64>>) -> Self {
        let mut cone = Self {
            ambient,
            eqs,
            stricts,
        };
        cone.canonicalize();
        cone
    }

    /// The open orthant `{x : x_i > 0 for all i}`.
    pub fn open_orthant(n: usize) -> Self {
        let stricts = (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                c
            })
            .collect();
        Self::new(n, vec![], stricts)
    }

    /// The whole space (no constraints).
    pub fn unconstrained(n: usize) -> Self {
        Self::new(n, vec![], vec![])
    }

    fn canonicalize(&mut self) {
        for r in self.eqs.iter_mut() {
            *r = linalg::primitive(r);
            if let Some(&first) = r.iter().find(|&&x| x != 0) {
                if first < 0 {
                    *r = r.iter().map(|x| -x).collect();
                }
            }
        }
        self.eqs.retain(|r| r.iter().any(|&x| x != 0));
        self.eqs.sort();
        self.eqs.dedup();
        for r in self.stricts.iter_mut() {
            *r = linalg::primitive(r);
        }
        self.stricts.sort();
        self.stricts.dedup();
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn equalities(&self) -> &[Vec<i64>] {
        &self.eqs
    }

    pub fn strict_inequalities(&self) -> &[Vec<i64>] {
        &self.stricts
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        debug_assert_eq!(x.len(), self.ambient);
        self.eqs.iter().all(|e| linalg::dot(e, x) == 0)
            && self.stricts.iter().all(|s| linalg::dot(s, x) > 0)
    }

    /// Exact nonemptiness of the relative interior and the dimension of the
    /// affine hull of the solution set. A nonempty set cut out by equalities
    /// and strict inequalities is open inside the kernel of the equalities,
    /// so the dimension equals that kernel's dimension.
    pub fn dim_nonempty(&self) -> (bool, usize) {
        let kernel = linalg::nullspace_int(&self.eqs, self.ambient);
        let k = kernel.len();
        if self.stricts.is_empty() {
            return (true, k);
        }
        let reduced: Vec<Vec<BigInt>> = self
            .stricts
            .iter()
            .map(|s| kernel.iter().map(|v| BigInt::from(linalg::dot(s, v))).collect())
            .collect();
        (fm_feasible(reduced, k), k)
    }

    pub fn is_empty(&self) -> bool {
        !self.dim_nonempty().0
    }

    /// `0` when empty, `(-1)^dim` otherwise.
    pub fn chi_compact(&self) -> i64 {
        let (nonempty, dim) = self.dim_nonempty();
        if !nonempty {
            0
        } else if dim % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `{k : k_i > 0 for all i, map(k) in self}`.
    pub fn preimage(&self, map: &ConeMap) -> Result<RelOpenCone, ConeError> {
        if map.target_dim() != self.ambient {
            return Err(ConeError::DimensionMismatch);
        }
        let s = map.source_dim();
        let eqs = self.eqs.iter().map(|e| map.pull_back(e)).collect();
        let mut stricts: Vec<Vec<i64>> = self.stricts.iter().map(|e| map.pull_back(e)).collect();
        for i in 0..s {
            let mut row = vec![0; s];
            row[i] = 1;
            stricts.push(row);
        }
        Ok(RelOpenCone::new(s, eqs, stricts))
    }

    /// Primitive generators of the extreme rays of the closure
    /// `{x : Ax = 0, Bx >= 0}`. Fails when the closure contains a line.
    pub fn closure_rays(&self) -> Result<Vec<Vec<i64>>, ConeError> {
        let m = self.ambient;
        let r_eq = linalg::rank_int(&self.eqs);
        if r_eq == m {
            return Ok(vec![]); // the closure is {0}
        }
        let mut all_rows: Vec<Vec<i64>> = self.eqs.clone();
        all_rows.extend(self.stricts.iter().cloned());
        // {Ax = 0, Bx = 0} nonzero means v and -v both lie in the closure
        if !linalg::nullspace_int(&all_rows, m).is_empty() {
            return Err(ConeError::NotPointed);
        }
        let need = m - 1 - r_eq;
        let idx: Vec<usize> = (0..self.stricts.len()).collect();
        let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
        for subset in linalg::combinations(&idx, need) {
            let mut rows = self.eqs.clone();
            rows.extend(subset.iter().map(|&i| self.stricts[i].clone()));
            let ns = linalg::nullspace_int(&rows, m);
            if ns.len() != 1 {
                continue;
            }
            let v = &ns[0];
            if self.stricts.iter().all(|s| linalg::dot(s, v) >= 0) {
                rays.insert(v.clone());
            } else if self.stricts.iter().all(|s| linalg::dot(s, v) <= 0) {
                rays.insert(v.iter().map(|x| -x).collect());
            }
        }
        Ok(rays.into_iter().collect())
    }

    /// Generating sum over the lattice points of the cone, sending a point
    /// `k` to `prod_i (L^{e_i} T^{j_i})^{k_i}` with per-axis weights
    /// `weights[i] = (e_i, j_i)`. The cone must be simplicial; the sum is
    /// assembled from a unimodular stellar subdivision so that every piece
    /// contributes a plain product of `p(e,i)` generators.
    pub fn lattice_generating_series(
        &self,
        weights: &[(i64, i64)],
    ) -> Result<SrSeries<LPoly>, ConeError> {
        assert_eq!(weights.len(), self.ambient);
        let (nonempty, dim) = self.dim_nonempty();
        if !nonempty {
            return Ok(SrSeries::zero());
        }
        if dim == 0 {
            return Ok(SrSeries::one());
        }
        let rays = self.closure_rays()?;
        if rays.len() != dim {
            return Err(ConeError::NotSimplicial {
                rays: rays.len(),
                dim,
            });
        }
        let pieces = unimodular_subdivision(rays)?;
        // faces of the subdivision fan whose relative interior lies in the
        // relative interior of the cone, each contributing one product term
        let mut faces: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        for piece in &pieces {
            let n = piece.len();
            for mask in 1u32..(1 << n) {
                let face: Vec<Vec<i64>> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| piece[i].clone())
                    .collect();
                faces.insert(face);
            }
        }
        let mut terms = Vec::new();
        for face in faces {
            let probe: Vec<i64> = (0..self.ambient)
                .map(|i| face.iter().map(|g| g[i]).sum())
                .collect();
            if !self.stricts.iter().all(|s| linalg::dot(s, &probe) > 0) {
                continue;
            }
            let mut factors = Vec::with_capacity(face.len());
            for g in &face {
                let e: i64 = g.iter().zip(weights).map(|(&gi, (ei, _))| gi * ei).sum();
                let j: i64 = g.iter().zip(weights).map(|(&gi, (_, ji))| gi * ji).sum();
                if j <= 0 {
                    return Err(ConeError::NonPositiveWeight(j));
                }
                factors.push((e, j));
            }
            terms.push(SrTerm {
                coeff: LPoly::one(),
                factors,
            });
        }
        Ok(SrSeries::from_terms(terms))
    }

    /// Parse a cone literal like `2a = 3b; a > 0; b > 0`. Variables bind to
    /// coordinates in order of first appearance; `ambient` fixes the
    /// dimension. Returns the cone and the bound variable names.
    pub fn parse(text: &str, ambient: usize) -> Result<(RelOpenCone, Vec<String>), ConeError> {
        let mut names: Vec<String> = Vec::new();
        let mut eqs = Vec::new();
        let mut stricts = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (lhs, op, rhs) = split_relation(part)?;
            let l = parse_linear(lhs, &mut names, ambient)?;
            let r = parse_linear(rhs, &mut names, ambient)?;
            let mut v: Vec<i64> = l.0.iter().zip(&r.0).map(|(a, b)| a - b).collect();
            if l.1 != r.1 {
                return Err(ConeError::Parse(format!(
                    "constraint `{part}` is not homogeneous"
                )));
            }
            match op {
                "=" => eqs.push(v),
                ">" => stricts.push(v),
                "<" => {
                    v = v.iter().map(|x| -x).collect();
                    stricts.push(v);
                }
                _ => unreachable!(),
            }
        }
        Ok((RelOpenCone::new(ambient, eqs, stricts), names))
    }
}

/// Parse a linear form like `2a + 3b - c` against an (extensible) list of
/// variable names bound in order of first appearance.
pub fn parse_linear_form(
    text: &str,
    names: &mut Vec<String>,
    ambient: usize,
) -> Result<Vec<i64>, ConeError> {
    let (v, c) = parse_linear(text, names, ambient)?;
    if c != 0 {
        return Err(ConeError::Parse(format!(
            "linear form `{text}` has a constant part"
        )));
    }
    Ok(v)
}

fn split_relation(part: &str) -> Result<(&str, &'static str, &str), ConeError> {
    for (op, lit) in [("=", "="), (">", ">"), ("<", "<")] {
        if let Some(pos) = part.find(lit) {
            return Ok((&part[..pos], op, &part[pos + 1..]));
        }
    }
    Err(ConeError::Parse(format!(
        "constraint `{part}` needs one of `=`, `>`, `<`"
    )))
}

fn parse_linear(
    text: &str,
    names: &mut Vec<String>,
    ambient: usize,
) -> Result<(Vec<i64>, i64), ConeError> {
    let mut coeffs = vec![0i64; ambient];
    let mut constant = 0i64;
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut sign = 1i64;
    let mut saw_term = false;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'+' => {
                sign = 1;
                i += 1;
            }
            b'-' => {
                sign = -sign;
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: i64 = text[start..i]
                    .parse()
                    .map_err(|_| ConeError::Parse("coefficient overflow".into()))?;
                // optional `*` then identifier
                let mut j = i;
                while j < bytes.len() && (bytes[j] == b' ' || bytes[j] == b'*') {
                    j += 1;
                }
                if j < bytes.len() && (bytes[j].is_ascii_alphabetic() || bytes[j] == b'_') {
                    i = j;
                    let name = read_ident(text, &mut i);
                    let idx = bind_var(&name, names, ambient)?;
                    coeffs[idx] += sign * n;
                } else {
                    constant += sign * n;
                }
                sign = 1;
                saw_term = true;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let name = read_ident(text, &mut i);
                let idx = bind_var(&name, names, ambient)?;
                coeffs[idx] += sign;
                sign = 1;
                saw_term = true;
            }
            c => {
                return Err(ConeError::Parse(format!(
                    "unexpected character `{}`",
                    c as char
                )))
            }
        }
    }
    if !saw_term {
        return Err(ConeError::Parse("empty linear expression".into()));
    }
    Ok((coeffs, constant))
}

fn read_ident(text: &str, i: &mut usize) -> String {
    let bytes = text.as_bytes();
    let start = *i;
    while *i < bytes.len() && (bytes[*i].is_ascii_alphanumeric() || bytes[*i] == b'_') {
        *i += 1;
    }
    text[start..*i].to_string()
}

fn bind_var(name: &str, names: &mut Vec<String>, ambient: usize) -> Result<usize, ConeError> {
    if let Some(idx) = names.iter().position(|n| n == name) {
        return Ok(idx);
    }
    if names.len() >= ambient {
        return Err(ConeError::Parse(format!(
            "too many variables for ambient dimension {ambient} (at `{name}`)"
        )));
    }
    names.push(name.to_string());
    Ok(names.len() - 1)
}

/// Feasibility of `{t : C t > 0}` by Fourier-Motzkin elimination, exact over
/// the integers. All constraints are strict and homogeneous.
fn fm_feasible(mut rows: Vec<Vec<BigInt>>, nvars: usize) -> bool {
    for var in 0..nvars {
        if rows.iter().any(|r| r.iter().all(|x| x.is_zero())) {
            return false;
        }
        let mut keep: Vec<Vec<BigInt>> = Vec::new();
        let mut pos: Vec<Vec<BigInt>> = Vec::new();
        let mut neg: Vec<Vec<BigInt>> = Vec::new();
        for r in rows.drain(..) {
            match r[var].sign() {
                num_bigint::Sign::NoSign => keep.push(r),
                num_bigint::Sign::Plus => pos.push(r),
                num_bigint::Sign::Minus => neg.push(r),
            }
        }
        let mut set: BTreeSet<Vec<BigInt>> = keep.into_iter().map(reduce_row).collect();
        for p in &pos {
            for n in &neg {
                let a = &p[var];
                let b = &n[var]; // negative
                let combo: Vec<BigInt> = p
                    .iter()
                    .zip(n)
                    .map(|(pv, nv)| pv * -b + nv * a)
                    .collect();
                debug_assert!(combo[var].is_zero());
                set.insert(reduce_row(combo));
            }
        }
        rows = set.into_iter().collect();
    }
    !rows.iter().any(|r| r.iter().all(|x| x.is_zero()))
}

fn reduce_row(row: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &row {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return row;
    }
    row.into_iter().map(|x| x / &g).collect()
}

/// Split a simplicial cone (independent primitive rays) into unimodular
/// simplicial cones of the same dimension forming a fan.
fn unimodular_subdivision(rays: Vec<Vec<i64>>) -> Result<Vec<Vec<Vec<i64>>>, ConeError> {
    let mut stack = vec![rays];
    let mut done = Vec::new();
    while let Some(cone) = stack.pop() {
        if linalg::lattice_index(&cone).is_one() {
            done.push(cone);
            continue;
        }
        let (w, mu) = parallelepiped_point(&cone)?;
        for (j, mj) in mu.iter().enumerate() {
            if mj.is_zero() {
                continue;
            }
            let mut child = cone.clone();
            child[j] = w.clone();
            stack.push(child);
        }
    }
    Ok(done)
}

/// A nonzero lattice point `w = sum mu_j g_j` with `0 <= mu_j < 1`, together
/// with its coordinates. Exists whenever the cone is not unimodular.
fn parallelepiped_point(rays: &[Vec<i64>]) -> Result<(Vec<i64>, Vec<Q>), ConeError> {
    let d = rays.len();
    let m = rays[0].len();
    let mut lo = vec![0i64; m];
    let mut hi = vec![0i64; m];
    for g in rays {
        for i in 0..m {
            lo[i] += g[i].min(0);
            hi[i] += g[i].max(0);
        }
    }
    let mut size: u128 = 1;
    for i in 0..m {
        size = size.saturating_mul((hi[i] - lo[i] + 1) as u128);
        if size > 500_000 {
            return Err(ConeError::TooComplex);
        }
    }
    // columns of the solve are the rays
    let a: Vec<Vec<Q>> = (0..m)
        .map(|i| (0..d).map(|j| q_int(rays[j][i])).collect())
        .collect();
    let mut x = lo.clone();
    loop {
        if x.iter().any(|&v| v != 0) {
            let b: Vec<Q> = x.iter().map(|&v| q_int(v)).collect();
            if let Some(mu) = linalg::solve(&a, &b) {
                let in_box = mu
                    .iter()
                    .all(|c| !c.is_negative() && c < &Q::one());
                if in_box && mu.iter().any(|c| !c.is_zero()) {
                    let w = linalg::primitive(&x);
                    let scale = q_int(linalg::vec_gcd(&x).max(1));
                    let mu_prim: Vec<Q> = mu.iter().map(|c| c / &scale).collect();
                    return Ok((w, mu_prim));
                }
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == m {
                return Err(ConeError::TooComplex);
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_and_nonempty_examples() {
        let c = RelOpenCone::open_orthant(2);
        assert_eq!(c.dim_nonempty(), (true, 2));

        let ray = RelOpenCone::new(2, vec![vec![2, -3]], vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(ray.dim_nonempty(), (true, 1));

        let empty = RelOpenCone::new(1, vec![], vec![vec![1], vec![-1]]);
        assert_eq!(empty.dim_nonempty().0, false);
    }

    #[test]
    fn chi_examples() {
        assert_eq!(RelOpenCone::open_orthant(2).chi_compact(), 1);
        let ray = RelOpenCone::new(2, vec![vec![4, -9]], vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(ray.chi_compact(), -1);
        let empty = RelOpenCone::new(1, vec![], vec![vec![1], vec![-1]]);
        assert_eq!(empty.chi_compact(), 0);
    }

    #[test]
    fn preimage_examples() {
        // columns (2,0) and (0,3); C the ray 2a1 = 3a2
        let c = RelOpenCone::new(2, vec![vec![2, -3]], vec![vec![1, 0], vec![0, 1]]);
        let map = ConeMap::new(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        let pre = c.preimage(&map).unwrap();
        // {4 k1 = 9 k2, k > 0}
        assert!(pre.contains(&[9, 4]));
        assert!(!pre.contains(&[1, 1]));
        assert_eq!(pre.dim_nonempty(), (true, 1));

        let id = ConeMap::identity(2);
        let c2 = RelOpenCone::new(2, vec![], vec![vec![1, -1], vec![0, 1]]);
        let pre2 = c2.preimage(&id).unwrap();
        assert!(pre2.contains(&[2, 1]));
        assert!(!pre2.contains(&[1, 2]));
    }

    #[test]
    fn closure_rays_examples() {
        let ray = RelOpenCone::new(2, vec![vec![2, -3]], vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(ray.closure_rays().unwrap(), vec![vec![3, 2]]);
        let quad = RelOpenCone::open_orthant(2);
        assert_eq!(
            quad.closure_rays().unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn lattice_series_examples() {
        // open half line with weight (e, j) -> p(e, j)
        let half = RelOpenCone::open_orthant(1);
        let s = half.lattice_generating_series(&[(-1, 1)]).unwrap();
        assert_eq!(s, SrSeries::p_term(-1, 1).unwrap());

        // open quadrant with independent weights -> product
        let quad = RelOpenCone::open_orthant(2);
        let s = quad.lattice_generating_series(&[(0, 1), (-2, 3)]).unwrap();
        let expect = SrSeries::p_term(0, 1)
            .unwrap()
            .mul(&SrSeries::p_term(-2, 3).unwrap());
        assert_eq!(s, expect);

        // diagonal ray: weights add up
        let diag = RelOpenCone::new(2, vec![vec![1, -1]], vec![vec![1, 0], vec![0, 1]]);
        let s = diag.lattice_generating_series(&[(-1, 2), (-1, 3)]).unwrap();
        assert_eq!(s, SrSeries::p_term(-2, 5).unwrap());
    }

    #[test]
    fn lattice_series_non_unimodular() {
        // cone spanned by (1,0) and (1,2) has index 2; the subdivision at
        // (1,1) gives three pieces whose limits sum to (+1) as they must
        let c = RelOpenCone::new(2, vec![], vec![vec![0, 1], vec![2, -1]]);
        let s = c.lattice_generating_series(&[(0, 1), (0, 1)]).unwrap();
        assert_eq!(s.limit_t_infinity(), LPoly::one());
        // T-coefficients match a direct lattice count: points with
        // k1 + k2 = n, 0 < k2 < 2 k1
        for n in 1..10u32 {
            let mut count = 0;
            for k1 in 1..=(n as i64) {
                let k2 = n as i64 - k1;
                if k2 > 0 && k2 < 2 * k1 {
                    count += 1;
                }
            }
            assert_eq!(s.coefficient(n), LPoly::from_int(count), "n = {n}");
        }
    }

    #[test]
    fn limit_is_chi_on_random_simplicial_cones() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let g1 = vec![rng.gen_range(1..5), rng.gen_range(0..5)];
            let g2 = vec![rng.gen_range(0..5), rng.gen_range(1..5)];
            // reject dependent pairs
            if g1[0] * g2[1] - g1[1] * g2[0] == 0 {
                continue;
            }
            // the open cone spanned by g1, g2: carve with the dual covectors
            let n1 = vec![g2[1], -g2[0]];
            let n2 = vec![-g1[1], g1[0]];
            let sgn = |v: &Vec<i64>, w: &Vec<i64>| linalg::dot(v, w).signum();
            let s1: Vec<i64> = if sgn(&n1, &g1) > 0 { n1 } else { n1.iter().map(|x| -x).collect() };
            let s2: Vec<i64> = if sgn(&n2, &g2) > 0 { n2 } else { n2.iter().map(|x| -x).collect() };
            let c = RelOpenCone::new(2, vec![], vec![s1, s2]);
            let (nonempty, dim) = c.dim_nonempty();
            assert!(nonempty && dim == 2);
            let s = c.lattice_generating_series(&[(0, 1), (0, 1)]).unwrap();
            assert_eq!(s.limit_t_infinity(), LPoly::from_int(c.chi_compact()));
        }
    }

    #[test]
    fn parse_cone_literal() {
        let (c, names) = RelOpenCone::parse("2a=3b; a>0; b>0", 2).unwrap();
        assert_eq!(names, vec!["a", "b"]);
        assert!(c.contains(&[3, 2]));
        assert!(!c.contains(&[1, 1]));
        let mut names = names;
        let ell = parse_linear_form("a + 2b", &mut names, 2).unwrap();
        assert_eq!(ell, vec![1, 2]);
    }

    #[test]
    fn scaling_map_columns_preserves_preimage_shape() {
        let c = RelOpenCone::new(2, vec![vec![1, -1]], vec![vec![1, 0], vec![0, 1]]);
        let m1 = ConeMap::new(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        let m2 = ConeMap::new(2, vec![vec![4, 0], vec![0, 6]]).unwrap();
        let p1 = c.preimage(&m1).unwrap();
        let p2 = c.preimage(&m2).unwrap();
        assert_eq!(p1.dim_nonempty(), p2.dim_nonempty());
    }
}
