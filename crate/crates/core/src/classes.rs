//! Formal geometric class expressions and their numeric realizations.
//!
//! A `ClassExpr` is a Z[L^(+-1)]-linear combination of atoms of three kinds:
//! torus bundles over labelled strata carrying a monomial map, complements of
//! a quasi-homogeneous hypersurface in a torus, and trivialized nearby
//! classes `G_m x {Q = 0}`. The realizations are the Lefschetz numbers of
//! iterated monodromy (all-or-nothing by a divisibility gate), the factored
//! monodromy zeta function, the Euler characteristic of the nearby fiber, and
//! finite-field point counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::hull;
use crate::linalg;
use crate::lpoly::LPoly;
use crate::nondeg::{self, FaceStatus, Predicate};
use crate::par;
use crate::poly::SparsePoly;
use crate::srseries::SeriesCoeff;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassError {
    #[error("atom `{0}` lacks the data needed for this realization")]
    MissingData(String),
    #[error("Lefschetz realization undefined for a multi-component torus bundle")]
    MultiComponent,
    #[error("hypersurface probe found a degenerate face; chi formula unverified")]
    DegenerateHypersurface,
    #[error("point-count bounds exceeded (rank {rank}, q = {q})")]
    BoundsExceeded { rank: usize, q: u64 },
    #[error("coefficient not reducible mod {q}")]
    BadReduction { q: u64 },
    #[error("inconsistent Lefschetz table (internal error)")]
    InconsistentTable,
}

/// Geometric atom kinds. `rank` is the ambient torus rank. Quasi-homogeneous
/// kinds carry weights `w` and degree `N` with `<w, e> = N` on `supp(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum AtomKind {
    /// Rank-`r` torus bundle over a stratum with Euler characteristic
    /// `base_chi` and optional point-count polynomial in `q`; the attached
    /// map sends fiber coordinates `u` to the monomials with exponent rows
    /// `exponents[j]` (one row per target component).
    TorusBundle {
        base_chi: i64,
        base_count: Option<LPoly>,
        rank: usize,
        exponents: Vec<Vec<u32>>,
    },
    /// `[T^rank minus {Q = 0}]` mapping to the torus by `Q`.
    HypersurfaceComplement {
        rank: usize,
        poly: SparsePoly,
        weights: Vec<i64>,
        degree: i64,
    },
    /// `[G_m x ({Q = 0} in T^rank)]` with the first projection.
    TrivializedNearby {
        rank: usize,
        poly: SparsePoly,
        weights: Vec<i64>,
        degree: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Atom {
    pub label: String,
    pub kind: AtomKind,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.label)
    }
}

/// Normalized Z[L^(+-1)]-combination of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(into = "Vec<ClassTermJson>")]
pub struct ClassExpr {
    terms: BTreeMap<Atom, LPoly>,
}

#[derive(Serialize)]
struct ClassTermJson {
    coeff: LPoly,
    atom: Atom,
}

impl From<ClassExpr> for Vec<ClassTermJson> {
    fn from(c: ClassExpr) -> Self {
        c.terms
            .into_iter()
            .map(|(atom, coeff)| ClassTermJson { coeff, atom })
            .collect()
    }
}

impl ClassExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_atom(atom: Atom) -> Self {
        Self::term(atom, LPoly::one())
    }

    pub fn term(atom: Atom, coeff: LPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(atom, coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &LPoly)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, atom: &Atom) -> LPoly {
        self.terms.get(atom).cloned().unwrap_or_else(LPoly::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    fn add_term(&mut self, atom: Atom, coeff: LPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(atom) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Scalar multiplication by a Laurent polynomial in `L`.
    pub fn scale(&self, s: &LPoly) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.mul(s)))
                .collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&LPoly::from_int(k))
    }
}

impl SeriesCoeff for ClassExpr {
    fn coeff_zero() -> Self {
        Self::zero()
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
        self.scale(&LPoly::l_pow(e))
    }
    fn coeff_mul_int(&self, k: i64) -> Self {
        self.scale_int(k)
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{a}")?;
        }
        Ok(())
    }
}

/// Compactly supported Euler characteristic of `{Q = 0}` inside the rank-`m`
/// torus, by the Newton-polytope volume formula for non-degenerate `Q`:
/// `0` when `conv(supp Q)` is lower-dimensional, else
/// `(-1)^(m-1) m! Vol(conv(supp Q))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiValue {
    pub value: i64,
    /// Worst per-face probe outcome for `Q` with respect to its own polytope.
    pub status: FaceStatus,
}

pub fn chi_torus_hypersurface(q_poly: &SparsePoly, rank: usize) -> ChiValue {
    assert_eq!(q_poly.nvars(), rank, "ambient rank mismatch");
    if q_poly.is_zero() {
        // the zero locus is the whole torus
        return ChiValue {
            value: 0,
            status: FaceStatus::Certified,
        };
    }
    let supp = q_poly.support();
    if linalg::affine_dim(&supp) < rank {
        // a torus factor splits off, so chi_c vanishes regardless of probes
        return ChiValue {
            value: 0,
            status: FaceStatus::Certified,
        };
    }
    let vol = hull::volume(&supp);
    let mut mfact = BigInt::from(1);
    for i in 1..=rank {
        mfact *= BigInt::from(i);
    }
    let scaled = vol * BigRational::from_integer(mfact);
    debug_assert!(scaled.is_integer(), "normalized polytope volume is integral");
    let vol_int = i64::try_from(&scaled.to_integer()).expect("volume fits i64");
    let sign = if (rank - 1) % 2 == 0 { 1 } else { -1 };
    let status = polytope_nondeg_status(q_poly, &supp);
    ChiValue {
        value: sign * vol_int,
        status,
    }
}

/// Probe non-degeneracy of `Q` with respect to every face of its polytope
/// `conv(supp Q)`; the worst face status wins.
fn polytope_nondeg_status(q_poly: &SparsePoly, supp: &[Vec<i64>]) -> FaceStatus {
    let mut worst = FaceStatus::Certified;
    for face in hull::polytope_face_supports(supp) {
        let keep: Vec<Vec<i64>> = face.iter().map(|&i| supp[i].clone()).collect();
        let restricted = SparsePoly::from_terms(
            q_poly.nvars(),
            keep.into_iter().map(|e| {
                let c = q_poly.coeff(&e);
                (e, c)
            }),
        );
        let status = nondeg::probe(&restricted, Predicate::Kouchnirenko);
        worst = worse_status(worst, status);
    }
    worst
}

fn worse_status(a: FaceStatus, b: FaceStatus) -> FaceStatus {
    let rank = |s: &FaceStatus| match s {
        FaceStatus::Certified => 0,
        FaceStatus::Probable { .. } => 1,
        FaceStatus::DegenerateWitness { .. } => 2,
        FaceStatus::DegenerateExact { .. } => 3,
    };
    if rank(&b) > rank(&a) {
        b
    } else {
        a
    }
}

/// Per-atom divisibility data: `Lambda_n(atom) = chi * [d divides n]`.
fn atom_divisibility(atom: &Atom) -> Result<(i64, i64), ClassError> {
    match &atom.kind {
        AtomKind::TorusBundle {
            base_chi,
            rank,
            exponents,
            ..
        } => {
            if exponents.len() != 1 {
                return Err(ClassError::MultiComponent);
            }
            let total: i64 = exponents[0].iter().map(|&x| x as i64).sum();
            if total == 0 {
                return Err(ClassError::MissingData(atom.label.clone()));
            }
            let chi = if *rank >= 2 {
                0
            } else {
                exponents[0][0] as i64 * base_chi
            };
            Ok((total, chi))
        }
        AtomKind::HypersurfaceComplement {
            rank,
            poly,
            weights,
            degree,
        } => {
            let d = gate_period(weights, *degree);
            let one = SparsePoly::constant(*rank, BigRational::from_integer(BigInt::from(1)));
            let chi = checked_chi(&poly.sub(&one), *rank)?;
            Ok((d, chi))
        }
        AtomKind::TrivializedNearby {
            rank,
            poly,
            weights,
            degree,
        } => {
            let d = gate_period(weights, *degree);
            let chi = checked_chi(poly, *rank)?;
            Ok((d, chi))
        }
    }
}

fn checked_chi(q_poly: &SparsePoly, rank: usize) -> Result<i64, ClassError> {
    let chi = chi_torus_hypersurface(q_poly, rank);
    // an exact characteristic-zero witness invalidates the volume formula;
    // an unlifted finite-field witness leaves the value formula-unverified
    // but standing, per the probe's honest status
    if matches!(chi.status, FaceStatus::DegenerateExact { .. }) {
        return Err(ClassError::DegenerateHypersurface);
    }
    Ok(chi.value)
}

/// Smallest `n` for which `N` divides `n * w_i` for every weight; the gate
/// passes exactly on multiples. A degree-0 atom never passes.
fn gate_period(weights: &[i64], degree: i64) -> i64 {
    if degree <= 0 {
        return 0;
    }
    let mut d = 1i64;
    for &w in weights {
        let g = linalg::gcd_i64(degree, w);
        let step = degree / g;
        d = d / linalg::gcd_i64(d, step) * step;
    }
    d
}

/// The Lefschetz number of the n-th monodromy iterate.
pub fn lefschetz_number(c: &ClassExpr, n: i64) -> Result<i64, ClassError> {
    assert!(n >= 1);
    let mut acc = 0i64;
    for (atom, coeff) in c.iter() {
        let (d, chi) = atom_divisibility(atom)?;
        if d > 0 && n % d == 0 {
            acc += coeff.eval_one() * chi;
        }
    }
    Ok(acc)
}

/// Monodromy zeta function as `prod_d (1 - t^d)^(exponent_d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FactoredZeta {
    exponents: BTreeMap<i64, i64>,
}

impl FactoredZeta {
    pub fn exponents(&self) -> &BTreeMap<i64, i64> {
        &self.exponents
    }

    /// Regenerate `Lambda_n = sum_{d | n} d * c_d` with `c_d = -exponent_d`.
    pub fn lambda(&self, n: i64) -> i64 {
        self.exponents
            .iter()
            .filter(|(&d, _)| n % d == 0)
            .map(|(&d, &e)| -d * e)
            .sum()
    }
}

impl fmt::Display for FactoredZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&d, &e) in &self.exponents {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "(1-t^{d})^{e}")?;
        }
        Ok(())
    }
}

/// Global gate period of a class: the lcm of the atom periods.
pub fn class_period(c: &ClassExpr) -> Result<i64, ClassError> {
    let mut period = 1i64;
    for (atom, _) in c.iter() {
        let (d, _) = atom_divisibility(atom)?;
        if d > 0 {
            period = period / linalg::gcd_i64(period, d) * d;
        }
    }
    Ok(period)
}

/// Solve `Lambda_n = sum_{d | n} d c_d` for the integer exponents up to the
/// global period and return the factored zeta function.
pub fn monodromy_zeta(c: &ClassExpr) -> Result<FactoredZeta, ClassError> {
    let period = class_period(c)?;
    let mut cs: BTreeMap<i64, i64> = BTreeMap::new();
    for n in 1..=period {
        let lam = lefschetz_number(c, n)?;
        let partial: i64 = cs
            .iter()
            .filter(|(&d, _)| n % d == 0)
            .map(|(&d, &cd)| d * cd)
            .sum();
        let rem = lam - partial;
        if rem % n != 0 {
            return Err(ClassError::InconsistentTable);
        }
        if rem != 0 {
            cs.insert(n, rem / n);
        }
    }
    Ok(FactoredZeta {
        exponents: cs.iter().map(|(&d, &cd)| (d, -cd)).collect(),
    })
}

/// Euler characteristic of the nearby fiber: the Lefschetz number at the
/// global period.
pub fn euler_fiber(c: &ClassExpr) -> Result<i64, ClassError> {
    let period = class_period(c)?;
    lefschetz_number(c, period)
}

const COUNT_MAX_RANK: usize = 3;
const COUNT_MAX_Q: u64 = 17;

/// Number of torus points of `{Q = 0}` over the field with `q` elements,
/// by brute enumeration.
pub fn count_torus_zeros(q_poly: &SparsePoly, q: u64) -> Result<u64, ClassError> {
    let rank = q_poly.nvars();
    if rank > COUNT_MAX_RANK || q > COUNT_MAX_Q {
        return Err(ClassError::BoundsExceeded { rank, q });
    }
    for (_, c) in q_poly.terms() {
        if crate::poly::ff::coeff_mod(c, q).is_err() {
            return Err(ClassError::BadReduction { q });
        }
    }
    let total = (q - 1).pow(rank as u32);
    let blocks: Vec<u64> = (0..total.div_ceil(1024)).collect();
    let count = par::map_reduce(
        blocks,
        |b| {
            let mut acc = 0u64;
            for idx in b * 1024..((b + 1) * 1024).min(total) {
                let mut i = idx;
                let mut pt = vec![0u64; rank];
                for slot in pt.iter_mut() {
                    *slot = 1 + i % (q - 1);
                    i /= q - 1;
                }
                if q_poly.eval_finite_field(&pt, q).unwrap() == 0 {
                    acc += 1;
                }
            }
            acc
        },
        || 0,
        |a, b| a + b,
    );
    Ok(count)
}

/// Point count of the class over the field with `q` elements, with `L -> q`.
pub fn count_points(c: &ClassExpr, q: u64) -> Result<BigRational, ClassError> {
    let mut acc = BigRational::zero();
    for (atom, coeff) in c.iter() {
        let scalar = coeff.eval_rational(q as i64);
        let atom_count: BigRational = match &atom.kind {
            AtomKind::TorusBundle {
                base_count, rank, ..
            } => {
                let base = base_count
                    .as_ref()
                    .ok_or_else(|| ClassError::MissingData(atom.label.clone()))?;
                let fiber = BigInt::from(q - 1).pow(*rank as u32);
                base.eval_rational(q as i64) * BigRational::from_integer(fiber)
            }
            AtomKind::HypersurfaceComplement { rank, poly, .. } => {
                let torus = BigInt::from(q - 1).pow(*rank as u32);
                let zeros = count_torus_zeros(poly, q)?;
                BigRational::from_integer(torus - BigInt::from(zeros))
            }
            AtomKind::TrivializedNearby { poly, .. } => {
                let zeros = count_torus_zeros(poly, q)?;
                BigRational::from_integer(BigInt::from(q - 1) * BigInt::from(zeros))
            }
        };
        acc += scalar * atom_count;
    }
    Ok(acc)
}

/// Convenience constructors used by the resolution and composition engines.
impl Atom {
    pub fn torus_bundle(
        label: impl Into<String>,
        base_chi: i64,
        base_count: Option<LPoly>,
        exponents: Vec<Vec<u32>>,
    ) -> Self {
        let rank = exponents.first().map_or(0, |r| r.len());
        Atom {
            label: label.into(),
            kind: AtomKind::TorusBundle {
                base_chi,
                base_count,
                rank,
                exponents,
            },
        }
    }

    pub fn hypersurface_complement(
        label: impl Into<String>,
        poly: SparsePoly,
        weights: Vec<i64>,
        degree: i64,
    ) -> Self {
        Atom {
            label: label.into(),
            kind: AtomKind::HypersurfaceComplement {
                rank: poly.nvars(),
                poly,
                weights,
                degree,
            },
        }
    }

    pub fn trivialized_nearby(
        label: impl Into<String>,
        poly: SparsePoly,
        weights: Vec<i64>,
        degree: i64,
    ) -> Self {
        Atom {
            label: label.into(),
            kind: AtomKind::TrivializedNearby {
                rank: poly.nvars(),
                poly,
                weights,
                degree,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, vars: &[&str]) -> SparsePoly {
        SparsePoly::parse(s, vars).unwrap()
    }

    fn cusp_hyp_atom() -> Atom {
        Atom::hypersurface_complement("t", poly("x^2 + y^3", &["x", "y"]), vec![3, 2], 6)
    }

    #[test]
    fn class_arith() {
        let a = ClassExpr::from_atom(cusp_hyp_atom());
        let two = a.add(&a);
        assert_eq!(two.coeff_of(&cusp_hyp_atom()), LPoly::from_int(2));
        let minus_l = a.neg().scale(&LPoly::l_pow(1));
        assert_eq!(
            minus_l.coeff_of(&cusp_hyp_atom()),
            LPoly::l_pow(1).mul_int(-1)
        );
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn chi_examples() {
        // line in the torus: P^1 minus three points
        assert_eq!(
            chi_torus_hypersurface(&poly("x + y - 1", &["x", "y"]), 2).value,
            -1
        );
        // two points
        assert_eq!(chi_torus_hypersurface(&poly("x^2 - 1", &["x"]), 1).value, 2);
        // affine cusp curve section: elliptic minus one point at infinity
        // minus the five coordinate-axis points
        assert_eq!(
            chi_torus_hypersurface(&poly("x^2 + y^3 - 1", &["x", "y"]), 2).value,
            -6
        );
        // degenerate direction: conv(supp) is a segment
        assert_eq!(
            chi_torus_hypersurface(&poly("x^2 + y^3", &["x", "y"]), 2).value,
            0
        );
    }

    #[test]
    fn lefschetz_gate_examples() {
        let c = ClassExpr::from_atom(cusp_hyp_atom());
        assert_eq!(lefschetz_number(&c, 6).unwrap(), -6);
        assert_eq!(lefschetz_number(&c, 2).unwrap(), 0); // 6 divides 6 but not 4
        assert_eq!(lefschetz_number(&c, 3).unwrap(), 0);

        let t = ClassExpr::from_atom(Atom::trivialized_nearby(
            "t",
            poly("x^2 + y^3", &["x", "y"]),
            vec![3, 2],
            6,
        ));
        for n in 1..=12 {
            assert_eq!(lefschetz_number(&t, n).unwrap(), 0);
        }
    }

    #[test]
    fn zeta_from_cusp_table() {
        // assemble atoms realizing Lambda = (0,2,3,2,0,-1): three gates
        let a2 = ClassExpr::from_atom(Atom::torus_bundle(
            "a",
            1,
            Some(LPoly::one()),
            vec![vec![2]],
        ));
        let a3 = ClassExpr::from_atom(Atom::torus_bundle(
            "b",
            1,
            Some(LPoly::one()),
            vec![vec![3]],
        ));
        let a6 = ClassExpr::from_atom(cusp_hyp_atom());
        let total = a2.add(&a3).add(&a6);
        let lam: Vec<i64> = (1..=6)
            .map(|n| lefschetz_number(&total, n).unwrap())
            .collect();
        assert_eq!(lam, vec![0, 2, 3, 2, 0, -1]);
        let zeta = monodromy_zeta(&total).unwrap();
        let expect: BTreeMap<i64, i64> = [(2, -1), (3, -1), (6, 1)].into();
        assert_eq!(zeta.exponents(), &expect);
        assert_eq!(zeta.to_string(), "(1-t^2)^-1*(1-t^3)^-1*(1-t^6)^1");
        // round trip
        for n in 1..=12 {
            assert_eq!(zeta.lambda(n), lefschetz_number(&total, n).unwrap());
        }
        assert_eq!(euler_fiber(&total).unwrap(), -1);
    }

    #[test]
    fn zeta_of_constant_tables() {
        // Lambda = 1 for all n: a smooth point
        let pt = ClassExpr::from_atom(Atom::torus_bundle(
            "pt",
            1,
            Some(LPoly::one()),
            vec![vec![1]],
        ));
        let zeta = monodromy_zeta(&pt).unwrap();
        assert_eq!(zeta.to_string(), "(1-t^1)^-1");
        // Lambda = 0: trivial zeta
        let zeta = monodromy_zeta(&ClassExpr::zero()).unwrap();
        assert_eq!(zeta.to_string(), "1");
    }

    #[test]
    fn count_examples() {
        let bundle = ClassExpr::from_atom(Atom::torus_bundle(
            "pt",
            1,
            Some(LPoly::one()),
            vec![vec![1, 0], vec![0, 1]],
        ));
        assert_eq!(
            count_points(&bundle, 3).unwrap(),
            BigRational::from_integer(4.into())
        );

        let hyp = ClassExpr::from_atom(Atom::hypersurface_complement(
            "h",
            poly("x + y", &["x", "y"]),
            vec![1, 1],
            1,
        ));
        // (3-1)^2 - #{x + y = 0, torus} = 4 - 2
        assert_eq!(
            count_points(&hyp, 3).unwrap(),
            BigRational::from_integer(2.into())
        );

        let l_pt = ClassExpr::term(
            Atom::torus_bundle("pt", 1, Some(LPoly::one()), vec![vec![1]]),
            LPoly::l_pow(1),
        );
        // L * [G_m-bundle over a point] at q = 5: 5 * 4
        assert_eq!(
            count_points(&l_pt, 5).unwrap(),
            BigRational::from_integer(20.into())
        );
    }

    #[test]
    fn divisibility_property_exhaustive() {
        let atoms = vec![
            cusp_hyp_atom(),
            Atom::torus_bundle("a", -1, Some(LPoly::from_int(-1)), vec![vec![4]]),
            Atom::trivialized_nearby("t", poly("x + y", &["x", "y"]), vec![1, 1], 1),
        ];
        for atom in atoms {
            let (d, chi) = atom_divisibility(&atom).unwrap();
            let c = ClassExpr::from_atom(atom);
            for n in 1..=(2 * d.max(1)) {
                let expect = if d > 0 && n % d == 0 { chi } else { 0 };
                assert_eq!(lefschetz_number(&c, n).unwrap(), expect);
            }
        }
    }
}
