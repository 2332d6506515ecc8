//! Combinatorial log-resolution data and the zeta/nearby-cycle engine built
//! on it: the rational zeta series, its limit class, and the cone-truncated
//! variants.
//!
//! A datum records, for each divisor, the multiplicity vector of the `p`
//! functions and the discrepancy weight, and for each nonempty divisor subset
//! the Euler characteristic (and optionally a point-count polynomial) of the
//! open stratum, plus whether the stratum sits over the common zero locus.
//! Subsets not listed are empty strata. The artifact never computes
//! resolutions; data are inputs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::{Atom, ClassExpr};
use crate::cones::{ConeError, ConeMap, RelOpenCone};
use crate::linalg;
use crate::lpoly::LPoly;
use crate::srseries::{SeriesError, SrSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("datum validation failed: {0}")]
    Invalid(String),
    #[error("divisor `{divisor}` has zero multiplicity for the selected function")]
    ZeroMultiplicity { divisor: String },
    #[error("admissible linear form must be positive on the cone closure; ray {ray:?} gives {value}")]
    InadmissibleEll { ray: Vec<i64>, value: i64 },
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    pub id: String,
    /// Multiplicities of the `p` functions along the divisor.
    #[serde(rename = "N")]
    pub n: Vec<u32>,
    pub nu: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    /// Divisor ids cutting out the stratum.
    #[serde(rename = "I")]
    pub i_set: Vec<String>,
    pub chi: i64,
    /// Point-count polynomial in `q`, low-to-high coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count_poly: Option<Vec<i64>>,
    #[serde(rename = "over_X0")]
    pub over_x0: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDatum {
    /// Number of functions tracked by the multiplicity vectors.
    pub p: usize,
    /// Ambient dimension (used by consumers for jet-count normalization).
    pub dim: usize,
    pub divisors: Vec<Divisor>,
    pub strata: Vec<StratumRecord>,
}

/// A datum together with the restricted data used when some of the functions
/// are set to zero: the key lists the (0-based) indices of the killed
/// functions, and the value is a datum for the remaining ones on that locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionFamily {
    #[serde(flatten)]
    pub main: ResolutionDatum,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub restrictions: Vec<RestrictionRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionRecord {
    #[serde(rename = "J")]
    pub j_set: Vec<usize>,
    pub datum: ResolutionDatum,
}

/// Which function the single-variable zeta is taken for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuncSel {
    Single(usize),
    /// The product of all functions.
    Total,
}

impl ResolutionDatum {
    pub fn validate(&self) -> Result<(), ResolutionError> {
        let ids: BTreeSet<&str> = self.divisors.iter().map(|d| d.id.as_str()).collect();
        if ids.len() != self.divisors.len() {
            return Err(ResolutionError::Invalid("duplicate divisor id".into()));
        }
        for d in &self.divisors {
            if d.n.len() != self.p {
                return Err(ResolutionError::Invalid(format!(
                    "divisor `{}` has {} multiplicities, expected {}",
                    d.id,
                    d.n.len(),
                    self.p
                )));
            }
            if d.nu < 1 {
                return Err(ResolutionError::Invalid(format!(
                    "divisor `{}` has nu = 0",
                    d.id
                )));
            }
            if d.n.iter().all(|&x| x == 0) {
                return Err(ResolutionError::Invalid(format!(
                    "divisor `{}` has zero multiplicity vector",
                    d.id
                )));
            }
        }
        for s in &self.strata {
            if s.i_set.is_empty() {
                return Err(ResolutionError::Invalid("empty stratum subset".into()));
            }
            for id in &s.i_set {
                if !ids.contains(id.as_str()) {
                    return Err(ResolutionError::Invalid(format!(
                        "stratum references unknown divisor `{id}`"
                    )));
                }
            }
            if let Some(cp) = &s.count_poly {
                let at_one: i64 = cp.iter().sum();
                if at_one != s.chi {
                    return Err(ResolutionError::Invalid(format!(
                        "stratum {:?}: count_poly(1) = {} but chi = {}",
                        s.i_set, at_one, s.chi
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, ResolutionError> {
        let datum: ResolutionDatum = serde_json::from_str(text)
            .map_err(|e| ResolutionError::Invalid(e.to_string()))?;
        datum.validate()?;
        Ok(datum)
    }

    fn divisor_index(&self, id: &str) -> usize {
        self.divisors
            .iter()
            .position(|d| d.id == id)
            .expect("validated divisor id")
    }

    /// Strata as (sorted divisor indices, record).
    fn strata_by_index(&self) -> Vec<(Vec<usize>, &StratumRecord)> {
        let mut out: Vec<(Vec<usize>, &StratumRecord)> = self
            .strata
            .iter()
            .map(|s| {
                let mut idx: Vec<usize> =
                    s.i_set.iter().map(|id| self.divisor_index(id)).collect();
                idx.sort_unstable();
                (idx, s)
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Multiplicity of the selected function along divisor `i`.
    fn mult(&self, i: usize, which: FuncSel) -> u32 {
        match which {
            FuncSel::Single(j) => self.divisors[i].n[j],
            FuncSel::Total => self.divisors[i].n.iter().sum(),
        }
    }

    /// The torus-bundle class of the stratum with the monomial map data of
    /// the selected function(s): one exponent row per tracked component.
    fn stratum_atom(&self, idx: &[usize], rec: &StratumRecord, which: Option<FuncSel>) -> Atom {
        let exponents: Vec<Vec<u32>> = match which {
            Some(FuncSel::Single(j)) => {
                vec![idx.iter().map(|&i| self.divisors[i].n[j]).collect()]
            }
            Some(FuncSel::Total) => {
                vec![idx
                    .iter()
                    .map(|&i| self.divisors[i].n.iter().sum())
                    .collect()]
            }
            None => (0..self.p)
                .map(|j| idx.iter().map(|&i| self.divisors[i].n[j]).collect())
                .collect(),
        };
        let label = format!(
            "U{{{}}}",
            idx.iter()
                .map(|&i| self.divisors[i].id.clone())
                .collect::<Vec<_>>()
                .join(",")
        );
        Atom::torus_bundle(
            label,
            rec.chi,
            rec.count_poly.as_deref().map(LPoly::from_coeff_list),
            exponents,
        )
    }
}

/// The rational zeta series on the resolution: the sum over nonempty divisor
/// subsets of the stratum class times the product of `p(-nu_i, N_i)`.
pub fn zeta_series(
    r: &ResolutionDatum,
    which: FuncSel,
) -> Result<SrSeries<ClassExpr>, ResolutionError> {
    let mut acc: SrSeries<ClassExpr> = SrSeries::zero();
    for (idx, rec) in r.strata_by_index() {
        let mut factor: SrSeries<LPoly> = SrSeries::one();
        for &i in &idx {
            let n = r.mult(i, which);
            if n == 0 {
                return Err(ResolutionError::ZeroMultiplicity {
                    divisor: r.divisors[i].id.clone(),
                });
            }
            factor = factor.mul(&SrSeries::from_resolution_factor(n, r.divisors[i].nu)?);
        }
        let atom = ClassExpr::from_atom(r.stratum_atom(&idx, rec, Some(which)));
        acc = acc.add(&factor.map_coeff(|c| atom.scale(c)));
    }
    Ok(acc)
}

/// The nearby-cycle class: minus the limit of the zeta series, evaluated
/// directly on the resolution (subsets of odd size enter with `+`).
pub fn nearby_cycles(r: &ResolutionDatum, which: FuncSel) -> Result<ClassExpr, ResolutionError> {
    let mut acc = ClassExpr::zero();
    for (idx, rec) in r.strata_by_index() {
        for &i in &idx {
            if r.mult(i, which) == 0 {
                return Err(ResolutionError::ZeroMultiplicity {
                    divisor: r.divisors[i].id.clone(),
                });
            }
        }
        let sign = if idx.len() % 2 == 1 { 1 } else { -1 };
        let atom = ClassExpr::from_atom(r.stratum_atom(&idx, rec, Some(which)));
        acc = acc.add(&atom.scale_int(sign));
    }
    Ok(acc)
}

fn check_ell(c: &RelOpenCone, ell: &[i64]) -> Result<(), ResolutionError> {
    // contact orders are positive, so positivity is required on the part of
    // the closure inside the nonnegative orthant
    let p = c.ambient_dim();
    let mut stricts = c.strict_inequalities().to_vec();
    for i in 0..p {
        let mut row = vec![0; p];
        row[i] = 1;
        stricts.push(row);
    }
    let clamped = RelOpenCone::new(p, c.equalities().to_vec(), stricts);
    for ray in clamped.closure_rays()? {
        let value = linalg::dot(ell, &ray);
        if value <= 0 {
            return Err(ResolutionError::InadmissibleEll { ray, value });
        }
    }
    Ok(())
}

fn cone_map_for(r: &ResolutionDatum, idx: &[usize]) -> Result<ConeMap, ResolutionError> {
    let columns: Vec<Vec<i64>> = idx
        .iter()
        .map(|&i| r.divisors[i].n.iter().map(|&x| x as i64).collect())
        .collect();
    Ok(ConeMap::new(r.p, columns)?)
}

/// The cone-truncated zeta series: contact orders of the `p` functions are
/// constrained to the cone `C`, and the series variable is `T^{ell(n)}`.
/// `restrict` keeps only strata over the common zero locus.
pub fn truncated_zeta(
    r: &ResolutionDatum,
    c: &RelOpenCone,
    ell: &[i64],
    restrict: bool,
) -> Result<SrSeries<ClassExpr>, ResolutionError> {
    assert_eq!(ell.len(), r.p);
    check_ell(c, ell)?;
    let mut acc: SrSeries<ClassExpr> = SrSeries::zero();
    for (idx, rec) in r.strata_by_index() {
        if restrict && !rec.over_x0 {
            continue;
        }
        let map = cone_map_for(r, &idx)?;
        let pre = c.preimage(&map)?;
        let weights: Vec<(i64, i64)> = idx
            .iter()
            .map(|&i| {
                let n_vec: Vec<i64> = r.divisors[i].n.iter().map(|&x| x as i64).collect();
                (-(r.divisors[i].nu as i64), linalg::dot(ell, &n_vec))
            })
            .collect();
        let series = pre.lattice_generating_series(&weights)?;
        if series.is_zero() {
            continue;
        }
        let atom = ClassExpr::from_atom(r.stratum_atom(&idx, rec, None));
        acc = acc.add(&series.map_coeff(|k| atom.scale(k)));
    }
    Ok(acc)
}

/// The limit of the truncated zeta series, computed by the Euler
/// characteristic shortcut: the sum over subsets of
/// `chi_c(preimage cone) * [stratum class]`. Independent of the linear form.
pub fn truncated_nearby(
    r: &ResolutionDatum,
    c: &RelOpenCone,
    restrict: bool,
) -> Result<ClassExpr, ResolutionError> {
    Ok(truncated_nearby_with_chi(r, c, restrict)?.0)
}

/// Same as [`truncated_nearby`], also reporting the sum of the nonzero cone
/// Euler characteristics that entered.
pub fn truncated_nearby_with_chi(
    r: &ResolutionDatum,
    c: &RelOpenCone,
    restrict: bool,
) -> Result<(ClassExpr, i64), ResolutionError> {
    let mut acc = ClassExpr::zero();
    let mut chi_sum = 0i64;
    for (idx, rec) in r.strata_by_index() {
        if restrict && !rec.over_x0 {
            continue;
        }
        let map = cone_map_for(r, &idx)?;
        let chi = c.preimage(&map)?.chi_compact();
        if chi == 0 {
            continue;
        }
        chi_sum += chi;
        let atom = ClassExpr::from_atom(r.stratum_atom(&idx, rec, None));
        acc = acc.add(&atom.scale_int(chi));
    }
    Ok((acc, chi_sum))
}

impl ResolutionFamily {
    pub fn from_json(text: &str) -> Result<Self, ResolutionError> {
        let fam: ResolutionFamily = serde_json::from_str(text)
            .map_err(|e| ResolutionError::Invalid(e.to_string()))?;
        fam.validate()?;
        Ok(fam)
    }

    pub fn from_datum(main: ResolutionDatum) -> Self {
        Self {
            main,
            restrictions: vec![],
        }
    }

    pub fn validate(&self) -> Result<(), ResolutionError> {
        self.main.validate()?;
        for r in &self.restrictions {
            r.datum.validate()?;
            let killed: BTreeSet<usize> = r.j_set.iter().copied().collect();
            if killed.iter().any(|&j| j >= self.main.p) {
                return Err(ResolutionError::Invalid(format!(
                    "restriction key {:?} exceeds p = {}",
                    r.j_set, self.main.p
                )));
            }
            if r.datum.p + killed.len() != self.main.p {
                return Err(ResolutionError::Invalid(format!(
                    "restriction {:?} tracks {} functions, expected {}",
                    r.j_set,
                    r.datum.p,
                    self.main.p - killed.len()
                )));
            }
        }
        Ok(())
    }

    /// The datum for the functions left after killing those in `j_set`.
    pub fn restriction(&self, j_set: &BTreeSet<usize>) -> Option<&ResolutionDatum> {
        if j_set.is_empty() {
            return Some(&self.main);
        }
        self.restrictions
            .iter()
            .find(|r| {
                let key: BTreeSet<usize> = r.j_set.iter().copied().collect();
                key == *j_set
            })
            .map(|r| &r.datum)
    }
}

/// Stable JSON rendering helper used by reports.
pub fn strata_summary(r: &ResolutionDatum) -> Vec<(Vec<String>, i64, bool)> {
    r.strata_by_index()
        .into_iter()
        .map(|(idx, rec)| {
            (
                idx.iter().map(|&i| r.divisors[i].id.clone()).collect(),
                rec.chi,
                rec.over_x0,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{lefschetz_number, AtomKind};
    use crate::fixtures;
    use crate::srseries::SeriesCoeff;

    #[test]
    fn zeta_of_line_fixture() {
        let line = fixtures::line();
        let z = zeta_series(&line, FuncSel::Single(0)).unwrap();
        assert_eq!(z.num_terms(), 1);
        assert_eq!(z.terms()[0].factors, vec![(-1, 1)]);
        let s = nearby_cycles(&line, FuncSel::Single(0)).unwrap();
        assert_eq!(s.num_terms(), 1);
        let limit = z.limit_t_infinity();
        assert_eq!(limit.coeff_neg(), s);
    }

    #[test]
    fn cusp_zeta_has_seven_terms() {
        let cusp = fixtures::cusp();
        let z = zeta_series(&cusp, FuncSel::Single(0)).unwrap();
        assert_eq!(z.num_terms(), 7);
        let s = nearby_cycles(&cusp, FuncSel::Single(0)).unwrap();
        // singletons +, pairs -
        assert_eq!(s.num_terms(), 7);
        let mut plus = 0;
        let mut minus = 0;
        for (_, c) in s.iter() {
            match c.eval_one() {
                1 => plus += 1,
                -1 => minus += 1,
                other => panic!("unexpected coefficient {other}"),
            }
        }
        assert_eq!((plus, minus), (4, 3));
        assert_eq!(z.limit_t_infinity().coeff_neg(), s);
    }

    #[test]
    fn acampo_lambda_from_cusp_fixture() {
        let cusp = fixtures::cusp();
        let s = nearby_cycles(&cusp, FuncSel::Single(0)).unwrap();
        let lam: Vec<i64> = (1..=6).map(|n| lefschetz_number(&s, n).unwrap()).collect();
        assert_eq!(lam, vec![0, 2, 3, 2, 0, -1]);
        // direct A'Campo sums
        for n in 1..=12i64 {
            let expect: i64 = [(1u32, 0i64), (2, 1), (3, 1), (6, -1)]
                .iter()
                .filter(|(ni, _)| n % (*ni as i64) == 0)
                .map(|(ni, chi)| *ni as i64 * chi)
                .sum();
            assert_eq!(lefschetz_number(&s, n).unwrap(), expect);
        }
    }

    #[test]
    fn truncated_diagonal_ray_of_squares_cubes() {
        let fam = fixtures::pair_product(2, 3);
        let r = &fam.main;
        let diag = RelOpenCone::new(2, vec![vec![1, -1]], vec![vec![1, 0], vec![0, 1]]);
        let ell = vec![1i64, 1];
        let z = truncated_zeta(r, &diag, &ell, false).unwrap();
        // single term p(-5, 12) carried by the double stratum
        assert_eq!(z.num_terms(), 1);
        assert_eq!(z.terms()[0].factors, vec![(-5, 12)]);
        let s = truncated_nearby(r, &diag, false).unwrap();
        assert_eq!(z.limit_t_infinity(), s);
        // -[U12]
        let (atom, coeff) = s.iter().next().unwrap();
        assert!(matches!(atom.kind, AtomKind::TorusBundle { rank: 2, .. }));
        assert_eq!(coeff.eval_one(), -1);
        assert_eq!(s.num_terms(), 1);

        // a different admissible linear form changes the series but not the limit
        let ell2 = vec![2i64, 3];
        let z2 = truncated_zeta(r, &diag, &ell2, false).unwrap();
        assert_eq!(z2.terms()[0].factors, vec![(-5, 30)]);
        assert_eq!(z2.limit_t_infinity(), s);
    }

    #[test]
    fn truncated_orthant_coordinates() {
        let coords = fixtures::coordinates(2);
        let c = RelOpenCone::open_orthant(2);
        let ell = vec![1i64, 1];
        let z = truncated_zeta(&coords, &c, &ell, false).unwrap();
        let s = truncated_nearby(&coords, &c, false).unwrap();
        assert_eq!(z.limit_t_infinity(), s);
        // only the double subset has a nonempty preimage; chi = +1
        assert_eq!(s.num_terms(), 1);
        let (_, coeff) = s.iter().next().unwrap();
        assert_eq!(coeff.eval_one(), 1);

        // the unconstrained variant also pulls in the two singleton strata
        let all = RelOpenCone::unconstrained(2);
        let z_all = truncated_zeta(&coords, &all, &ell, false).unwrap();
        let s_all = truncated_nearby(&coords, &all, false).unwrap();
        assert_eq!(z_all.limit_t_infinity(), s_all);
        assert_eq!(s_all.num_terms(), 3);
        // restricting over the common zero locus drops the singletons
        let s_restr = truncated_nearby(&coords, &all, true).unwrap();
        assert_eq!(s_restr.num_terms(), 1);
    }

    #[test]
    fn inadmissible_ell_rejected() {
        let coords = fixtures::coordinates(2);
        let c = RelOpenCone::open_orthant(2);
        let err = truncated_zeta(&coords, &c, &[1, 0], false).unwrap_err();
        assert!(matches!(err, ResolutionError::InadmissibleEll { .. }));
    }

    #[test]
    fn empty_cone_gives_zero() {
        let coords = fixtures::coordinates(2);
        let empty = RelOpenCone::new(2, vec![], vec![vec![1, 0], vec![-1, 0]]);
        assert!(truncated_nearby(&coords, &empty, false).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let fam = fixtures::pair_product(2, 3);
        let text = serde_json::to_string_pretty(&fam).unwrap();
        let back = ResolutionFamily::from_json(&text).unwrap();
        assert_eq!(fam, back);
    }

    #[test]
    fn validation_catches_bad_count_poly() {
        let mut cusp = fixtures::cusp();
        cusp.strata[0].count_poly = Some(vec![5]);
        let text = serde_json::to_string(&cusp).unwrap();
        assert!(ResolutionDatum::from_json(&text).is_err());
    }
}
