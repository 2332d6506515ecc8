//! Face decomposition of the nearby cycles of a composition: apply the
//! convolution operator of each compact face polynomial to the cone-truncated
//! nearby class of the inner functions, and sum over the coordinate subsets.
//!
//! The inner functions are either the coordinate functions on affine space or
//! user-supplied resolution data (a family carrying the restricted data for
//! each killed-variable subset).

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::classes::{
    self, Atom, AtomKind, ClassExpr, ClassError, FactoredZeta,
};
use crate::fixtures;
use crate::lpoly::LPoly;
use crate::newton::{self, NewtonError};
use crate::nondeg::{self, Predicate};
use crate::poly::{PolyError, SparsePoly};
use crate::resolution::{self, ResolutionDatum, ResolutionError, ResolutionFamily};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposerError {
    #[error("face polynomial is degenerate; convolution refused")]
    DegenerateFace,
    #[error("convolution applies to torus-bundle atoms only")]
    NonTorusAtom,
    #[error("atom map arity {got} does not match the face polynomial arity {want}")]
    ArityMismatch { got: usize, want: usize },
    #[error("no resolution datum supplied for the killed-variable set {0:?}")]
    MissingRestriction(Vec<usize>),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// The inner-function specification.
#[derive(Clone, Copy, Debug)]
pub enum FSpec<'a> {
    /// The coordinate functions on affine space.
    Coordinates,
    /// User-supplied resolution data with restrictions.
    Resolution(&'a ResolutionFamily),
}

/// One face contribution: the killed-variable set, the face (vertices in the
/// original coordinates), the sum of cone Euler characteristics used, and the
/// resulting class.
#[derive(Clone, Debug, Serialize)]
pub struct FaceContribution {
    #[serde(rename = "J")]
    pub j_set: Vec<usize>,
    #[serde(rename = "face")]
    pub face_vertices: Vec<Vec<i64>>,
    pub face_dim: usize,
    pub coefficient: i64,
    pub atoms: ClassExpr,
}

/// Apply the convolution operator of a quasi-homogeneous face polynomial to
/// a class of torus-bundle atoms: each atom `[A]` with monomial map `f`
/// becomes `-[A minus Q^{-1}(0)] - [G_m x Q^{-1}(0)]` with `Q` the face
/// polynomial composed with the map. Base stratum data folds into the
/// coefficients (the count polynomial when present, else the Euler
/// characteristic).
pub fn psi_face_apply(p_delta: &SparsePoly, c: &ClassExpr) -> Result<ClassExpr, ComposerError> {
    if nondeg::probe(p_delta, Predicate::Strong).is_degenerate() {
        return Err(ComposerError::DegenerateFace);
    }
    let mut out = ClassExpr::zero();
    for (atom, coeff) in c.iter() {
        let AtomKind::TorusBundle {
            base_chi,
            base_count,
            rank: _,
            exponents,
        } = &atom.kind
        else {
            return Err(ComposerError::NonTorusAtom);
        };
        if exponents.len() != p_delta.nvars() {
            return Err(ComposerError::ArityMismatch {
                got: exponents.len(),
                want: p_delta.nvars(),
            });
        }
        let q_poly = p_delta.compose_monomials(exponents)?;
        let base = base_count
            .clone()
            .unwrap_or_else(|| LPoly::from_int(*base_chi));
        let scalar = coeff.mul(&base).neg();

        if !q_poly.is_zero() {
            let (weights, degree) = q_poly.quasi_degree()?;
            out = out.add(&ClassExpr::term(
                Atom::hypersurface_complement(
                    format!("{}:compl", atom.label),
                    q_poly.clone(),
                    weights.clone(),
                    degree,
                ),
                scalar.clone(),
            ));
            // a single monomial has no torus zeros: the nearby part vanishes
            if q_poly.num_terms() > 1 {
                out = out.add(&ClassExpr::term(
                    Atom::trivialized_nearby(
                        format!("{}:triv", atom.label),
                        q_poly,
                        weights,
                        degree,
                    ),
                    scalar,
                ));
            }
        } else {
            // Q = 0: the complement part is empty, the nearby part is the
            // whole torus
            let rank = exponents.first().map_or(0, |r| r.len());
            out = out.add(&ClassExpr::term(
                Atom::trivialized_nearby(
                    format!("{}:triv", atom.label),
                    SparsePoly::zero(rank),
                    vec![1; rank],
                    0,
                ),
                scalar,
            ));
        }
    }
    Ok(out)
}

fn datum_for<'a>(
    fspec: &'a FSpec<'a>,
    j_set: &BTreeSet<usize>,
    remaining: usize,
    coord_cache: &'a mut Option<ResolutionDatum>,
) -> Result<&'a ResolutionDatum, ComposerError> {
    match fspec {
        FSpec::Coordinates => {
            *coord_cache = Some(fixtures::coordinates(remaining));
            Ok(coord_cache.as_ref().unwrap())
        }
        FSpec::Resolution(family) => family
            .restriction(j_set)
            .ok_or_else(|| ComposerError::MissingRestriction(j_set.iter().copied().collect())),
    }
}

/// Contributions of the faces away from every coordinate hyperplane: for each
/// such face, the convolution of its polynomial applied to the truncated
/// nearby class of the inner functions on the face's dual cone, restricted
/// over the common zero locus.
pub fn nearby_open_part(
    p: &SparsePoly,
    fspec: &FSpec<'_>,
) -> Result<Vec<FaceContribution>, ComposerError> {
    nearby_open_part_inner(p, fspec, &BTreeSet::new())
}

fn nearby_open_part_inner(
    p: &SparsePoly,
    fspec: &FSpec<'_>,
    j_set: &BTreeSet<usize>,
) -> Result<Vec<FaceContribution>, ComposerError> {
    let nvars = p.nvars();
    let gamma = newton::build_polyhedron(&p.support())?;
    let mut coord_cache = None;
    let datum = datum_for(fspec, j_set, nvars, &mut coord_cache)?;
    let mut out = Vec::new();
    for face in gamma.compact_faces() {
        if !face.j_set.is_empty() {
            continue;
        }
        let p_delta = newton::face_restriction(p, face)?;
        let (truncated, chi_sum) =
            resolution::truncated_nearby_with_chi(datum, &face.dual_cone, true)?;
        let atoms = psi_face_apply(&p_delta, &truncated)?;
        out.push(FaceContribution {
            j_set: j_set.iter().copied().collect(),
            face_vertices: embed_vertices(&face.vertices, j_set, nvars),
            face_dim: face.dim,
            coefficient: chi_sum,
            atoms,
        });
    }
    Ok(out)
}

/// Re-insert zero coordinates for the killed variables so faces are reported
/// in the original exponent space.
fn embed_vertices(
    vertices: &[Vec<i64>],
    j_set: &BTreeSet<usize>,
    remaining: usize,
) -> Vec<Vec<i64>> {
    let total = remaining + j_set.len();
    let keep: Vec<usize> = (0..total).filter(|i| !j_set.contains(i)).collect();
    vertices
        .iter()
        .map(|v| {
            let mut full = vec![0i64; total];
            for (slot, &value) in keep.iter().zip(v) {
                full[*slot] = value;
            }
            full
        })
        .collect()
}

/// The full face decomposition: the union over killed-variable subsets `J` of
/// the open-part contributions of the polynomial with those variables set to
/// zero, paired with the restricted inner functions. A restriction whose
/// polynomial vanishes contributes nothing.
pub fn nearby_total(
    p: &SparsePoly,
    fspec: &FSpec<'_>,
) -> Result<Vec<FaceContribution>, ComposerError> {
    let nvars = p.nvars();
    let mut out = Vec::new();
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << nvars))
        .map(|mask| (0..nvars).filter(|j| mask & (1 << j) != 0).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    for subset in subsets {
        if subset.len() == nvars {
            continue; // no variables left
        }
        let j_set: BTreeSet<usize> = subset.iter().copied().collect();
        let p_j = p.set_vars_to_zero(&subset);
        if p_j.is_zero() {
            continue;
        }
        out.extend(nearby_open_part_inner(&p_j, fspec, &j_set)?);
    }
    Ok(out)
}

/// Everything the CLI and the verification suites need in one shot.
#[derive(Clone, Debug, Serialize)]
pub struct NearbyReport {
    pub contributions: Vec<FaceContribution>,
    pub lambda_table: Vec<i64>,
    pub zeta: String,
    pub euler_fiber: i64,
    pub total: ClassExpr,
}

pub fn nearby_report(
    p: &SparsePoly,
    fspec: &FSpec<'_>,
    min_table: usize,
) -> Result<NearbyReport, ComposerError> {
    let contributions = nearby_total(p, fspec)?;
    let mut total = ClassExpr::zero();
    for c in &contributions {
        total = total.add(&c.atoms);
    }
    let period = classes::class_period(&total)?;
    let table_len = (period as usize).max(min_table).max(1);
    let lambda_table = (1..=table_len as i64)
        .map(|n| classes::lefschetz_number(&total, n))
        .collect::<Result<Vec<_>, _>>()?;
    let zeta = classes::monodromy_zeta(&total)?;
    let euler = classes::euler_fiber(&total)?;
    Ok(NearbyReport {
        contributions,
        lambda_table,
        zeta: zeta.to_string(),
        euler_fiber: euler,
        total,
    })
}

pub fn zeta_factored(total: &ClassExpr) -> Result<FactoredZeta, ComposerError> {
    Ok(classes::monodromy_zeta(total)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::lefschetz_number;

    fn poly(s: &str, vars: &[&str]) -> SparsePoly {
        SparsePoly::parse(s, vars).unwrap()
    }

    fn lambda_table(contribs: &[FaceContribution], up_to: i64) -> Vec<i64> {
        let mut total = ClassExpr::zero();
        for c in contribs {
            total = total.add(&c.atoms);
        }
        (1..=up_to)
            .map(|n| lefschetz_number(&total, n).unwrap())
            .collect()
    }

    #[test]
    fn psi_on_identity_torus() {
        // face polynomial y1 y2 on the identity torus: only the complement
        // part survives
        let p = poly("y1*y2", &["y1", "y2"]);
        let torus = ClassExpr::from_atom(Atom::torus_bundle(
            "T",
            1,
            Some(LPoly::one()),
            vec![vec![1, 0], vec![0, 1]],
        ));
        let out = psi_face_apply(&p, &torus).unwrap();
        assert_eq!(out.num_terms(), 1);
        let (atom, coeff) = out.iter().next().unwrap();
        assert!(matches!(atom.kind, AtomKind::HypersurfaceComplement { .. }));
        assert_eq!(coeff.eval_one(), -1);
    }

    #[test]
    fn psi_substitutes_monomial_maps() {
        // y1 + y2 against the map (u1^2, u2^3) emits both kinds on u1^2 + u2^3
        let p = poly("y1 + y2", &["y1", "y2"]);
        let bundle = ClassExpr::from_atom(Atom::torus_bundle(
            "U",
            1,
            Some(LPoly::one()),
            vec![vec![2, 0], vec![0, 3]],
        ));
        let out = psi_face_apply(&p, &bundle).unwrap();
        assert_eq!(out.num_terms(), 2);
        for (atom, coeff) in out.iter() {
            assert_eq!(coeff.eval_one(), -1);
            match &atom.kind {
                AtomKind::HypersurfaceComplement { poly: q, weights, degree, .. }
                | AtomKind::TrivializedNearby { poly: q, weights, degree, .. } => {
                    assert_eq!(q, &poly("u^2 + v^3", &["u", "v"]));
                    assert_eq!(weights, &vec![3, 2]);
                    assert_eq!(*degree, 6);
                }
                _ => panic!("unexpected atom"),
            }
        }
    }

    #[test]
    fn psi_is_linear() {
        let p = poly("y1 + y2", &["y1", "y2"]);
        let a = ClassExpr::from_atom(Atom::torus_bundle(
            "U",
            1,
            Some(LPoly::one()),
            vec![vec![1, 0], vec![0, 1]],
        ));
        let doubled = psi_face_apply(&p, &a.scale_int(2)).unwrap();
        let twice = psi_face_apply(&p, &a).unwrap().scale_int(2);
        assert_eq!(doubled, twice);
    }

    #[test]
    fn psi_refuses_degenerate_faces() {
        let p = poly("y1^2 + 2*y1*y2 + y2^2", &["y1", "y2"]);
        let a = ClassExpr::from_atom(Atom::torus_bundle(
            "U",
            1,
            Some(LPoly::one()),
            vec![vec![1, 0], vec![0, 1]],
        ));
        assert_eq!(
            psi_face_apply(&p, &a).unwrap_err(),
            ComposerError::DegenerateFace
        );
    }

    #[test]
    fn open_part_of_cusp_with_coordinates() {
        let p = poly("x^2 + y^3", &["x", "y"]);
        let contribs = nearby_open_part(&p, &FSpec::Coordinates).unwrap();
        assert_eq!(contribs.len(), 1); // only the edge avoids the axes
        let c = &contribs[0];
        assert_eq!(c.coefficient, -1);
        assert_eq!(c.face_dim, 1);
        // + [torus minus curve] + [G_m x curve]
        assert_eq!(c.atoms.num_terms(), 2);
        for (_, coeff) in c.atoms.iter() {
            assert_eq!(coeff.eval_one(), 1);
        }
        let lam = lambda_table(&contribs, 6);
        assert_eq!(lam, vec![0, 0, 0, 0, 0, -6]);
    }

    #[test]
    fn total_of_cusp_matches_eigenvalue_table() {
        let p = poly("x^2 + y^3", &["x", "y"]);
        let contribs = nearby_total(&p, &FSpec::Coordinates).unwrap();
        // edge for J = {}, one vertex face for each singleton J
        assert_eq!(contribs.len(), 3);
        assert_eq!(lambda_table(&contribs, 6), vec![0, 2, 3, 2, 0, -1]);
    }

    #[test]
    fn node_and_smooth_totals() {
        let node = nearby_total(&poly("x*y", &["x", "y"]), &FSpec::Coordinates).unwrap();
        assert_eq!(lambda_table(&node, 6), vec![0; 6]);

        let smooth = nearby_total(&poly("x + y", &["x", "y"]), &FSpec::Coordinates).unwrap();
        assert_eq!(lambda_table(&smooth, 5), vec![1; 5]);
    }

    #[test]
    fn report_of_cusp() {
        let p = poly("x^2 + y^3", &["x", "y"]);
        let r = nearby_report(&p, &FSpec::Coordinates, 6).unwrap();
        assert_eq!(r.lambda_table, vec![0, 2, 3, 2, 0, -1]);
        assert_eq!(r.zeta, "(1-t^2)^-1*(1-t^3)^-1*(1-t^6)^1");
        assert_eq!(r.euler_fiber, -1);
    }

    #[test]
    fn quadric_cone_in_three_variables() {
        // ordinary double point: Lambda alternates (0, 2), zeta (1-t^2)^-1,
        // nearby-fiber chi 2. The J-sum assembles it as 8 - 12 + 6 = 2.
        let p = poly("x^2 + y^2 + z^2", &["x", "y", "z"]);
        let r = nearby_report(&p, &FSpec::Coordinates, 4).unwrap();
        assert_eq!(r.lambda_table, vec![0, 2, 0, 2]);
        assert_eq!(r.zeta, "(1-t^2)^-1");
        assert_eq!(r.euler_fiber, 2);
        assert_eq!(r.contributions.len(), 7);
        let open = r.contributions.iter().find(|c| c.j_set.is_empty()).unwrap();
        let chi_even = lefschetz_number(&open.atoms, 2).unwrap();
        assert_eq!(chi_even, 8);
    }

    #[test]
    fn face_set_coherence() {
        // compact faces of the restricted polynomial away from the axes match
        // the faces of the original polyhedron tagged with exactly J
        for text in ["x^2 + y^3", "x^2 + x*y + y^3", "x^3 + x*y + y^3 + x*y^5"] {
            let p = poly(text, &["x", "y"]);
            let gamma = newton::build_polyhedron(&p.support()).unwrap();
            for j in [vec![0usize], vec![1usize]] {
                let p_j = p.set_vars_to_zero(&j);
                if p_j.is_zero() {
                    continue;
                }
                let g_j = newton::build_polyhedron(&p_j.support()).unwrap();
                let restricted: Vec<Vec<Vec<i64>>> = g_j
                    .compact_faces()
                    .iter()
                    .filter(|f| f.j_set.is_empty())
                    .map(|f| {
                        embed_vertices(&f.vertices, &j.iter().copied().collect(), p_j.nvars())
                    })
                    .collect();
                let tagged: Vec<Vec<Vec<i64>>> = gamma
                    .compact_faces()
                    .iter()
                    .filter(|f| f.j_set.iter().copied().collect::<Vec<_>>() == j)
                    .map(|f| f.vertices.clone())
                    .collect();
                assert_eq!(restricted, tagged, "{text} with J = {j:?}");
            }
        }
    }

    #[test]
    fn thom_sebastiani_route_independence_23() {
        let direct = nearby_total(&poly("x^2 + y^3", &["x", "y"]), &FSpec::Coordinates).unwrap();
        let fam = fixtures::pair_product(2, 3);
        let via_resolution = nearby_total(
            &poly("y1 + y2", &["y1", "y2"]),
            &FSpec::Resolution(&fam),
        )
        .unwrap();
        assert_eq!(lambda_table(&direct, 12), lambda_table(&via_resolution, 12));
    }

    #[test]
    fn missing_restriction_is_reported() {
        let fam = ResolutionFamily::from_datum(fixtures::pair_product(2, 3).main);
        let err = nearby_total(&poly("y1 + y2", &["y1", "y2"]), &FSpec::Resolution(&fam))
            .unwrap_err();
        assert_eq!(err, ComposerError::MissingRestriction(vec![0]));
    }
}
