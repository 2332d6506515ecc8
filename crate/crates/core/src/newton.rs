//! Newton polyhedra: `conv(supp(P) + R+^p)`, their compact faces with
//! coordinate-hyperplane tags and dual cones, the support function, and the
//! per-face non-degeneracy report.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::cones::RelOpenCone;
use crate::hull;
use crate::linalg;
use crate::nondeg::{self, FaceStatus, Predicate};
use crate::poly::SparsePoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NewtonError {
    #[error("empty support")]
    EmptySupport,
    #[error("negative exponent in Newton-polyhedron support")]
    NegativeExponent,
    #[error("covector has a negative entry")]
    NegativeCovector,
    #[error("face does not belong to the polyhedron of this polynomial")]
    FaceNotOfPolyhedron,
    #[error("zero polynomial has no Newton polyhedron")]
    ZeroPolynomial,
}

/// A compact face: vertex set, dimension, coordinate-hyperplane tag, the
/// relatively open dual cone with its closure generators, and quasi-weights
/// for the face polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceData {
    pub vertices: Vec<Vec<i64>>,
    pub dim: usize,
    pub j_set: BTreeSet<usize>,
    pub dual_cone: RelOpenCone,
    pub dual_generators: Vec<Vec<i64>>,
    pub weights: Vec<i64>,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonPolyhedron {
    nvars: usize,
    support: Vec<Vec<i64>>,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    faces: Vec<FaceData>,
}

/// Build the polyhedron `conv(support + R+^p)` with exact data. Brute-force
/// candidate-normal enumeration; intended for desk scale (support up to a few
/// dozen points, p <= 4 guaranteed, larger best effort).
pub fn build_polyhedron(support: &[Vec<i64>]) -> Result<NewtonPolyhedron, NewtonError> {
    if support.is_empty() {
        return Err(NewtonError::EmptySupport);
    }
    let nvars = support[0].len();
    let mut supp: Vec<Vec<i64>> = support.to_vec();
    for s in &supp {
        assert_eq!(s.len(), nvars, "support exponent length mismatch");
        if s.iter().any(|&x| x < 0) {
            return Err(NewtonError::NegativeExponent);
        }
    }
    supp.sort();
    supp.dedup();

    let recession: Vec<Vec<i64>> = (0..nvars)
        .map(|i| {
            let mut e = vec![0; nvars];
            e[i] = 1;
            e
        })
        .collect();
    let facet_descs = hull::enumerate_facets(&supp, &recession);

    // a support point is a vertex iff its active facet normals span R^p
    let vertex_ids: Vec<usize> = (0..supp.len())
        .filter(|&i| {
            let active: Vec<Vec<i64>> = facet_descs
                .iter()
                .filter(|f| f.on_points.contains(&i))
                .map(|f| f.normal.clone())
                .collect();
            linalg::rank_int(&active) == nvars
        })
        .collect();
    let vertices: Vec<Vec<i64>> = vertex_ids.iter().map(|&i| supp[i].clone()).collect();

    // faces as (vertex-index set, recession-direction set), closed under
    // pairwise intersection of facets; compact means empty recession
    let mut pool: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let seeds: Vec<(Vec<usize>, Vec<usize>)> = facet_descs
        .iter()
        .map(|f| {
            let vs: Vec<usize> = (0..vertex_ids.len())
                .filter(|&vi| f.on_points.contains(&vertex_ids[vi]))
                .collect();
            (vs, f.on_recession.clone())
        })
        .collect();
    for s in &seeds {
        if !s.0.is_empty() {
            pool.insert(s.clone());
        }
    }
    loop {
        let snapshot: Vec<_> = pool.iter().cloned().collect();
        let before = pool.len();
        for a in &snapshot {
            for b in &seeds {
                let vs: Vec<usize> = a.0.iter().filter(|v| b.0.contains(v)).copied().collect();
                if vs.is_empty() {
                    continue;
                }
                let rec: Vec<usize> = a.1.iter().filter(|r| b.1.contains(r)).copied().collect();
                pool.insert((vs, rec));
            }
        }
        if pool.len() == before {
            break;
        }
    }

    let mut faces = Vec::new();
    for (vs, rec) in &pool {
        if !rec.is_empty() {
            continue;
        }
        faces.push(build_face_data(nvars, &supp, &vertices, &facet_descs, vs));
    }
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));

    let facets = facet_descs
        .iter()
        .map(|f| Facet {
            normal: f.normal.clone(),
            offset: f.offset,
        })
        .collect();

    Ok(NewtonPolyhedron {
        nvars,
        support: supp,
        vertices,
        facets,
        faces,
    })
}

fn build_face_data(
    nvars: usize,
    supp: &[Vec<i64>],
    vertices: &[Vec<i64>],
    facet_descs: &[hull::FacetDesc],
    vertex_ids: &[usize],
) -> FaceData {
    let verts: Vec<Vec<i64>> = vertex_ids.iter().map(|&i| vertices[i].clone()).collect();
    let dim = linalg::affine_dim(&verts);
    let j_set: BTreeSet<usize> = (0..nvars)
        .filter(|&i| verts.iter().all(|v| v[i] == 0))
        .collect();
    let v0 = &verts[0];

    // facets containing the face, used to see which support points lie on it
    let active: Vec<&hull::FacetDesc> = facet_descs
        .iter()
        .filter(|f|

            verts
                .iter()
                .all(|v| linalg::dot(&f.normal, v) == f.offset))
        .collect();
    let on_face = |s: &Vec<i64>| {
        active
            .iter()
            .all(|f| linalg::dot(&f.normal, s) == f.offset)
    };

    // closed dual cone: equalities from the face span, inequalities from the
    // remaining support points and the coordinate directions
    let eqs: Vec<Vec<i64>> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    let mut ineqs: Vec<Vec<i64>> = Vec::new();
    for s in supp {
        if !on_face(s) {
            ineqs.push(s.iter().zip(v0).map(|(a, b)| a - b).collect());
        }
    }
    for i in 0..nvars {
        let mut e = vec![0; nvars];
        e[i] = 1;
        ineqs.push(e);
    }

    let closed = RelOpenCone::new(nvars, eqs.clone(), ineqs.clone());
    let rays = closed
        .closure_rays()
        .expect("dual cone of a compact face is pointed");
    let relint_point: Vec<i64> = (0..nvars)
        .map(|i| rays.iter().map(|r| r[i]).sum())
        .collect();

    // relative interior: inequalities vanishing on the cone become equalities
    let mut eqs_out = eqs;
    let mut stricts = Vec::new();
    for row in ineqs {
        if linalg::dot(&row, &relint_point) > 0 {
            stricts.push(row);
        } else {
            eqs_out.push(row);
        }
    }
    let dual_cone = RelOpenCone::new(nvars, eqs_out, stricts);
    debug_assert_eq!(dual_cone.dim_nonempty(), (true, nvars - dim));

    let weights = linalg::primitive(&relint_point);
    let degree = linalg::dot(&weights, v0);
    FaceData {
        vertices: verts,
        dim,
        j_set,
        dual_cone,
        dual_generators: rays,
        weights,
        degree,
    }
}

impl NewtonPolyhedron {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn support(&self) -> &[Vec<i64>] {
        &self.support
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// All compact faces, every dimension including vertices, sorted by
    /// (dimension, vertex list). The `j_set` tags partition the list.
    pub fn compact_faces(&self) -> &[FaceData] {
        &self.faces
    }

    /// The support function `a -> min_{b in polyhedron} <a, b>`, which for
    /// nonnegative `a` is attained on the vertex set.
    pub fn ell(&self, a: &[i64]) -> Result<i64, NewtonError> {
        if a.iter().any(|&x| x < 0) {
            return Err(NewtonError::NegativeCovector);
        }
        Ok(self
            .vertices
            .iter()
            .map(|v| linalg::dot(a, v))
            .min()
            .expect("polyhedron has vertices"))
    }

    /// The compact face on which `a` attains the support-function value: the
    /// maximal compact face whose vertices all realize the minimum. Unique
    /// for strictly positive `a`; on the orthant boundary ties are resolved
    /// by enumeration order.
    pub fn face_of_covector(&self, a: &[i64]) -> Result<&FaceData, NewtonError> {
        let ell = self.ell(a)?;
        let attaining: Vec<&Vec<i64>> = self
            .vertices
            .iter()
            .filter(|v| linalg::dot(a, v) == ell)
            .collect();
        let mut best: Option<&FaceData> = None;
        for face in &self.faces {
            if face
                .vertices
                .iter()
                .all(|v| attaining.iter().any(|w| *w == v))
            {
                if best.map_or(true, |b| face.vertices.len() > b.vertices.len()) {
                    best = Some(face);
                }
            }
        }
        Ok(best.expect("some vertex face attains the minimum"))
    }

    /// The dual fan: each compact face with its relatively open dual cone.
    /// The cones are pairwise disjoint and cover the open orthant; strata on
    /// the coordinate boundary are dual to non-compact faces and are not
    /// covered.
    pub fn dual_fan(&self) -> Vec<(&FaceData, &RelOpenCone)> {
        self.faces.iter().map(|f| (f, &f.dual_cone)).collect()
    }
}

/// Monomials of `p` supported on the face: exact restriction via the face's
/// supporting covector.
pub fn face_restriction(p: &SparsePoly, face: &FaceData) -> Result<SparsePoly, NewtonError> {
    let a: Vec<i64> = (0..p.nvars())
        .map(|i| face.dual_generators.iter().map(|r| r[i]).sum())
        .collect();
    let supp = p.support();
    if supp.is_empty() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let c = supp.iter().map(|s| linalg::dot(&a, s)).min().unwrap();
    let on_face_value = linalg::dot(&a, &face.vertices[0]);
    if c != on_face_value || !face.vertices.iter().all(|v| supp.contains(v)) {
        return Err(NewtonError::FaceNotOfPolyhedron);
    }
    Ok(p.restrict_to_hyperplane(&a, c))
}

/// Per-face non-degeneracy report for both predicates.
#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    pub vertices: Vec<Vec<i64>>,
    pub dim: usize,
    #[serde(rename = "J")]
    pub j_set: Vec<usize>,
    pub dual_cone_generators: Vec<Vec<i64>>,
    pub weights: Vec<i64>,
    pub degree: i64,
    pub nondeg: Option<NondegPair>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NondegPair {
    pub strong: FaceStatus,
    pub kouchnirenko: FaceStatus,
}

/// The face/fan report, optionally with non-degeneracy statuses per face.
pub fn face_report(p: &SparsePoly, with_nondeg: bool) -> Result<Vec<FaceReport>, NewtonError> {
    face_report_with_primes(p, with_nondeg, None)
}

/// Same with an explicit probe prime list overriding the per-rank default.
pub fn face_report_with_primes(
    p: &SparsePoly,
    with_nondeg: bool,
    primes: Option<&[u64]>,
) -> Result<Vec<FaceReport>, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let default_primes = nondeg::default_probe_primes(p.nvars());
    let primes = primes.unwrap_or(&default_primes);
    let gamma = build_polyhedron(&p.support())?;
    let mut out = Vec::new();
    for face in gamma.compact_faces() {
        let nondeg = if with_nondeg {
            let pd = face_restriction(p, face)?;
            Some(NondegPair {
                strong: nondeg::probe_with_primes(&pd, Predicate::Strong, primes),
                kouchnirenko: nondeg::probe_with_primes(&pd, Predicate::Kouchnirenko, primes),
            })
        } else {
            None
        };
        out.push(FaceReport {
            vertices: face.vertices.clone(),
            dim: face.dim,
            j_set: face.j_set.iter().copied().collect(),
            dual_cone_generators: face.dual_generators.clone(),
            weights: face.weights.clone(),
            degree: face.degree,
            nondeg,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, vars: &[&str]) -> SparsePoly {
        SparsePoly::parse(s, vars).unwrap()
    }

    fn cusp() -> NewtonPolyhedron {
        build_polyhedron(&[vec![2, 0], vec![0, 3]]).unwrap()
    }

    #[test]
    fn build_cusp_polyhedron() {
        let g = cusp();
        assert_eq!(g.vertices(), &[vec![0, 3], vec![2, 0]]);
        let compact: Vec<&Facet> = g
            .facets()
            .iter()
            .filter(|f| f.normal.iter().all(|&x| x > 0))
            .collect();
        assert_eq!(compact.len(), 1);
        assert_eq!(compact[0].normal, vec![3, 2]);
        assert_eq!(compact[0].offset, 6);
    }

    #[test]
    fn build_rejects_bad_support() {
        assert_eq!(build_polyhedron(&[]).unwrap_err(), NewtonError::EmptySupport);
        assert_eq!(
            build_polyhedron(&[vec![-1, 0]]).unwrap_err(),
            NewtonError::NegativeExponent
        );
    }

    #[test]
    fn single_point_polyhedron() {
        let g = build_polyhedron(&[vec![1, 1]]).unwrap();
        assert_eq!(g.vertices(), &[vec![1, 1]]);
        let faces = g.compact_faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].dim, 0);
        assert!(faces[0].j_set.is_empty());
        assert_eq!(faces[0].weights, vec![1, 1]);
        assert_eq!(faces[0].degree, 2);
    }

    #[test]
    fn hull_oracle_vertex_detection() {
        // (1,1) lies below the segment (2,0)-(0,3) since 3+2 < 6
        let g = build_polyhedron(&[vec![2, 0], vec![1, 1], vec![0, 3]]).unwrap();
        assert!(g.vertices().contains(&vec![1, 1]));
        // but (1,1) is inside conv({(2,0),(0,2)} + R+^2)
        let g2 = build_polyhedron(&[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert!(!g2.vertices().contains(&vec![1, 1]));
    }

    #[test]
    fn compact_faces_of_cusp() {
        let g = cusp();
        let faces = g.compact_faces();
        assert_eq!(faces.len(), 3);
        let vertex_20 = faces.iter().find(|f| f.vertices == [vec![2, 0]]).unwrap();
        assert_eq!(vertex_20.j_set.iter().copied().collect::<Vec<_>>(), [1]);
        let vertex_03 = faces.iter().find(|f| f.vertices == [vec![0, 3]]).unwrap();
        assert_eq!(vertex_03.j_set.iter().copied().collect::<Vec<_>>(), [0]);
        let edge = faces.iter().find(|f| f.dim == 1).unwrap();
        assert!(edge.j_set.is_empty());
        assert_eq!(edge.vertices, vec![vec![0, 3], vec![2, 0]]);
        assert_eq!(edge.weights, vec![3, 2]);
        assert_eq!(edge.degree, 6);
        assert_eq!(edge.dual_generators, vec![vec![3, 2]]);
    }

    #[test]
    fn compact_faces_with_point_on_edge() {
        // (1,1) lies on the edge of conv({(2,0),(0,2)} + R+^2)
        let g = build_polyhedron(&[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let faces = g.compact_faces();
        assert_eq!(faces.len(), 3);
        let edge = faces.iter().find(|f| f.dim == 1).unwrap();
        assert_eq!(edge.vertices, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn three_variable_simplex_faces() {
        let g = build_polyhedron(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]).unwrap();
        let faces = g.compact_faces();
        // 3 vertices + 3 edges + 1 triangle
        assert_eq!(faces.len(), 7);
        assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 3);
        assert_eq!(faces.iter().filter(|f| f.dim == 1).count(), 3);
        let triangle = faces.iter().find(|f| f.dim == 2).unwrap();
        assert!(triangle.j_set.is_empty());
        assert_eq!(triangle.weights, vec![1, 1, 1]);
        assert_eq!(triangle.degree, 2);
        // an edge lies in exactly one coordinate hyperplane
        let edge = faces
            .iter()
            .find(|f| f.dim == 1 && f.vertices.contains(&vec![2, 0, 0]))
            .unwrap();
        assert_eq!(edge.j_set.len(), 1);
        for face in faces {
            assert_eq!(face.dual_cone.dim_nonempty(), (true, 3 - face.dim));
        }
    }

    #[test]
    fn ell_examples() {
        let g = cusp();
        assert_eq!(g.ell(&[1, 1]).unwrap(), 2);
        assert_eq!(g.ell(&[3, 2]).unwrap(), 6);
        assert_eq!(g.ell(&[0, 0]).unwrap(), 0);
        assert_eq!(g.ell(&[-1, 0]), Err(NewtonError::NegativeCovector));
    }

    #[test]
    fn face_of_covector_examples() {
        let g = cusp();
        assert_eq!(g.face_of_covector(&[1, 1]).unwrap().vertices, [vec![2, 0]]);
        assert_eq!(g.face_of_covector(&[3, 2]).unwrap().dim, 1);
        assert_eq!(g.face_of_covector(&[1, 2]).unwrap().vertices, [vec![2, 0]]);
    }

    #[test]
    fn dual_fan_of_cusp() {
        let g = cusp();
        let fan = g.dual_fan();
        assert_eq!(fan.len(), 3);
        let edge_cone = &g.compact_faces().iter().find(|f| f.dim == 1).unwrap().dual_cone;
        assert!(edge_cone.contains(&[3, 2]));
        assert!(edge_cone.contains(&[6, 4]));
        assert!(!edge_cone.contains(&[1, 1]));
        assert_eq!(edge_cone.dim_nonempty(), (true, 1));
    }

    #[test]
    fn fan_partition_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1234);
        for supp in [
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![3, 0], vec![1, 1], vec![0, 3]],
            vec![vec![1, 1]],
            vec![vec![1, 0], vec![0, 1]],
        ] {
            let g = build_polyhedron(&supp).unwrap();
            for _ in 0..250 {
                let a = vec![rng.gen_range(1..=50i64), rng.gen_range(1..=50i64)];
                let hits: Vec<&FaceData> = g
                    .dual_fan()
                    .iter()
                    .filter(|(_, c)| c.contains(&a))
                    .map(|(f, _)| *f)
                    .collect();
                assert_eq!(hits.len(), 1, "covector {a:?} in {supp:?}");
                let byface = g.face_of_covector(&a).unwrap();
                assert_eq!(hits[0].vertices, byface.vertices);
                // support function value is attained on the whole dual face
                let ell = g.ell(&a).unwrap();
                for v in &byface.vertices {
                    assert_eq!(linalg::dot(&a, v), ell);
                }
            }
        }
    }

    #[test]
    fn ell_homogeneity_exact() {
        let g = build_polyhedron(&[vec![3, 0], vec![1, 1], vec![0, 3]]).unwrap();
        for a in [[1i64, 7], [4, 3], [5, 5]] {
            for lambda in 0..5i64 {
                let scaled: Vec<i64> = a.iter().map(|x| x * lambda).collect();
                assert_eq!(g.ell(&scaled).unwrap(), lambda * g.ell(&a).unwrap());
            }
        }
    }

    #[test]
    fn positivity_of_ell_on_dual_closure_detects_interior_faces() {
        // ell is positive on closure(sigma(delta)) minus 0 iff the face misses
        // every coordinate hyperplane; checked on the closure generators
        for supp in [
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![1, 1]],
            vec![vec![1, 0], vec![0, 1]],
        ] {
            let g = build_polyhedron(&supp).unwrap();
            for face in g.compact_faces() {
                let positive = face
                    .dual_generators
                    .iter()
                    .all(|r| g.ell(r).unwrap() > 0);
                assert_eq!(positive, face.j_set.is_empty(), "face {:?}", face.vertices);
            }
        }
    }

    #[test]
    fn ell_linear_on_each_cone_generators() {
        let g = build_polyhedron(&[vec![3, 0], vec![1, 1], vec![0, 3]]).unwrap();
        for face in g.compact_faces() {
            let gens = &face.dual_generators;
            let total: Vec<i64> = (0..2).map(|i| gens.iter().map(|r| r[i]).sum()).collect();
            let sum_ell: i64 = gens.iter().map(|r| g.ell(r).unwrap()).sum();
            assert_eq!(g.ell(&total).unwrap(), sum_ell);
        }
    }

    #[test]
    fn face_restriction_examples() {
        let p = poly("x^2 + y^3", &["x", "y"]);
        let g = cusp();
        let edge = g.compact_faces().iter().find(|f| f.dim == 1).unwrap();
        assert_eq!(face_restriction(&p, edge).unwrap(), p);
        let v20 = g
            .compact_faces()
            .iter()
            .find(|f| f.vertices == [vec![2, 0]])
            .unwrap();
        assert_eq!(
            face_restriction(&p, v20).unwrap(),
            poly("x^2", &["x", "y"])
        );
        // hull oracle: for x^2 + x*y + y^3 the point (1,1) is a vertex and the
        // lower edge through (2,0) is spanned by (2,0),(1,1)
        let p2 = poly("x^2 + x*y + y^3", &["x", "y"]);
        let g2 = build_polyhedron(&p2.support()).unwrap();
        let edge = g2
            .compact_faces()
            .iter()
            .find(|f| f.dim == 1 && f.vertices.contains(&vec![2, 0]))
            .unwrap();
        assert_eq!(
            face_restriction(&p2, edge).unwrap(),
            poly("x^2 + x*y", &["x", "y"])
        );
        // a face of a different polyhedron is rejected
        let other = build_polyhedron(&[vec![5, 0], vec![0, 5]]).unwrap();
        let stray = other.compact_faces().iter().find(|f| f.dim == 1).unwrap();
        assert_eq!(
            face_restriction(&p, stray),
            Err(NewtonError::FaceNotOfPolyhedron)
        );
    }

    #[test]
    fn nondegeneracy_report_examples() {
        let report = face_report(&poly("x^2 + y^3", &["x", "y"]), true).unwrap();
        for r in &report {
            let nd = r.nondeg.as_ref().unwrap();
            assert!(!nd.strong.is_degenerate());
            assert!(!nd.kouchnirenko.is_degenerate());
        }

        let report = face_report(&poly("x^2 + 2*x*y + y^2", &["x", "y"]), true).unwrap();
        let edge = report.iter().find(|r| r.dim == 1).unwrap();
        assert!(edge.nondeg.as_ref().unwrap().kouchnirenko.is_degenerate());

        let report = face_report(&poly("x*y", &["x", "y"]), true).unwrap();
        assert_eq!(report.len(), 1);
        let nd = report[0].nondeg.as_ref().unwrap();
        assert!(nd.strong.is_certified());
        assert!(nd.kouchnirenko.is_certified());
    }
}
