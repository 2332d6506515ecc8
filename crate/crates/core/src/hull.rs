//! Exact convex-hull helpers shared by the Newton-polyhedron builder and the
//! torus-hypersurface Euler-characteristic formula.
//!
//! Everything works by brute-force candidate-normal enumeration at desk
//! scale; correctness over speed.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{self, q_int, Q};

/// One facet of a full-dimensional polyhedron `conv(points) + cone(recession)`:
/// inward primitive normal with `<normal, x> >= offset` on the polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct FacetDesc {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub on_points: Vec<usize>,
    pub on_recession: Vec<usize>,
}

/// Enumerate all facets of `conv(points) + cone(recession)`, assumed
/// full-dimensional in its ambient space.
pub(crate) fn enumerate_facets(points: &[Vec<i64>], recession: &[Vec<i64>]) -> Vec<FacetDesc> {
    let m = points[0].len();
    if m == 0 {
        return vec![];
    }
    let pt_idx: Vec<usize> = (0..points.len()).collect();
    let rec_idx: Vec<usize> = (0..recession.len()).collect();
    let mut found: std::collections::BTreeSet<(Vec<i64>, i64)> = Default::default();
    for t in 1..=m.min(points.len()) {
        let d_needed = m - t;
        if d_needed > recession.len() {
            continue;
        }
        for tset in linalg::combinations(&pt_idx, t) {
            let base = &points[tset[0]];
            for dset in linalg::combinations(&rec_idx, d_needed) {
                let mut rows: Vec<Vec<i64>> = tset[1..]
                    .iter()
                    .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                rows.extend(dset.iter().map(|&i| recession[i].clone()));
                let ns = linalg::nullspace_int(&rows, m);
                if ns.len() != 1 {
                    continue;
                }
                for cand in [ns[0].clone(), ns[0].iter().map(|x| -x).collect::<Vec<_>>()] {
                    let c = linalg::dot(&cand, base);
                    let ok_pts = points.iter().all(|p| linalg::dot(&cand, p) >= c);
                    let ok_rec = recession.iter().all(|r| linalg::dot(&cand, r) >= 0);
                    if ok_pts && ok_rec {
                        found.insert((cand, c));
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .map(|(normal, offset)| {
            let on_points = (0..points.len())
                .filter(|&i| linalg::dot(&normal, &points[i]) == offset)
                .collect();
            let on_recession = (0..recession.len())
                .filter(|&i| linalg::dot(&normal, &recession[i]) == 0)
                .collect();
            FacetDesc {
                normal,
                offset,
                on_points,
                on_recession,
            }
        })
        .collect()
}

/// Affine-hull coordinates: returns `(k, coords)` where `k` is the affine
/// dimension and `coords[i]` are exact coordinates of `points[i]` with
/// respect to a basis of the difference space (first point at the origin).
pub(crate) fn affine_coordinates(points: &[Vec<i64>]) -> (usize, Vec<Vec<Q>>) {
    let n = points.len();
    if n == 0 {
        return (0, vec![]);
    }
    let base = &points[0];
    let diffs: Vec<Vec<i64>> = points
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    // pick a maximal independent subset as basis
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for d in diffs.iter().skip(1) {
        let mut trial = basis.clone();
        trial.push(d.clone());
        if linalg::rank_int(&trial) == trial.len() {
            basis = trial;
        }
    }
    let k = basis.len();
    if k == 0 {
        return (0, vec![vec![]; n]);
    }
    let m = base.len();
    let a: Vec<Vec<Q>> = (0..m)
        .map(|i| (0..k).map(|j| q_int(basis[j][i])).collect())
        .collect();
    let coords = diffs
        .iter()
        .map(|d| {
            let b: Vec<Q> = d.iter().map(|&x| q_int(x)).collect();
            linalg::solve(&a, &b).expect("difference lies in the basis span")
        })
        .collect();
    (k, coords)
}

/// Scale rational coordinates to integers (common denominator per run).
fn integerize(coords: &[Vec<Q>]) -> Vec<Vec<i64>> {
    let mut lcm = BigInt::one();
    for row in coords {
        for x in row {
            let d = x.denom();
            let g = num_integer::Integer::gcd(&lcm, d);
            lcm = &lcm / g * d;
        }
    }
    coords
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let v = x.numer() * &lcm / x.denom();
                    i64::try_from(&v).expect("hull: scaled coordinate exceeds i64")
                })
                .collect()
        })
        .collect()
}

/// All faces of the polytope `conv(points)` as sorted lists of the indices of
/// the input points lying on each face. Includes the polytope itself, down to
/// the vertices.
pub(crate) fn polytope_face_supports(points: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = points.len();
    let all: Vec<usize> = (0..n).collect();
    if n == 0 {
        return vec![];
    }
    let (k, coords) = affine_coordinates(points);
    if k == 0 {
        return vec![all];
    }
    let ipts = integerize(&coords);
    let facets = enumerate_facets(&ipts, &[]);
    let mut faces: std::collections::BTreeSet<Vec<usize>> = Default::default();
    faces.insert(all);
    let facet_sets: Vec<Vec<usize>> = facets.iter().map(|f| f.on_points.clone()).collect();
    for f in &facet_sets {
        faces.insert(f.clone());
    }
    // close under pairwise intersection
    loop {
        let snapshot: Vec<Vec<usize>> = faces.iter().cloned().collect();
        let before = faces.len();
        for a in &snapshot {
            for b in &facet_sets {
                let inter: Vec<usize> = a.iter().filter(|i| b.contains(i)).copied().collect();
                if !inter.is_empty() {
                    faces.insert(inter);
                }
            }
        }
        if faces.len() == before {
            break;
        }
    }
    faces.into_iter().collect()
}

/// Triangulate `conv(points[subset])` into simplices of its affine dimension,
/// returned as index lists into `points`.
fn triangulate_subset(points: &[Vec<i64>], subset: &[usize]) -> Vec<Vec<usize>> {
    let sub_pts: Vec<Vec<i64>> = subset.iter().map(|&i| points[i].clone()).collect();
    let (k, coords) = affine_coordinates(&sub_pts);
    if k == 0 {
        return vec![vec![subset[0]]];
    }
    let ipts = integerize(&coords);
    let facets = enumerate_facets(&ipts, &[]);
    let apex_local = 0usize;
    let apex = subset[0];
    let mut out = Vec::new();
    for f in &facets {
        if f.on_points.contains(&apex_local) {
            continue;
        }
        let facet_global: Vec<usize> = f.on_points.iter().map(|&i| subset[i]).collect();
        for mut simplex in triangulate_subset(points, &facet_global) {
            simplex.push(apex);
            out.push(simplex);
        }
    }
    out
}

/// Exact Euclidean volume of `conv(points)` in its ambient space; zero when
/// the hull is lower-dimensional.
pub(crate) fn volume(points: &[Vec<i64>]) -> Q {
    if points.is_empty() {
        return Q::zero();
    }
    let m = points[0].len();
    if linalg::affine_dim(points) < m {
        return Q::zero();
    }
    let all: Vec<usize> = (0..points.len()).collect();
    let simplices = triangulate_subset(points, &all);
    let mut total = Q::zero();
    let mut mfact = BigInt::one();
    for i in 1..=m {
        mfact *= BigInt::from(i);
    }
    for s in simplices {
        debug_assert_eq!(s.len(), m + 1);
        let base = &points[s[m]];
        let mat: Vec<Vec<Q>> = s[..m]
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| q_int(a - b))
                    .collect()
            })
            .collect();
        total += linalg::det(&mat).abs();
    }
    total / Q::from_integer(mfact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facets_of_a_triangle() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 3]];
        let fs = enumerate_facets(&pts, &[]);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn newton_facets_of_cusp_support() {
        // conv({(2,0),(0,3)} + R+^2): one compact facet with normal (3,2)
        let pts = vec![vec![2, 0], vec![0, 3]];
        let rec = vec![vec![1, 0], vec![0, 1]];
        let fs = enumerate_facets(&pts, &rec);
        let normals: Vec<Vec<i64>> = fs.iter().map(|f| f.normal.clone()).collect();
        assert!(normals.contains(&vec![3, 2]));
        assert!(normals.contains(&vec![1, 0]));
        assert!(normals.contains(&vec![0, 1]));
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn volume_examples() {
        // right triangle with legs 2 and 3
        let tri = vec![vec![0, 0], vec![2, 0], vec![0, 3]];
        assert_eq!(volume(&tri), q_int(3));
        // unit square plus an interior point
        let sq = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(volume(&sq), q_int(1));
        // segment in the plane has measure zero
        let seg = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(volume(&seg), q_int(0));
        // 3-simplex
        let tet = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(volume(&tet), Q::new(BigInt::one(), BigInt::from(6)));
    }

    #[test]
    fn face_supports_of_triangle() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 3], vec![1, 0]];
        let faces = polytope_face_supports(&pts);
        // whole + 3 edges + 3 vertices = 7; (1,0) sits inside the bottom edge
        assert_eq!(faces.len(), 7);
        assert!(faces.contains(&vec![0, 1, 3])); // bottom edge holds the midpoint
        assert!(faces.contains(&vec![0]));
    }
}
