//! Small exact rational/integer linear algebra used across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Q = BigRational;

pub(crate) fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn vec_gcd(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd_i64(g, x))
}

/// Divide an integer vector by the gcd of its entries. Zero stays zero.
pub(crate) fn primitive(v: &[i64]) -> Vec<i64> {
    let g = vec_gcd(v);
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Clear denominators of a rational vector and reduce to a primitive
/// integer vector pointing the same way.
pub(crate) fn rational_to_primitive(v: &[Q]) -> Vec<i64> {
    let mut lcm = BigInt::one();
    for x in v {
        let d = x.denom();
        let g = num_integer::Integer::gcd(&lcm, d);
        lcm = &lcm / g * d;
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num_integer::Integer::gcd(&g, x);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    ints.iter()
        .map(|x| {
            let r = x / &g;
            i64::try_from(&r).expect("linalg: entry exceeds i64 range")
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(mat: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let sub = &mat[r][j] * &f;
                    mat[i][j] = &mat[i][j] - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub(crate) fn rank_int(rows: &[Vec<i64>]) -> usize {
    let mut mat: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| q_int(x)).collect())
        .collect();
    rref(&mut mat).len()
}

/// Basis of the right kernel `{x : M x = 0}`, as primitive integer vectors.
pub(crate) fn nullspace_int(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut mat: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| q_int(x)).collect())
        .collect();
    let pivots = rref(&mut mat);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Q::zero(); cols];
        v[f] = Q::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -mat[ri][f].clone();
        }
        basis.push(rational_to_primitive(&v));
    }
    basis
}

/// Solve `A x = b` exactly. `None` when inconsistent; a particular solution
/// (free variables set to zero) otherwise.
pub(crate) fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut mat: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut row = r.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let pivots = rref(&mut mat);
    if pivots.contains(&cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Q::zero(); cols];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = mat[ri][cols].clone();
    }
    Some(x)
}

/// Dimension of the affine hull of a point set (0 for a single point).
pub(crate) fn affine_dim(points: &[Vec<i64>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank_int(&diffs)
}

/// Determinant of a square rational matrix.
pub(crate) fn det(mat: &[Vec<Q>]) -> Q {
    let n = mat.len();
    let mut m: Vec<Vec<Q>> = mat.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if pr != c {
            m.swap(c, pr);
            d = -d;
        }
        let piv = m[c][c].clone();
        d = &d * &piv;
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in c..n {
                    let sub = &m[c][j] * &f;
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
    }
    d
}

/// gcd of all `d x d` minors of an integer matrix with `d` rows, i.e. the
/// index of the row lattice inside the lattice of integer points of its span.
pub(crate) fn lattice_index(rows: &[Vec<i64>]) -> BigInt {
    let d = rows.len();
    if d == 0 {
        return BigInt::one();
    }
    let m = rows[0].len();
    debug_assert!(rank_int(rows) == d, "lattice_index wants independent rows");
    let mut g = BigInt::zero();
    let cols: Vec<usize> = (0..m).collect();
    for subset in combinations(&cols, d) {
        let sub: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| subset.iter().map(|&c| q_int(r[c])).collect())
            .collect();
        let dq = det(&sub);
        debug_assert!(dq.is_integer());
        g = num_integer::Integer::gcd(&g, &dq.to_integer());
        if g.is_one() {
            break;
        }
    }
    g.abs()
}

/// All size-`k` subsets of `items`, in lexicographic order.
pub(crate) fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        // advance
        let n = items.len();
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_difference() {
        // kernel of (-2, 3) is spanned by (3, 2)
        let ns = nullspace_int(&[vec![-2, 3]], 2);
        assert_eq!(ns, vec![vec![3, 2]]);
    }

    #[test]
    fn combinations_count() {
        let v: Vec<usize> = (0..5).collect();
        assert_eq!(combinations(&v, 2).len(), 10);
        assert_eq!(combinations(&v, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn lattice_index_of_skew_rays() {
        // rays (1,0) and (1,2) span an index-2 sublattice
        assert_eq!(lattice_index(&[vec![1, 0], vec![1, 2]]), BigInt::from(2));
        assert_eq!(lattice_index(&[vec![1, 0], vec![0, 1]]), BigInt::one());
    }

    #[test]
    fn solve_consistent_system() {
        let a = vec![vec![q_int(2), q_int(0)], vec![q_int(0), q_int(3)]];
        let b = vec![q_int(4), q_int(9)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![q_int(2), q_int(3)]);
        let bad = solve(&[vec![q_int(1), q_int(1)], vec![q_int(2), q_int(2)]], &b);
        assert!(bad.is_none());
    }
}
