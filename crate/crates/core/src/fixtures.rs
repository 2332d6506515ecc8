//! Hand-built resolution data for the standard test germs.
//!
//! Each datum is the combinatorial shadow of a concrete log-resolution:
//! divisor multiplicities and discrepancy weights together with stratum
//! Euler characteristics and point-count polynomials. They are used by the
//! verification suites and shipped as JSON for the CLI.

use crate::resolution::{Divisor, ResolutionDatum, ResolutionFamily, RestrictionRecord, StratumRecord};

fn div(id: &str, n: Vec<u32>, nu: u32) -> Divisor {
    Divisor {
        id: id.into(),
        n,
        nu,
    }
}

fn stratum(i_set: &[&str], chi: i64, count_poly: Vec<i64>, over_x0: bool) -> StratumRecord {
    StratumRecord {
        i_set: i_set.iter().map(|s| s.to_string()).collect(),
        chi,
        count_poly: Some(count_poly),
        over_x0,
    }
}

/// `g = x` on the affine line: the identity resolution, one divisor.
pub fn line() -> ResolutionDatum {
    ResolutionDatum {
        p: 1,
        dim: 1,
        divisors: vec![div("E", vec![1], 1)],
        strata: vec![stratum(&["E"], 1, vec![1], true)],
    }
}

/// `g = xy` on the plane: one blowup. The exceptional curve has
/// multiplicity 2 and discrepancy weight 2; the two strict branches keep
/// multiplicity 1. Open strata are tori (chi 0); the two intersection
/// points contribute the pairs.
pub fn node() -> ResolutionDatum {
    ResolutionDatum {
        p: 1,
        dim: 2,
        divisors: vec![
            div("E", vec![2], 2),
            div("Sx", vec![1], 1),
            div("Sy", vec![1], 1),
        ],
        strata: vec![
            stratum(&["E"], 0, vec![-1, 1], true),
            stratum(&["Sx"], 0, vec![-1, 1], true),
            stratum(&["Sy"], 0, vec![-1, 1], true),
            stratum(&["E", "Sx"], 1, vec![1], true),
            stratum(&["E", "Sy"], 1, vec![1], true),
        ],
    }
}

/// `g = x^2 + y^3` on the plane: three blowups. Multiplicities
/// (1, 2, 3, 6) with weights (1, 2, 3, 5); the last exceptional curve meets
/// the other three components.
pub fn cusp() -> ResolutionDatum {
    ResolutionDatum {
        p: 1,
        dim: 2,
        divisors: vec![
            div("S", vec![1], 1),
            div("E1", vec![2], 2),
            div("E2", vec![3], 3),
            div("E3", vec![6], 5),
        ],
        strata: vec![
            stratum(&["S"], 0, vec![-1, 1], true),
            stratum(&["E1"], 1, vec![0, 1], true),
            stratum(&["E2"], 1, vec![0, 1], true),
            stratum(&["E3"], -1, vec![-2, 1], true),
            stratum(&["S", "E3"], 1, vec![1], true),
            stratum(&["E1", "E3"], 1, vec![1], true),
            stratum(&["E2", "E3"], 1, vec![1], true),
        ],
    }
}

/// The coordinate functions on affine `p`-space with the identity
/// resolution: divisors are the coordinate hyperplanes, and only the deepest
/// stratum (the origin) lies over the common zero locus.
pub fn coordinates(p: usize) -> ResolutionDatum {
    let divisors: Vec<Divisor> = (0..p)
        .map(|j| {
            let mut n = vec![0u32; p];
            n[j] = 1;
            div(&format!("D{j}"), n, 1)
        })
        .collect();
    let mut strata = Vec::new();
    for mask in 1u32..(1 << p) {
        let ids: Vec<String> = (0..p)
            .filter(|j| mask & (1 << j) != 0)
            .map(|j| format!("D{j}"))
            .collect();
        let k = ids.len();
        // chi of a torus of rank p - k; counts (q-1)^(p-k)
        let mut count = vec![1i64];
        for _ in 0..(p - k) {
            // multiply by (q - 1)
            let mut next = vec![0i64; count.len() + 1];
            for (i, &c) in count.iter().enumerate() {
                next[i] -= c;
                next[i + 1] += c;
            }
            count = next;
        }
        let chi: i64 = count.iter().sum();
        strata.push(StratumRecord {
            i_set: ids,
            chi,
            count_poly: Some(count),
            over_x0: k == p,
        });
    }
    ResolutionDatum {
        p,
        dim: p,
        divisors,
        strata,
    }
}

/// The pair `(x^a, y^b)` on the plane with the identity resolution, plus the
/// restricted data for killing either function (a point carrying the other
/// function on the remaining line).
pub fn pair_product(a: u32, b: u32) -> ResolutionFamily {
    let main = ResolutionDatum {
        p: 2,
        dim: 2,
        divisors: vec![div("Dx", vec![a, 0], 1), div("Dy", vec![0, b], 1)],
        strata: vec![
            stratum(&["Dx"], 0, vec![-1, 1], false),
            stratum(&["Dy"], 0, vec![-1, 1], false),
            stratum(&["Dx", "Dy"], 1, vec![1], true),
        ],
    };
    let restriction_line = |m: u32| ResolutionDatum {
        p: 1,
        dim: 1,
        divisors: vec![div("D", vec![m], 1)],
        strata: vec![stratum(&["D"], 1, vec![1], true)],
    };
    ResolutionFamily {
        main,
        restrictions: vec![
            RestrictionRecord {
                j_set: vec![0],
                datum: restriction_line(b),
            },
            RestrictionRecord {
                j_set: vec![1],
                datum: restriction_line(a),
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        line().validate().unwrap();
        node().validate().unwrap();
        cusp().validate().unwrap();
        coordinates(2).validate().unwrap();
        coordinates(3).validate().unwrap();
        pair_product(2, 3).validate().unwrap();
        pair_product(3, 4).validate().unwrap();
    }

    #[test]
    fn coordinates_strata_counts() {
        let c = coordinates(2);
        assert_eq!(c.strata.len(), 3);
        let origin = c
            .strata
            .iter()
            .find(|s| s.i_set.len() == 2)
            .unwrap();
        assert!(origin.over_x0);
        assert_eq!(origin.chi, 1);
        let axis = c.strata.iter().find(|s| s.i_set.len() == 1).unwrap();
        assert!(!axis.over_x0);
        assert_eq!(axis.chi, 0);
        assert_eq!(axis.count_poly, Some(vec![-1, 1]));
    }
}
