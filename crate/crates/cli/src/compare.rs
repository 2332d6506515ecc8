//! Cross-check suites: every identity the engine is supposed to satisfy,
//! run against a shipped fixture, one pass/fail line per identity.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};

use motzeta::classes::{count_points, lefschetz_number};
use motzeta::composer::{self, FSpec};
use motzeta::cones::RelOpenCone;
use motzeta::fixtures;
use motzeta::jets;
use motzeta::newton;
use motzeta::poly::SparsePoly;
use motzeta::resolution::{self, FuncSel, ResolutionDatum, ResolutionFamily};

use crate::CliError;

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail,
    }
}

pub fn run(fixture: &str, seed: u64, json: bool) -> Result<(), CliError> {
    let mut checks = Vec::new();
    match fixture {
        "line" => germ_suite(&mut checks, &fixtures::line(), "x", &["x"], seed)?,
        "node" => germ_suite(&mut checks, &fixtures::node(), "x*y", &["x", "y"], seed)?,
        "cusp" => germ_suite(&mut checks, &fixtures::cusp(), "x^2 + y^3", &["x", "y"], seed)?,
        "coords" => truncated_suite(&mut checks, &fixtures::coordinates(2))?,
        "pair23" => pair_suite(&mut checks, 2, 3)?,
        "pair25" => pair_suite(&mut checks, 2, 5)?,
        "pair34" => pair_suite(&mut checks, 3, 4)?,
        other => {
            return Err(CliError::Input(format!(
                "unknown fixture `{other}` (line|node|cusp|coords|pair23|pair25|pair34)"
            )))
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    if json {
        let rows: Vec<_> = checks
            .iter()
            .map(|c| serde_json::json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "fixture": fixture,
                "checks": rows,
                "pass": all_pass,
            }))
            .unwrap()
        );
    } else {
        for c in &checks {
            println!(
                "{} {} {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Internal("identity check failed".into()))
    }
}

/// Identities for a single-function germ with its resolution datum.
fn germ_suite(
    checks: &mut Vec<Check>,
    datum: &ResolutionDatum,
    text: &str,
    vars: &[&str],
    seed: u64,
) -> Result<(), CliError> {
    let g = SparsePoly::parse(text, vars)?;
    let z = resolution::zeta_series(datum, FuncSel::Single(0))?;
    let s = resolution::nearby_cycles(datum, FuncSel::Single(0))?;

    // counting identity: arcs vs the scaled point count of the coefficient
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=2u32 {
        for q in [2u64, 3] {
            let arcs = jets::jet_count(&g, n, q)?;
            let coeff = z.coefficient(n);
            let scaled = count_points(&coeff, q)?
                * BigRational::from_integer(BigInt::from(q).pow(n * datum.dim as u32));
            let expected = BigRational::from_integer(BigInt::from(arcs.total));
            if scaled != expected {
                ok = false;
                detail = format!("n={n} q={q}: {scaled} vs {expected}");
            }
        }
    }
    checks.push(check("coefficient-counting-identity", ok, detail));

    // limit identity
    let limit = z.limit_t_infinity().neg();
    checks.push(check(
        "limit-equals-nearby-cycles",
        limit == s,
        String::new(),
    ));

    // A'Campo consistency on the singleton strata
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=12i64 {
        let lam = lefschetz_number(&s, n)?;
        let mut expect = 0i64;
        for (idx, d) in datum.divisors.iter().enumerate() {
            let n_i = d.n[0] as i64;
            if n % n_i == 0 {
                let chi = datum
                    .strata
                    .iter()
                    .find(|st| st.i_set == [datum.divisors[idx].id.clone()])
                    .map_or(0, |st| st.chi);
                expect += n_i * chi;
            }
        }
        if lam != expect {
            ok = false;
            detail = format!("n={n}: {lam} vs {expect}");
        }
    }
    checks.push(check("acampo-consistency", ok, detail));

    // route cross-check against the face decomposition with coordinates
    let report = composer::nearby_report(&g, &FSpec::Coordinates, 12)?;
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=12i64 {
        let a = lefschetz_number(&report.total, n)?;
        let b = lefschetz_number(&s, n)?;
        if a != b {
            ok = false;
            detail = format!("n={n}: {a} vs {b}");
        }
    }
    checks.push(check("face-decomposition-route", ok, detail));

    // seeded fan partition property
    let gamma = newton::build_polyhedron(&g.support())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut detail = String::new();
    for _ in 0..1000 {
        let a: Vec<i64> = (0..g.nvars()).map(|_| rng.gen_range(1..=50)).collect();
        let hits = gamma
            .dual_fan()
            .iter()
            .filter(|(_, c)| c.contains(&a))
            .count();
        if hits != 1 {
            ok = false;
            detail = format!("covector {a:?} hit {hits} cones");
            break;
        }
    }
    checks.push(check("fan-partition", ok, detail));
    Ok(())
}

/// Truncated-zeta identities: the limit matches the chi shortcut and is
/// independent of the admissible linear form.
fn truncated_suite(checks: &mut Vec<Check>, datum: &ResolutionDatum) -> Result<(), CliError> {
    let diag = RelOpenCone::new(
        datum.p,
        vec![{
            let mut v = vec![0i64; datum.p];
            v[0] = 1;
            v[1] = -1;
            v
        }],
        (0..datum.p)
            .map(|i| {
                let mut v = vec![0i64; datum.p];
                v[i] = 1;
                v
            })
            .collect(),
    );
    let orthant = RelOpenCone::open_orthant(datum.p);
    let ells: [Vec<i64>; 2] = [vec![1, 1], vec![2, 3]];
    for (cone_name, cone) in [("diagonal-ray", &diag), ("open-orthant", &orthant)] {
        let s = resolution::truncated_nearby(datum, cone, false)?;
        let mut ok = true;
        let mut detail = String::new();
        for ell in &ells {
            let z = resolution::truncated_zeta(datum, cone, ell, false)?;
            if z.limit_t_infinity() != s {
                ok = false;
                detail = format!("ell = {ell:?}");
            }
        }
        checks.push(check(
            &format!("truncated-limit-{cone_name}-ell-independent"),
            ok,
            detail,
        ));
    }
    Ok(())
}

/// Route independence for the two-variable sum against a product pair.
fn pair_suite(checks: &mut Vec<Check>, a: u32, b: u32) -> Result<(), CliError> {
    let fam: ResolutionFamily = fixtures::pair_product(a, b);
    truncated_suite(checks, &fam.main)?;

    let direct = composer::nearby_report(
        &SparsePoly::parse(&format!("x^{a} + y^{b}"), &["x", "y"])?,
        &FSpec::Coordinates,
        1,
    )?;
    let via = composer::nearby_report(
        &SparsePoly::parse("y1 + y2", &["y1", "y2"])?,
        &FSpec::Resolution(&fam),
        1,
    )?;
    let lcm = (a * b / gcd(a, b)) as i64;
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=lcm {
        let l1 = lefschetz_number(&direct.total, n)?;
        let l2 = lefschetz_number(&via.total, n)?;
        let l3 = eigenvalue_lambda(a, b, n);
        if l1 != l2 || l1 != l3 {
            ok = false;
            detail = format!("n={n}: direct {l1}, resolution {l2}, eigenvalues {l3}");
        }
    }
    checks.push(check("thom-sebastiani-route-independence", ok, detail));

    let at_lcm = lefschetz_number(&direct.total, lcm)?;
    let expected = a as i64 + b as i64 - (a * b) as i64;
    checks.push(check(
        "lambda-at-lcm",
        at_lcm == expected,
        format!("{at_lcm} vs {expected}"),
    ));
    Ok(())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact eigenvalue-sum oracle: the character sum over the known monodromy
/// eigenvalues factors into one geometric sum per branch exponent, each of
/// which is `m - 1` on multiples of `m` and `-1` otherwise.
fn eigenvalue_lambda(a: u32, b: u32, n: i64) -> i64 {
    let s = |m: u32| -> i64 {
        if n % m as i64 == 0 {
            m as i64 - 1
        } else {
            -1
        }
    };
    1 - s(a) * s(b)
}
