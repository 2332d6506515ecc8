//! Command-line interface: Newton-polyhedron reports, non-degeneracy probes,
//! zeta series on resolution data, cone-truncated classes, nearby-cycle
//! reports, jet counts, and the cross-check suites.

mod compare;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use motzeta::classes::{self, ClassError};
use motzeta::composer::{self, ComposerError, FSpec};
use motzeta::cones::{parse_linear_form, ConeError, RelOpenCone};
use motzeta::jets::{self, JetError};
use motzeta::newton::{self, NewtonError};
use motzeta::poly::{PolyError, SparsePoly};
use motzeta::resolution::{self, FuncSel, ResolutionError, ResolutionFamily};
use motzeta::srseries::SeriesError;

#[derive(Parser)]
#[command(name = "motzeta", version, about = "Newton-polyhedron zeta and nearby-cycle calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial text, e.g. "x^2 + y^3"
    polynomial: String,
    /// Comma-separated variable order; inferred from the text when omitted
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Compact faces, coordinate tags and the dual fan of the Newton polyhedron
    Newton {
        #[command(flatten)]
        poly: PolyArgs,
        /// Include per-face non-degeneracy statuses
        #[arg(long)]
        nondeg: bool,
        #[arg(long)]
        json: bool,
    },
    /// Per-face non-degeneracy statuses (strong and Kouchnirenko predicates)
    Nondeg {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        json: bool,
    },
    /// Zeta series of a resolution datum, with an optional coefficient table
    Zeta {
        /// Resolution JSON file
        #[arg(long)]
        resolution: String,
        /// Function selector: "total" or a 0-based index
        #[arg(long, default_value = "total")]
        which: String,
        /// Print the coefficient table up to this order
        #[arg(long)]
        order: Option<u32>,
        /// Primes for the point-count realization of the coefficients
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        q: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Cone-truncated zeta series and its limit class
    Truncated {
        #[arg(long)]
        resolution: String,
        /// Cone literal, e.g. "2a=3b; a>0; b>0"
        #[arg(long)]
        cone: String,
        /// Linear form, e.g. "a+b"; defaults to the sum of the variables
        #[arg(long)]
        ell: Option<String>,
        /// Keep only strata over the common zero locus
        #[arg(long)]
        restrict: bool,
        #[arg(long)]
        json: bool,
    },
    /// Nearby-cycle face decomposition of a composition
    Nearby {
        #[command(flatten)]
        poly: PolyArgs,
        /// Resolution family JSON for the inner functions; coordinates when omitted
        #[arg(long)]
        resolution: Option<String>,
        /// Extend the Lefschetz table at least this far
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force jet counts (single order, or comma list with ";"-separated polynomials)
    Jets {
        #[command(flatten)]
        poly: PolyArgs,
        /// Contact order(s)
        #[arg(long, value_delimiter = ',')]
        order: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "3")]
        q: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Run the cross-check identity suites on a shipped fixture
    Compare {
        /// line | node | cusp | coords | pair23 | pair25 | pair34
        #[arg(long)]
        fixture: String,
        /// Seed for the randomized fan-partition check
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Error classes mapped to exit codes: input 1, refused 2, inconsistent 3.
enum CliError {
    Input(String),
    Refused(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Refused(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Refused(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<NewtonError> for CliError {
    fn from(e: NewtonError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::Parse(_) | ConeError::DimensionMismatch | ConeError::NegativeMapEntry => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<ResolutionError> for CliError {
    fn from(e: ResolutionError) -> Self {
        match e {
            ResolutionError::Invalid(_) => CliError::Input(e.to_string()),
            ResolutionError::Cone(c) => c.into(),
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<JetError> for CliError {
    fn from(e: JetError) -> Self {
        match e {
            JetError::GuardExceeded { .. } => CliError::Refused(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ClassError> for CliError {
    fn from(e: ClassError) -> Self {
        match e {
            ClassError::InconsistentTable => CliError::Internal(e.to_string()),
            ClassError::BoundsExceeded { .. } | ClassError::DegenerateHypersurface => {
                CliError::Refused(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ComposerError> for CliError {
    fn from(e: ComposerError) -> Self {
        match e {
            ComposerError::DegenerateFace => CliError::Refused(e.to_string()),
            ComposerError::MissingRestriction(_) => CliError::Input(e.to_string()),
            ComposerError::Newton(n) => n.into(),
            ComposerError::Poly(p) => p.into(),
            ComposerError::Resolution(r) => r.into(),
            ComposerError::Class(c) => c.into(),
            _ => CliError::Refused(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

/// Variables in order of first appearance in the text.
fn infer_vars(text: &str) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = text[start..i].to_string();
            if !vars.contains(&name) {
                vars.push(name);
            }
        } else {
            i += 1;
        }
    }
    vars
}

fn parse_poly_args(args: &PolyArgs) -> Result<(Vec<String>, Vec<SparsePoly>), CliError> {
    let vars = args
        .vars
        .clone()
        .unwrap_or_else(|| infer_vars(&args.polynomial));
    if vars.is_empty() {
        return Err(CliError::Input("no variables found".into()));
    }
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let polys = args
        .polynomial
        .split(';')
        .map(|part| SparsePoly::parse(part.trim(), &var_refs))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((vars, polys))
}

fn load_family(path: &str) -> Result<ResolutionFamily, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read `{path}`: {e}")))?;
    Ok(ResolutionFamily::from_json(&text)?)
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Newton { poly, nondeg, json } => {
            let (vars, polys) = parse_poly_args(&poly)?;
            let report = newton::face_report(&polys[0], nondeg)?;
            if json {
                let value = serde_json::json!({ "vars": vars, "faces": report });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                for f in &report {
                    println!(
                        "face dim {} vertices {:?} J {:?} weights {:?} degree {} dual {:?}",
                        f.dim, f.vertices, f.j_set, f.weights, f.degree, f.dual_cone_generators
                    );
                    if let Some(nd) = &f.nondeg {
                        println!(
                            "  strong: {}  kouchnirenko: {}",
                            status_text(&nd.strong),
                            status_text(&nd.kouchnirenko)
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Nondeg { poly, json } => run(Command::Newton {
            poly,
            nondeg: true,
            json,
        }),
        Command::Zeta {
            resolution,
            which,
            order,
            q,
            json,
        } => {
            let family = load_family(&resolution)?;
            let datum = &family.main;
            let sel = match which.as_str() {
                "total" => FuncSel::Total,
                idx => FuncSel::Single(
                    idx.parse::<usize>()
                        .map_err(|_| CliError::Input(format!("bad --which `{idx}`")))?,
                ),
            };
            let series = resolution::zeta_series(datum, sel)?;
            let nearby = resolution::nearby_cycles(datum, sel)?;
            let mut table = Vec::new();
            if let Some(order) = order {
                for n in 1..=order {
                    let coeff = series.coefficient(n);
                    let mut counts = BTreeMap::new();
                    for &qq in &q {
                        let c = classes::count_points(&coeff, qq)?;
                        let scale = num_bigint_pow(qq, n * datum.dim as u32);
                        counts.insert(qq, format_rational(&(c * scale)));
                    }
                    table.push((n, counts));
                }
            }
            if json {
                let value = serde_json::json!({
                    "series": series,
                    "series_text": series.to_string(),
                    "nearby_cycles": nearby,
                    "nearby_text": nearby.to_string(),
                    "coefficient_counts": table
                        .iter()
                        .map(|(n, c)| serde_json::json!({"n": n, "scaled_counts": c}))
                        .collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                println!("Z(T) = {series}");
                println!("nearby cycles = {nearby}");
                for (n, counts) in &table {
                    println!("  coeff T^{n}: scaled counts {counts:?}");
                }
            }
            Ok(())
        }
        Command::Truncated {
            resolution,
            cone,
            ell,
            restrict,
            json,
        } => {
            let family = load_family(&resolution)?;
            let datum = &family.main;
            let (c, mut names) = RelOpenCone::parse(&cone, datum.p)?;
            let ell_vec = match ell {
                Some(text) => parse_linear_form(&text, &mut names, datum.p)?,
                None => vec![1; datum.p],
            };
            let series = resolution::truncated_zeta(datum, &c, &ell_vec, restrict)?;
            let class = resolution::truncated_nearby(datum, &c, restrict)?;
            let limit = series.limit_t_infinity();
            if limit != class {
                return Err(CliError::Internal(
                    "limit of the truncated series disagrees with the chi shortcut".into(),
                ));
            }
            if json {
                let value = serde_json::json!({
                    "series": series,
                    "series_text": series.to_string(),
                    "limit_class": class,
                    "limit_text": class.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                println!("Z^C(T) = {series}");
                println!("S^C    = {class}");
            }
            Ok(())
        }
        Command::Nearby {
            poly,
            resolution,
            order,
            json,
        } => {
            let (vars, polys) = parse_poly_args(&poly)?;
            let family = resolution.map(|p| load_family(&p)).transpose()?;
            let fspec = match &family {
                Some(f) => FSpec::Resolution(f),
                None => FSpec::Coordinates,
            };
            let report = composer::nearby_report(&polys[0], &fspec, order)?;
            if json {
                let value = serde_json::json!({
                    "vars": vars,
                    "contributions": report.contributions,
                    "lambda_table": report.lambda_table,
                    "zeta": report.zeta,
                    "euler_fiber": report.euler_fiber,
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                for c in &report.contributions {
                    let j_names: Vec<&str> =
                        c.j_set.iter().map(|&j| vars[j].as_str()).collect();
                    println!(
                        "J = {:?}, face {:?} (dim {}), cone chi {}, atoms {}",
                        j_names, c.face_vertices, c.face_dim, c.coefficient, c.atoms
                    );
                }
                println!("Lambda(1..{}) = {:?}", report.lambda_table.len(), report.lambda_table);
                println!("zeta(t) = {}", report.zeta);
                println!("chi(fiber) = {}", report.euler_fiber);
            }
            Ok(())
        }
        Command::Jets {
            poly,
            order,
            q,
            json,
        } => {
            let (_, polys) = parse_poly_args(&poly)?;
            if order.is_empty() {
                return Err(CliError::Input("--order is required".into()));
            }
            if polys.len() != order.len() && !(polys.len() == 1 && order.len() == 1) {
                return Err(CliError::Input(
                    "number of orders must match the number of polynomials".into(),
                ));
            }
            let mut rows = Vec::new();
            for &qq in &q {
                if polys.len() == 1 {
                    let c = jets::jet_count(&polys[0], order[0], qq)?;
                    rows.push(serde_json::json!({
                        "q": qq,
                        "total": c.total,
                        "by_ac": c.by_ac,
                    }));
                } else {
                    let total = jets::multi_jet_count(&polys, &order, qq)?;
                    rows.push(serde_json::json!({ "q": qq, "total": total }));
                }
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({ "counts": rows })).unwrap()
                );
            } else {
                for r in &rows {
                    println!("{r}");
                }
            }
            Ok(())
        }
        Command::Compare {
            fixture,
            seed,
            json,
        } => compare::run(&fixture, seed, json),
    }
}

fn status_text(s: &motzeta::nondeg::FaceStatus) -> String {
    serde_json::to_string(s).unwrap()
}

fn format_rational(x: &num_rational::BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn num_bigint_pow(q: u64, e: u32) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(num_bigint::BigInt::from(q).pow(e))
}
