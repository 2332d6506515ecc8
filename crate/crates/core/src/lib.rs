//! Exact-arithmetic toolkit for Newton-polyhedron singularity invariants.
//!
//! The crate computes, over the rationals and with no floating point anywhere:
//!
//! * sparse multivariate (Laurent) polynomial arithmetic and parsing ([`poly`]),
//! * Newton polyhedra, their compact faces, dual fans and non-degeneracy
//!   probes ([`newton`], [`nondeg`]),
//! * relatively open rational cones, their compactly supported Euler
//!   characteristics and lattice-point generating series ([`cones`]),
//! * the module of rational series spanned by products of
//!   `p(e,i) = L^e T^i / (1 - L^e T^i)` together with its `T -> oo` limit
//!   ([`srseries`]),
//! * formal geometric class expressions with Lefschetz-number, monodromy-zeta,
//!   Euler-characteristic and finite-field point-count realizations
//!   ([`classes`]),
//! * zeta series and nearby-cycle classes attached to combinatorial
//!   log-resolution data, including cone-truncated variants ([`resolution`]),
//! * the face-decomposition engine computing nearby cycles of a composition
//!   `P(f)` from the Newton polyhedron of `P` ([`composer`]),
//! * brute-force jet-space point counting over small finite fields as an
//!   independent oracle ([`jets`]).
//!
//! Inner enumeration loops (jet counting, torus probes, per-stratum sums) are
//! data parallel via `rayon` when the default `parallel` feature is enabled;
//! disabling it yields a fully sequential build with identical results.

pub mod classes;
pub mod composer;
pub mod cones;
pub mod fixtures;
pub mod jets;
pub mod lpoly;
pub mod newton;
pub mod nondeg;
pub mod poly;
pub mod resolution;
pub mod srseries;

mod hull;
mod linalg;
pub(crate) mod par;

pub use classes::{Atom, AtomKind, ClassExpr, FactoredZeta};
pub use cones::{ConeMap, RelOpenCone};
pub use lpoly::LPoly;
pub use newton::{FaceData, NewtonPolyhedron};
pub use poly::SparsePoly;
pub use resolution::{FuncSel, ResolutionDatum, ResolutionFamily};
pub use srseries::SrSeries;
