//! Tightness of simplicial complexes.
//!
//! The crate bundles several ways of deciding whether a finite simplicial
//! complex is tight with respect to a coefficient field:
//!
//! * [`oracle`] checks the definition directly by looping over every vertex
//!   subset. It is exponential and serves as ground truth.
//! * [`decide::decide_tight_3`] is the polynomial-time procedure for
//!   combinatorial 3-manifolds, based on the classification of vertex links
//!   and the closed formula for their `σ₀`.
//! * [`decide::decide_tight_4`] handles 4-manifolds by computing `μ₁` with the
//!   treewidth dynamic program in [`sigma_fpt`].
//! * [`tight_fpt::decide_tight_f2`] decides `F₂`-tightness of weak
//!   pseudomanifolds of any fixed dimension with a dynamic program over a nice
//!   tree decomposition of the dual graph.
//!
//! Supporting modules provide the complex representation ([`complex`]),
//! exact homology ([`homology`]), tree decompositions ([`treewidth`]) and the
//! command-line front end ([`cli`]).

pub mod cli;
pub mod complex;
pub mod decide;
pub mod homology;
mod linalg;
pub mod oracle;
pub mod sigma_fpt;
pub mod tight_fpt;
pub mod treewidth;

pub use complex::{Face, Graph, SimplicialComplex, VertexId};
pub use decide::{decide_auto, Algorithm, Certificate, FieldChoice, Method, ReasonCode, TightnessReport, Verdict};
pub use homology::FieldSpec;

/// Exact rational numbers used for `σ` and `μ` values.
pub type Rational = num_rational::BigRational;

/// Renders a rational as `p/q`, always with a denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

