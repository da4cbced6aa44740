//! Exact rational Khovanov homology of link diagrams, together with the
//! genus and Rasmussen invariant of knots that admit a diagram with at most
//! one negative crossing.
//!
//! The pipeline is: [`diagram`] (PD parsing, orientation, signs) →
//! [`seifert`] (Seifert circles, classification) → [`cube`] (smoothings)
//! → [`complex`] and [`homology`] (chain complex, exact ranks) →
//! [`jones`] and [`invariants`].

pub mod complex;
pub mod cube;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod invariants;
pub mod jones;
pub mod poly;
pub mod rank;
pub mod seifert;
pub mod union_find;

pub use complex::{build_complex, ChainComplex, Generator, DEFAULT_MAX_CROSSINGS};
pub use cube::{edges, resolve, seifert_state_index, CubeEdge, EdgeKind, State};
pub use diagram::{braid_to_pd, derive_signs, parse_pd, Crossing, Diagram, Sign};
pub use error::{Error, Result};
pub use homology::{homology_dims, kh, kh_with_raw, normalize, Flavor, HomologyTable};
pub use invariants::{
    check_crossing_change_bounds, check_lemma_vanishing, check_support, genus_from_diagram,
    rasmussen_from_diagram, report, Budget, Check, Formula, InvariantReport, Verdict,
};
pub use jones::{jones_from_kh, jones_oracle, DEFAULT_ORACLE_MAX};
pub use poly::{LaurentPolynomial, Variable};
pub use seifert::{canonical_genus, classify, seifert, Case, PositivityClass, SeifertData};
