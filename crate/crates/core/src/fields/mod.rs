//! Exact arithmetic: GF(2^k), polynomials, rational functions, towers of
//! quadratic extensions, ℘-reduction, places and Laurent expansions.

pub mod display;
pub mod gf;
pub mod laurent;
pub mod places;
pub mod poly;
pub mod ratfunc;
pub mod tower;
pub mod wp;

pub use gf::Gf;
pub use laurent::{complete_at, residue, residue_log, LaurentSeries};
pub use places::{enumerate_places, Place, ResidueField};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use tower::{ExtensionStep, Field, FieldElement, StepKind};
