//! Quaternion symbols `[a,b)` and classes in Br₂(F).
//!
//! Equality of classes over GF(2^k)(t) and over purely inseparable towers
//! above it is decided by Schmid local invariants; over finite fields every
//! class is trivial.

pub mod class;
pub mod e2;
pub mod frobenius;
pub mod local;
pub mod solve;
pub mod symbol;

pub use class::BrauerClass;
pub use e2::e2;
pub use frobenius::frobenius_map;
pub use local::{local_invariant, LocalInvariantVector};
pub use solve::{solve_a_for_b, solve_b_for_a};
pub use symbol::QuaternionSymbol;

use crate::{Decision, Result};

/// Whether `[a,b)` is split.
pub fn split_test(q: &QuaternionSymbol) -> Result<Decision> {
    BrauerClass::new(q.field(), vec![q.clone()])?.is_trivial()
}
