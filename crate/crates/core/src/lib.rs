//! Exact quadratic-form and quaternion-algebra computations over fields of
//! characteristic 2.
//!
//! The crate is layered bottom-up:
//!
//! * [`fields`]: GF(2^k), rational function fields GF(2^k)(t) and short
//!   towers of inseparable / Artin–Schreier quadratic extensions, plus
//!   places, Laurent completions and residues.
//! * [`forms`]: nonsingular quadratic forms `[a1,b1] ⊥ ... ⊥ [an,bn]`,
//!   diagonal bilinear forms, Arf invariants, isotropy and hyperbolicity.
//! * [`transfer`]: transfers along quadratic extensions and descent search.
//! * [`brauer`]: quaternion symbols `[a,b)`, 2-torsion Brauer classes,
//!   Schmid local invariants, the Frobenius map and the Clifford invariant.
//! * [`theorems`]: executable pipelines with machine-checked certificates
//!   and a seeded trial runner.

pub mod brauer;
pub mod decision;
pub mod error;
pub mod fields;
pub mod forms;
pub mod theorems;
pub mod transfer;

pub use decision::Decision;
pub use error::{Error, Result};
