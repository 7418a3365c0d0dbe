//! `e2 ∘ s_* = Frob ∘ e2` on trivial-Arf forms over an inseparable quadratic
//! extension.

use crate::brauer::{e2, frobenius_map};
use crate::fields::StepKind;
use crate::forms::QuadraticForm;
use crate::transfer::{transfer_quadratic, TransferFunctional};
use crate::{Error, Result};

use super::Evidence;

pub fn verify_e2_frob_square(s: &TransferFunctional, phi: &QuadraticForm) -> Result<Evidence> {
    if s.kind() != StepKind::Inseparable {
        return Err(Error::Precondition("extension must be inseparable".into()));
    }
    if !phi.arf().is_trivial() {
        return Err(Error::NontrivialArf);
    }
    let mut ev = Evidence::default();
    let t = transfer_quadratic(s, phi)?.form;
    ev.checks.push_bool("transfer has trivial Arf invariant", t.arf().is_trivial());
    let lhs = e2(&t)?.simplify();
    let rhs = frobenius_map(&e2(phi)?, s.base())?.simplify();
    ev.certificates.push(format!("e2(s_*φ) = {lhs}"));
    ev.certificates.push(format!("Frob(e2 φ) = {rhs}"));
    ev.checks.push("e2(s_*φ) = Frob(e2 φ)", lhs.equal(&rhs)?);
    Ok(ev)
}
