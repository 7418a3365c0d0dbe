//! Descent of a class over `K = F(√b)` with trivial Frobenius image to a sum
//! of at most `2m − 1` symbols over `F`.

use crate::brauer::{e2, frobenius_map, BrauerClass};
use crate::fields::StepKind;
use crate::forms::{equivalent, is_hyperbolic, QuadraticForm};
use crate::transfer::{arf_trivialize_descent, descend_form_search, transfer_quadratic, TransferFunctional};
use crate::{Decision, Error, Result};

use super::{pfister_rewrite_norm, Checks, SymbolLengthCertificate};

/// `A = Σ [aᵢ, zᵢ)` over `K`. Builds `φ = ⊥ λᵢ⟨⟨zᵢ, aᵢ]]` with `aᵢ ∈ F`,
/// shows `s_*(φ)` hyperbolic, descends `φ` to a trivial-Arf `ψ` over `F`
/// and returns the symbols of `e2(ψ)`.
pub fn descend_brauer_class(a: &BrauerClass) -> Result<SymbolLengthCertificate> {
    let k = a.field().clone();
    if k.top_step().map(|s| s.kind) != Some(StepKind::Inseparable) {
        return Err(Error::Precondition("class must live over an inseparable quadratic extension".into()));
    }
    let f = k.below().unwrap();
    let s = TransferFunctional::new(&k)?;
    let b = k.step_parameter().unwrap();
    let m = a.len();
    let bound = (2 * m).saturating_sub(1);
    let mut checks = Checks::default();

    match frobenius_map(a, &f)?.is_trivial()? {
        Decision::No => return Err(Error::FrobeniusNontrivial),
        d => checks.push("Frobenius image trivial", d),
    }
    if m == 0 {
        return Ok(SymbolLengthCertificate::new(&f, vec![], bound, checks));
    }

    // aᵢ ↦ aᵢ² lands in F since K² ⊆ F
    let level = f.depth();
    let mut phi = QuadraticForm::zero_dim(&k);
    let mut norm_sum = f.zero();
    let mut parts = Vec::new();
    for sym in a.symbols() {
        let ai = match sym.a().lower_to(level) {
            Some(x) => x,
            None => sym.a().square().lower_to(level).unwrap(),
        };
        let (x, y) = sym.b().components().unwrap();
        let lambda = if y.is_zero() { k.one() } else { y.inv()?.embed_into(&k)? };
        let pf = QuadraticForm::pfister(&k, std::slice::from_ref(sym.b()), &ai.embed_into(&k)?)?.scale(&lambda)?;
        phi = phi.orth_sum(&pf)?;
        if !y.is_zero() {
            let (c, w) = pfister_rewrite_norm(&x, &y, &ai, &b)?;
            checks.push_bool(format!("norm rewrite isometry for {sym}"), w.verify());
            norm_sum = &norm_sum + &c;
        }
        parts.push((ai, x, y, pf));
    }
    checks.push("e2(φ) = A", e2(&phi)?.equal(a)?);

    let t = transfer_quadratic(&s, &phi)?.form;
    for (ai, x, y, pf) in &parts {
        if y.is_zero() {
            continue;
        }
        let n = &x.square() + &(&b * &y.square());
        let expect = QuadraticForm::pfister(&f, std::slice::from_ref(&n), ai)?.orth_sum(&QuadraticForm::hyperbolic(&f, 2))?;
        let got = transfer_quadratic(&s, pf)?.form;
        checks.push(format!("s_* of summand ≅ ⟨⟨{n}, {ai}]] ⊥ 2H"), equivalent(&got, &expect, None)?);
    }
    let residue = BrauerClass::symbol(&norm_sum, &b)?;
    checks.push(format!("e2(⟨⟨b, Σc]]) = [{norm_sum}, {b}) trivial"), residue.is_trivial()?);
    checks.push("s_*(φ) hyperbolic", is_hyperbolic(&t, None)?.decision);

    let Some(found) = descend_form_search(&phi, None)? else {
        checks.push("descent search", Decision::Unknown("no ψ within budget".into()));
        return Ok(SymbolLengthCertificate::new(&f, vec![], bound, checks));
    };
    let (psi, _) = arf_trivialize_descent(&found.psi, &k)?;
    checks.push_bool("ψ has trivial Arf invariant", psi.arf().is_trivial());
    let h = e2(&psi)?.simplify();
    checks.push("A = e2(ψ)_K", a.equal(&h.restrict(&k)?)?);
    Ok(SymbolLengthCertificate::new(&f, h.symbols().to_vec(), bound, checks))
}

