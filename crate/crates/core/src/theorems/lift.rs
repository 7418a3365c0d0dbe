//! `A ~ B ⊗ H` over `F` with `H = [a*, b)` split by `K = F(√b)` and `B`
//! descended from `A_K`.

use crate::brauer::{solve_a_for_b, BrauerClass, QuaternionSymbol};
use crate::fields::FieldElement;
use crate::{Decision, Error, Result};

use super::{descend_brauer_class, SymbolLengthCertificate};

/// `a_k` is a presentation of `A_K` by `m` symbols (the restriction of `A`'s
/// own symbols when absent). The bound is `2m`, or 1 when `A_K` is given by
/// no symbols.
pub fn lift_symbols_insep_quad(
    a: &BrauerClass,
    b: &FieldElement,
    a_k: Option<&BrauerClass>,
) -> Result<SymbolLengthCertificate> {
    let (mut cert, residual) = lift_parts(a, b, a_k)?;
    cert.symbols.extend(residual);
    cert.checks.push("A = certificate", a.equal(&cert.class()?)?);
    Ok(cert)
}

/// The descended symbols and, separately, the residual `[a*, b)`, with
/// `a* = 0` when the residual class is trivial. Absent only when no `a*` was
/// found.
pub(crate) fn lift_parts(
    a: &BrauerClass,
    b: &FieldElement,
    a_k: Option<&BrauerClass>,
) -> Result<(SymbolLengthCertificate, Option<QuaternionSymbol>)> {
    let f = a.field().clone();
    if b.field() != &f {
        return Err(Error::TowerMismatch("slot b must lie in the class field".into()));
    }
    let k = f.adj_sqrt(b)?;
    let restricted = a.restrict(&k)?;
    let a_k = a_k.cloned().unwrap_or_else(|| restricted.clone());
    let m = a_k.len();
    let mut cert = descend_brauer_class(&a_k)?;
    cert.bound = (2 * m).max(1);
    cert.checks.push("given presentation equals A_K", a_k.equal(&restricted)?);

    let mut residual = a.clone();
    for h in &cert.symbols {
        residual.push(h.clone())?;
    }
    cert.checks.push("(A + ΣHᵢ)_K trivial", residual.restrict(&k)?.is_trivial()?);
    let last = match residual.is_trivial()? {
        Decision::Yes => Some(QuaternionSymbol::new(&f.zero(), b)?),
        _ => match solve_a_for_b(&residual, b)? {
            Some(x) => Some(QuaternionSymbol::new(&x, b)?),
            None => {
                cert.checks.push("residual [a*, b)", Decision::Unknown("no a* found".into()));
                None
            }
        },
    };
    Ok((cert, last))
}
