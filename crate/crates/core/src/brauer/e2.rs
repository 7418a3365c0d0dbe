use crate::forms::QuadraticForm;
use crate::{Error, Result};

use super::{BrauerClass, QuaternionSymbol};

/// Clifford invariant of a form with trivial Arf invariant.
///
/// Blocks `[0,b]` are hyperbolic and dropped. For the remaining
/// `[a1,b1] ⊥ … ⊥ [an,bn]` the form is Witt equivalent to
/// `⊥_{i<n} aᵢ⟨⟨aᵢaₙ, aᵢbᵢ]]`, so the class is `Σ_{i<n} [aᵢbᵢ, aᵢaₙ)`.
pub fn e2(phi: &QuadraticForm) -> Result<BrauerClass> {
    if !phi.arf().is_trivial() {
        return Err(Error::NontrivialArf);
    }
    let blocks: Vec<_> = phi.blocks().iter().filter(|(a, _)| !a.is_zero()).collect();
    let mut out = BrauerClass::trivial(phi.field());
    let Some(((an, _), rest)) = blocks.split_last() else { return Ok(out) };
    for &(a, b) in rest {
        out.push(QuaternionSymbol::new(&(a * b), &(a * an))?)?;
    }
    Ok(out)
}
