use crate::fields::{Field, StepKind};
use crate::{Error, Result};

use super::{BrauerClass, QuaternionSymbol};

/// `Frob_{K/F}`: `[x,y)_K ↦ [x²,y²)_F` for `K = F(√b)`.
pub fn frobenius_map(c: &BrauerClass, base: &Field) -> Result<BrauerClass> {
    let k = c.field();
    let ok = k.top_step().is_some_and(|s| s.kind == StepKind::Inseparable) && k.below().as_ref() == Some(base);
    if !ok {
        return Err(Error::SquaresNotInBase);
    }
    let mut out = BrauerClass::trivial(base);
    for s in c.symbols() {
        let x = s.a().square().lower_to(base.depth()).ok_or(Error::SquaresNotInBase)?;
        let y = s.b().square().lower_to(base.depth()).ok_or(Error::SquaresNotInBase)?;
        out.push(QuaternionSymbol::new(&x, &y)?)?;
    }
    Ok(out)
}
