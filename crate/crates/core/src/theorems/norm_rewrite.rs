//! `⟨⟨x²+by², a]] ≅ ⟨⟨b, c]]` with an explicit isometry.

use crate::fields::FieldElement;
use crate::forms::relations::{apply, Rule};
use crate::forms::{IsometryWitness, QuadraticForm};
use crate::{Error, Result};

/// Returns `c` (`a` if `x = 0`, else `a(1 + x²/(x²+by²))`) and an isometry
/// from `⟨⟨x²+by², a]]` onto `⟨⟨b, c]]`, composed from block rewrites:
/// rescale by `x`, merge, rescale by `1/x` and `1/y`.
pub fn pfister_rewrite_norm(
    x: &FieldElement,
    y: &FieldElement,
    a: &FieldElement,
    b: &FieldElement,
) -> Result<(FieldElement, IsometryWitness)> {
    let f = a.field();
    let n = &x.square() + &(b * &y.square());
    if n.is_zero() || b.is_zero() {
        return Err(Error::Precondition("x² + by² and b must be nonzero".into()));
    }
    let source = QuadraticForm::pfister(f, std::slice::from_ref(&n), a)?;
    let mut w = IsometryWitness::identity(&source);
    let step = |rule: Rule, pos: usize, w: &mut IsometryWitness| -> Result<()> {
        let (_, next) = apply(&w.target, &rule, pos)?;
        *w = w.then(&next)?;
        Ok(())
    };
    let c = if x.is_zero() {
        a.clone()
    } else {
        a * &(&f.one() + &(&x.square() / &n))
    };
    if x.is_zero() {
        step(Rule::Rescale(y.inv()?), 1, &mut w)?;
    } else {
        step(Rule::Rescale(x.clone()), 0, &mut w)?;
        step(Rule::Merge, 0, &mut w)?;
        step(Rule::Rescale(x.inv()?), 0, &mut w)?;
        if !y.is_zero() {
            step(Rule::Rescale(y.inv()?), 1, &mut w)?;
        } else {
            // [0, a/x²] → [0,0] ← [b, 0]
            let q = w.target.blocks()[1].1.clone();
            step(Rule::Shift(q), 1, &mut w)?;
            let target = QuadraticForm::pfister(f, std::slice::from_ref(b), &c)?;
            let (_, s1) = apply(&target, &Rule::Swap, 1)?;
            let (_, s2) = apply(&s1.target, &Rule::Shift(b.clone()), 1)?;
            let back = s1.then(&s2)?.inverse().ok_or_else(|| Error::Precondition("singular rewrite".into()))?;
            w = w.then(&back)?;
        }
    }
    let target = QuadraticForm::pfister(f, std::slice::from_ref(b), &c)?;
    if w.target != target {
        return Err(Error::Precondition(format!("rewrite chain ended at {}, expected {target}", w.target)));
    }
    Ok((c, w))
}
