//! Elementary block isometries.

use crate::fields::FieldElement;
use crate::{Error, Result};

use super::{IsometryWitness, Matrix, QuadraticForm};

#[derive(Clone, Debug)]
pub enum Rule {
    /// `[a,b] ≅ [aλ², b/λ²]` via `(X,Y) ↦ (X/λ, λY)`.
    Rescale(FieldElement),
    /// `[a,b] ≅ [a, b + aw² + w]` via `(X,Y) ↦ (X + wY, Y)`.
    Shift(FieldElement),
    /// `[u,p] ⊥ [v,q] ≅ [u, p+q] ⊥ [u+v, q]` on blocks `i, i+1`.
    Merge,
    /// `[a,b] ≅ [b,a]`.
    Swap,
}

/// Applies `rule` at block `position`.
pub fn apply(phi: &QuadraticForm, rule: &Rule, position: usize) -> Result<(QuadraticForm, IsometryWitness)> {
    let f = phi.field();
    let nb = phi.blocks().len();
    let span = if matches!(rule, Rule::Merge) { 2 } else { 1 };
    if position + span > nb {
        return Err(Error::Precondition(format!("block position {position} out of range")));
    }
    let mut blocks = phi.blocks().to_vec();
    let (a, b) = blocks[position].clone();
    let local = match rule {
        Rule::Rescale(l) => {
            if l.is_zero() {
                return Err(Error::ZeroElement("rescaling factor"));
            }
            let l2 = l.square();
            blocks[position] = (&a * &l2, &b / &l2);
            Matrix::from_rows(f, vec![vec![l.inv()?, f.zero()], vec![f.zero(), l.clone()]])?
        }
        Rule::Shift(w) => {
            blocks[position] = (a.clone(), &(&b + &(&a * &w.square())) + w);
            Matrix::from_rows(f, vec![vec![f.one(), w.clone()], vec![f.zero(), f.one()]])?
        }
        Rule::Merge => {
            let (v, q) = blocks[position + 1].clone();
            blocks[position] = (a.clone(), &b + &q);
            blocks[position + 1] = (&a + &v, q);
            let (o, z) = (f.one(), f.zero());
            Matrix::from_rows(
                f,
                vec![
                    vec![o.clone(), z.clone(), o.clone(), z.clone()],
                    vec![z.clone(), o.clone(), z.clone(), z.clone()],
                    vec![z.clone(), z.clone(), o.clone(), z.clone()],
                    vec![z.clone(), o.clone(), z.clone(), o.clone()],
                ],
            )?
        }
        Rule::Swap => {
            blocks[position] = (b.clone(), a.clone());
            Matrix::from_rows(f, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]])?
        }
    };
    let target = QuadraticForm::new(f, blocks)?;
    let matrix = Matrix::embed(&local, 2 * position, phi.dim());
    Ok((target.clone(), IsometryWitness { matrix, source: phi.clone(), target }))
}

/// `[1,x] ≅ [1,x']` when `x + x' ∈ ℘(F)`; errors otherwise.
pub fn shift_to(phi: &QuadraticForm, position: usize, new_b: &FieldElement) -> Result<(QuadraticForm, IsometryWitness)> {
    let (a, b) = phi.blocks().get(position).ok_or_else(|| Error::Precondition("block position".into()))?;
    // b + aw² + w = new_b  ⇔  ℘(aw) = a(b + new_b)
    let target = a * &(b + new_b);
    let z = target.wp_solve().ok_or_else(|| Error::Precondition("shift is not in ℘(F)".into()))?;
    if a.is_zero() {
        return Err(Error::Precondition("shift on a block with a = 0".into()));
    }
    apply(phi, &Rule::Shift(&z / a), position)
}
