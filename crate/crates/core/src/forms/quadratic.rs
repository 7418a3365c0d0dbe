use std::fmt;

use crate::fields::{Field, FieldElement};
use crate::{Error, Result};

use super::bilinear::BilinearForm;

/// `[a1,b1] ⊥ … ⊥ [an,bn]` where `[a,b] = aX² + XY + bY²`.
///
/// Coordinates are ordered `(X1, Y1, X2, Y2, …)`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Field,
    blocks: Vec<(FieldElement, FieldElement)>,
}

/// Class of an element modulo ℘(F).
#[derive(Clone, Debug)]
pub struct ArfClass {
    rep: FieldElement,
}

impl ArfClass {
    pub fn representative(&self) -> &FieldElement {
        &self.rep
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.in_wp()
    }

    pub fn same_class(&self, other: &ArfClass) -> Result<bool> {
        Ok(self.rep.checked_add(&other.rep)?.in_wp())
    }
}

impl fmt::Display for ArfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "trivial (rep {})", self.rep)
        } else {
            write!(f, "nontrivial (rep {})", self.rep)
        }
    }
}

impl QuadraticForm {
    pub fn new(field: &Field, blocks: Vec<(FieldElement, FieldElement)>) -> Result<Self> {
        for (a, b) in &blocks {
            if a.field() != field || b.field() != field {
                return Err(Error::TowerMismatch("block coefficient outside the form's field".into()));
            }
        }
        Ok(QuadraticForm { field: field.clone(), blocks })
    }

    pub fn zero_dim(field: &Field) -> Self {
        QuadraticForm { field: field.clone(), blocks: Vec::new() }
    }

    /// `[a,b]`.
    pub fn block(a: &FieldElement, b: &FieldElement) -> Result<Self> {
        QuadraticForm::new(a.field(), vec![(a.clone(), b.clone())])
    }

    /// `n` copies of the hyperbolic plane `[0,0]`.
    pub fn hyperbolic(field: &Field, planes: usize) -> Self {
        QuadraticForm { field: field.clone(), blocks: vec![(field.zero(), field.zero()); planes] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn blocks(&self) -> &[(FieldElement, FieldElement)] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        2 * self.blocks.len()
    }

    pub fn orth_sum(&self, other: &QuadraticForm) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::TowerMismatch("orthogonal sum".into()));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Ok(QuadraticForm { field: self.field.clone(), blocks })
    }

    /// `λφ`: each `[a,b]` becomes `[λa, b/λ]`.
    pub fn scale(&self, lambda: &FieldElement) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroElement("scalar"));
        }
        let inv = lambda.inv()?;
        let blocks = self
            .blocks
            .iter()
            .map(|(a, b)| Ok((lambda.checked_mul(a)?, b.checked_mul(&inv)?)))
            .collect::<Result<_>>()?;
        Ok(QuadraticForm { field: self.field.clone(), blocks })
    }

    /// `⟨a1,…,an⟩_b ⊗ φ = a1φ ⊥ … ⊥ anφ`.
    pub fn tensor(b: &BilinearForm, phi: &QuadraticForm) -> Result<Self> {
        if b.field() != phi.field() {
            return Err(Error::TowerMismatch("tensor product".into()));
        }
        let mut out = QuadraticForm::zero_dim(phi.field());
        for d in b.diagonal() {
            out = out.orth_sum(&phi.scale(d)?)?;
        }
        Ok(out)
    }

    /// `⟨⟨u1,…,u_{n-1},v]] = ⟨1,u1⟩ ⊗ … ⊗ ⟨1,u_{n-1}⟩ ⊗ [1,v]`.
    pub fn pfister(field: &Field, slots: &[FieldElement], v: &FieldElement) -> Result<Self> {
        let mut phi = QuadraticForm::block(&field.one(), v)?;
        if v.field() != field {
            return Err(Error::TowerMismatch("Pfister slot".into()));
        }
        for u in slots.iter().rev() {
            if u.is_zero() {
                return Err(Error::ZeroElement("Pfister slot"));
            }
            phi = QuadraticForm::tensor(&BilinearForm::new(field, vec![field.one(), u.clone()])?, &phi)?;
        }
        Ok(phi)
    }

    /// `∑ aᵢbᵢ` modulo ℘(F).
    pub fn arf(&self) -> ArfClass {
        let mut rep = self.field.zero();
        for (a, b) in &self.blocks {
            rep = &rep + &(a * b);
        }
        ArfClass { rep }
    }

    /// Value at a coordinate vector `(x1, y1, x2, y2, …)`.
    pub fn eval(&self, v: &[FieldElement]) -> FieldElement {
        assert_eq!(v.len(), self.dim(), "vector length");
        let mut acc = self.field.zero();
        for (i, (a, b)) in self.blocks.iter().enumerate() {
            let (x, y) = (&v[2 * i], &v[2 * i + 1]);
            acc = &acc + &(&(&(a * &x.square()) + &(x * y)) + &(b * &y.square()));
        }
        acc
    }

    /// Polar form `B(v,w) = Σ xᵢwᵧᵢ + yᵢwₓᵢ`.
    pub fn polar(&self, v: &[FieldElement], w: &[FieldElement]) -> FieldElement {
        let mut acc = self.field.zero();
        for i in 0..self.blocks.len() {
            acc = &acc + &(&(&v[2 * i] * &w[2 * i + 1]) + &(&v[2 * i + 1] * &w[2 * i]));
        }
        acc
    }

    /// Same blocks over an extension field.
    pub fn restrict(&self, k: &Field) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|(a, b)| Ok((a.embed_into(k)?, b.embed_into(k)?)))
            .collect::<Result<_>>()?;
        Ok(QuadraticForm { field: k.clone(), blocks })
    }

    /// Drops `[0,0]` blocks.
    pub fn without_hyperbolic_blocks(&self) -> Self {
        let blocks = self.blocks.iter().filter(|(a, b)| !(a.is_zero() && b.is_zero())).cloned().collect();
        QuadraticForm { field: self.field.clone(), blocks }
    }

    /// Text in the shared grammar, e.g. `perp(Q[1,t], Q[t,1])`.
    pub fn to_script(&self) -> String {
        let parts: Vec<String> = self.blocks.iter().map(|(a, b)| format!("Q[{a}, {b}]")).collect();
        match parts.len() {
            0 => "perp()".into(),
            1 => parts[0].clone(),
            _ => format!("perp({})", parts.join(", ")),
        }
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.blocks.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
        f.write_str(&parts.join("⊥"))
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
