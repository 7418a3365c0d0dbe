use std::fmt;

use crate::fields::{Field, FieldElement};
use crate::{Error, Result};

/// Diagonal symmetric bilinear form `⟨a1,…,an⟩_b` with nonzero entries.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearForm {
    field: Field,
    diagonal: Vec<FieldElement>,
}

impl BilinearForm {
    pub fn new(field: &Field, diagonal: Vec<FieldElement>) -> Result<Self> {
        for d in &diagonal {
            if d.field() != field {
                return Err(Error::TowerMismatch("bilinear entry".into()));
            }
            if d.is_zero() {
                return Err(Error::ZeroElement("bilinear diagonal entry"));
            }
        }
        Ok(BilinearForm { field: field.clone(), diagonal })
    }

    /// `⟨1, u⟩_b`.
    pub fn pfister1(u: &FieldElement) -> Result<Self> {
        BilinearForm::new(u.field(), vec![u.field().one(), u.clone()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn diagonal(&self) -> &[FieldElement] {
        &self.diagonal
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn orth_sum(&self, other: &BilinearForm) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::TowerMismatch("orthogonal sum".into()));
        }
        let mut diagonal = self.diagonal.clone();
        diagonal.extend(other.diagonal.iter().cloned());
        Ok(BilinearForm { field: self.field.clone(), diagonal })
    }

    pub fn tensor(&self, other: &BilinearForm) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::TowerMismatch("tensor product".into()));
        }
        let mut diagonal = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.diagonal {
            for b in &other.diagonal {
                diagonal.push(a * b);
            }
        }
        Ok(BilinearForm { field: self.field.clone(), diagonal })
    }

    /// Value `Σ aᵢxᵢ²`.
    pub fn eval(&self, v: &[FieldElement]) -> FieldElement {
        assert_eq!(v.len(), self.dim(), "vector length");
        self.diagonal.iter().zip(v).fold(self.field.zero(), |acc, (a, x)| &acc + &(a * &x.square()))
    }
}

impl fmt::Display for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonal.iter().map(|d| d.to_string()).collect();
        write!(f, "⟨{}⟩_b", parts.join(","))
    }
}

impl fmt::Debug for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
