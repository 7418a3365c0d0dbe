//! Transfers along the top step `K = F(δ)` of a tower, with respect to the
//! functional `s(x0 + x1·δ) = x1`.

mod descent;

use std::fmt;

use crate::fields::{Field, FieldElement, StepKind};
use crate::forms::{witt, BilinearForm, Matrix, QuadraticForm};
use crate::{Decision, Error, Result};

pub use descent::{arf_trivialize_descent, descend_form_search, Descent, DescentBudget, DescentCertificate};

/// The F-linear map `K → F` with `s(1) = 0`, `s(δ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferFunctional {
    ext: Field,
    base: Field,
}

impl TransferFunctional {
    pub fn new(ext: &Field) -> Result<Self> {
        let base = ext.below().ok_or(Error::NotAnExtension)?;
        Ok(TransferFunctional { ext: ext.clone(), base })
    }

    pub fn extension(&self) -> &Field {
        &self.ext
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn kind(&self) -> StepKind {
        self.ext.top_step().unwrap().kind
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() != &self.ext {
            return Err(Error::TowerMismatch("transfer argument".into()));
        }
        Ok(x.components().unwrap().1)
    }

    fn parameter(&self) -> FieldElement {
        self.ext.step_parameter().unwrap()
    }
}

/// `s_*(φ)` together with the coordinate change: `coords · c` lists, block by
/// block, the F-coordinates `(x0, x1, y0, y1)` of the K-vector `(X, Y)` with
/// `X = x0 + x1·δ`, `Y = y0 + y1·δ`.
#[derive(Clone, Debug)]
pub struct TransferredForm {
    pub form: QuadraticForm,
    pub coords: Matrix,
}

impl TransferredForm {
    /// Checks `form(c) = s(φ(V))` where `V` is the K-vector of `coords · c`.
    pub fn check(&self, s: &TransferFunctional, phi: &QuadraticForm, c: &[FieldElement]) -> Result<bool> {
        let w = self.coords.apply(c);
        let v: Vec<FieldElement> = w
            .chunks(2)
            .map(|p| s.extension().from_components(&p[0], &p[1]))
            .collect::<Result<_>>()?;
        Ok(s.apply(&phi.eval(&v))? == self.form.eval(c))
    }
}

/// Transfer of a quadratic form, blockwise.
///
/// Inseparable step `δ² = b`: `s_*[α,β] = [α₁, bβ₁] ⊥ [bα₁, β₁]` on the
/// coordinate pairs `(x0,y1)`, `(x1,y0)`. Artin–Schreier step `δ² = δ + a`
/// (experimental): `[α₁, β₀+(a+1)β₁] ⊥ [α₀+aα₁, β₁]` on `(x0,y1)` and
/// `(x0+x1, y0)`.
pub fn transfer_quadratic(s: &TransferFunctional, phi: &QuadraticForm) -> Result<TransferredForm> {
    if phi.field() != s.extension() {
        return Err(Error::TowerMismatch("transfer of a form".into()));
    }
    let f = s.base();
    let p = s.parameter();
    let n = 2 * phi.dim();
    let mut blocks = Vec::with_capacity(phi.dim());
    let mut coords = Matrix::from_rows(f, vec![vec![f.zero(); n]; n])?;
    for (i, (alpha, beta)) in phi.blocks().iter().enumerate() {
        let (a0, a1) = alpha.components().unwrap();
        let (b0, b1) = beta.components().unwrap();
        let o = 4 * i;
        // rows o..o+4 hold (x0, x1, y0, y1); columns o..o+4 the new coordinates
        match s.kind() {
            StepKind::Inseparable => {
                blocks.push((a1.clone(), &p * &b1));
                blocks.push((&p * &a1, b1));
                coords.set(o, o, f.one());
                coords.set(o + 3, o + 1, f.one());
                coords.set(o + 1, o + 2, f.one());
                coords.set(o + 2, o + 3, f.one());
            }
            StepKind::ArtinSchreier => {
                let a_plus_1 = &p + &f.one();
                blocks.push((a1.clone(), &b0 + &(&a_plus_1 * &b1)));
                blocks.push((&a0 + &(&p * &a1), b1));
                coords.set(o, o, f.one());
                coords.set(o + 3, o + 1, f.one());
                coords.set(o, o + 2, f.one());
                coords.set(o + 1, o + 2, f.one());
                coords.set(o + 2, o + 3, f.one());
            }
        }
    }
    Ok(TransferredForm { form: QuadraticForm::new(f, blocks)?, coords })
}

/// One binary piece of a transferred diagonal bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BilinearPiece {
    Diagonal(FieldElement, FieldElement),
    /// Gram matrix `[[0,x],[x,0]]`.
    Metabolic(FieldElement),
}

#[derive(Clone, Debug)]
pub struct TransferredBilinear {
    pub pieces: Vec<BilinearPiece>,
}

impl TransferredBilinear {
    /// The form as a diagonal bilinear form, when no metabolic piece occurs.
    pub fn diagonal(&self, f: &Field) -> Option<BilinearForm> {
        let mut d = Vec::new();
        for p in &self.pieces {
            match p {
                BilinearPiece::Diagonal(u, v) => d.extend([u.clone(), v.clone()]),
                BilinearPiece::Metabolic(_) => return None,
            }
        }
        BilinearForm::new(f, d).ok()
    }

    /// `s_*(𝔟) ⊗ φ`; a metabolic piece contributes `2·dim φ` hyperbolic
    /// dimensions.
    pub fn tensor(&self, phi: &QuadraticForm) -> Result<QuadraticForm> {
        let f = phi.field();
        let mut out = QuadraticForm::zero_dim(f);
        for p in &self.pieces {
            let part = match p {
                BilinearPiece::Diagonal(u, v) => {
                    QuadraticForm::tensor(&BilinearForm::new(f, vec![u.clone(), v.clone()])?, phi)?
                }
                BilinearPiece::Metabolic(_) => QuadraticForm::hyperbolic(f, phi.dim()),
            };
            out = out.orth_sum(&part)?;
        }
        Ok(out)
    }
}

impl fmt::Display for TransferredBilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|p| match p {
                BilinearPiece::Diagonal(u, v) => format!("⟨{u}, {v}⟩_b"),
                BilinearPiece::Metabolic(x) => format!("M({x})"),
            })
            .collect();
        f.write_str(&parts.join(" ⊥ "))
    }
}

/// Diagonalized Gram matrix `s(z·uv)` on the basis `{1, δ}` for each entry.
pub fn transfer_bilinear(s: &TransferFunctional, b: &BilinearForm) -> Result<TransferredBilinear> {
    if b.field() != s.extension() {
        return Err(Error::TowerMismatch("transfer of a bilinear form".into()));
    }
    let p = s.parameter();
    let mut pieces = Vec::new();
    for z in b.diagonal() {
        let (x, y) = z.components().unwrap();
        // Gram entries g11 = s(z), g12 = s(zδ), g22 = s(zδ²)
        let (g12, g22) = match s.kind() {
            StepKind::Inseparable => (x.clone(), &p * &y),
            StepKind::ArtinSchreier => (&x + &y, &(&p * &y) + &(&x + &y)),
        };
        pieces.push(if !y.is_zero() {
            // e2 = δ + (g12/y)·1
            let v = &g22 + &(&g12.square() / &y);
            if v.is_zero() {
                BilinearPiece::Metabolic(y.clone())
            } else {
                BilinearPiece::Diagonal(y.clone(), v)
            }
        } else if g22.is_zero() {
            BilinearPiece::Metabolic(g12)
        } else {
            // δ and 1 + (g12/g22)δ are orthogonal
            BilinearPiece::Diagonal(g22.clone(), &g12.square() / &g22)
        });
    }
    Ok(TransferredBilinear { pieces })
}

/// Both sides of `s_*(𝔟 ⊗ φ_K) ≅ s_*(𝔟) ⊗ φ`.
#[derive(Clone, Debug)]
pub struct ReciprocityReport {
    pub lhs: QuadraticForm,
    pub rhs: QuadraticForm,
    pub decision: Decision,
}

pub fn frobenius_reciprocity_check(
    s: &TransferFunctional,
    b: &BilinearForm,
    phi: &QuadraticForm,
) -> Result<ReciprocityReport> {
    if phi.field() != s.base() {
        return Err(Error::TowerMismatch("reciprocity needs φ over the base".into()));
    }
    let lhs = transfer_quadratic(s, &QuadraticForm::tensor(b, &phi.restrict(s.extension())?)?)?.form;
    let rhs = transfer_bilinear(s, b)?.tensor(phi)?;
    let decision = witt::equivalent(&lhs, &rhs, None)?;
    Ok(ReciprocityReport { lhs, rhs, decision })
}
