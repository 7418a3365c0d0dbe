//! Descent of quadratic forms along `K/F`: bounded search for `ψ` over `F`
//! with `ψ_K ≅ φ`, and the Arf-trivializing block rewrite.

use crate::fields::{Field, FieldElement};
use crate::forms::{relations, witt, IsometryWitness, QuadraticForm};
use crate::{Decision, Error, Result};

/// Coefficient height bound and cap on candidates examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DescentBudget {
    pub degree: usize,
    pub candidates: usize,
}

impl DescentBudget {
    pub const DEFAULT_CANDIDATES: usize = 1_000_000;

    /// `(max coefficient height of φ) + 2`.
    pub fn for_form(phi: &QuadraticForm) -> Self {
        let h = phi.blocks().iter().map(|(a, b)| a.height().max(b.height())).max().unwrap_or(0);
        DescentBudget { degree: h + 2, candidates: Self::DEFAULT_CANDIDATES }
    }
}

#[derive(Clone, Debug)]
pub enum DescentCertificate {
    /// Explicit isometry from `ψ_K` onto `φ`.
    Isometry(IsometryWitness),
    /// Equal dimension, equal Arf class, `φ ⊥ ψ_K` hyperbolic.
    WittCancellation,
}

#[derive(Clone, Debug)]
pub struct Descent {
    pub psi: QuadraticForm,
    pub certificate: DescentCertificate,
    /// Candidates examined, including the successful one.
    pub candidates: usize,
}

/// Replaces the last block `[a,b]` with `a ≠ 0` by `[a, b + d/a]`, where `d`
/// represents `Arf(ψ)` and lies in `℘(K)`. Returns `ψ'` and an isometry
/// `ψ_K → ψ'_K`.
pub fn arf_trivialize_descent(psi: &QuadraticForm, k: &Field) -> Result<(QuadraticForm, IsometryWitness)> {
    let d = psi.arf().representative().clone();
    let psi_k = psi.restrict(k)?;
    if !d.embed_into(k)?.in_wp() {
        return Err(Error::Precondition("Arf invariant is not trivial over the extension".into()));
    }
    let Some(pos) = psi.blocks().iter().rposition(|(a, _)| !a.is_zero()) else {
        // all a = 0: Arf is 0 and ψ is hyperbolic
        return Ok((psi.clone(), IsometryWitness::identity(&psi_k)));
    };
    if d.is_zero() {
        return Ok((psi.clone(), IsometryWitness::identity(&psi_k)));
    }
    let (a, b) = psi.blocks()[pos].clone();
    let mut blocks = psi.blocks().to_vec();
    blocks[pos] = (a.clone(), &b + &(&d / &a));
    let out = QuadraticForm::new(psi.field(), blocks)?;
    let (_, witness) = relations::shift_to(&psi_k, pos, &out.blocks()[pos].1.embed_into(k)?)?;
    Ok((out, witness))
}

/// Searches `ψ` over the level below `φ`'s field with `ψ_K ≅ φ`.
///
/// Order: `φ` itself when its coefficients lie in `F`; the form
/// `[1,d] ⊥ H` with `d ∈ F` in the Arf class of `φ`; then forms whose blocks
/// are drawn from products of F-components of `φ`'s coefficients and small
/// polynomials, in lexicographic order of sorted block lists.
/// `None` is not a disproof.
pub fn descend_form_search(phi: &QuadraticForm, budget: Option<DescentBudget>) -> Result<Option<Descent>> {
    let k = phi.field().clone();
    let f = k.below().ok_or(Error::NotAnExtension)?;
    let budget = budget.unwrap_or_else(|| DescentBudget::for_form(phi));
    let level = f.depth();
    let nb = phi.blocks().len();

    let lowered: Option<Vec<(FieldElement, FieldElement)>> =
        phi.blocks().iter().map(|(a, b)| Some((a.lower_to(level)?, b.lower_to(level)?))).collect();
    if let Some(blocks) = lowered {
        let psi = QuadraticForm::new(&f, blocks)?;
        return Ok(Some(Descent { psi, certificate: DescentCertificate::Isometry(IsometryWitness::identity(phi)), candidates: 1 }));
    }

    let arf = phi.arf();
    let mut tried = 1;
    let test = |psi: QuadraticForm, tried: usize| -> Result<Option<Descent>> {
        let psi_k = psi.restrict(&k)?;
        if !psi_k.arf().same_class(&arf)? {
            return Ok(None);
        }
        Ok(match witt::equivalent(phi, &psi_k, None)? {
            Decision::Yes => Some(Descent { psi, certificate: DescentCertificate::WittCancellation, candidates: tried }),
            _ => None,
        })
    };

    if nb > 0 {
        if let Some(d) = arf_class_in_base(arf.representative()) {
            let mut blocks = vec![(f.one(), d)];
            blocks.extend(vec![(f.zero(), f.zero()); nb - 1]);
            tried += 1;
            if let Some(found) = test(QuadraticForm::new(&f, blocks)?, tried)? {
                return Ok(Some(found));
            }
        }
    }

    let pool = coefficient_pool(phi, &f, budget.degree);
    let mut blocks: Vec<(FieldElement, FieldElement)> = Vec::new();
    for p in &pool {
        for q in &pool {
            blocks.push((p.clone(), q.clone()));
        }
    }
    if blocks.is_empty() || nb == 0 {
        return Ok(None);
    }
    let mut idx = vec![0usize; nb];
    while tried < budget.candidates {
        tried += 1;
        let psi = QuadraticForm::new(&f, idx.iter().map(|&i| blocks[i].clone()).collect())?;
        if let Some(found) = test(psi, tried)? {
            return Ok(Some(found));
        }
        // next nondecreasing index tuple
        let Some(j) = (0..nb).rev().find(|&j| idx[j] + 1 < blocks.len()) else { break };
        let v = idx[j] + 1;
        for x in &mut idx[j..] {
            *x = v;
        }
    }
    Ok(None)
}

/// `d ∈ F` with `d ≡ c (mod ℘(K))`, using `℘(c₁δ) ≡ c₁δ + b·c₁²` on an
/// inseparable step and `c₁ = 0` otherwise.
fn arf_class_in_base(c: &FieldElement) -> Option<FieldElement> {
    let k = c.field();
    let (c0, c1) = c.components()?;
    if c1.is_zero() {
        return Some(c0);
    }
    match k.top_step()?.kind {
        crate::fields::StepKind::Inseparable => Some(&c0 + &(&k.step_parameter()? * &c1.square())),
        crate::fields::StepKind::ArtinSchreier => {
            // ℘(wδ) = a·w² + (w² + w)·δ
            let w = c1.wp_solve()?;
            Some(&c0 + &(&k.step_parameter()? * &w.square()))
        }
    }
}

/// 0, 1, the F-components of `φ`'s coefficients, their pairwise products
/// and small polynomials, all of height ≤ `degree`, sorted by height.
fn coefficient_pool(phi: &QuadraticForm, f: &Field, degree: usize) -> Vec<FieldElement> {
    let mut comps: Vec<FieldElement> = Vec::new();
    for (a, b) in phi.blocks() {
        for x in [a, b] {
            let (x0, x1) = x.components().unwrap();
            comps.extend([x0, x1]);
        }
    }
    let mut pool = vec![f.zero(), f.one()];
    if let Some(g) = f.p_basis() {
        let mut m = g.clone();
        for _ in 0..degree.min(3) {
            pool.push(m.clone());
            pool.push(&m + &f.one());
            m = &m * &g;
        }
    }
    for i in 0..comps.len() {
        pool.push(comps[i].clone());
        for j in i + 1..comps.len() {
            pool.push(&comps[i] * &comps[j]);
        }
    }
    let mut out: Vec<FieldElement> = Vec::new();
    for x in pool {
        if x.height() <= degree && !out.contains(&x) {
            out.push(x);
        }
    }
    out.sort_by_key(|x| x.height());
    out
}
