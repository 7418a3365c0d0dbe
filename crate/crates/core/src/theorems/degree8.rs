//! Decomposition of a degree-8 exponent-2 class into three symbols, given an
//! excellent quartic subfield `M ⊃ K = F(√b)` supplied through an oracle.

use std::collections::HashMap;

use crate::brauer::{e2, solve_a_for_b, solve_b_for_a, BrauerClass, QuaternionSymbol};
use crate::fields::{Field, FieldElement};
use crate::forms::{equivalent, is_hyperbolic, witt_reduce, BilinearForm, QuadraticForm};
use crate::transfer::{
    arf_trivialize_descent, descend_form_search, transfer_bilinear, transfer_quadratic, BilinearPiece,
    TransferFunctional,
};
use crate::{Decision, Error, Result};

use super::{lift_symbols_insep_quad, verify_e2_frob_square, Evidence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuarticKind {
    /// `M = F(α, √b)` with `α² + α = a'`.
    MixedBiquadratic,
    /// `M = F(b^{1/4})`.
    PurelyInseparable,
}

/// `A` over `F` with `A_K = [a,x)_K + [c,y)_K`; for the purely inseparable
/// kind `y = √b` and `a ∈ F`, for the mixed kind `a = a'`.
#[derive(Clone, Debug)]
pub struct Degree8Instance {
    pub label: String,
    pub class: BrauerClass,
    pub kind: QuarticKind,
    pub b: FieldElement,
    pub a: FieldElement,
    pub c: FieldElement,
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Degree8Instance {
    pub fn extension(&self) -> Result<Field> {
        self.class.field().adj_sqrt(&self.b)
    }

    pub fn quartic(&self) -> Result<Field> {
        let k = self.extension()?;
        match self.kind {
            QuarticKind::PurelyInseparable => k.adj_sqrt(&k.generator(k.depth()).unwrap()),
            QuarticKind::MixedBiquadratic => k.adj_as(&self.a.embed_into(&k)?),
        }
    }
}

/// Supplies `ψ` over `F` of dimension ≤ 4 with `ψ_M ≅ (ψ'_M)_an`.
pub trait ExcellenceOracle {
    fn descend(&self, label: &str, psi_prime: &QuadraticForm, m: &Field) -> Option<QuadraticForm>;
}

/// Answers from a table keyed by instance label.
#[derive(Clone, Debug, Default)]
pub struct PlantedOracle {
    table: HashMap<String, QuadraticForm>,
}

impl PlantedOracle {
    pub fn insert(&mut self, label: &str, psi: QuadraticForm) {
        self.table.insert(label.to_string(), psi);
    }
}

impl ExcellenceOracle for PlantedOracle {
    fn descend(&self, label: &str, _: &QuadraticForm, _: &Field) -> Option<QuadraticForm> {
        self.table.get(label).cloned()
    }
}

/// Checked run plus the decomposition (empty unless every stage ran).
#[derive(Clone, Debug)]
pub struct Degree8Report {
    pub evidence: Evidence,
    pub decomposition: Vec<QuaternionSymbol>,
}

pub fn decompose_degree8_pipeline(inst: &Degree8Instance, oracle: &dyn ExcellenceOracle) -> Result<Degree8Report> {
    let f = inst.class.field().clone();
    let k = inst.extension()?;
    let m = inst.quartic()?;
    let s = TransferFunctional::new(&k)?;
    let mut ev = Evidence::default();
    let done = |ev: Evidence| Ok(Degree8Report { evidence: ev, decomposition: vec![] });

    let a_k = BrauerClass::symbol(&inst.a.embed_into(&k)?, &inst.x)?
        .add(&BrauerClass::symbol(&inst.c.embed_into(&k)?, &inst.y)?)?;
    ev.checks.push("A_K = [a,x) + [c,y)", inst.class.restrict(&k)?.equal(&a_k)?);
    if inst.kind == QuarticKind::PurelyInseparable && inst.y != k.generator(k.depth()).unwrap() {
        return Err(Error::Precondition("y must be √b".into()));
    }

    let lambda = choose_scale(&s, &inst.x, &inst.y, &mut ev)?;
    let phi = QuadraticForm::pfister(&k, std::slice::from_ref(&inst.x), &inst.a.embed_into(&k)?)?.orth_sum(
        &QuadraticForm::pfister(&k, std::slice::from_ref(&inst.y), &inst.c.embed_into(&k)?)?
            .scale(&lambda.embed_into(&k)?)?,
    )?;
    ev.certificates.push(format!("λ = {lambda}, φ = {phi}"));
    ev.checks.push("e2(φ) = A_K", e2(&phi)?.equal(&a_k)?);

    let t = transfer_quadratic(&s, &phi)?.form;
    let wd = witt_reduce(&t, None);
    ev.certificates.push(format!("dim (s_*φ)_an ≤ {}", wd.anisotropic_part.dim()));
    ev.checks.push_bool("dim (s_*φ)_an < 8", wd.anisotropic_part.dim() < 8);
    ev.checks.push("e2(s_*φ) trivial", e2(&t)?.is_trivial()?);
    ev.absorb(verify_e2_frob_square(&s, &phi)?);
    ev.checks.push("s_*φ hyperbolic", is_hyperbolic(&t, None)?.decision);

    let Some(found) = descend_form_search(&phi, None)? else {
        ev.checks.push("descent of φ", Decision::Unknown("no ψ' within budget".into()));
        return done(ev);
    };
    let (psi_prime, _) = arf_trivialize_descent(&found.psi, &k)?;
    ev.certificates.push(format!("ψ' = {psi_prime}"));

    let Some(psi) = oracle.descend(&inst.label, &psi_prime, &m) else {
        ev.checks.push("excellence oracle", Decision::Unknown("no answer".into()));
        return done(ev);
    };
    let psi = match arf_trivialize_descent(&psi, &m) {
        Ok((p, _)) => p,
        Err(_) => psi,
    };
    ev.certificates.push(format!("ψ = {psi}"));
    ev.checks.push_bool("dim ψ ≤ 4 and ψ has trivial Arf invariant", psi.dim() <= 4 && psi.arf().is_trivial());
    if psi.dim() > psi_prime.dim() {
        ev.checks.push_bool("dim ψ ≤ dim ψ'", false);
        return done(ev);
    }
    let pad = QuadraticForm::hyperbolic(&m, (psi_prime.dim() - psi.dim()) / 2);
    ev.checks.push(
        "ψ_M ⊥ H ≅ ψ'_M",
        equivalent(&psi.restrict(&m)?.orth_sum(&pad)?, &psi_prime.restrict(&m)?, None)?,
    );

    let h = e2(&psi)?.simplify();
    ev.checks.push_bool("e2(ψ) is at most one symbol", h.len() <= 1);
    let residual = inst.class.add(&h)?;
    ev.checks.push("(A + H)_M trivial", residual.restrict(&m)?.is_trivial()?);

    let r_k = residual.restrict(&k)?;
    let one = match (r_k.is_trivial()?, inst.kind) {
        (Decision::Yes, _) => Some(BrauerClass::trivial(&k)),
        (_, QuarticKind::PurelyInseparable) => {
            let root = k.generator(k.depth()).unwrap();
            solve_a_for_b(&r_k, &root)?.map(|z| BrauerClass::symbol(&z, &root)).transpose()?
        }
        (_, QuarticKind::MixedBiquadratic) => {
            let ap = inst.a.embed_into(&k)?;
            solve_b_for_a(&r_k, &ap)?.map(|z| BrauerClass::symbol(&ap, &z)).transpose()?
        }
    };
    let Some(one) = one else {
        ev.checks.push("(A + H)_K as one symbol", Decision::Unknown("not found".into()));
        return done(ev);
    };
    let lift = lift_symbols_insep_quad(&residual, &inst.b, Some(&one))?;
    ev.checks.items.extend(lift.checks.items.iter().cloned());
    let mut decomposition = h.symbols().to_vec();
    decomposition.extend(lift.symbols.iter().cloned());
    let cert = BrauerClass::new(&f, decomposition.clone())?;
    ev.certificates.push(format!("A = {cert}"));
    ev.checks.push_bool("at most 3 symbols", decomposition.len() <= 3);
    ev.checks.push("A = decomposition", inst.class.equal(&cert)?);
    Ok(Degree8Report { evidence: ev, decomposition })
}

/// `λ ∈ F` making `s_*⟨x⟩ ⊥ λ·s_*⟨y⟩` isotropic: the ratio of the first
/// diagonal entries, which both forms then represent.
fn choose_scale(s: &TransferFunctional, x: &FieldElement, y: &FieldElement, ev: &mut Evidence) -> Result<FieldElement> {
    let k = s.extension();
    let f = s.base();
    let tx = transfer_bilinear(s, &BilinearForm::new(k, vec![x.clone()])?)?;
    let ty = transfer_bilinear(s, &BilinearForm::new(k, vec![y.clone()])?)?;
    ev.certificates.push(format!("s_*⟨x⟩ = {tx}, s_*⟨y⟩ = {ty}"));
    let (BilinearPiece::Diagonal(u, u2), BilinearPiece::Diagonal(v, v2)) = (&tx.pieces[0], &ty.pieces[0]) else {
        // a metabolic piece is isotropic on its own
        ev.checks.push_bool("s_*⟨x⟩ ⊥ λ s_*⟨y⟩ isotropic (metabolic piece)", true);
        return Ok(f.one());
    };
    let lambda = u / v;
    let sum = BilinearForm::new(f, vec![u.clone(), u2.clone(), &lambda * v, &lambda * v2])?;
    let w = vec![f.one(), f.zero(), f.one(), f.zero()];
    ev.checks.push_bool("s_*⟨x⟩ ⊥ λ s_*⟨y⟩ isotropic", sum.eval(&w).is_zero());
    Ok(lambda)
}
