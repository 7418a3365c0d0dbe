//! Witt decomposition, hyperbolicity and equivalence.

use std::fmt;

use crate::brauer::{e2, QuaternionSymbol};
use crate::fields::FieldElement;
use crate::{Decision, Error, Result};

use super::isotropy::{self, Budget, Isotropy};
use super::{IsometryWitness, Matrix, QuadraticForm};

/// Splits off the hyperbolic plane through the isotropic vector `v`.
///
/// Returns `ψ` and a witness for `ψ ⊥ [0,0] ≅ φ`.
pub fn split_plane(phi: &QuadraticForm, v: &[FieldElement]) -> Result<(QuadraticForm, IsometryWitness)> {
    let f = phi.field();
    let n = phi.dim();
    if v.len() != n || v.iter().all(|x| x.is_zero()) || !phi.eval(v).is_zero() {
        return Err(Error::Precondition("not a nonzero isotropic vector".into()));
    }
    let unit = |i: usize| -> Vec<FieldElement> { (0..n).map(|k| if k == i { f.one() } else { f.zero() }).collect() };
    let add = |x: &[FieldElement], y: &[FieldElement]| -> Vec<FieldElement> { x.iter().zip(y).map(|(a, b)| a + b).collect() };
    let smul = |c: &FieldElement, x: &[FieldElement]| -> Vec<FieldElement> { x.iter().map(|a| c * a).collect() };

    // B(v, e_{partner(p)}) = v_p
    let p = v.iter().position(|x| !x.is_zero()).unwrap();
    let partner = p ^ 1;
    let w = smul(&v[p].inv()?, &unit(partner));
    let w = add(&w, &smul(&phi.eval(&w), v));
    let block = p / 2;
    let rest: Vec<Vec<FieldElement>> = (0..n)
        .filter(|&i| i / 2 != block)
        .map(|i| {
            let e = unit(i);
            let e = add(&e, &smul(&phi.polar(&e, &w), v));
            add(&e, &smul(&phi.polar(&e, v), &w))
        })
        .collect();

    // symplectic Gram–Schmidt on the orthogonal complement
    let mut pool = rest;
    let mut basis: Vec<Vec<FieldElement>> = Vec::new();
    let mut blocks = Vec::new();
    while let Some(u1) = pool.first().cloned() {
        let j = pool.iter().position(|x| !phi.polar(&u1, x).is_zero()).ok_or_else(|| {
            Error::Precondition("degenerate polar form on the complement".into())
        })?;
        let c = phi.polar(&u1, &pool[j]).inv()?;
        let u2 = smul(&c, &pool[j]);
        let others: Vec<Vec<FieldElement>> = pool
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != 0 && *k != j)
            .map(|(_, x)| {
                let x2 = add(x, &smul(&phi.polar(x, &u2), &u1));
                add(&x2, &smul(&phi.polar(x, &u1), &u2))
            })
            .collect();
        blocks.push((phi.eval(&u1), phi.eval(&u2)));
        basis.push(u1);
        basis.push(u2);
        pool = others;
    }
    let psi = QuadraticForm::new(f, blocks)?;
    basis.push(v.to_vec());
    basis.push(w);
    // columns of the change of basis are the new basis vectors
    let rows = (0..n).map(|r| (0..n).map(|c| basis[c][r].clone()).collect()).collect();
    let matrix = Matrix::from_rows(f, rows)?;
    let source = psi.orth_sum(&QuadraticForm::hyperbolic(f, 1))?;
    Ok((psi, IsometryWitness { matrix, source, target: phi.clone() }))
}

#[derive(Clone, Debug)]
pub struct WittDecomposition {
    pub anisotropic_part: QuadraticForm,
    pub hyperbolic_count: usize,
    /// False when some isotropy query was undecided.
    pub complete: bool,
}

/// Splits off hyperbolic planes at the first isotropic vector found until
/// the remainder is certified anisotropic or the search gives up.
pub fn witt_reduce(phi: &QuadraticForm, budget: Option<Budget>) -> WittDecomposition {
    let mut cur = phi.clone();
    let mut count = 0;
    loop {
        let trimmed = cur.without_hyperbolic_blocks();
        count += (cur.dim() - trimmed.dim()) / 2;
        cur = trimmed;
        match isotropy::is_isotropic(&cur, budget) {
            Isotropy::Isotropic(v) => {
                let (psi, _) = split_plane(&cur, &v).expect("isotropic vector");
                cur = psi;
                count += 1;
            }
            Isotropy::Anisotropic(_) => {
                return WittDecomposition { anisotropic_part: cur, hyperbolic_count: count, complete: true }
            }
            Isotropy::Unknown(_) => {
                return WittDecomposition { anisotropic_part: cur, hyperbolic_count: count, complete: false }
            }
        }
    }
}

/// Outcome of a hyperbolicity test with its justification.
#[derive(Clone, Debug)]
pub struct Hyperbolicity {
    pub decision: Decision,
    pub steps: Vec<String>,
}

impl fmt::Display for Hyperbolicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.decision, self.steps.join("; "))
    }
}

/// Hyperbolicity: Arf must vanish; planes are split off while the dimension
/// exceeds 6; a form of dimension ≤ 6 with trivial Arf invariant is
/// hyperbolic exactly when its Clifford invariant is trivial.
pub fn is_hyperbolic(phi: &QuadraticForm, budget: Option<Budget>) -> Result<Hyperbolicity> {
    if phi.dim() % 2 == 1 {
        return Err(Error::OddDimension);
    }
    let mut steps = Vec::new();
    if !phi.arf().is_trivial() {
        steps.push("Arf invariant nontrivial".into());
        return Ok(Hyperbolicity { decision: Decision::No, steps });
    }
    let mut cur = phi.without_hyperbolic_blocks();
    if cur.dim() < phi.dim() {
        steps.push(format!("dropped {} [0,0] planes", (phi.dim() - cur.dim()) / 2));
    }
    while cur.dim() > 6 {
        let budget = budget.unwrap_or_else(|| Budget::for_form(&cur));
        let found = isotropy::find_isotropic_vector(&cur, budget)
            .or_else(|| isotropy::find_isotropic_vector(&cur, budget.escalate()))
            .or_else(|| isotropy::find_isotropic_vector(&cur, budget.escalate().escalate()));
        match found {
            Some(v) => {
                let (psi, _) = split_plane(&cur, &v)?;
                cur = psi.without_hyperbolic_blocks();
                steps.push(format!("split a hyperbolic plane, dim {}", cur.dim()));
            }
            None => {
                let reason = format!("no isotropic vector found in dim {} form {}", cur.dim(), cur);
                steps.push(reason.clone());
                return Ok(Hyperbolicity { decision: Decision::Unknown(reason), steps });
            }
        }
    }
    let class = e2(&cur)?;
    let d = class.is_trivial()?;
    steps.push(match &d {
        Decision::Yes => format!("dim {} with trivial Arf and split e2", cur.dim()),
        Decision::No => format!("e2 = {class} is nonsplit"),
        Decision::Unknown(r) => format!("e2 undecided: {r}"),
    });
    Ok(Hyperbolicity { decision: d, steps })
}

/// `φ ≅ ψ` iff equal dimension and `φ ⊥ ψ` hyperbolic.
pub fn equivalent(phi: &QuadraticForm, psi: &QuadraticForm, budget: Option<Budget>) -> Result<Decision> {
    if phi.field() != psi.field() {
        return Err(Error::TowerMismatch("equivalence".into()));
    }
    if phi.dim() != psi.dim() || !phi.arf().same_class(&psi.arf())? {
        return Ok(Decision::No);
    }
    if phi == psi {
        return Ok(Decision::Yes);
    }
    // [a,b] ⊥ [a,b] is hyperbolic
    let mut left = phi.blocks().to_vec();
    let mut right = Vec::new();
    for blk in psi.blocks() {
        match left.iter().position(|x| x == blk) {
            Some(i) => {
                left.remove(i);
            }
            None => right.push(blk.clone()),
        }
    }
    left.extend(right);
    let sum = QuadraticForm::new(phi.field(), left)?;
    Ok(is_hyperbolic(&sum, budget)?.decision)
}

/// Splitting of `[a,b)` decided by isotropy of `⟨⟨b,a]]`, without the
/// Clifford invariant.
pub fn symbol_split_by_form(q: &QuaternionSymbol) -> Result<Decision> {
    let f = q.field();
    let pf = QuadraticForm::pfister(f, std::slice::from_ref(q.b()), q.a())?;
    let budget = Budget::for_form(&pf);
    Ok(match isotropy::find_isotropic_vector(&pf, budget) {
        Some(_) => Decision::Yes,
        None => Decision::Unknown(format!("no isotropic vector of {pf}")),
    })
}
