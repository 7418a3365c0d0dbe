//! Isotropy search and anisotropy certificates.
//!
//! Search order: zero coefficients, isotropic blocks, a linear solve on the
//! totally singular span of the first coordinates (complete from three
//! blocks on, since `[F:F²] ≤ 2` on every supported tower), matching block
//! values, one block representing a value of another, then a meet-in-the-middle
//! search over vectors with polynomial entries (rational towers, in the flat
//! model) or over all small vectors (finite towers).

use std::collections::HashMap;
use std::fmt;

use crate::brauer::{e2, BrauerClass};
use crate::fields::{Field, FieldElement, Poly, RatFunc};
use crate::Decision;

use super::QuadraticForm;

/// Search limits: polynomial degree of vector entries and number of
/// vectors enumerated per side of the meet-in-the-middle search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub degree: usize,
    pub candidates: usize,
}

impl Budget {
    pub const DEFAULT_CANDIDATES: usize = 1 << 13;

    /// `2·(max coefficient degree) + 4`.
    pub fn for_form(phi: &QuadraticForm) -> Budget {
        let h = phi.blocks().iter().map(|(a, b)| a.height().max(b.height())).max().unwrap_or(0);
        Budget { degree: 2 * h + 4, candidates: Budget::DEFAULT_CANDIDATES }
    }

    pub fn with_degree(degree: usize) -> Budget {
        Budget { degree, candidates: Budget::DEFAULT_CANDIDATES }
    }

    /// Next escalation step (four times the candidates, two more degrees).
    pub fn escalate(self) -> Budget {
        Budget { degree: self.degree + 2, candidates: self.candidates * 4 }
    }
}

#[derive(Clone, Debug)]
pub enum AnisotropyCertificate {
    ZeroDimensional,
    /// Binary form `[a,b]` with `ab ∉ ℘(F)`.
    ArfNontrivial,
    /// Four-dimensional form with trivial Arf invariant and nonsplit
    /// Clifford invariant.
    CliffordNontrivial(BrauerClass),
}

impl fmt::Display for AnisotropyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnisotropyCertificate::ZeroDimensional => f.write_str("zero-dimensional"),
            AnisotropyCertificate::ArfNontrivial => f.write_str("binary form with nontrivial Arf invariant"),
            AnisotropyCertificate::CliffordNontrivial(c) => write!(f, "trivial Arf, nonsplit e2 {c}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Isotropy {
    Isotropic(Vec<FieldElement>),
    Anisotropic(AnisotropyCertificate),
    Unknown(String),
}

impl Isotropy {
    pub fn is_isotropic(&self) -> bool {
        matches!(self, Isotropy::Isotropic(_))
    }
}

/// Decides isotropy where a sound method applies. Isotropic vectors are
/// nonzero zeros of the form; certificates are re-checkable.
pub fn is_isotropic(phi: &QuadraticForm, budget: Option<Budget>) -> Isotropy {
    if phi.dim() == 0 {
        return Isotropy::Anisotropic(AnisotropyCertificate::ZeroDimensional);
    }
    let mut budget = budget.unwrap_or_else(|| Budget::for_form(phi));
    if phi.dim() == 2 {
        return match find_isotropic_vector(phi, budget) {
            Some(v) => Isotropy::Isotropic(v),
            None => Isotropy::Anisotropic(AnisotropyCertificate::ArfNontrivial),
        };
    }
    if let Some(v) = quick_vector(phi) {
        return Isotropy::Isotropic(v);
    }
    if phi.dim() == 4 && phi.arf().is_trivial() {
        if let Ok(c) = e2(phi) {
            match c.is_trivial() {
                Ok(Decision::No) => return Isotropy::Anisotropic(AnisotropyCertificate::CliffordNontrivial(c)),
                Ok(Decision::Yes) => {}
                _ => {}
            }
        }
    }
    for _ in 0..3 {
        if let Some(v) = search(phi, budget) {
            return Isotropy::Isotropic(v);
        }
        budget = budget.escalate();
    }
    Isotropy::Unknown(format!("no isotropic vector of {phi} within degree {}", budget.degree))
}

/// Heuristics followed by one bounded search; `None` means nothing found.
pub fn find_isotropic_vector(phi: &QuadraticForm, budget: Budget) -> Option<Vec<FieldElement>> {
    quick_vector(phi).or_else(|| search(phi, budget))
}

fn unit_vector(f: &Field, n: usize, entries: &[(usize, FieldElement)]) -> Vec<FieldElement> {
    let mut v = vec![f.zero(); n];
    for (i, x) in entries {
        v[*i] = x.clone();
    }
    v
}

/// Small vectors of block `i` and their values.
fn block_values(a: &FieldElement, b: &FieldElement) -> Vec<(FieldElement, FieldElement, FieldElement)> {
    let f = a.field();
    let (o, z) = (f.one(), f.zero());
    vec![
        (a.clone(), o.clone(), z.clone()),
        (b.clone(), z, o.clone()),
        (&(a + b) + &o, o.clone(), o),
    ]
}

/// A vector `(x,y)` with `[c,d](x,y) = v`, one coordinate equal to 1.
fn represent(c: &FieldElement, d: &FieldElement, v: &FieldElement) -> Option<(FieldElement, FieldElement)> {
    let f = c.field();
    // y = 1: c x² + x = d + v
    if c.is_zero() {
        return Some((d + v, f.one()));
    }
    if let Some(z) = (c * &(d + v)).wp_solve() {
        return Some((&z / c, f.one()));
    }
    // x = 1: d y² + y = c + v
    if d.is_zero() {
        return Some((f.one(), c + v));
    }
    (d * &(c + v)).wp_solve().map(|z| (f.one(), &z / d))
}

fn quick_vector(phi: &QuadraticForm) -> Option<Vec<FieldElement>> {
    let f = phi.field();
    let n = phi.dim();
    let blocks = phi.blocks();
    for (i, (a, b)) in blocks.iter().enumerate() {
        if a.is_zero() {
            return Some(unit_vector(f, n, &[(2 * i, f.one())]));
        }
        if b.is_zero() {
            return Some(unit_vector(f, n, &[(2 * i + 1, f.one())]));
        }
    }
    for (i, (a, b)) in blocks.iter().enumerate() {
        if let Some(z) = (a * b).wp_solve() {
            return Some(unit_vector(f, n, &[(2 * i, &z / a), (2 * i + 1, f.one())]));
        }
    }
    if let Some(v) = singular_subspace_vector(phi) {
        return Some(v);
    }
    let values: Vec<_> = blocks.iter().map(|(a, b)| block_values(a, b)).collect();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            for (v, x, y) in &values[i] {
                for (w, x2, y2) in &values[j] {
                    if let Some(s) = (v / w).sqrt() {
                        return Some(unit_vector(
                            f,
                            n,
                            &[(2 * i, x.clone()), (2 * i + 1, y.clone()), (2 * j, &s * x2), (2 * j + 1, &s * y2)],
                        ));
                    }
                }
            }
        }
    }
    for i in 0..blocks.len() {
        for j in 0..blocks.len() {
            if i == j {
                continue;
            }
            for (v, x, y) in &values[i] {
                if let Some((x2, y2)) = represent(&blocks[j].0, &blocks[j].1, v) {
                    return Some(unit_vector(
                        f,
                        n,
                        &[(2 * i, x.clone()), (2 * i + 1, y.clone()), (2 * j, x2), (2 * j + 1, y2)],
                    ));
                }
            }
        }
    }
    None
}

/// On the span of the `X`-coordinates the form is `Σ aᵢxᵢ²`. Writing
/// `aᵢ = pᵢ² + g·qᵢ²` with `g` the p-basis element, a zero is a common
/// solution of `Σ pᵢxᵢ = 0` and `Σ qᵢxᵢ = 0`, which exists for three blocks
/// (two over a perfect field).
fn singular_subspace_vector(phi: &QuadraticForm) -> Option<Vec<FieldElement>> {
    let f = phi.field();
    let perfect = f.p_basis().is_none();
    let needed = if perfect { 2 } else { 3 };
    if phi.blocks().len() < needed {
        return None;
    }
    let (p, q): (Vec<FieldElement>, Vec<FieldElement>) =
        phi.blocks()[..needed].iter().map(|(a, _)| a.frob_decompose()).unzip();
    let x: Vec<FieldElement> = if perfect {
        vec![p[1].clone(), p[0].clone()]
    } else {
        let cross = vec![
            &(&p[1] * &q[2]) + &(&p[2] * &q[1]),
            &(&p[2] * &q[0]) + &(&p[0] * &q[2]),
            &(&p[0] * &q[1]) + &(&p[1] * &q[0]),
        ];
        if cross.iter().any(|c| !c.is_zero()) {
            cross
        } else {
            // p and q are parallel: one equation suffices
            let r = if p.iter().any(|c| !c.is_zero()) { &p } else { &q };
            let i = r.iter().position(|c| !c.is_zero())?;
            let j = (i + 1) % 3;
            let mut x = vec![f.zero(), f.zero(), f.zero()];
            x[i] = r[j].clone();
            x[j] = r[i].clone();
            x
        }
    };
    let entries: Vec<(usize, FieldElement)> = x.into_iter().enumerate().map(|(i, c)| (2 * i, c)).collect();
    let v = unit_vector(f, phi.dim(), &entries);
    (v.iter().any(|c| !c.is_zero()) && phi.eval(&v).is_zero()).then_some(v)
}

fn search(phi: &QuadraticForm, budget: Budget) -> Option<Vec<FieldElement>> {
    let f = phi.field();
    if f.is_finite() {
        return finite_search(phi, budget);
    }
    if f.is_rational() {
        return model_search(phi, budget);
    }
    None
}

fn finite_search(phi: &QuadraticForm, budget: Budget) -> Option<Vec<FieldElement>> {
    let f = phi.field();
    let size = f.size()? as usize;
    let blocks = phi.blocks();
    // every value of block 0 at (x, 1), matched against the other blocks
    for k in 0..size.min(budget.candidates) {
        let x = f.finite_element(k as u64);
        let (a, b) = &blocks[0];
        let v = &(&(a * &x.square()) + &x) + b;
        for (j, (c, d)) in blocks.iter().enumerate().skip(1) {
            if let Some((x2, y2)) = represent(c, d, &v) {
                return Some(unit_vector(f, phi.dim(), &[(0, x.clone()), (1, f.one()), (2 * j, x2), (2 * j + 1, y2)]));
            }
        }
    }
    None
}

/// Per-coordinate polynomial degree so that `q^((D+1)·coords)` stays under `cap`.
fn degree_for(q: u64, coords: usize, cap: usize, max_degree: usize) -> Option<usize> {
    let mut best = None;
    for d in 0..=max_degree {
        let count = (q as f64).powi(((d + 1) * coords) as i32);
        if count <= cap as f64 {
            best = Some(d);
        } else {
            break;
        }
    }
    best
}

fn eval_model(blocks: &[(RatFunc, RatFunc)], v: &[RatFunc]) -> RatFunc {
    let gf = v[0].gf();
    let mut acc = RatFunc::zero(gf);
    for (i, (a, b)) in blocks.iter().enumerate() {
        let (x, y) = (&v[2 * i], &v[2 * i + 1]);
        acc = acc.add(&a.mul(&x.square())).add(&x.mul(y)).add(&b.mul(&y.square()));
    }
    acc
}

fn vectors(gf: crate::fields::Gf, coords: usize, degree: usize) -> impl Iterator<Item = Vec<RatFunc>> {
    let per = (gf.size() as u64).pow(degree as u32 + 1);
    let total = per.pow(coords as u32);
    (0..total).map(move |mut idx| {
        (0..coords)
            .map(|_| {
                let p = Poly::nth(gf, idx % per);
                idx /= per;
                RatFunc::from_poly(p)
            })
            .collect()
    })
}

fn model_search(phi: &QuadraticForm, budget: Budget) -> Option<Vec<FieldElement>> {
    let f = phi.field();
    let gf = f.gf();
    let q = gf.size() as u64;
    let mf = f.model_field()?;
    let model: Vec<(RatFunc, RatFunc)> = phi
        .blocks()
        .iter()
        .map(|(a, b)| {
            let ma = a.to_model().ok()?.as_ratfunc()?.clone();
            let mb = b.to_model().ok()?.as_ratfunc()?.clone();
            Some((ma, mb))
        })
        .collect::<Option<_>>()?;
    // at most four blocks, the smallest ones first
    let mut order: Vec<usize> = (0..model.len()).collect();
    order.sort_by_key(|&i| (model[i].0.height() + model[i].1.height(), i));
    order.truncate(4);
    order.sort();
    let chosen: Vec<(RatFunc, RatFunc)> = order.iter().map(|&i| model[i].clone()).collect();
    let h = chosen.len().div_ceil(2);
    let (left, right) = chosen.split_at(h);

    let dl = degree_for(q, 2 * left.len(), budget.candidates, budget.degree)?;
    let mut seen: HashMap<RatFunc, Vec<RatFunc>> = HashMap::new();
    for u in vectors(gf, 2 * left.len(), dl) {
        let val = eval_model(left, &u);
        if val.is_zero() && u.iter().any(|x| !x.is_zero()) {
            return Some(lift(f, &mf, &order, phi.blocks().len(), &u, &[]));
        }
        seen.entry(val).or_insert(u);
    }
    if right.is_empty() {
        return None;
    }
    let dr = degree_for(q, 2 * right.len(), budget.candidates, budget.degree)?;
    for w in vectors(gf, 2 * right.len(), dr) {
        if w.iter().all(|x| x.is_zero()) {
            continue;
        }
        let val = eval_model(right, &w);
        if let Some(u) = seen.get(&val) {
            return Some(lift(f, &mf, &order, phi.blocks().len(), u, &w));
        }
    }
    None
}

fn lift(f: &Field, mf: &Field, order: &[usize], nblocks: usize, u: &[RatFunc], w: &[RatFunc]) -> Vec<FieldElement> {
    let mut out = vec![f.zero(); 2 * nblocks];
    let coords: Vec<&RatFunc> = u.iter().chain(w.iter()).collect();
    for (k, &bi) in order.iter().enumerate() {
        for c in 0..2 {
            if let Some(x) = coords.get(2 * k + c) {
                out[2 * bi + c] = f.from_model(&mf.from_ratfunc((*x).clone())).expect("rational tower");
            }
        }
    }
    out
}
