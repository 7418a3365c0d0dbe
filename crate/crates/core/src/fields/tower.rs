//! Towers of quadratic extensions over GF(2^k) or GF(2^k)(t).
//!
//! A [`Field`] is one level of a tower. Elements of level `n` are stored
//! recursively as pairs `x0 + x1·δ` over level `n-1`, where `δ² = b`
//! (inseparable step) or `δ² + δ = a` (Artin–Schreier step).
//!
//! Towers over GF(2^k)(t) whose steps are all inseparable are *rational*:
//! level `n` is isomorphic to GF(2^k)(s) with `s = t^(1/2^n)`. Elements can
//! be moved to and from that model with [`FieldElement::to_model`] and
//! [`Field::from_model`], which is how squareness, ℘-membership, places and
//! local invariants are decided on such towers.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::sync::{Arc, OnceLock};

use super::display::wrap;
use super::gf::Gf;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::wp;
use crate::{Error, Result};

/// Maximum number of extension steps in a tower.
pub const MAX_DEPTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// Adjoins `δ` with `δ² = b`.
    Inseparable,
    /// Adjoins `δ` with `δ² + δ = a`.
    ArtinSchreier,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionStep {
    pub kind: StepKind,
    /// `b` or `a`, an element of the level below.
    gen: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Base(RatFunc),
    Ext(Box<(Repr, Repr)>),
}

#[derive(Debug)]
struct ModelStep {
    /// Image of the step generator in GF(q)(s_n).
    beta: RatFunc,
    /// `beta(X) = p(X^2) + X q(X^2)`.
    p: RatFunc,
    q: RatFunc,
}

#[derive(Debug)]
struct TowerData {
    gf: Gf,
    has_var: bool,
    steps: Vec<ExtensionStep>,
    model: OnceLock<Vec<ModelStep>>,
}

/// One level of a tower of quadratic extensions.
#[derive(Clone)]
pub struct Field {
    data: Arc<TowerData>,
    level: usize,
}

/// An element of a [`Field`], in canonical form.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
            && (Arc::ptr_eq(&self.data, &other.data)
                || (self.data.gf == other.data.gf
                    && self.data.has_var == other.data.has_var
                    && self.data.steps[..self.level] == other.data.steps[..other.level]))
    }
}

impl Eq for Field {}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.level.hash(state);
        self.repr.hash(state);
    }
}

fn zero_repr(gf: Gf, level: usize) -> Repr {
    if level == 0 {
        Repr::Base(RatFunc::zero(gf))
    } else {
        Repr::Ext(Box::new((zero_repr(gf, level - 1), zero_repr(gf, level - 1))))
    }
}

fn embed_repr(gf: Gf, r: Repr, from: usize, to: usize) -> Repr {
    (from..to).fold(r, |acc, l| Repr::Ext(Box::new((acc, zero_repr(gf, l)))))
}

impl Repr {
    fn is_zero(&self) -> bool {
        match self {
            Repr::Base(f) => f.is_zero(),
            Repr::Ext(p) => p.0.is_zero() && p.1.is_zero(),
        }
    }

    fn parts(&self) -> (&Repr, &Repr) {
        match self {
            Repr::Ext(p) => (&p.0, &p.1),
            Repr::Base(_) => panic!("base element has no extension components"),
        }
    }

    fn base(&self) -> &RatFunc {
        match self {
            Repr::Base(f) => f,
            Repr::Ext(_) => panic!("extension element used as base element"),
        }
    }
}

fn ext(x0: Repr, x1: Repr) -> Repr {
    Repr::Ext(Box::new((x0, x1)))
}

fn add_r(x: &Repr, y: &Repr) -> Repr {
    match (x, y) {
        (Repr::Base(a), Repr::Base(b)) => Repr::Base(a.add(b)),
        (Repr::Ext(a), Repr::Ext(b)) => ext(add_r(&a.0, &b.0), add_r(&a.1, &b.1)),
        _ => panic!("level mismatch in addition"),
    }
}

fn mul_r(steps: &[ExtensionStep], x: &Repr, y: &Repr) -> Repr {
    let Some((top, below)) = steps.split_last() else {
        return Repr::Base(x.base().mul(y.base()));
    };
    let (x0, x1) = x.parts();
    let (y0, y1) = y.parts();
    let p0 = mul_r(below, x0, y0);
    let p1 = mul_r(below, x1, y1);
    let p2 = mul_r(below, &add_r(x0, x1), &add_r(y0, y1));
    let cross = add_r(&add_r(&p2, &p0), &p1);
    let gp1 = mul_r(below, &top.gen, &p1);
    match top.kind {
        StepKind::Inseparable => ext(add_r(&p0, &gp1), cross),
        StepKind::ArtinSchreier => ext(add_r(&p0, &gp1), add_r(&cross, &p1)),
    }
}

fn inv_r(steps: &[ExtensionStep], x: &Repr) -> Option<Repr> {
    let Some((top, below)) = steps.split_last() else {
        return x.base().inv().map(Repr::Base);
    };
    let (x0, x1) = x.parts();
    let sq0 = mul_r(below, x0, x0);
    let sq1 = mul_r(below, x1, x1);
    let gsq1 = mul_r(below, &top.gen, &sq1);
    match top.kind {
        StepKind::Inseparable => {
            let n = add_r(&sq0, &gsq1);
            let ni = inv_r(below, &n)?;
            Some(ext(mul_r(below, x0, &ni), mul_r(below, x1, &ni)))
        }
        StepKind::ArtinSchreier => {
            let n = add_r(&add_r(&sq0, &mul_r(below, x0, x1)), &gsq1);
            let ni = inv_r(below, &n)?;
            Some(ext(mul_r(below, &add_r(x0, x1), &ni), mul_r(below, x1, &ni)))
        }
    }
}

impl Field {
    fn from_data(data: TowerData) -> Field {
        let level = data.steps.len();
        Field { data: Arc::new(data), level }
    }

    /// GF(2^k).
    pub fn finite(k: u8) -> Result<Field> {
        let gf = Gf::new(k).ok_or_else(|| Error::Unsupported(format!("GF(2^{k})")))?;
        Ok(Field::from_data(TowerData { gf, has_var: false, steps: vec![], model: OnceLock::new() }))
    }

    /// GF(2^k)(t).
    pub fn rational(k: u8) -> Result<Field> {
        let gf = Gf::new(k).ok_or_else(|| Error::Unsupported(format!("GF(2^{k})")))?;
        Ok(Field::from_data(TowerData { gf, has_var: true, steps: vec![], model: OnceLock::new() }))
    }

    pub(crate) fn rational_gf(gf: Gf) -> Field {
        Field::from_data(TowerData { gf, has_var: true, steps: vec![], model: OnceLock::new() })
    }

    pub fn gf(&self) -> Gf {
        self.data.gf
    }

    pub fn has_var(&self) -> bool {
        self.data.has_var
    }

    pub fn depth(&self) -> usize {
        self.level
    }

    pub fn steps(&self) -> &[ExtensionStep] {
        &self.data.steps[..self.level]
    }

    pub fn top_step(&self) -> Option<&ExtensionStep> {
        self.steps().last()
    }

    /// The level below (the field the top step was adjoined to).
    pub fn below(&self) -> Option<Field> {
        (self.level > 0).then(|| Field { data: self.data.clone(), level: self.level - 1 })
    }

    pub fn at_level(&self, level: usize) -> Option<Field> {
        (level <= self.level).then(|| Field { data: self.data.clone(), level })
    }

    /// Bottom of the tower.
    pub fn base(&self) -> Field {
        Field { data: self.data.clone(), level: 0 }
    }

    pub fn is_finite(&self) -> bool {
        !self.data.has_var
    }

    /// GF(2^k)(t) followed only by inseparable steps.
    pub fn is_rational(&self) -> bool {
        self.data.has_var && self.steps().iter().all(|s| s.kind == StepKind::Inseparable)
    }

    /// Exact Brauer-class and isotropy decisions are available: finite
    /// fields and rational towers.
    pub fn is_exact(&self) -> bool {
        self.is_finite() || self.is_rational()
    }

    /// Number of elements, for finite towers.
    pub fn size(&self) -> Option<u64> {
        self.is_finite().then(|| (self.gf().size() as u64).pow(1 << self.level))
    }

    /// True when `self` is a level of a tower that continues to `other`.
    pub fn is_subfield_of(&self, other: &Field) -> bool {
        self.level <= other.level
            && self.data.gf == other.data.gf
            && self.data.has_var == other.data.has_var
            && self.data.steps[..self.level] == other.data.steps[..self.level]
    }

    fn extend(&self, kind: StepKind, gen: &FieldElement) -> Result<Field> {
        if gen.field != *self {
            return Err(Error::TowerMismatch("generator not in the field being extended".into()));
        }
        if self.level >= MAX_DEPTH {
            return Err(Error::InvalidExtension(format!("towers are limited to {MAX_DEPTH} steps")));
        }
        match kind {
            StepKind::Inseparable => {
                if gen.is_zero() {
                    return Err(Error::InvalidExtension("adj_sqrt of zero".into()));
                }
                if gen.is_square() {
                    return Err(Error::InvalidExtension(format!("{gen} is a square")));
                }
            }
            StepKind::ArtinSchreier => {
                if gen.wp_solve().is_some() {
                    return Err(Error::InvalidExtension(format!("{gen} lies in ℘(F)")));
                }
            }
        }
        let mut steps = self.steps().to_vec();
        steps.push(ExtensionStep { kind, gen: gen.repr.clone() });
        Ok(Field::from_data(TowerData {
            gf: self.data.gf,
            has_var: self.data.has_var,
            steps,
            model: OnceLock::new(),
        }))
    }

    /// `F(√b)`; `b` must be a nonzero non-square.
    pub fn adj_sqrt(&self, b: &FieldElement) -> Result<Field> {
        self.extend(StepKind::Inseparable, b)
    }

    /// `F(α)` with `α² + α = a`; `a` must not lie in ℘(F).
    pub fn adj_as(&self, a: &FieldElement) -> Result<Field> {
        self.extend(StepKind::ArtinSchreier, a)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), repr: zero_repr(self.gf(), self.level) }
    }

    pub fn one(&self) -> FieldElement {
        self.from_ratfunc(RatFunc::one(self.gf()))
    }

    pub fn constant(&self, a: u16) -> FieldElement {
        self.from_ratfunc(RatFunc::constant(self.gf(), a))
    }

    /// Embeds a base rational function; the variable is only meaningful
    /// when the tower has one.
    pub fn from_ratfunc(&self, f: RatFunc) -> FieldElement {
        assert!(self.data.has_var || f.as_constant().is_some(), "no variable in a finite tower");
        let r = embed_repr(self.gf(), Repr::Base(f), 0, self.level);
        FieldElement { field: self.clone(), repr: r }
    }

    pub fn from_poly(&self, p: Poly) -> FieldElement {
        self.from_ratfunc(RatFunc::from_poly(p))
    }

    /// The transcendental `t`.
    pub fn var(&self) -> Option<FieldElement> {
        self.data.has_var.then(|| self.from_ratfunc(RatFunc::var(self.gf())))
    }

    /// The generator `w` of GF(2^k).
    pub fn gf_generator(&self) -> FieldElement {
        self.constant(self.gf().generator())
    }

    /// Generator `δ` of step `i` (1-based), embedded into this level.
    pub fn generator(&self, i: usize) -> Option<FieldElement> {
        if i == 0 || i > self.level {
            return None;
        }
        let gf = self.gf();
        let r = ext(zero_repr(gf, i - 1), embed_repr(gf, Repr::Base(RatFunc::one(gf)), 0, i - 1));
        Some(FieldElement { field: self.clone(), repr: embed_repr(gf, r, i, self.level) })
    }

    /// The defining element (`b` or `a`) of the top step, in the level below.
    pub fn step_parameter(&self) -> Option<FieldElement> {
        let below = self.below()?;
        Some(FieldElement { field: below, repr: self.top_step()?.gen.clone() })
    }

    /// `x0 + x1·δ` from components in the level below.
    pub fn from_components(&self, x0: &FieldElement, x1: &FieldElement) -> Result<FieldElement> {
        let below = self.below().ok_or(Error::UnsupportedTower("from_components"))?;
        if x0.field != below || x1.field != below {
            return Err(Error::TowerMismatch("components must lie in the level below".into()));
        }
        Ok(FieldElement { field: self.clone(), repr: ext(x0.repr.clone(), x1.repr.clone()) })
    }

    /// Distinguished element `g` with `F = F² ⊕ g·F²`; `None` for perfect
    /// (finite) fields.
    pub fn p_basis(&self) -> Option<FieldElement> {
        if !self.data.has_var {
            return None;
        }
        match self.top_step() {
            None => self.var(),
            Some(s) if s.kind == StepKind::Inseparable => self.generator(self.level),
            Some(_) => Some(self.below().unwrap().p_basis()?.embed_into(self).unwrap()),
        }
    }

    /// The flat model GF(2^k)(s) of a rational tower.
    pub fn model_field(&self) -> Option<Field> {
        self.is_rational().then(|| Field::rational_gf(self.gf()))
    }

    fn model_steps(&self) -> &[ModelStep] {
        let steps = self.data.model.get_or_init(|| {
            let all = Field { data: self.data.clone(), level: self.data.steps.len() };
            if !all.is_rational() {
                return Vec::new();
            }
            let mut out: Vec<ModelStep> = Vec::new();
            for (i, s) in self.data.steps.iter().enumerate() {
                let below = Field { data: self.data.clone(), level: i };
                let img = to_model_repr(&below, &out, &s.gen);
                let beta = img.unfrob_coeffs();
                let (u, v) = beta.frob_decompose();
                out.push(ModelStep { beta, p: u.frob_coeffs(), q: v.frob_coeffs() });
            }
            out
        });
        &steps[..self.level.min(steps.len())]
    }

    /// Pulls an element of the flat model back into this rational tower.
    pub fn from_model(&self, g: &FieldElement) -> Result<FieldElement> {
        if !self.is_rational() {
            return Err(Error::UnsupportedTower("from_model"));
        }
        if g.field.level != 0 || !g.field.has_var() || g.field.gf() != self.gf() {
            return Err(Error::TowerMismatch("model element must lie in GF(q)(s)".into()));
        }
        let ms = self.model_steps();
        Ok(FieldElement { field: self.clone(), repr: from_model_repr(ms, g.repr.base()) })
    }

    /// Iterates all elements of a finite tower in a fixed order.
    pub fn finite_elements(&self) -> Option<impl Iterator<Item = FieldElement> + '_> {
        let size = self.size()?;
        Some((0..size).map(move |i| self.finite_element(i)))
    }

    /// The `i`-th element of a finite tower (base-q digits as coordinates).
    pub fn finite_element(&self, mut index: u64) -> FieldElement {
        let q = self.gf().size() as u64;
        let n = 1usize << self.level;
        let coords: Vec<u16> = (0..n)
            .map(|_| {
                let d = (index % q) as u16;
                index /= q;
                d
            })
            .collect();
        fn build(gf: Gf, coords: &[u16], level: usize) -> Repr {
            if level == 0 {
                return Repr::Base(RatFunc::constant(gf, coords[0]));
            }
            let half = coords.len() / 2;
            ext(build(gf, &coords[..half], level - 1), build(gf, &coords[half..], level - 1))
        }
        FieldElement { field: self.clone(), repr: build(self.gf(), &coords, self.level) }
    }

    /// Short description such as `GF(2)(t).adj_sqrt(t)`.
    pub fn describe(&self) -> String {
        let mut s = format!("GF({})", self.gf().size());
        if self.data.has_var {
            s.push_str("(t)");
        }
        for i in 0..self.level {
            let below = Field { data: self.data.clone(), level: i };
            let step = &self.data.steps[i];
            let g = FieldElement { field: below, repr: step.gen.clone() };
            match step.kind {
                StepKind::Inseparable => s.push_str(&format!(".adj_sqrt({g})")),
                StepKind::ArtinSchreier => s.push_str(&format!(".adj_as({g})")),
            }
        }
        s
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn to_model_repr(field: &Field, ms: &[ModelStep], r: &Repr) -> RatFunc {
    match r {
        Repr::Base(f) => f.clone(),
        Repr::Ext(p) => {
            let n = ms.len().min(field.level);
            let below = Field { data: field.data.clone(), level: field.level - 1 };
            let r0 = to_model_repr(&below, &ms[..n - 1], &p.0).spread();
            let r1 = to_model_repr(&below, &ms[..n - 1], &p.1).spread();
            r0.add(&r1.mul(&ms[n - 1].beta))
        }
    }
}

fn from_model_repr(ms: &[ModelStep], g: &RatFunc) -> Repr {
    let Some((top, below)) = ms.split_last() else {
        return Repr::Base(g.clone());
    };
    // g = u(X)^2 + X v(X)^2 = U(Y) + X V(Y) with Y = X^2, and X = (δ + P)/Q.
    let (u, v) = g.frob_decompose();
    let (uu, vv) = (u.frob_coeffs(), v.frob_coeffs());
    let vq = vv.div(&top.q).expect("generator is not in the level below");
    let x0 = uu.add(&vq.mul(&top.p));
    ext(from_model_repr(below, &x0), from_model_repr(below, &vq))
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    fn same(&self, o: &FieldElement) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::TowerMismatch(format!("{} vs {}", self.field, o.field)))
        }
    }

    pub fn checked_add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(FieldElement { field: self.field.clone(), repr: add_r(&self.repr, &o.repr) })
    }

    pub fn checked_mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(FieldElement { field: self.field.clone(), repr: mul_r(self.field.steps(), &self.repr, &o.repr) })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let r = inv_r(self.field.steps(), &self.repr).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement { field: self.field.clone(), repr: r })
    }

    pub fn checked_div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        self.checked_mul(&o.inv()?)
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        Ok(acc)
    }

    /// `x² + x`.
    pub fn wp(&self) -> FieldElement {
        &self.square() + self
    }

    /// Embeds into an extension of this element's field.
    pub fn embed_into(&self, target: &Field) -> Result<FieldElement> {
        if !self.field.is_subfield_of(target) {
            return Err(Error::NotAnExtension);
        }
        let r = embed_repr(self.field.gf(), self.repr.clone(), self.field.level, target.level);
        Ok(FieldElement { field: target.clone(), repr: r })
    }

    /// Moves the element down to `level` if it lies in that subfield.
    pub fn lower_to(&self, level: usize) -> Option<FieldElement> {
        let mut r = &self.repr;
        for _ in level..self.field.level {
            let (x0, x1) = r.parts();
            if !x1.is_zero() {
                return None;
            }
            r = x0;
        }
        Some(FieldElement { field: self.field.at_level(level)?, repr: r.clone() })
    }

    /// Components `(x0, x1)` of `x0 + x1·δ` over the level below.
    pub fn components(&self) -> Option<(FieldElement, FieldElement)> {
        let below = self.field.below()?;
        let (x0, x1) = self.repr.parts();
        Some((
            FieldElement { field: below.clone(), repr: x0.clone() },
            FieldElement { field: below, repr: x1.clone() },
        ))
    }

    /// The rational function of a level-0 element.
    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match &self.repr {
            Repr::Base(f) => Some(f),
            Repr::Ext(_) => None,
        }
    }

    /// Image in the flat model GF(q)(s) of a rational tower.
    pub fn to_model(&self) -> Result<FieldElement> {
        let mf = self.field.model_field().ok_or(Error::UnsupportedTower("to_model"))?;
        let ms = self.field.model_steps();
        let f = to_model_repr(&self.field, ms, &self.repr);
        Ok(FieldElement { field: mf, repr: Repr::Base(f) })
    }

    /// Writes `x = P² + g·Q²` with `g` = [`Field::p_basis`]; for perfect
    /// fields `Q = 0` and `P = √x`.
    pub fn frob_decompose(&self) -> (FieldElement, FieldElement) {
        let f = &self.field;
        let mk = |repr| FieldElement { field: f.clone(), repr };
        if !f.has_var() {
            return (self.finite_sqrt(), f.zero());
        }
        match f.top_step() {
            None => {
                let (u, v) = self.repr.base().frob_decompose();
                (mk(Repr::Base(u)), mk(Repr::Base(v)))
            }
            Some(step) => {
                let below = f.below().unwrap();
                let (x0, x1) = self.components().unwrap();
                match step.kind {
                    StepKind::Inseparable => {
                        // L² = E: every component is a square in L.
                        let p = sqrt_in_insep(f, &x0);
                        let q = sqrt_in_insep(f, &x1);
                        (p, q)
                    }
                    StepKind::ArtinSchreier => {
                        let a = FieldElement { field: below.clone(), repr: step.gen.clone() };
                        let (p1, q1) = x1.frob_decompose();
                        let (p0, q0) = (&x0 + &(&a * &x1)).frob_decompose();
                        (f.from_components(&p0, &p1).unwrap(), f.from_components(&q0, &q1).unwrap())
                    }
                }
            }
        }
    }

    fn finite_sqrt(&self) -> FieldElement {
        // x^(|F|/2) is the square root in a finite field of characteristic 2.
        let size = self.field.size().expect("finite tower");
        let mut r = self.clone();
        let mut e = size / 2;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &r;
            }
            r = r.square();
            e >>= 1;
        }
        acc
    }

    pub fn is_square(&self) -> bool {
        self.frob_decompose().1.is_zero()
    }

    pub fn sqrt(&self) -> Option<FieldElement> {
        let (p, q) = self.frob_decompose();
        q.is_zero().then_some(p)
    }

    /// A solution `w` of `w² + w = x` if one exists. Exact on every tower:
    /// the base field is handled by partial fractions (GF(q)(t)) or the trace
    /// (GF(q)), and each quadratic step reduces to the level below.
    pub fn wp_solve(&self) -> Option<FieldElement> {
        let f = &self.field;
        match f.top_step() {
            None => {
                if f.has_var() {
                    let (canon, w) = wp::wp_reduce_ratfunc(self.repr.base());
                    canon.is_zero().then(|| f.from_ratfunc(w))
                } else {
                    let c = self.repr.base().as_constant().unwrap();
                    f.gf().solve_wp(c).map(|w| f.constant(w))
                }
            }
            Some(step) => {
                let below = f.below().unwrap();
                let g = FieldElement { field: below.clone(), repr: step.gen.clone() };
                let (x0, x1) = self.components().unwrap();
                match step.kind {
                    StepKind::Inseparable => {
                        // (w0 + w1δ)² + (w0 + w1δ) = w0² + w0 + b w1² + w1 δ
                        let w1 = x1;
                        let w0 = (&x0 + &(&g * &w1.square())).wp_solve()?;
                        Some(f.from_components(&w0, &w1).unwrap())
                    }
                    StepKind::ArtinSchreier => {
                        // (w0 + w1α)² + (w0 + w1α) = w0² + w0 + a w1² + (w1² + w1) α
                        let w1 = x1.wp_solve()?;
                        for shift in [below.zero(), below.one()] {
                            let w1s = &w1 + &shift;
                            if let Some(w0) = (&x0 + &(&g * &w1s.square())).wp_solve() {
                                return Some(f.from_components(&w0, &w1s).unwrap());
                            }
                        }
                        None
                    }
                }
            }
        }
    }

    pub fn in_wp(&self) -> bool {
        self.wp_solve().is_some()
    }

    /// Size measure for search budgets: the largest degree appearing in any
    /// numerator or denominator (in the flat model for rational towers).
    pub fn height(&self) -> usize {
        if let Ok(m) = self.to_model() {
            return m.repr.base().height();
        }
        fn h(r: &Repr) -> usize {
            match r {
                Repr::Base(f) => f.height(),
                Repr::Ext(p) => h(&p.0).max(h(&p.1)),
            }
        }
        h(&self.repr)
    }

    /// True for elements of GF(2^k) (constants of the tower).
    pub fn is_constant(&self) -> bool {
        match self.lower_to(0) {
            Some(x) => x.repr.base().as_constant().is_some(),
            None => false,
        }
    }
}

fn sqrt_in_insep(l: &Field, e: &FieldElement) -> FieldElement {
    // e in E = L²: e = p² + g q² and b = b0² + g b1², so
    // e = (p + b0 q / b1)² + δ² (q / b1)².
    let below = l.below().unwrap();
    let b = l.step_parameter().unwrap();
    let (p, q) = e.frob_decompose();
    let (b0, b1) = b.frob_decompose();
    let q_over = q.checked_div(&b1).expect("step parameter is not a square");
    let u0 = &p + &(&b0 * &q_over);
    debug_assert_eq!(u0.field(), &below);
    l.from_components(&u0, &q_over).unwrap()
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_add);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

fn render(field: &Field, r: &Repr) -> String {
    match r {
        Repr::Base(f) => f.to_string(),
        Repr::Ext(p) => {
            let below = field.below().unwrap();
            let name = match field.top_step().unwrap().kind {
                StepKind::Inseparable => format!("sqrt#{}", field.level),
                StepKind::ArtinSchreier => format!("as#{}", field.level),
            };
            let x0 = render(&below, &p.0);
            let mut parts = Vec::new();
            if !p.0.is_zero() {
                parts.push(x0);
            }
            if !p.1.is_zero() {
                let x1 = render(&below, &p.1);
                if x1 == "1" {
                    parts.push(name);
                } else {
                    parts.push(format!("{}*{}", wrap(x1), name));
                }
            }
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join("+")
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.field, &self.repr))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
