use std::fmt;

use crate::fields::{wp, Field, FieldElement, Poly, RatFunc};
use crate::{Error, Result};

/// The quaternion algebra `[a,b)`: `i² + i = a`, `j² = b`, `ji = (1+i)j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuaternionSymbol {
    a: FieldElement,
    b: FieldElement,
}

impl QuaternionSymbol {
    pub fn new(a: &FieldElement, b: &FieldElement) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::TowerMismatch("symbol slots".into()));
        }
        if b.is_zero() {
            return Err(Error::ZeroElement("symbol slot b"));
        }
        Ok(QuaternionSymbol { a: a.clone(), b: b.clone() })
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    /// Split for the elementary reasons `a ∈ ℘(F)` or `b ∈ F²`.
    pub fn is_trivially_split(&self) -> bool {
        self.b.is_square() || self.a.in_wp()
    }

    /// Same class with `a` in ℘-normal form and `b` reduced modulo squares
    /// where normal forms exist.
    pub fn canonical(&self) -> QuaternionSymbol {
        QuaternionSymbol { a: canonical_a(&self.a), b: canonical_b(&self.b) }
    }

    pub fn restrict(&self, k: &Field) -> Result<QuaternionSymbol> {
        QuaternionSymbol::new(&self.a.embed_into(k)?, &self.b.embed_into(k)?)
    }
}

impl fmt::Display for QuaternionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.a, self.b)
    }
}

impl fmt::Debug for QuaternionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Product of the monic primes of odd multiplicity in `n·d`.
pub fn squarefree_class(f: &RatFunc) -> RatFunc {
    let gf = f.gf();
    let nd = f.num().mul(f.den());
    let mut out = Poly::one(gf);
    for (p, e) in nd.factor() {
        if e % 2 == 1 {
            out = out.mul(&p);
        }
    }
    RatFunc::from_poly(out)
}

fn via_model(x: &FieldElement, op: impl Fn(&RatFunc) -> RatFunc) -> FieldElement {
    let f = x.field();
    if f.depth() == 0 {
        return f.from_ratfunc(op(x.as_ratfunc().unwrap()));
    }
    let m = x.to_model().expect("rational tower");
    let img = m.field().from_ratfunc(op(m.as_ratfunc().unwrap()));
    f.from_model(&img).expect("rational tower")
}

/// ℘-normal form on exact towers; on other towers `0` for elements of ℘
/// and the element itself otherwise.
pub fn canonical_a(a: &FieldElement) -> FieldElement {
    let f = a.field();
    if f.is_rational() {
        via_model(a, |r| wp::wp_reduce_ratfunc(r).0)
    } else if a.in_wp() {
        f.zero()
    } else {
        a.clone()
    }
}

/// Square-class representative on exact towers; `1` for squares elsewhere.
pub fn canonical_b(b: &FieldElement) -> FieldElement {
    let f = b.field();
    if b.is_zero() {
        return b.clone();
    }
    if f.is_rational() {
        via_model(b, squarefree_class)
    } else if b.is_square() {
        f.one()
    } else {
        b.clone()
    }
}
