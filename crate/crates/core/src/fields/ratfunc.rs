//! Rational functions over GF(2^k) in one variable, kept in canonical form:
//! coprime numerator and denominator with a monic denominator.

use std::fmt;

use super::display::{poly_to_string, wrap};
use super::gf::Gf;
use super::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero(gf: Gf) -> Self {
        RatFunc { num: Poly::zero(gf), den: Poly::one(gf) }
    }

    pub fn one(gf: Gf) -> Self {
        RatFunc::from_poly(Poly::one(gf))
    }

    pub fn constant(gf: Gf, a: u16) -> Self {
        RatFunc::from_poly(Poly::constant(gf, a))
    }

    pub fn var(gf: Gf) -> Self {
        RatFunc::from_poly(Poly::var(gf))
    }

    pub fn from_poly(p: Poly) -> Self {
        let gf = p.gf();
        RatFunc { num: p, den: Poly::one(gf) }
    }

    /// Builds `n/d` in canonical form; `None` if `d = 0`.
    pub fn new(n: Poly, d: Poly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if n.is_zero() {
            return Some(RatFunc::zero(n.gf()));
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap());
        let lead = d.lead();
        if lead != 1 {
            let inv = n.gf().inv(lead).unwrap();
            n = n.scale(inv);
            d = d.scale(inv);
        }
        Some(RatFunc { num: n, den: d })
    }

    pub fn gf(&self) -> Gf {
        self.num.gf()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<u16> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// max(deg num, deg den): the height used by search budgets.
    pub fn height(&self) -> usize {
        self.num.size_deg().max(self.den.size_deg())
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFunc::new(n, self.den.mul(&o.den)).unwrap()
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.gf());
        }
        // cross-cancel first to keep intermediate sizes small
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = self.num.div_exact(&g1).unwrap().mul(&o.num.div_exact(&g2).unwrap());
        let d = self.den.div_exact(&g2).unwrap().mul(&o.den.div_exact(&g1).unwrap());
        RatFunc::new(n, d).unwrap()
    }

    pub fn square(&self) -> RatFunc {
        RatFunc { num: self.num.square(), den: self.den.square() }
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Option<RatFunc> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn scale(&self, a: u16) -> RatFunc {
        RatFunc::new(self.num.scale(a), self.den.clone()).unwrap()
    }

    pub fn pow(&self, e: i64) -> Option<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Some(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Derivative with respect to the variable.
    pub fn derivative(&self) -> RatFunc {
        let n = self.num.derivative().mul(&self.den).add(&self.num.mul(&self.den.derivative()));
        RatFunc::new(n, self.den.square()).unwrap()
    }

    /// `f(t) -> f(t^2)`.
    pub fn spread(&self) -> RatFunc {
        RatFunc { num: self.num.spread(), den: self.den.spread() }
    }

    /// Squares every coefficient: `f(t)^2 = f^σ(t^2)`.
    pub fn frob_coeffs(&self) -> RatFunc {
        RatFunc { num: self.num.frob_coeffs(), den: self.den.frob_coeffs() }
    }

    /// Applies the coefficient Frobenius inverse.
    pub fn unfrob_coeffs(&self) -> RatFunc {
        RatFunc { num: self.num.unfrob_coeffs(), den: self.den.unfrob_coeffs() }
    }

    /// Decomposes `f = u(t)^2 + t * v(t)^2`; `[F : F^2] = 2` with basis {1, t}.
    pub fn frob_decompose(&self) -> (RatFunc, RatFunc) {
        // f = n/d = n*d / d^2 and n*d = e(t^2) + t*o(t^2)
        let (e, o) = self.num.mul(&self.den).even_odd();
        let dsq = self.den.frob_coeffs(); // d(t)^2 = dsq(t^2)
        // u(t)^2 = e(t^2)/dsq(t^2)  =>  u = e^{1/2}/dsq^{1/2} coefficient-wise
        let u = RatFunc::new(e.unfrob_coeffs(), dsq.unfrob_coeffs()).unwrap();
        let v = RatFunc::new(o.unfrob_coeffs(), dsq.unfrob_coeffs()).unwrap();
        (u, v)
    }

    pub fn sqrt(&self) -> Option<RatFunc> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(RatFunc { num: n, den: d })
    }

    pub fn is_square(&self) -> bool {
        self.num.even_odd().1.is_zero() && self.den.even_odd().1.is_zero()
    }

    /// Total order used for deterministic output.
    pub fn canonical_cmp(&self, o: &RatFunc) -> std::cmp::Ordering {
        self.height()
            .cmp(&o.height())
            .then_with(|| self.den.canonical_cmp(&o.den))
            .then_with(|| self.num.canonical_cmp(&o.num))
    }

    pub fn to_string_var(&self, var: &str) -> String {
        let n = poly_to_string(&self.num, var);
        if self.den.is_one() {
            return n;
        }
        let d = poly_to_string(&self.den, var);
        let d = if d.contains('+') || d.contains('*') { format!("({d})") } else { d };
        format!("{}/{}", wrap(n), d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> RatFunc {
        RatFunc::var(Gf::new(1).unwrap())
    }

    #[test]
    fn t_times_inverse_is_one() {
        let t = t();
        assert!(t.mul(&t.inv().unwrap()).is_one());
    }

    #[test]
    fn frob_decompose_reconstructs() {
        let gf = Gf::new(2).unwrap();
        let f = RatFunc::new(
            Poly::from_coeffs(gf, vec![1, 2, 3, 1, 2]),
            Poly::from_coeffs(gf, vec![3, 0, 1, 1]),
        )
        .unwrap();
        let (u, v) = f.frob_decompose();
        let t = RatFunc::var(gf);
        assert_eq!(u.square().add(&t.mul(&v.square())), f);
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let gf = Gf::new(2).unwrap();
        let f = RatFunc::new(Poly::constant(gf, 2), Poly::from_coeffs(gf, vec![2, 2])).unwrap();
        assert_eq!(f.den().lead(), 1);
        assert_eq!(f.num(), &Poly::constant(gf, 1));
    }
}
