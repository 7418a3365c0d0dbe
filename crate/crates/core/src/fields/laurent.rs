//! Laurent expansions of rational functions at places, and residues.

use std::fmt;

use super::places::{Place, ResidueField};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::{Error, Result};

pub const INITIAL_PRECISION: usize = 16;
pub const MAX_PRECISION: usize = 1024;

/// `Σ coeffs[i]·u^(valuation+i) + O(u^(valuation+coeffs.len()))` with
/// coefficients in the residue field of the place.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: ResidueField,
    valuation: i64,
    coeffs: Vec<Poly>,
}

impl LaurentSeries {
    pub fn residue_field(&self) -> &ResidueField {
        &self.field
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Exponent of the first unknown term.
    pub fn precision(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    /// Coefficient of `u^e`, or `None` if `e` is beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<Poly> {
        if e >= self.precision() {
            return None;
        }
        if e < self.valuation {
            return Some(self.field.zero());
        }
        Some(self.coeffs[(e - self.valuation) as usize].clone())
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// True when all known coefficients of negative exponent vanish and the
    /// constant term is known.
    pub fn is_integral(&self) -> bool {
        self.precision() > 0 && (self.valuation..0).all(|e| self.coeff(e).unwrap().is_zero())
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.valuation + i as i64;
            let c = super::display::poly_to_string(c, "θ");
            let mono = match e {
                0 => String::new(),
                1 => "u".into(),
                _ => format!("u^{e}"),
            };
            terms.push(match (c.as_str(), mono.is_empty()) {
                (_, true) => c,
                ("1", false) => mono,
                _ => format!("{}*{}", super::display::wrap(c), mono),
            });
        }
        terms.push(format!("O(u^{})", self.precision()));
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `g(θ + u)` as a polynomial in `u` over the residue field (Horner).
fn taylor_shift(rf: &ResidueField, g: &Poly) -> Vec<Poly> {
    let theta = rf.theta();
    let mut acc: Vec<Poly> = Vec::new();
    for &c in g.coeffs().iter().rev() {
        // acc ← acc·(θ + u) + c
        let mut next = vec![rf.zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] = next[i].add(&rf.mul(a, &theta));
            next[i + 1] = next[i + 1].add(a);
        }
        next[0] = next[0].add(&rf.constant(c));
        acc = next;
    }
    acc
}

fn local_poly(rf: &ResidueField, place: &Place, g: &Poly) -> Vec<Poly> {
    match place {
        Place::Finite(_) => taylor_shift(rf, g),
        Place::Infinity => g.reverse().coeffs().iter().map(|&c| rf.constant(c)).collect(),
    }
}

/// Expansion of `x` at `place` in the uniformizer `u` (`t − θ` at finite
/// places, `1/t` at infinity) with `precision` known coefficients.
pub fn complete_at(x: &RatFunc, place: &Place, precision: usize) -> LaurentSeries {
    let gf = x.gf();
    let rf = place.residue_field(gf);
    if x.is_zero() {
        return LaurentSeries { field: rf, valuation: precision as i64, coeffs: vec![] };
    }
    let n = local_poly(&rf, place, x.num());
    let d = local_poly(&rf, place, x.den());
    let vn = n.iter().position(|c| !c.is_zero()).unwrap();
    let vd = d.iter().position(|c| !c.is_zero()).unwrap();
    let mut valuation = vn as i64 - vd as i64;
    if let Place::Infinity = place {
        valuation += x.den().size_deg() as i64 - x.num().size_deg() as i64;
    }
    let n = &n[vn..];
    let d = &d[vd..];
    let d0_inv = rf.inv(&d[0]).expect("unit leading coefficient");
    let mut out: Vec<Poly> = Vec::with_capacity(precision);
    for i in 0..precision {
        let mut s = n.get(i).cloned().unwrap_or_else(|| rf.zero());
        for j in 1..=i.min(d.len() - 1) {
            s = s.add(&rf.mul(&d[j], &out[i - j]));
        }
        out.push(rf.mul(&s, &d0_inv));
    }
    LaurentSeries { field: rf, valuation, coeffs: out }
}

/// Residue at `place` of the differential `h·dt`, in the residue field.
/// Precision starts at [`INITIAL_PRECISION`] and doubles up to
/// [`MAX_PRECISION`].
pub fn residue_dt(h: &RatFunc, place: &Place) -> Result<Poly> {
    let rf = place.residue_field(h.gf());
    if h.is_zero() {
        return Ok(rf.zero());
    }
    // dt = du at finite places and dt = u^(-2) du at infinity.
    let target = match place {
        Place::Finite(_) => -1,
        Place::Infinity => 1,
    };
    let mut precision = INITIAL_PRECISION;
    loop {
        let s = complete_at(h, place, precision);
        if let Some(c) = s.coeff(target) {
            return Ok(c);
        }
        if precision >= MAX_PRECISION {
            return Err(Error::InsufficientPrecision(precision));
        }
        precision *= 2;
    }
}

/// Residue of `f·dg` at `place`.
pub fn residue(f: &RatFunc, g: &RatFunc, place: &Place) -> Result<Poly> {
    residue_dt(&f.mul(&g.derivative()), place)
}

/// Residue of `f·dg/g` at `place`; `g` must be nonzero.
pub fn residue_log(f: &RatFunc, g: &RatFunc, place: &Place) -> Result<Poly> {
    let inv = g.inv().ok_or(Error::ZeroElement("logarithmic differential"))?;
    residue_dt(&f.mul(&g.derivative()).mul(&inv), place)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::gf::Gf;

    fn t() -> RatFunc {
        RatFunc::var(Gf::new(1).unwrap())
    }

    fn place_t() -> Place {
        Place::finite(Poly::var(Gf::new(1).unwrap())).unwrap()
    }

    #[test]
    fn geometric_series_at_zero() {
        let t = t();
        let x = t.add(&RatFunc::one(t.gf())).inv().unwrap();
        let s = complete_at(&x, &place_t(), 3);
        assert_eq!(s.valuation(), 0);
        assert!(s.coeffs().iter().all(|c| c.is_one()));
    }

    #[test]
    fn t_at_infinity_is_inverse_uniformizer() {
        let s = complete_at(&t(), &Place::Infinity, 4);
        assert_eq!(s.valuation(), -1);
        assert!(s.coeff(-1).unwrap().is_one());
        assert!(s.coeff(0).unwrap().is_zero());
    }

    #[test]
    fn log_residue_at_zero() {
        let t = t();
        let f = t.inv().unwrap();
        let g = t.add(&RatFunc::one(t.gf()));
        assert!(residue_log(&f, &g, &place_t()).unwrap().is_one());
        assert!(residue(&f, &t, &place_t()).unwrap().is_one());
    }
}
