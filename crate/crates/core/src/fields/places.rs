//! Places of GF(2^k)(t) and their residue fields.

use std::cmp::Ordering;
use std::fmt;

use super::gf::Gf;
use super::poly::Poly;
use super::ratfunc::RatFunc;

/// A closed point of the projective line: a monic irreducible polynomial
/// or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(p: Poly) -> Option<Place> {
        (p.lead() == 1 && p.is_irreducible()).then_some(Place::Finite(p))
    }

    /// Residue degree over GF(2^k).
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.deg().unwrap(),
            Place::Infinity => 1,
        }
    }

    pub fn residue_field(&self, gf: Gf) -> ResidueField {
        match self {
            Place::Finite(p) => ResidueField { modulus: p.clone() },
            Place::Infinity => ResidueField { modulus: Poly::var(gf) },
        }
    }

    /// Valuation of a nonzero rational function.
    pub fn valuation(&self, f: &RatFunc) -> i64 {
        match self {
            Place::Finite(p) => f.num().valuation(p) as i64 - f.den().valuation(p) as i64,
            Place::Infinity => f.den().size_deg() as i64 - f.num().size_deg() as i64,
        }
    }

    /// Infinity sorts last; finite places by degree then coefficients.
    pub fn canonical_cmp(&self, other: &Place) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.canonical_cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{}", super::display::poly_to_string(p, "t")),
            Place::Infinity => f.write_str("∞"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All places where some element has a zero or pole, plus infinity, in
/// canonical order. Elements must be nonzero.
pub fn enumerate_places<'a>(elements: impl IntoIterator<Item = &'a RatFunc>) -> Vec<Place> {
    let mut primes: Vec<Poly> = Vec::new();
    for f in elements {
        assert!(!f.is_zero(), "places of the zero function");
        for p in f.num().irreducible_factors().into_iter().chain(f.den().irreducible_factors()) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_by(|a, b| a.canonical_cmp(b));
    primes.into_iter().map(Place::Finite).chain(std::iter::once(Place::Infinity)).collect()
}

/// GF(2^k)[X]/(m) for an irreducible `m`; elements are reduced polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    modulus: Poly,
}

impl ResidueField {
    pub fn gf(&self) -> Gf {
        self.modulus.gf()
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg().unwrap()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Class of `X`; for a finite place this is a root of its polynomial.
    pub fn theta(&self) -> Poly {
        Poly::var(self.gf()).rem(&self.modulus)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.gf())
    }

    pub fn constant(&self, a: u16) -> Poly {
        Poly::constant(self.gf(), a)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.modulus)
    }

    pub fn inv(&self, a: &Poly) -> Option<Poly> {
        a.inv_mod(&self.modulus)
    }

    /// Absolute trace to GF(2), as 0 or 1.
    pub fn trace(&self, a: &Poly) -> u8 {
        let n = self.gf().k() as usize * self.degree();
        let mut acc = Poly::zero(self.gf());
        let mut x = a.rem(&self.modulus);
        for _ in 0..n {
            acc = acc.add(&x);
            x = self.mul(&x, &x);
        }
        debug_assert!(acc.size_deg() == 0 && acc.coeff(0) <= 1);
        acc.coeff(0) as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn places_of_t_and_its_shift() {
        let gf = Gf::new(1).unwrap();
        let t = RatFunc::var(gf);
        let one_plus_t = t.add(&RatFunc::one(gf));
        let places = enumerate_places([&one_plus_t, &t.inv().unwrap()]);
        let shown: Vec<String> = places.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["t", "t+1", "∞"]);
    }

    #[test]
    fn residue_trace_of_theta_in_gf4() {
        let gf = Gf::new(1).unwrap();
        let rf = Place::finite(Poly::from_bits(gf, 0b111)).unwrap().residue_field(gf);
        // θ + θ² = 1 for θ² + θ + 1 = 0
        assert_eq!(rf.trace(&rf.theta()), 1);
    }
}
