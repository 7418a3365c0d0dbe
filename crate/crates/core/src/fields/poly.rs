//! Dense univariate polynomials over GF(2^k), including factorisation into
//! monic irreducibles (square-free split, distinct-degree, then
//! Cantor–Zassenhaus with the trace map).

use std::cmp::Ordering;
use std::fmt;

use super::gf::Gf;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    gf: Gf,
    c: Vec<u16>,
}

impl Poly {
    pub fn zero(gf: Gf) -> Self {
        Poly { gf, c: Vec::new() }
    }

    pub fn one(gf: Gf) -> Self {
        Poly::constant(gf, 1)
    }

    pub fn constant(gf: Gf, a: u16) -> Self {
        Poly::from_coeffs(gf, vec![a])
    }

    /// The variable `t`.
    pub fn var(gf: Gf) -> Self {
        Poly::from_coeffs(gf, vec![0, 1])
    }

    pub fn monomial(gf: Gf, a: u16, n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[n] = a;
        Poly::from_coeffs(gf, c)
    }

    pub fn from_coeffs(gf: Gf, mut c: Vec<u16>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { gf, c }
    }

    /// Polynomial over GF(2) from a bit pattern (bit `i` = coefficient of `t^i`).
    pub fn from_bits(gf: Gf, bits: u64) -> Self {
        let c = (0..64).map(|i| (bits >> i & 1) as u16).collect();
        Poly::from_coeffs(gf, c)
    }

    pub fn gf(&self) -> Gf {
        self.gf
    }

    pub fn coeffs(&self) -> &[u16] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u16 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; handy for size budgets.
    pub fn size_deg(&self) -> usize {
        self.deg().unwrap_or(0)
    }

    pub fn lead(&self) -> u16 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|i| self.coeff(i) ^ other.coeff(i)).collect();
        Poly::from_coeffs(self.gf, c)
    }

    pub fn scale(&self, a: u16) -> Poly {
        let gf = self.gf;
        Poly::from_coeffs(gf, self.c.iter().map(|&x| gf.mul(x, a)).collect())
    }

    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; n];
        c.extend_from_slice(&self.c);
        Poly { gf: self.gf, c }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.gf);
        }
        let gf = self.gf;
        let mut c = vec![0u16; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] ^= gf.mul(a, b);
            }
        }
        Poly::from_coeffs(gf, c)
    }

    pub fn square(&self) -> Poly {
        let gf = self.gf;
        let mut c = vec![0u16; (2 * self.c.len()).saturating_sub(1)];
        for (i, &a) in self.c.iter().enumerate() {
            c[2 * i] = gf.square(a);
        }
        Poly::from_coeffs(gf, c)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.gf);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let gf = self.gf;
        let dd = d.deg().expect("polynomial division by zero");
        let inv_lead = gf.inv(d.lead()).unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(gf), self.clone());
        }
        let mut q = vec![0u16; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = r[i];
            if coef == 0 {
                continue;
            }
            let f = gf.mul(coef, inv_lead);
            q[i - dd] = f;
            for (j, &dc) in d.c.iter().enumerate() {
                r[i - dd + j] ^= gf.mul(f, dc);
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(gf, q), Poly::from_coeffs(gf, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.gf.inv(self.lead()).unwrap())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g = gcd` (monic).
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let gf = self.gf;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(gf), Poly::zero(gf));
        let (mut t0, mut t1) = (Poly::zero(gf), Poly::one(gf));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.add(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.add(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = gf.inv(r0.lead()).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.gf).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.square().rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| if i % 2 == 1 { a } else { 0 })
            .collect();
        Poly::from_coeffs(self.gf, c)
    }

    pub fn eval(&self, x: u16) -> u16 {
        let gf = self.gf;
        self.c.iter().rev().fold(0, |acc, &a| gf.mul(acc, x) ^ a)
    }

    /// Coefficient-wise Frobenius: squares every coefficient.
    pub fn frob_coeffs(&self) -> Poly {
        let gf = self.gf;
        Poly::from_coeffs(gf, self.c.iter().map(|&a| gf.square(a)).collect())
    }

    /// Coefficient-wise inverse Frobenius.
    pub fn unfrob_coeffs(&self) -> Poly {
        let gf = self.gf;
        Poly::from_coeffs(gf, self.c.iter().map(|&a| gf.sqrt(a)).collect())
    }

    /// `p(t) -> p(t^2)`.
    pub fn spread(&self) -> Poly {
        let mut c = vec![0u16; (2 * self.c.len()).saturating_sub(1)];
        for (i, &a) in self.c.iter().enumerate() {
            c[2 * i] = a;
        }
        Poly::from_coeffs(self.gf, c)
    }

    /// Splits `p(t) = e(t^2) + t*o(t^2)`, returning `(e, o)`.
    pub fn even_odd(&self) -> (Poly, Poly) {
        let e = self.c.iter().step_by(2).copied().collect();
        let o = self.c.iter().skip(1).step_by(2).copied().collect();
        (Poly::from_coeffs(self.gf, e), Poly::from_coeffs(self.gf, o))
    }

    /// Square root, when the polynomial is a square.
    pub fn sqrt(&self) -> Option<Poly> {
        let (e, o) = self.even_odd();
        o.is_zero().then(|| e.unfrob_coeffs())
    }

    /// Reversed polynomial `t^deg * p(1/t)`.
    pub fn reverse(&self) -> Poly {
        let mut c = self.c.clone();
        c.reverse();
        Poly::from_coeffs(self.gf, c)
    }

    /// Multiplicity of `p` as a factor.
    pub fn valuation(&self, p: &Poly) -> usize {
        assert!(!self.is_zero());
        let mut v = 0;
        let mut x = self.clone();
        while let Some(q) = x.div_exact(p) {
            x = q;
            v += 1;
        }
        v
    }

    /// Canonical ordering: by degree, then coefficients from the top.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }

    /// Enumerates all polynomials of degree `< n` in a fixed order (the
    /// index's base-q digits are the coefficients).
    pub fn nth(gf: Gf, mut index: u64) -> Poly {
        let q = gf.size() as u64;
        let mut c = Vec::new();
        while index > 0 {
            c.push((index % q) as u16);
            index /= q;
        }
        Poly::from_coeffs(gf, c)
    }

    /// Distinct monic irreducible factors, sorted canonically.
    pub fn irreducible_factors(&self) -> Vec<Poly> {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        let mut out = Vec::new();
        collect_factors(&self.monic(), &mut out);
        out.sort_by(|a, b| a.canonical_cmp(b));
        out.dedup();
        out
    }

    /// Factorisation with multiplicities.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        self.irreducible_factors()
            .into_iter()
            .map(|p| {
                let v = self.valuation(&p);
                (p, v)
            })
            .collect()
    }

    pub fn is_irreducible(&self) -> bool {
        match self.deg() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let m = self.monic();
                let f = m.irreducible_factors();
                f.len() == 1 && f[0] == m
            }
        }
    }
}

fn collect_factors(f: &Poly, out: &mut Vec<Poly>) {
    if f.deg().unwrap_or(0) == 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        let r = f.sqrt().expect("zero derivative means square in characteristic 2");
        collect_factors(&r.monic(), out);
        return;
    }
    let g = f.gcd(&d);
    let sqfree = f.div_exact(&g).unwrap();
    for (deg, part) in distinct_degree(&sqfree) {
        equal_degree(&part, deg, out);
    }
    collect_factors(&g, out);
}

/// Distinct-degree factorisation of a square-free monic polynomial.
fn distinct_degree(f: &Poly) -> Vec<(usize, Poly)> {
    let gf = f.gf;
    let q = gf.size() as u128;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::var(gf);
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.deg().unwrap() {
            out.push((rest.deg().unwrap(), rest.clone()));
            break;
        }
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.add(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &Poly, d: usize, out: &mut Vec<Poly>) {
    let n = f.deg().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(f.monic());
        return;
    }
    let gf = f.gf;
    let m = gf.k() as usize * d;
    // Trace map T(a) = a + a^2 + ... + a^(2^(m-1)) mod f takes GF(2) values
    // in every residue field, so gcd(f, T(a)) is a proper split for about
    // half of all a.
    let mut idx = gf.size() as u64;
    loop {
        let a = Poly::nth(gf, idx).rem(f);
        idx += 1;
        if a.is_constant() {
            continue;
        }
        let mut t = a.clone();
        let mut acc = a;
        for _ in 1..m {
            t = t.square().rem(f);
            acc = acc.add(&t);
        }
        for shift in 0..gf.size() as u16 {
            let cand = acc.add(&Poly::constant(gf, shift));
            let g = f.gcd(&cand);
            let gd = g.deg().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = f.div_exact(&g).unwrap();
                equal_degree(&g, d, out);
                equal_degree(&h, d, out);
                return;
            }
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::display::poly_to_string(self, "t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Gf {
        Gf::new(1).unwrap()
    }

    #[test]
    fn divrem_reconstructs() {
        let gf = Gf::new(3).unwrap();
        let a = Poly::from_coeffs(gf, vec![3, 1, 5, 7, 2, 1]);
        let b = Poly::from_coeffs(gf, vec![1, 6, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg().unwrap_or(0) < 2);
    }

    #[test]
    fn t2_t_1_is_irreducible_over_gf2() {
        assert!(Poly::from_bits(gf2(), 0b111).is_irreducible());
        assert!(!Poly::from_bits(gf2(), 0b101).is_irreducible());
        // but it splits over GF(4)
        let gf4 = Gf::new(2).unwrap();
        assert!(!Poly::from_coeffs(gf4, vec![1, 1, 1]).is_irreducible());
    }

    #[test]
    fn factor_product_recovers_factors() {
        let gf = gf2();
        let p1 = Poly::from_bits(gf, 0b10); // t
        let p2 = Poly::from_bits(gf, 0b11); // t+1
        let p3 = Poly::from_bits(gf, 0b1011); // t^3+t+1
        let p4 = Poly::from_bits(gf, 0b1101); // t^3+t^2+1
        let f = p1.pow(3).mul(&p2.pow(2)).mul(&p3).mul(&p4.pow(4));
        let fac = f.factor();
        assert_eq!(fac, vec![(p1, 3), (p2, 2), (p3, 1), (p4, 4)]);
    }

    #[test]
    fn irreducible_counts_over_gf2() {
        // Necklace counts: degree 1..6 -> 2, 1, 2, 3, 6, 9.
        let gf = gf2();
        let expected = [2, 1, 2, 3, 6, 9];
        for (d, &want) in (1..=6).zip(expected.iter()) {
            let count = (1u64 << d..1u64 << (d + 1))
                .filter(|&b| Poly::from_bits(gf, b).is_irreducible())
                .count();
            assert_eq!(count, want, "degree {d}");
        }
    }

    #[test]
    fn factors_over_gf4_multiply_back() {
        let gf = Gf::new(2).unwrap();
        let f = Poly::from_coeffs(gf, vec![1, 0, 3, 2, 0, 1, 1, 2, 1]);
        let mut prod = Poly::one(gf);
        for (p, e) in f.factor() {
            assert!(p.is_irreducible());
            prod = prod.mul(&p.pow(e as u64));
        }
        assert_eq!(prod, f.monic());
    }
}
