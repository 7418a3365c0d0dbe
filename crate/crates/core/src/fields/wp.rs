//! Reduction modulo ℘(F) = {x² + x} for F = GF(2^k) and F = GF(2^k)(t).
//!
//! The normal form over GF(2^k)(t) is a partial-fraction sum whose pole
//! terms `c/p^j` all have odd `j`, whose polynomial part only has odd powers
//! of `t`, plus a constant that is `0` or the fixed trace-one constant.

use super::gf::Gf;
use super::poly::Poly;
use super::ratfunc::RatFunc;

/// Square root of `c` in GF(q)[t]/(p), `p` irreducible of degree `d`:
/// `c^(q^d/2)`, i.e. `k·d − 1` squarings.
pub fn sqrt_mod(c: &Poly, p: &Poly) -> Poly {
    let kd = p.gf().k() as usize * p.deg().expect("nonzero modulus");
    let mut r = c.rem(p);
    for _ in 1..kd {
        r = r.mul_mod(&r, p);
    }
    r
}

/// Splits `f = poly + Σ_p Σ_j c_{p,j} / p^j` with `deg c_{p,j} < deg p`.
/// Returns the polynomial part and, per monic irreducible `p` (sorted), the
/// coefficients `c_{p,1}, …, c_{p,e}`.
pub fn partial_fractions(f: &RatFunc) -> (Poly, Vec<(Poly, Vec<Poly>)>) {
    let (poly, n) = f.num().divrem(f.den());
    let d = f.den();
    let mut out = Vec::new();
    if d.is_constant() {
        return (poly, out);
    }
    for (p, e) in d.factor() {
        let pe = p.pow(e as u64);
        let rest = d.div_exact(&pe).unwrap();
        let ni = n.mul_mod(&rest.inv_mod(&pe).expect("coprime cofactor"), &pe);
        // base-p digits: ni = Σ r_j p^j, term r_j / p^(e-j)
        let mut coeffs = vec![Poly::zero(d.gf()); e];
        let mut cur = ni;
        for j in 0..e {
            let (q, r) = cur.divrem(&p);
            coeffs[e - 1 - j] = r;
            cur = q;
        }
        out.push((p, coeffs));
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    (poly, out)
}

fn assemble(gf: Gf, poly: &Poly, parts: &[(Poly, Vec<Poly>)]) -> RatFunc {
    let mut acc = RatFunc::from_poly(poly.clone());
    for (p, cs) in parts {
        for (j, c) in cs.iter().enumerate() {
            if !c.is_zero() {
                let den = p.pow(j as u64 + 1);
                acc = acc.add(&RatFunc::new(c.clone(), den).unwrap());
            }
        }
    }
    let _ = gf;
    acc
}

/// Returns `(canonical, witness)` with `f = canonical + witness² + witness`.
pub fn wp_reduce_ratfunc(f: &RatFunc) -> (RatFunc, RatFunc) {
    let gf = f.gf();
    let (poly, mut parts) = partial_fractions(f);
    let mut witness = RatFunc::zero(gf);

    for (p, cs) in parts.iter_mut() {
        for j in (1..=cs.len()).rev() {
            if j % 2 == 1 || cs[j - 1].is_zero() {
                continue;
            }
            let m = j / 2;
            let c = cs[j - 1].clone();
            let cp = sqrt_mod(&c, p);
            // cp² = c + p·h with deg h < deg p
            let h = cp.square().add(&c).div_exact(p).expect("square root mod p");
            cs[j - 1] = Poly::zero(gf);
            cs[j - 2] = cs[j - 2].add(&h);
            cs[m - 1] = cs[m - 1].add(&cp);
            witness = witness.add(&RatFunc::new(cp, p.pow(m as u64)).unwrap());
        }
    }

    let mut coeffs: Vec<u16> = poly.coeffs().to_vec();
    for i in (1..coeffs.len()).rev() {
        if i % 2 == 0 && coeffs[i] != 0 {
            let r = gf.sqrt(coeffs[i]);
            coeffs[i] = 0;
            coeffs[i / 2] ^= r;
            witness = witness.add(&RatFunc::from_poly(Poly::monomial(gf, r, i / 2)));
        }
    }
    if let Some(c0) = coeffs.first_mut() {
        let target = if gf.trace(*c0) == 0 { 0 } else { gf.trace_one() };
        let w = gf.solve_wp(*c0 ^ target).expect("trace zero");
        *c0 = target;
        witness = witness.add(&RatFunc::constant(gf, w));
    }
    let canon = assemble(gf, &Poly::from_coeffs(gf, coeffs), &parts);
    (canon, witness)
}

/// `(canonical, witness)` over GF(2^k): canonical is 0 or the trace-one constant.
pub fn wp_reduce_gf(gf: Gf, c: u16) -> (u16, u16) {
    let target = if gf.trace(c) == 0 { 0 } else { gf.trace_one() };
    (target, gf.solve_wp(c ^ target).expect("trace zero"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(f: &RatFunc) -> RatFunc {
        let (c, w) = wp_reduce_ratfunc(f);
        assert_eq!(c.add(&w.square()).add(&w), *f);
        c
    }

    #[test]
    fn inverse_t_squared_reduces_to_inverse_t() {
        let gf = Gf::new(1).unwrap();
        let t = RatFunc::var(gf);
        let f = t.pow(-2).unwrap();
        let (c, w) = wp_reduce_ratfunc(&f);
        assert_eq!(c, t.inv().unwrap());
        assert_eq!(w, t.inv().unwrap());
    }

    #[test]
    fn wp_image_reduces_to_zero() {
        let gf = Gf::new(2).unwrap();
        let x = RatFunc::new(Poly::from_coeffs(gf, vec![2, 1, 3]), Poly::from_coeffs(gf, vec![1, 1, 0, 1])).unwrap();
        let f = x.square().add(&x);
        assert!(check(&f).is_zero());
    }

    #[test]
    fn canonical_forms_are_stable() {
        let gf = Gf::new(1).unwrap();
        for i in 0..40u64 {
            for j in 1..20u64 {
                if let Some(f) = RatFunc::new(Poly::nth(gf, i), Poly::nth(gf, j)) {
                    let c = check(&f);
                    assert_eq!(check(&c), c);
                }
            }
        }
    }
}
