//! Presenting a class over a rational tower as a single symbol with one slot
//! fixed, by GF(2) linear algebra on local invariants.

use crate::fields::{Field, FieldElement, Place, Poly, RatFunc};
use crate::{Error, Result};

use super::class::BrauerClass;
use super::local;

/// Extra primes of degree ≤ this join the support in [`solve_b_for_a`].
const AUX_PRIME_DEGREE: usize = 3;
/// Highest pole order of the candidates in [`solve_a_for_b`].
const MAX_POLE_ORDER: usize = 3;

/// Some `a*` with `[a*, b) = A`, if one exists among elements with poles of
/// order ≤ 3 on the joint support; verified before returning.
pub fn solve_a_for_b(class: &BrauerClass, b: &FieldElement) -> Result<Option<FieldElement>> {
    let f = class.field();
    let target = class.model_symbols()?;
    let bm = to_model(b)?;
    let gf = f.gf();
    let mut support: Vec<Place> = support_of(&target);
    for p in local::symbol_support(&RatFunc::zero(gf), &bm) {
        push_unique(&mut support, p);
    }
    let consts: Vec<u16> = (0..gf.k()).map(|l| 1u16 << l).collect();
    let mut cands: Vec<RatFunc> = consts.iter().map(|&c| RatFunc::constant(gf, c)).collect();
    for place in &support {
        for i in 1..=MAX_POLE_ORDER {
            match place {
                Place::Finite(p) => {
                    let den = p.pow(i as u64);
                    for j in 0..p.deg().unwrap() {
                        for &c in &consts {
                            cands.push(RatFunc::new(Poly::monomial(gf, c, j), den.clone()).unwrap());
                        }
                    }
                }
                Place::Infinity => {
                    for &c in &consts {
                        cands.push(RatFunc::from_poly(Poly::monomial(gf, c, i)));
                    }
                }
            }
        }
    }
    let rhs = invariants_on(&support, &target)?;
    let cols = cands
        .iter()
        .map(|c| invariants_on(&support, &[(c.clone(), bm.clone())]))
        .collect::<Result<Vec<_>>>()?;
    let Some(sel) = solve_gf2(&cols, &rhs) else { return Ok(None) };
    let mut a = RatFunc::zero(gf);
    for (c, &on) in cands.iter().zip(&sel) {
        if on {
            a = a.add(c);
        }
    }
    let a = from_model(f, a)?;
    verified(class, BrauerClass::symbol(&a, b)?, a)
}

/// Some `z` with `[a, z) = A`, a product of primes on the joint support
/// and small auxiliary primes; verified before returning.
pub fn solve_b_for_a(class: &BrauerClass, a: &FieldElement) -> Result<Option<FieldElement>> {
    let f = class.field();
    let target = class.model_symbols()?;
    let am = to_model(a)?;
    let gf = am.gf();
    let mut support = support_of(&target);
    for p in local::symbol_support(&am, &RatFunc::one(gf)) {
        push_unique(&mut support, p);
    }
    for p in small_primes(gf, AUX_PRIME_DEGREE) {
        push_unique(&mut support, Place::Finite(p));
    }
    let primes: Vec<Poly> = support
        .iter()
        .filter_map(|p| match p {
            Place::Finite(q) => Some(q.clone()),
            Place::Infinity => None,
        })
        .collect();
    let rhs = invariants_on(&support, &target)?;
    let cols = primes
        .iter()
        .map(|q| invariants_on(&support, &[(am.clone(), RatFunc::from_poly(q.clone()))]))
        .collect::<Result<Vec<_>>>()?;
    let Some(sel) = solve_gf2(&cols, &rhs) else { return Ok(None) };
    let mut z = Poly::one(gf);
    for (q, &on) in primes.iter().zip(&sel) {
        if on {
            z = z.mul(q);
        }
    }
    let z = from_model(f, RatFunc::from_poly(z))?;
    verified(class, BrauerClass::symbol(a, &z)?, z)
}

fn verified(class: &BrauerClass, candidate: BrauerClass, x: FieldElement) -> Result<Option<FieldElement>> {
    Ok(class.equal(&candidate)?.is_yes().then_some(x))
}

fn to_model(x: &FieldElement) -> Result<RatFunc> {
    if !x.field().is_rational() {
        return Err(Error::UnsupportedTower("symbol solving"));
    }
    Ok(x.to_model()?.as_ratfunc().unwrap().clone())
}

fn from_model(f: &Field, x: RatFunc) -> Result<FieldElement> {
    let m = f.model_field().ok_or(Error::UnsupportedTower("symbol solving"))?;
    f.from_model(&m.from_ratfunc(x))
}

fn push_unique(v: &mut Vec<Place>, p: Place) {
    if !v.contains(&p) {
        v.push(p);
    }
}

fn support_of(symbols: &[(RatFunc, RatFunc)]) -> Vec<Place> {
    let mut out = vec![Place::Infinity];
    for (a, b) in symbols {
        for p in local::symbol_support(a, b) {
            push_unique(&mut out, p);
        }
    }
    out
}

fn small_primes(gf: crate::fields::Gf, max_deg: usize) -> Vec<Poly> {
    let q = gf.size() as u64;
    let mut out = Vec::new();
    for i in q..q.pow(max_deg as u32 + 1) {
        let p = Poly::nth(gf, i);
        if p.lead() == 1 && p.is_irreducible() {
            out.push(p);
        }
    }
    out
}

fn invariants_on(support: &[Place], symbols: &[(RatFunc, RatFunc)]) -> Result<Vec<u8>> {
    support
        .iter()
        .map(|p| {
            let mut x = 0;
            for (a, b) in symbols {
                x ^= local::local_invariant(a, b, p)?;
            }
            Ok(x)
        })
        .collect()
}

/// A subset of columns summing to `rhs` over GF(2).
pub(crate) fn solve_gf2(cols: &[Vec<u8>], rhs: &[u8]) -> Option<Vec<bool>> {
    let rows = rhs.len();
    let n = cols.len();
    // augmented matrix, row-major
    let mut m: Vec<Vec<u8>> = (0..rows).map(|r| cols.iter().map(|c| c[r]).chain([rhs[r]]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| m[i][c] == 1) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] == 1 {
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| row[n] == 1) {
        return None;
    }
    let mut sel = vec![false; n];
    for (i, &c) in pivots.iter().enumerate() {
        sel[c] = m[i][n] == 1;
    }
    Some(sel)
}
