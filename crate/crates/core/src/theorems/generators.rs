//! Random instances with planted solutions, driven by a seeded RNG.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::brauer::{BrauerClass, QuaternionSymbol};
use crate::fields::{Field, FieldElement, Poly, RatFunc};
use crate::forms::QuadraticForm;
use crate::Result;

/// Random element with numerator and denominator degrees ≤ `deg` at the
/// base, built componentwise up the tower.
pub fn rand_elem(r: &mut ChaCha8Rng, f: &Field, deg: usize) -> FieldElement {
    match f.below() {
        Some(b) => {
            let x0 = rand_elem(r, &b, deg);
            let x1 = rand_elem(r, &b, deg);
            f.from_components(&x0, &x1).unwrap()
        }
        None if f.has_var() => {
            let gf = f.gf();
            loop {
                let n = rand_poly(r, gf, deg);
                let dd = r.gen_range(0..=deg);
                let d = rand_poly(r, gf, dd);
                if let Some(x) = RatFunc::new(n, d) {
                    return f.from_ratfunc(x);
                }
            }
        }
        None => f.constant(r.gen_range(0..f.gf().size()) as u16),
    }
}

fn rand_poly(r: &mut ChaCha8Rng, gf: crate::fields::Gf, deg: usize) -> Poly {
    Poly::from_coeffs(gf, (0..=deg).map(|_| r.gen_range(0..gf.size()) as u16).collect())
}

pub fn rand_nonzero(r: &mut ChaCha8Rng, f: &Field, deg: usize) -> FieldElement {
    loop {
        let x = rand_elem(r, f, deg);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Nonzero `u² + uv + a·v²` for random `u, v`.
fn rand_norm(r: &mut ChaCha8Rng, a: &FieldElement, deg: usize) -> FieldElement {
    let f = a.field();
    loop {
        let (u, v) = (rand_elem(r, f, deg), rand_elem(r, f, deg));
        let n = &(&u.square() + &(&u * &v)) + &(a * &v.square());
        if !n.is_zero() {
            return n;
        }
    }
}

/// Same class, disguised: `[a, z) = [a + ℘(w), z·N(u,v)]`.
pub fn disguise(r: &mut ChaCha8Rng, s: &QuaternionSymbol) -> Result<QuaternionSymbol> {
    let f = s.field();
    let w = rand_elem(r, f, 1);
    let n = rand_norm(r, s.a(), 1);
    QuaternionSymbol::new(&(s.a() + &w.wp()), &(s.b() * &n))
}

/// `(x, y, a, b)` over `f` with `x² + by² ≠ 0 ≠ b`.
pub fn norm_rewrite_instance(r: &mut ChaCha8Rng, f: &Field, deg: usize) -> [FieldElement; 4] {
    loop {
        let x = rand_elem(r, f, deg);
        let y = rand_elem(r, f, deg);
        let a = rand_elem(r, f, deg);
        let b = rand_nonzero(r, f, deg);
        if !(&x.square() + &(&b * &y.square())).is_zero() {
            return [x, y, a, b];
        }
    }
}

/// `⊥ λᵢ⟨⟨uᵢ, vᵢ]]` over `K` with `vᵢ` from the level below.
pub fn e2_frobenius_instance(r: &mut ChaCha8Rng, k: &Field, summands: usize, deg: usize) -> Result<QuadraticForm> {
    let f = k.below().expect("extension");
    let mut phi = QuadraticForm::zero_dim(k);
    for _ in 0..summands {
        let u = rand_nonzero(r, k, deg);
        let v = rand_elem(r, &f, deg).embed_into(k)?;
        let l = rand_nonzero(r, k, 1);
        phi = phi.orth_sum(&QuadraticForm::pfister(k, &[u], &v)?.scale(&l)?)?;
    }
    Ok(phi)
}

/// `m` random symbols over `F`, restricted to `K` and disguised; the class
/// over `K = F(√b)` is therefore Frobenius-trivial.
pub fn descent_instance(r: &mut ChaCha8Rng, k: &Field, m: usize, deg: usize) -> Result<BrauerClass> {
    let f = k.below().expect("extension");
    let mut out = BrauerClass::trivial(k);
    for _ in 0..m {
        let s = QuaternionSymbol::new(&rand_elem(r, &f, deg), &rand_nonzero(r, &f, deg))?.restrict(k)?;
        out.push(disguise(r, &s)?)?;
    }
    Ok(out)
}

/// `A = Σ [aᵢ, uᵢ)` over `F` with `m` symbols, one of them with slot `b`.
pub fn lift_instance(r: &mut ChaCha8Rng, f: &Field, m: usize, deg: usize) -> Result<(BrauerClass, FieldElement)> {
    let b = loop {
        let b = rand_nonzero(r, f, deg);
        if !b.is_square() {
            break b;
        }
    };
    let mut a = BrauerClass::trivial(f);
    for i in 0..m {
        let u = if i + 1 == m { b.clone() } else { rand_nonzero(r, f, deg) };
        a.push(QuaternionSymbol::new(&rand_elem(r, f, deg), &u)?)?;
    }
    Ok((a, b))
}

/// `A = Σ [αᵢ, zᵢ) + Σ [aⱼ, bⱼ)`, split by `F(α₁,…,α_m, √b₁,…,√bₙ)` by
/// construction. Returns `(A, α-parameters, square slots)`.
pub fn multiquadratic_instance(
    r: &mut ChaCha8Rng,
    f: &Field,
    m: usize,
    n: usize,
    deg: usize,
) -> Result<(BrauerClass, Vec<FieldElement>, Vec<FieldElement>)> {
    let mut a = BrauerClass::trivial(f);
    let mut alphas = Vec::new();
    for _ in 0..m {
        let al = loop {
            let x = rand_elem(r, f, deg);
            if !x.in_wp() {
                break x;
            }
        };
        a.push(QuaternionSymbol::new(&al, &rand_nonzero(r, f, deg))?)?;
        alphas.push(al);
    }
    let mut bs = Vec::new();
    for _ in 0..n {
        let b = loop {
            let b = rand_nonzero(r, f, deg);
            if !b.is_square() {
                break b;
            }
        };
        a.push(QuaternionSymbol::new(&rand_elem(r, f, deg), &b)?)?;
        bs.push(b);
    }
    Ok((a, alphas, bs))
}

/// A planted degree-8 instance and the oracle answer for it. The slot `c`
/// is solved so that `[a,x)_K + [c,y)_K` equals `A_K`; the oracle answer is
/// the anisotropic part of `ψ'_M` when `A_K` is trivial.
pub fn degree8_instance(
    r: &mut ChaCha8Rng,
    f: &Field,
    kind: super::QuarticKind,
    label: &str,
    deg: usize,
) -> Result<Option<(super::Degree8Instance, QuadraticForm)>> {
    use super::QuarticKind;
    let b = loop {
        let b = rand_nonzero(r, f, deg);
        if !b.is_square() {
            break b;
        }
    };
    let k = f.adj_sqrt(&b)?;
    let a = loop {
        let a = rand_elem(r, f, deg);
        if kind == QuarticKind::PurelyInseparable || !a.in_wp() {
            break a;
        }
    };
    let x = rand_nonzero(r, &k, deg);
    let y = match kind {
        QuarticKind::PurelyInseparable => k.generator(k.depth()).unwrap(),
        QuarticKind::MixedBiquadratic => loop {
            let y = rand_nonzero(r, &k, deg);
            if !y.is_square() {
                break y;
            }
        },
    };
    let mut class = BrauerClass::trivial(f);
    for _ in 0..3 {
        class.push(QuaternionSymbol::new(&rand_elem(r, f, deg), &rand_nonzero(r, f, deg))?)?;
    }
    // [c, y)_K = A_K + [a, x)_K, with c squared into F
    let target = class.restrict(&k)?.add(&BrauerClass::symbol(&a.embed_into(&k)?, &x)?)?;
    let Some(c) = crate::brauer::solve_a_for_b(&target, &y)? else { return Ok(None) };
    let c = c.square().lower_to(f.depth()).expect("K² ⊆ F");
    let inst = super::Degree8Instance { label: label.to_string(), class, kind, b, a, c, x, y };
    Ok(Some((inst, QuadraticForm::zero_dim(f))))
}
