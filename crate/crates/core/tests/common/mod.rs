#![allow(dead_code)]

use char2qf::fields::{Field, FieldElement, Gf, Poly, RatFunc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_poly(r: &mut ChaCha8Rng, gf: Gf, deg: usize) -> Poly {
    let c = (0..=deg).map(|_| r.gen_range(0..gf.size()) as u16).collect();
    Poly::from_coeffs(gf, c)
}

pub fn rand_ratfunc(r: &mut ChaCha8Rng, gf: Gf, deg: usize) -> RatFunc {
    loop {
        let n = rand_poly(r, gf, deg);
        let dd = r.gen_range(0..=deg);
        let d = rand_poly(r, gf, dd);
        if let Some(f) = RatFunc::new(n, d) {
            return f;
        }
    }
}

pub fn rand_nonzero_ratfunc(r: &mut ChaCha8Rng, gf: Gf, deg: usize) -> RatFunc {
    loop {
        let f = rand_ratfunc(r, gf, deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random element of any tower level, built from its components.
pub fn rand_elem(r: &mut ChaCha8Rng, f: &Field, deg: usize) -> FieldElement {
    match f.below() {
        None if f.has_var() => f.from_ratfunc(rand_ratfunc(r, f.gf(), deg)),
        None => f.constant(r.gen_range(0..f.gf().size()) as u16),
        Some(b) => {
            let x0 = rand_elem(r, &b, deg);
            let x1 = rand_elem(r, &b, deg);
            f.from_components(&x0, &x1).unwrap()
        }
    }
}

pub fn rand_nonzero(r: &mut ChaCha8Rng, f: &Field, deg: usize) -> FieldElement {
    loop {
        let x = rand_elem(r, f, deg);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn gf2t() -> Field {
    Field::rational(1).unwrap()
}

pub fn t(f: &Field) -> FieldElement {
    f.var().unwrap()
}

/// GF(2)(t)(√t).
pub fn sqrt_t() -> Field {
    let f = gf2t();
    f.adj_sqrt(&t(&f)).unwrap()
}

/// Applies `steps` random block isometries with coefficients of degree ≤ 1.
pub fn scramble(
    r: &mut ChaCha8Rng,
    phi: &char2qf::forms::QuadraticForm,
    steps: usize,
) -> char2qf::forms::QuadraticForm {
    use char2qf::forms::relations::{apply, Rule};
    let f = phi.field().clone();
    let nb = phi.blocks().len();
    let mut cur = phi.clone();
    for _ in 0..steps {
        let pos = r.gen_range(0..nb);
        let rule = match r.gen_range(0..4) {
            0 => Rule::Rescale(rand_nonzero(r, &f, 1)),
            1 => Rule::Shift(rand_elem(r, &f, 1)),
            2 if nb > 1 => Rule::Merge,
            _ => Rule::Swap,
        };
        let pos = if matches!(rule, Rule::Merge) { pos.min(nb - 2) } else { pos };
        cur = apply(&cur, &rule, pos).unwrap().0;
    }
    cur
}
