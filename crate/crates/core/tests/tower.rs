mod common;

use char2qf::fields::{Field, FieldElement};
use common::*;

fn towers() -> Vec<Field> {
    let f = gf2t();
    let tt = t(&f);
    let k = f.adj_sqrt(&tt).unwrap();
    let s = k.generator(1).unwrap();
    let k4 = k.adj_sqrt(&s).unwrap();
    let sep = f.adj_as(&tt.inv().unwrap()).unwrap();
    let sep_insep = sep.adj_sqrt(&t(&sep)).unwrap();
    let insep_sep = k.adj_as(&s.inv().unwrap()).unwrap();
    let gf4 = Field::finite(2).unwrap();
    let gf16 = gf4.adj_as(&gf4.gf_generator()).unwrap();
    let gf4t = Field::rational(2).unwrap();
    let gf4t_k = gf4t.adj_sqrt(&(&t(&gf4t) + &gf4t.gf_generator())).unwrap();
    vec![f, k, k4, sep, sep_insep, insep_sep, gf16, gf4t, gf4t_k]
}

#[test]
fn sqrt_t_squares_to_t() {
    let k = sqrt_t();
    let d = k.generator(1).unwrap();
    assert_eq!(d.square(), t(&k));
}

#[test]
fn field_axioms_on_random_elements() {
    let mut r = rng(1);
    for f in towers() {
        for _ in 0..20 {
            let x = rand_elem(&mut r, &f, 2);
            let y = rand_elem(&mut r, &f, 2);
            let z = rand_nonzero(&mut r, &f, 2);
            assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z), "{f}");
            assert_eq!(&(&x * &z) / &z, x, "{f}");
            assert!((&z * &z.inv().unwrap()).is_one());
        }
    }
}

#[test]
fn frobenius_decomposition_reconstructs() {
    let mut r = rng(2);
    for f in towers() {
        for _ in 0..20 {
            let x = rand_elem(&mut r, &f, 2);
            let (p, q) = x.frob_decompose();
            let rebuilt = match f.p_basis() {
                Some(g) => &p.square() + &(&g * &q.square()),
                None => p.square(),
            };
            assert_eq!(rebuilt, x, "{f}");
            assert!(x.square().is_square());
            assert_eq!(x.square().sqrt().unwrap(), x);
        }
    }
}

#[test]
fn p_basis_elements_are_not_squares() {
    for f in towers() {
        if let Some(g) = f.p_basis() {
            assert!(!g.is_square(), "{f}");
        }
    }
}

#[test]
fn wp_solutions_are_exact() {
    let mut r = rng(3);
    for f in towers() {
        for _ in 0..20 {
            let x = rand_elem(&mut r, &f, 2);
            let w = x.wp().wp_solve().expect("℘ image");
            assert_eq!(w.wp(), x.wp(), "{f}");
            if let Some(w) = x.wp_solve() {
                assert_eq!(w.wp(), x);
            }
        }
    }
}

#[test]
fn invalid_extensions_are_rejected() {
    let f = gf2t();
    let tt = t(&f);
    assert!(f.adj_sqrt(&tt.square()).is_err());
    assert!(f.adj_as(&tt.wp()).is_err());
    let k = f.adj_sqrt(&tt).unwrap();
    // every element of F is a square in F(√t)
    assert!(k.adj_sqrt(&(&t(&k) + &k.one())).is_err());
    assert!(Field::finite(1).unwrap().adj_sqrt(&Field::finite(1).unwrap().one()).is_err());
}

#[test]
fn model_round_trip() {
    let mut r = rng(4);
    for f in towers().into_iter().filter(|f| f.is_rational()) {
        for _ in 0..20 {
            let x = rand_elem(&mut r, &f, 2);
            let y = rand_elem(&mut r, &f, 2);
            let mx = x.to_model().unwrap();
            let my = y.to_model().unwrap();
            assert_eq!((&x * &y).to_model().unwrap(), &mx * &my, "{f}");
            assert_eq!(f.from_model(&mx).unwrap(), x, "{f}");
        }
    }
}

#[test]
fn embedding_and_lowering() {
    let f = gf2t();
    let k = sqrt_t();
    let x: FieldElement = &t(&f) + &f.one();
    let xk = x.embed_into(&k).unwrap();
    assert_eq!(xk.lower_to(0).unwrap(), x);
    assert!(k.generator(1).unwrap().lower_to(0).is_none());
    assert!(xk.embed_into(&f).is_err());
}

#[test]
fn display_uses_generator_names() {
    let k = sqrt_t();
    let d = k.generator(1).unwrap();
    assert_eq!((&d + &k.one()).to_string(), "1+sqrt#1");
    assert_eq!(k.to_string(), "GF(2)(t).adj_sqrt(t)");
}
