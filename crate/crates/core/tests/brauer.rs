mod common;

use char2qf::brauer::{self, e2, frobenius_map, local, BrauerClass, QuaternionSymbol};
use char2qf::fields::{Field, Place, Poly};
use char2qf::forms::QuadraticForm;
use char2qf::Decision;
use common::*;

#[test]
fn local_invariant_gate_passes() {
    local::ensure_gate().unwrap();
    let report = local::run_gate(0x5eed, 40, 2, 2);
    assert!(report.passed(), "{report:?}");
}

#[test]
fn inverse_t_with_t_is_split() {
    let f = gf2t();
    let tt = t(&f);
    let q = QuaternionSymbol::new(&tt.inv().unwrap(), &tt).unwrap();
    assert_eq!(brauer::split_test(&q).unwrap(), Decision::Yes);
    let c = BrauerClass::symbol(q.a(), q.b()).unwrap();
    let place_t = Place::finite(Poly::var(f.gf())).unwrap();
    assert_eq!(c.invariant_at(&place_t).unwrap(), 0);
}

#[test]
fn inverse_t_with_one_plus_t_is_nonsplit() {
    let f = gf2t();
    let tt = t(&f);
    let c = BrauerClass::symbol(&tt.inv().unwrap(), &(&tt + &f.one())).unwrap();
    assert_eq!(c.is_trivial().unwrap(), Decision::No);
    let inv = c.invariants().unwrap();
    assert_eq!(inv.to_string(), "{t:1, t+1:1, ∞:0}");
    assert_eq!(inv.total(), 0);
    assert_eq!(c.equal(&BrauerClass::trivial(&f)).unwrap(), Decision::No);
}

#[test]
fn symbols_over_finite_fields_split() {
    let f = Field::finite(2).unwrap();
    for x in f.finite_elements().unwrap() {
        for y in f.finite_elements().unwrap().filter(|y| !y.is_zero()) {
            let q = QuaternionSymbol::new(&x, &y).unwrap();
            assert_eq!(brauer::split_test(&q).unwrap(), Decision::Yes);
        }
    }
}

#[test]
fn simplification_rules() {
    let f = gf2t();
    let tt = t(&f);
    let a = tt.inv().unwrap();
    let b = &tt + &f.one();
    let twice = BrauerClass::new(&f, vec![QuaternionSymbol::new(&a, &b).unwrap(); 2]).unwrap();
    assert!(twice.simplify().is_empty());
    let sq = BrauerClass::symbol(&a.square(), &b).unwrap().simplify();
    assert_eq!(sq, BrauerClass::symbol(&a, &b).unwrap().simplify());
    assert!(BrauerClass::symbol(&tt.wp(), &b).unwrap().simplify().is_empty());
}

#[test]
fn biadditivity_in_the_first_slot() {
    let mut r = rng(11);
    let f = gf2t();
    for _ in 0..20 {
        let a1 = rand_elem(&mut r, &f, 3);
        let a2 = rand_elem(&mut r, &f, 3);
        let b = rand_nonzero(&mut r, &f, 3);
        let lhs = BrauerClass::new(
            &f,
            vec![QuaternionSymbol::new(&a1, &b).unwrap(), QuaternionSymbol::new(&a2, &b).unwrap()],
        )
        .unwrap();
        let rhs = BrauerClass::symbol(&(&a1 + &a2), &b).unwrap();
        assert_eq!(lhs.equal(&rhs).unwrap(), Decision::Yes);
    }
}

#[test]
fn frobenius_squares_slots() {
    let k = sqrt_t();
    let f = gf2t();
    let d = k.generator(1).unwrap();
    let c = BrauerClass::symbol(&d, &d).unwrap();
    let img = frobenius_map(&c, &f).unwrap();
    assert_eq!(img.symbols()[0].a(), &t(&f));
    assert_eq!(img.symbols()[0].b(), &t(&f));
    assert!(frobenius_map(&BrauerClass::symbol(&t(&f), &t(&f)).unwrap(), &f).is_err());
}

#[test]
fn e2_of_pfister_form() {
    let mut r = rng(12);
    let f = gf2t();
    for _ in 0..20 {
        let a = rand_elem(&mut r, &f, 2);
        let b = rand_nonzero(&mut r, &f, 2);
        let pf = QuadraticForm::pfister(&f, &[b.clone()], &a).unwrap();
        let c = e2(&pf).unwrap();
        let expected = BrauerClass::symbol(&a, &b).unwrap();
        assert_eq!(c.equal(&expected).unwrap(), Decision::Yes);
    }
}

#[test]
fn local_wp_membership() {
    let f = gf2t();
    let tt = t(&f);
    let one = tt.as_ratfunc().unwrap().clone();
    assert!(!local::in_local_wp(&one, &Place::Infinity).unwrap());
    assert!(local::in_local_wp(&one.inv().unwrap(), &Place::Infinity).unwrap());
    let place_t = Place::finite(Poly::var(f.gf())).unwrap();
    assert!(local::in_local_wp(&one.inv().unwrap().pow(2).unwrap(), &place_t).is_ok_and(|x| !x));
}

#[test]
fn classes_over_rational_towers() {
    let k = sqrt_t();
    let f = gf2t();
    // every symbol from F splits over F(√t) = F^(1/2)
    let c = BrauerClass::symbol(&t(&f).inv().unwrap(), &(&t(&f) + &f.one())).unwrap();
    assert_eq!(c.restrict(&k).unwrap().is_trivial().unwrap(), Decision::Yes);
    let d = k.generator(1).unwrap();
    let nonsplit = BrauerClass::symbol(&d.inv().unwrap(), &(&d + &k.one())).unwrap();
    assert_eq!(nonsplit.is_trivial().unwrap(), Decision::No);
}

#[test]
fn solving_for_one_slot() {
    use char2qf::brauer::{solve_a_for_b, solve_b_for_a};
    let mut r = rng(41);
    for f in [gf2t(), sqrt_t()] {
        for _ in 0..6 {
            let a1 = rand_elem(&mut r, &f, 2);
            let b1 = rand_nonzero(&mut r, &f, 2);
            let a2 = rand_elem(&mut r, &f, 2);
            let class = BrauerClass::symbol(&a1, &b1).unwrap().add(&BrauerClass::symbol(&a2, &b1).unwrap()).unwrap();
            // a class of the form [x, b1) is solvable with slot b1
            let a = solve_a_for_b(&class, &b1).unwrap().expect("solvable");
            assert!(class.equal(&BrauerClass::symbol(&a, &b1).unwrap()).unwrap().is_yes());
            let z2 = rand_nonzero(&mut r, &f, 2);
            let class = BrauerClass::symbol(&a1, &b1).unwrap().add(&BrauerClass::symbol(&a1, &z2).unwrap()).unwrap();
            if let Some(z) = solve_b_for_a(&class, &a1).unwrap() {
                assert!(class.equal(&BrauerClass::symbol(&a1, &z).unwrap()).unwrap().is_yes());
            } else {
                panic!("[{a1}, {b1}·{z2}) not recovered");
            }
        }
    }
}
