mod common;

use char2qf::fields::Field;
use char2qf::forms::relations::{self, Rule};
use char2qf::forms::{
    equivalent, is_hyperbolic, is_isotropic, split_plane, witt_reduce, BilinearForm, Isotropy, QuadraticForm,
};
use char2qf::Decision;
use common::*;

fn block(a: &char2qf::fields::FieldElement, b: &char2qf::fields::FieldElement) -> QuadraticForm {
    QuadraticForm::block(a, b).unwrap()
}

#[test]
fn arf_examples() {
    let f2 = Field::finite(1).unwrap();
    assert!(!block(&f2.one(), &f2.one()).arf().is_trivial());
    assert!(block(&f2.zero(), &f2.zero()).arf().is_trivial());
    let f = gf2t();
    let tt = t(&f);
    let phi = block(&f.one(), &tt).orth_sum(&block(&tt, &f.one())).unwrap();
    assert!(phi.arf().is_trivial());
    let pf = QuadraticForm::pfister(&f, &[f.one()], &tt).unwrap();
    assert_eq!(pf.dim(), 4);
    assert!(pf.arf().is_trivial());
}

#[test]
fn arf_is_additive_and_scale_invariant() {
    let mut r = rng(21);
    let f = sqrt_t();
    for _ in 0..30 {
        let phi = block(&rand_elem(&mut r, &f, 2), &rand_elem(&mut r, &f, 2));
        let psi = block(&rand_elem(&mut r, &f, 2), &rand_elem(&mut r, &f, 2));
        let lambda = rand_nonzero(&mut r, &f, 2);
        let sum = phi.orth_sum(&psi).unwrap();
        let expected = phi.arf().representative() + psi.arf().representative();
        assert!((sum.arf().representative() + &expected).in_wp());
        assert!(phi.scale(&lambda).unwrap().arf().same_class(&phi.arf()).unwrap());
    }
}

#[test]
fn tensor_gives_pfister_form() {
    let f = gf2t();
    let tt = t(&f);
    let b = &tt + &f.one();
    let bil = BilinearForm::new(&f, vec![f.one(), b.clone()]).unwrap();
    let phi = QuadraticForm::tensor(&bil, &block(&f.one(), &tt)).unwrap();
    assert_eq!(phi, QuadraticForm::pfister(&f, &[b], &tt).unwrap());
    assert_eq!(QuadraticForm::tensor(&BilinearForm::new(&f, vec![f.one()]).unwrap(), &phi).unwrap(), phi);
}

#[test]
fn block_rewrites_carry_valid_witnesses() {
    let mut r = rng(22);
    for f in [gf2t(), sqrt_t()] {
        for _ in 0..10 {
            let phi = block(&rand_nonzero(&mut r, &f, 2), &rand_elem(&mut r, &f, 2))
                .orth_sum(&block(&rand_nonzero(&mut r, &f, 2), &rand_elem(&mut r, &f, 2)))
                .unwrap();
            let rules = [
                (Rule::Rescale(rand_nonzero(&mut r, &f, 2)), 1),
                (Rule::Shift(rand_elem(&mut r, &f, 2)), 0),
                (Rule::Merge, 0),
                (Rule::Swap, 1),
            ];
            for (rule, pos) in rules {
                let (psi, w) = relations::apply(&phi, &rule, pos).unwrap();
                assert!(w.verify(), "{rule:?} on {phi}");
                assert!(psi.arf().same_class(&phi.arf()).unwrap());
                assert!(w.inverse().unwrap().verify());
            }
        }
    }
}

#[test]
fn shift_by_wp_gives_hyperbolic_plane() {
    let f = gf2t();
    let tt = t(&f);
    let (psi, w) = relations::shift_to(&block(&f.one(), &tt.wp()), 0, &f.zero()).unwrap();
    assert_eq!(psi, block(&f.one(), &f.zero()));
    assert!(w.verify());
    assert!(relations::shift_to(&block(&f.one(), &tt), 0, &f.zero()).is_err());
}

#[test]
fn isotropy_examples() {
    let f2 = Field::finite(1).unwrap();
    assert!(is_isotropic(&block(&f2.zero(), &f2.zero()), None).is_isotropic());
    assert!(matches!(is_isotropic(&block(&f2.one(), &f2.one()), None), Isotropy::Anisotropic(_)));
    let f4 = Field::finite(2).unwrap();
    assert!(is_isotropic(&block(&f4.one(), &f4.one()), None).is_isotropic());
    let f = gf2t();
    let tt = t(&f);
    let pf = QuadraticForm::pfister(&f, &[&tt + &f.one()], &tt.inv().unwrap()).unwrap();
    assert!(matches!(is_isotropic(&pf, None), Isotropy::Anisotropic(_)));
}

#[test]
fn isotropic_vectors_are_zeros() {
    let mut r = rng(23);
    for f in [gf2t(), sqrt_t(), Field::finite(3).unwrap()] {
        for _ in 0..10 {
            let mut phi = QuadraticForm::zero_dim(&f);
            for _ in 0..3 {
                phi = phi.orth_sum(&block(&rand_nonzero(&mut r, &f, 1), &rand_nonzero(&mut r, &f, 1))).unwrap();
            }
            if let Isotropy::Isotropic(v) = is_isotropic(&phi, None) {
                assert!(phi.eval(&v).is_zero());
                assert!(v.iter().any(|x| !x.is_zero()));
                let (psi, w) = split_plane(&phi, &v).unwrap();
                assert_eq!(psi.dim(), phi.dim() - 2);
                assert!(w.verify(), "{phi}");
            }
        }
    }
}

#[test]
fn witt_reduce_of_split_pfister_form() {
    let f = gf2t();
    let tt = t(&f);
    let pf = QuadraticForm::pfister(&f, &[tt.clone()], &tt.wp()).unwrap();
    let d = witt_reduce(&pf, None);
    assert!(d.complete);
    assert_eq!(d.hyperbolic_count, 2);
    assert_eq!(d.anisotropic_part.dim(), 0);
}

#[test]
fn hyperbolicity_and_equivalence() {
    let f = gf2t();
    let h = QuadraticForm::hyperbolic(&f, 2);
    assert_eq!(is_hyperbolic(&h, None).unwrap().decision, Decision::Yes);
    let f2 = Field::finite(1).unwrap();
    assert_eq!(is_hyperbolic(&block(&f2.one(), &f2.one()), None).unwrap().decision, Decision::No);
    assert_eq!(
        equivalent(&block(&f2.one(), &f2.one()), &block(&f2.zero(), &f2.zero()), None).unwrap(),
        Decision::No
    );
    let mut r = rng(24);
    for _ in 0..10 {
        let phi = block(&rand_nonzero(&mut r, &f, 2), &rand_elem(&mut r, &f, 2))
            .orth_sum(&block(&rand_nonzero(&mut r, &f, 2), &rand_elem(&mut r, &f, 2)))
            .unwrap();
        assert_eq!(equivalent(&phi, &phi, None).unwrap(), Decision::Yes);
        let (psi, _) = relations::apply(&phi, &Rule::Merge, 0).unwrap();
        assert_eq!(equivalent(&phi, &psi, None).unwrap(), Decision::Yes, "{phi} vs {psi}");
    }
}

#[test]
fn pfister_sum_with_common_slot() {
    // ⟨⟨b,c]] ⊥ ⟨⟨b,c']] is hyperbolic iff [c+c', b) splits
    let mut r = rng(25);
    let f = gf2t();
    for _ in 0..10 {
        let b = rand_nonzero(&mut r, &f, 2);
        let c1 = rand_elem(&mut r, &f, 2);
        let c2 = rand_elem(&mut r, &f, 2);
        let sum = QuadraticForm::pfister(&f, &[b.clone()], &c1)
            .unwrap()
            .orth_sum(&QuadraticForm::pfister(&f, &[b.clone()], &c2).unwrap())
            .unwrap();
        let split = char2qf::brauer::BrauerClass::symbol(&(&c1 + &c2), &b).unwrap().is_trivial().unwrap();
        assert_eq!(is_hyperbolic(&sum, None).unwrap().decision, split);
    }
}
