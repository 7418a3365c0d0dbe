mod common;

use char2qf::fields::{Field, FieldElement};
use char2qf::forms::{equivalent, is_hyperbolic, BilinearForm, QuadraticForm};
use char2qf::transfer::{
    arf_trivialize_descent, descend_form_search, frobenius_reciprocity_check, transfer_bilinear,
    transfer_quadratic, BilinearPiece, TransferFunctional,
};
use char2qf::Decision;
use common::*;

fn diag(x: &FieldElement) -> BilinearForm {
    BilinearForm::new(x.field(), vec![x.clone()]).unwrap()
}

#[test]
fn bilinear_transfer_examples() {
    let k = sqrt_t();
    let f = k.below().unwrap();
    let s = TransferFunctional::new(&k).unwrap();
    let d = k.generator(1).unwrap();
    let tt = t(&f);
    let out = transfer_bilinear(&s, &diag(&d)).unwrap();
    assert_eq!(out.pieces, vec![BilinearPiece::Diagonal(f.one(), tt.clone())]);
    let out = transfer_bilinear(&s, &diag(&(&k.one() + &d))).unwrap();
    assert_eq!(out.pieces, vec![BilinearPiece::Diagonal(f.one(), &f.one() + &tt)]);
    let out = transfer_bilinear(&s, &diag(&t(&f).embed_into(&k).unwrap())).unwrap();
    assert!(matches!(out.pieces[0], BilinearPiece::Metabolic(_)));
}

#[test]
fn bilinear_transfer_determinant_class() {
    let k = sqrt_t();
    let s = TransferFunctional::new(&k).unwrap();
    let b = k.step_parameter().unwrap();
    let mut r = rng(11);
    for _ in 0..30 {
        let z = rand_nonzero(&mut r, &k, 2);
        let (x, y) = z.components().unwrap();
        if y.is_zero() {
            continue;
        }
        let out = transfer_bilinear(&s, &diag(&z)).unwrap();
        let BilinearPiece::Diagonal(u, v) = &out.pieces[0] else { panic!("expected diagonal") };
        assert_eq!(u, &y);
        let det = &y * &(&y * &(&x.square() + &(&b * &y.square())));
        assert!((&(u * v) / &det).is_square());
    }
}

fn towers() -> Vec<Field> {
    let f = gf2t();
    let tt = t(&f);
    vec![sqrt_t(), f.adj_as(&tt.inv().unwrap()).unwrap(), sqrt_t().adj_sqrt(&sqrt_t().generator(1).unwrap()).unwrap()]
}

#[test]
fn quadratic_transfer_matches_values() {
    let mut r = rng(12);
    for k in towers() {
        let s = TransferFunctional::new(&k).unwrap();
        let f = s.base().clone();
        for _ in 0..5 {
            let blocks = (0..2).map(|_| (rand_elem(&mut r, &k, 2), rand_elem(&mut r, &k, 2))).collect();
            let phi = QuadraticForm::new(&k, blocks).unwrap();
            let out = transfer_quadratic(&s, &phi).unwrap();
            assert_eq!(out.form.dim(), 2 * phi.dim());
            assert!(out.coords.inverse().is_some());
            for _ in 0..4 {
                let c: Vec<_> = (0..out.form.dim()).map(|_| rand_elem(&mut r, &f, 2)).collect();
                assert!(out.check(&s, &phi, &c).unwrap(), "{k}: {phi}");
            }
        }
    }
}

#[test]
fn quadratic_transfer_is_additive_and_keeps_hyperbolic() {
    let k = sqrt_t();
    let s = TransferFunctional::new(&k).unwrap();
    let mut r = rng(13);
    let phi = QuadraticForm::block(&rand_nonzero(&mut r, &k, 2), &rand_elem(&mut r, &k, 2)).unwrap();
    let psi = QuadraticForm::block(&rand_nonzero(&mut r, &k, 2), &rand_elem(&mut r, &k, 2)).unwrap();
    let lhs = transfer_quadratic(&s, &phi.orth_sum(&psi).unwrap()).unwrap().form;
    let rhs = transfer_quadratic(&s, &phi).unwrap().form.orth_sum(&transfer_quadratic(&s, &psi).unwrap().form).unwrap();
    assert_eq!(lhs, rhs);
    let h = QuadraticForm::hyperbolic(&k, 2);
    let th = transfer_quadratic(&s, &h).unwrap().form;
    assert_eq!(is_hyperbolic(&th, None).unwrap().decision, Decision::Yes);
}

#[test]
fn pfister_transfer_factors_through_bilinear_transfer() {
    let k = sqrt_t();
    let f = k.below().unwrap();
    let s = TransferFunctional::new(&k).unwrap();
    let mut r = rng(14);
    for _ in 0..8 {
        let z = rand_nonzero(&mut r, &k, 2);
        let a = rand_elem(&mut r, &f, 2);
        let pf = QuadraticForm::pfister(&k, &[z.clone()], &a.embed_into(&k).unwrap()).unwrap();
        let lhs = transfer_quadratic(&s, &pf).unwrap().form;
        let one_a = QuadraticForm::block(&f.one(), &a).unwrap();
        let rhs = transfer_bilinear(&s, &diag(&z))
            .unwrap()
            .tensor(&one_a)
            .unwrap()
            .orth_sum(&QuadraticForm::hyperbolic(&f, 2))
            .unwrap();
        assert_eq!(equivalent(&lhs, &rhs, None).unwrap(), Decision::Yes, "z = {z}, a = {a}");
    }
}

#[test]
fn frobenius_reciprocity() {
    let k = sqrt_t();
    let f = k.below().unwrap();
    let s = TransferFunctional::new(&k).unwrap();
    let one_one = QuadraticForm::block(&f.one(), &f.one()).unwrap();
    let rep = frobenius_reciprocity_check(&s, &diag(&k.generator(1).unwrap()), &one_one).unwrap();
    assert_eq!(rep.decision, Decision::Yes);
    let mut r = rng(15);
    for _ in 0..10 {
        let b = BilinearForm::new(&k, vec![rand_nonzero(&mut r, &k, 2), rand_nonzero(&mut r, &k, 2)]).unwrap();
        let phi = QuadraticForm::block(&rand_elem(&mut r, &f, 2), &rand_elem(&mut r, &f, 2)).unwrap();
        let rep = frobenius_reciprocity_check(&s, &b, &phi).unwrap();
        assert_eq!(rep.decision, Decision::Yes, "{b} ⊗ {phi}");
    }
}

#[test]
fn arf_trivialization() {
    let f = gf2t();
    let tt = t(&f);
    let k = sqrt_t();
    let wp = &tt.square() + &tt;
    let psi = QuadraticForm::block(&f.one(), &wp).unwrap();
    let (out, w) = arf_trivialize_descent(&psi, &k).unwrap();
    assert_eq!(out, QuadraticForm::block(&f.one(), &f.zero()).unwrap());
    assert!(w.verify());
    // Arf class a is killed by F(℘⁻¹(a))
    let a = tt.inv().unwrap();
    let m = f.adj_as(&a).unwrap();
    let psi = QuadraticForm::block(&tt, &f.zero()).unwrap().orth_sum(&QuadraticForm::block(&f.one(), &a).unwrap()).unwrap();
    assert!(!psi.arf().is_trivial());
    let (out, w) = arf_trivialize_descent(&psi, &m).unwrap();
    assert!(out.arf().is_trivial());
    assert!(w.verify());
    assert_eq!(w.source, psi.restrict(&m).unwrap());
    assert_eq!(w.target, out.restrict(&m).unwrap());
    assert!(arf_trivialize_descent(&psi, &k).is_err());
}

#[test]
fn descent_recovers_planted_forms() {
    let k = sqrt_t();
    let f = k.below().unwrap();
    let mut r = rng(16);
    for trial in 0..10 {
        let nb = 1 + trial % 3;
        let blocks = (0..nb).map(|_| (rand_elem(&mut r, &f, 2), rand_elem(&mut r, &f, 2))).collect();
        let psi0 = QuadraticForm::new(&f, blocks).unwrap();
        let phi = scramble(&mut r, &psi0.restrict(&k).unwrap(), 4);
        let found = descend_form_search(&phi, None).unwrap().expect("planted descent");
        let psi_k = found.psi.restrict(&k).unwrap();
        assert!(psi_k.arf().same_class(&phi.arf()).unwrap());
        assert_eq!(equivalent(&psi_k, &phi, None).unwrap(), Decision::Yes, "{phi}");
    }
}
