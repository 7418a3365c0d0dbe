mod common;

use char2qf::brauer::BrauerClass;
use char2qf::fields::FieldElement;
use char2qf::forms::{equivalent, QuadraticForm};
use char2qf::theorems::{
    descend_brauer_class, lift_symbols_insep_quad, pfister_rewrite_norm, symbol_length_mixed_multiquadratic,
    verify_e2_frob_square, Verdict,
};
use char2qf::transfer::TransferFunctional;
use char2qf::Decision;
use common::*;

fn sym(a: &FieldElement, b: &FieldElement) -> BrauerClass {
    BrauerClass::symbol(a, b).unwrap()
}

#[test]
fn norm_rewrite_examples() {
    let f = gf2t();
    let tt = t(&f);
    let one = f.one();
    let (c, w) = pfister_rewrite_norm(&one, &one, &tt, &tt).unwrap();
    assert_eq!(c, &tt.square() / &(&one + &tt));
    assert!(w.verify());
    assert!(sym(&tt, &(&one + &tt)).equal(&sym(&c, &tt)).unwrap().is_yes());
    let (c, w) = pfister_rewrite_norm(&f.zero(), &one, &tt, &(&one + &tt)).unwrap();
    assert_eq!(c, tt);
    assert!(w.verify());
    let (c, w) = pfister_rewrite_norm(&tt, &f.zero(), &(&one + &tt), &tt).unwrap();
    assert!(c.is_zero());
    assert!(w.verify());
}

#[test]
fn norm_rewrite_random() {
    let f = gf2t();
    let mut r = rng(51);
    for _ in 0..20 {
        let (x, y, a, b) = (rand_elem(&mut r, &f, 3), rand_elem(&mut r, &f, 3), rand_elem(&mut r, &f, 3), rand_nonzero(&mut r, &f, 3));
        let n = &x.square() + &(&b * &y.square());
        if n.is_zero() {
            continue;
        }
        let (c, w) = pfister_rewrite_norm(&x, &y, &a, &b).unwrap();
        assert!(w.verify());
        if !x.is_zero() {
            let d = &(&(&a * &b) * &y.square()) / &n;
            assert!((&c + &d).is_zero());
        }
        let lhs = QuadraticForm::pfister(&f, &[n.clone()], &a).unwrap();
        let rhs = QuadraticForm::pfister(&f, &[b.clone()], &c).unwrap();
        assert_eq!(equivalent(&lhs, &rhs, None).unwrap(), Decision::Yes);
        assert!(sym(&a, &n).equal(&sym(&c, &b)).unwrap().is_yes());
    }
}

#[test]
fn e2_commutes_with_transfer_and_frobenius() {
    let k = sqrt_t();
    let f = k.below().unwrap();
    let s = TransferFunctional::new(&k).unwrap();
    let mut r = rng(52);
    let h = QuadraticForm::hyperbolic(&k, 2);
    assert_eq!(verify_e2_frob_square(&s, &h).unwrap().verdict(), Verdict::Verified);
    for _ in 0..10 {
        let mut phi = QuadraticForm::zero_dim(&k);
        for _ in 0..2 {
            let u = rand_nonzero(&mut r, &k, 2);
            let v = rand_elem(&mut r, &f, 2).embed_into(&k).unwrap();
            let l = rand_nonzero(&mut r, &k, 1);
            phi = phi.orth_sum(&QuadraticForm::pfister(&k, &[u], &v).unwrap().scale(&l).unwrap()).unwrap();
        }
        let ev = verify_e2_frob_square(&s, &phi).unwrap();
        assert_eq!(ev.verdict(), Verdict::Verified, "{phi}: {:?}", ev.checks.lines());
    }
}

#[test]
fn descent_of_classes() {
    let k = sqrt_t();
    let f = k.below().unwrap();
    let tt = t(&f);
    // m = 1 with z ∈ F
    let z = (&tt + &f.one()).embed_into(&k).unwrap();
    let a = tt.inv().unwrap().embed_into(&k).unwrap();
    let cert = descend_brauer_class(&sym(&a, &z)).unwrap();
    assert_eq!(cert.verdict(), Verdict::Verified, "{:?}", cert.checks.lines());
    assert!(cert.len() <= 1);
    let cert = descend_brauer_class(&BrauerClass::trivial(&k)).unwrap();
    assert!(cert.is_empty());
    let mut r = rng(53);
    for m in 1..=3 {
        let class = char2qf::theorems::generators::descent_instance(&mut r, &k, m, 2).unwrap();
        let cert = descend_brauer_class(&class).unwrap();
        assert!(cert.len() < 2 * m);
        assert_eq!(cert.verdict(), Verdict::Verified, "{class}: {:?}", cert.checks.lines());
    }
}

#[test]
fn lifting_and_multiquadratic_bounds() {
    let f = gf2t();
    let tt = t(&f);
    let one = f.one();
    let a = sym(&tt.inv().unwrap(), &(&one + &tt)).add(&sym(&(&one + &tt).inv().unwrap(), &tt)).unwrap();
    let cert = lift_symbols_insep_quad(&a, &tt, None).unwrap();
    assert_eq!(cert.verdict(), Verdict::Verified, "{:?}", cert.checks.lines());
    assert!(cert.len() <= 4);
    let split = symbol_length_mixed_multiquadratic(&a, &[tt.inv().unwrap()], &[tt.clone()]).unwrap();
    assert_eq!(split.certificate.verdict(), Verdict::Verified, "{:?}", split.certificate.checks.lines());
    assert!(split.certificate.len() <= 2);
    let b2 = &tt + &one;
    let split = symbol_length_mixed_multiquadratic(&a, &[tt.inv().unwrap(), tt.clone()], &[tt.clone(), b2]).unwrap();
    assert_eq!(split.certificate.verdict(), Verdict::Verified, "{:?}", split.certificate.checks.lines());
}

#[test]
fn degree8_pipeline_on_planted_instances() {
    use char2qf::theorems::generators::degree8_instance;
    use char2qf::theorems::{decompose_degree8_pipeline, PlantedOracle, QuarticKind};
    let f = gf2t();
    let mut r = rng(54);
    let mut ran = 0;
    for (i, kind) in [QuarticKind::PurelyInseparable, QuarticKind::MixedBiquadratic].iter().cycle().take(6).enumerate() {
        let label = format!("d8-{i}");
        let Some((inst, answer)) = degree8_instance(&mut r, &f, *kind, &label, 2).unwrap() else { continue };
        let mut oracle = PlantedOracle::default();
        oracle.insert(&label, answer);
        let rep = decompose_degree8_pipeline(&inst, &oracle).unwrap();
        assert_eq!(rep.evidence.verdict(), Verdict::Verified, "{kind:?}: {:?}", rep.evidence.checks.lines());
        assert!(rep.decomposition.len() <= 3);
        ran += 1;
    }
    assert!(ran >= 4);
}

#[test]
fn suites_are_deterministic_and_unrefuted() {
    use char2qf::theorems::{run_suite, STATEMENTS};
    for id in STATEMENTS {
        let a = run_suite(id, 6, 7, false).unwrap();
        let b = run_suite(id, 6, 7, false).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.count(|t| t.is_refuted()), 0, "{}", a.to_json());
        assert!(a.count(|t| t.is_verified()) >= 4, "{}", a.to_json());
    }
    assert!(run_suite("nonexistent", 1, 0, false).is_err());
}
