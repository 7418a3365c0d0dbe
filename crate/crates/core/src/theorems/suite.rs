//! Seeded randomized trials for every pipeline.
//!
//! Trial `i` draws from its own ChaCha8 stream `(seed, i)`, so results do not
//! depend on thread scheduling. Reports serialize to stable JSON; `millis`
//! stays `null` unless timing is requested.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::brauer::BrauerClass;
use crate::fields::Field;
use crate::forms::{equivalent, QuadraticForm};
use crate::transfer::TransferFunctional;
use crate::{Error, Result};

use super::generators as gen;
use super::{Checks, QuarticKind, Verdict};

/// Statement ids accepted by [`run_suite`].
pub const STATEMENTS: [&str; 6] = ["norm-rewrite", "e2-frobenius", "descent", "lift", "multiquadratic", "degree8"];

const DEG: usize = 2;

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub instance: String,
    pub verdict: String,
    pub certificates: Vec<String>,
    pub millis: Option<u64>,
}

impl TrialReport {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified.to_string()
    }

    pub fn is_refuted(&self) -> bool {
        self.verdict.starts_with("refuted")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub statement: String,
    pub seed: u64,
    pub trials: Vec<TrialReport>,
}

impl SuiteReport {
    pub fn count(&self, pred: impl Fn(&TrialReport) -> bool) -> usize {
        self.trials.iter().filter(|t| pred(t)).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

struct Outcome {
    instance: String,
    verdict: Verdict,
    certificates: Vec<String>,
}

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Runs `trials` independent trials of `statement`.
pub fn run_suite(statement: &str, trials: usize, seed: u64, timing: bool) -> Result<SuiteReport> {
    if !STATEMENTS.contains(&statement) {
        return Err(Error::Precondition(format!("unknown statement {statement:?}; expected one of {STATEMENTS:?}")));
    }
    let trials = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let start = Instant::now();
            let mut r = trial_rng(seed, i);
            let out = run_trial(statement, i as usize, &mut r).unwrap_or_else(|e| Outcome {
                instance: format!("trial {i}"),
                verdict: Verdict::Inconclusive(format!("library error: {e}")),
                certificates: vec![],
            });
            TrialReport {
                instance: out.instance,
                verdict: out.verdict.to_string(),
                certificates: out.certificates,
                millis: timing.then(|| start.elapsed().as_millis() as u64),
            }
        })
        .collect();
    Ok(SuiteReport { statement: statement.to_string(), seed, trials })
}

fn run_trial(statement: &str, i: usize, r: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = Field::rational(1)?;
    let k = f.adj_sqrt(&f.var().expect("rational"))?;
    match statement {
        "norm-rewrite" => norm_rewrite(r, &f),
        "e2-frobenius" => {
            let phi = gen::e2_frobenius_instance(r, &k, 1 + i % 2, DEG)?;
            let ev = super::verify_e2_frob_square(&TransferFunctional::new(&k)?, &phi)?;
            Ok(outcome(format!("φ = {phi}"), ev.verdict(), ev.checks, ev.certificates))
        }
        "descent" => {
            let m = 1 + i % 3;
            let class = gen::descent_instance(r, &k, m, DEG)?;
            let cert = super::descend_brauer_class(&class)?;
            Ok(outcome(format!("m = {m}, A = {class}"), cert.verdict(), cert.checks.clone(), vec![cert.to_string()]))
        }
        "lift" => {
            let m = 1 + i % 3;
            let (class, b) = gen::lift_instance(r, &f, m, DEG)?;
            let cert = super::lift_symbols_insep_quad(&class, &b, None)?;
            Ok(outcome(format!("m = {m}, b = {b}, A = {class}"), cert.verdict(), cert.checks.clone(), vec![cert.to_string()]))
        }
        "multiquadratic" => {
            let (m, n) = [(1, 1), (1, 2), (2, 1), (3, 1)][i % 4];
            let (class, alphas, bs) = gen::multiquadratic_instance(r, &f, m, n, DEG)?;
            let split = super::symbol_length_mixed_multiquadratic(&class, &alphas, &bs)?;
            let cert = split.certificate;
            let instance = format!("(m, n) = ({m}, {n}), A = {class}");
            Ok(outcome(instance, cert.verdict(), cert.checks.clone(), vec![cert.to_string()]))
        }
        "degree8" => {
            let kind = if i % 2 == 0 { QuarticKind::PurelyInseparable } else { QuarticKind::MixedBiquadratic };
            let label = format!("trial-{i}");
            let Some((inst, answer)) = gen::degree8_instance(r, &f, kind, &label, DEG)? else {
                return Ok(Outcome {
                    instance: format!("{kind:?}"),
                    verdict: Verdict::Inconclusive("no planted slot c found".into()),
                    certificates: vec![],
                });
            };
            let mut oracle = super::PlantedOracle::default();
            oracle.insert(&label, answer);
            let rep = super::decompose_degree8_pipeline(&inst, &oracle)?;
            let instance = format!("{kind:?}, A = {}", inst.class);
            Ok(outcome(instance, rep.evidence.verdict(), rep.evidence.checks, rep.evidence.certificates))
        }
        _ => unreachable!("checked in run_suite"),
    }
}

fn outcome(instance: String, verdict: Verdict, checks: Checks, mut certificates: Vec<String>) -> Outcome {
    let mut lines = checks.lines();
    lines.append(&mut certificates);
    Outcome { instance, verdict, certificates: lines }
}

fn norm_rewrite(r: &mut ChaCha8Rng, f: &Field) -> Result<Outcome> {
    let [x, y, a, b] = gen::norm_rewrite_instance(r, f, 3);
    let n = &x.square() + &(&b * &y.square());
    let (c, w) = super::pfister_rewrite_norm(&x, &y, &a, &b)?;
    let mut checks = Checks::default();
    checks.push_bool("witness maps ⟨⟨N, a]] onto ⟨⟨b, c]]", w.verify());
    let lhs = QuadraticForm::pfister(f, std::slice::from_ref(&n), &a)?;
    let rhs = QuadraticForm::pfister(f, std::slice::from_ref(&b), &c)?;
    checks.push("⟨⟨N, a]] ≅ ⟨⟨b, c]] by Witt equivalence", equivalent(&lhs, &rhs, None)?);
    checks.push("[a, N) = [c, b)", BrauerClass::symbol(&a, &n)?.equal(&BrauerClass::symbol(&c, &b)?)?);
    let instance = format!("x = {x}, y = {y}, a = {a}, b = {b}");
    Ok(outcome(instance, checks.verdict(), checks, vec![format!("c = {c}")]))
}
