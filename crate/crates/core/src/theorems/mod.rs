//! Executable pipelines with machine-checked certificates.
//!
//! Every pipeline records the claims it checked. A claim decided `No` makes
//! the trial `refuted`; an undecided claim makes it `inconclusive` and names
//! the undecided query. Nothing undecided is ever reported as verified.

pub mod degree8;
pub mod descent;
pub mod e2_frobenius;
pub mod generators;
pub mod lift;
pub mod multiquadratic;
pub mod norm_rewrite;
pub mod suite;

use std::fmt;

use crate::brauer::{BrauerClass, QuaternionSymbol};
use crate::fields::Field;
use crate::{Decision, Result};


pub use descent::descend_brauer_class;
pub use e2_frobenius::verify_e2_frob_square;
pub use lift::lift_symbols_insep_quad;
pub use multiquadratic::{symbol_length_mixed_multiquadratic, MultiquadraticSplit};
pub use degree8::{decompose_degree8_pipeline, Degree8Instance, Degree8Report, ExcellenceOracle, PlantedOracle, QuarticKind};
pub use norm_rewrite::pfister_rewrite_norm;
pub use suite::{run_suite, SuiteReport, TrialReport, STATEMENTS};


#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// Carries the claim that was decided false.
    Refuted(String),
    /// Carries the undecided sub-query.
    Inconclusive(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => f.write_str("verified"),
            Verdict::Refuted(c) => write!(f, "refuted: {c}"),
            Verdict::Inconclusive(r) => write!(f, "inconclusive: {r}"),
        }
    }
}

/// A claim and how it was decided.
#[derive(Clone, Debug)]
pub struct Check {
    pub claim: String,
    pub decision: Decision,
}

/// Ordered list of checked claims.
#[derive(Clone, Debug, Default)]
pub struct Checks {
    pub items: Vec<Check>,
}

impl Checks {
    pub fn push(&mut self, claim: impl Into<String>, decision: Decision) {
        self.items.push(Check { claim: claim.into(), decision });
    }

    pub fn push_bool(&mut self, claim: impl Into<String>, ok: bool) {
        self.push(claim, Decision::from_bool(ok));
    }

    /// The first refuted claim wins over the first undecided one.
    pub fn verdict(&self) -> Verdict {
        if let Some(c) = self.items.iter().find(|c| c.decision.is_no()) {
            return Verdict::Refuted(c.claim.clone());
        }
        if let Some(c) = self.items.iter().find(|c| c.decision.is_unknown()) {
            return Verdict::Inconclusive(format!("{}: {}", c.claim, c.decision));
        }
        Verdict::Verified
    }

    pub fn lines(&self) -> Vec<String> {
        self.items.iter().map(|c| format!("{}: {}", c.claim, c.decision)).collect()
    }
}

/// Checked claims plus human-readable certificates of one pipeline run.
#[derive(Clone, Debug, Default)]
pub struct Evidence {
    pub checks: Checks,
    pub certificates: Vec<String>,
}

impl Evidence {
    pub fn verdict(&self) -> Verdict {
        self.checks.verdict()
    }

    pub fn absorb(&mut self, other: Evidence) {
        self.checks.items.extend(other.checks.items);
        self.certificates.extend(other.certificates);
    }
}

/// A presentation of a class over `field` as a list of symbols, with the
/// length bound it must obey and the claims checked along the way.
#[derive(Clone, Debug)]
pub struct SymbolLengthCertificate {
    pub field: Field,
    pub symbols: Vec<QuaternionSymbol>,
    pub bound: usize,
    pub checks: Checks,
    /// Assumptions taken without proof.
    pub notes: Vec<String>,
}

impl SymbolLengthCertificate {
    pub fn new(field: &Field, symbols: Vec<QuaternionSymbol>, bound: usize, checks: Checks) -> Self {
        SymbolLengthCertificate { field: field.clone(), symbols, bound, checks, notes: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn class(&self) -> Result<BrauerClass> {
        BrauerClass::new(&self.field, self.symbols.clone())
    }

    pub fn verdict(&self) -> Verdict {
        if self.len() > self.bound {
            return Verdict::Refuted(format!("{} symbols exceed the bound {}", self.len(), self.bound));
        }
        self.checks.verdict()
    }
}

impl fmt::Display for SymbolLengthCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}} (length {} ≤ {})", syms.join(", "), self.len(), self.bound)
    }
}
