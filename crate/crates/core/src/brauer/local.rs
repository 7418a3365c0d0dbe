//! Local invariants of quaternion symbols over GF(2^k)(t).
//!
//! `inv_v [a,b) = Tr_{κ(v)/GF(2)} res_v(a · db/b)`. The formula is only
//! trusted after [`ensure_gate`] has compared it with an explicit
//! norm-equation search on a fixed corpus.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::{laurent, places, Gf, Place, Poly, RatFunc};
use crate::{Error, Result};

/// Places where `[a,b)` can ramify: poles of `a`, zeros and poles of `b`,
/// and infinity.
pub fn symbol_support(a: &RatFunc, b: &RatFunc) -> Vec<Place> {
    let mut elems = vec![b.clone()];
    if !a.is_zero() {
        elems.push(RatFunc::from_poly(a.den().clone()));
    }
    places::enumerate_places(elems.iter())
}

fn raw_invariant(a: &RatFunc, b: &RatFunc, place: &Place) -> Result<u8> {
    if a.is_zero() {
        return Ok(0);
    }
    let res = laurent::residue_log(a, b, place)?;
    Ok(place.residue_field(a.gf()).trace(&res))
}

/// Local invariant of `[a,b)` at `place`, in GF(2).
pub fn local_invariant(a: &RatFunc, b: &RatFunc, place: &Place) -> Result<u8> {
    ensure_gate()?;
    if b.is_zero() {
        return Err(Error::ZeroElement("symbol slot b"));
    }
    raw_invariant(a, b, place)
}

/// Invariants of a class (given as symbols over GF(2^k)(t)) at every place
/// of its support, in canonical place order.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalInvariantVector {
    entries: Vec<(Place, u8)>,
}

impl LocalInvariantVector {
    pub fn entries(&self) -> &[(Place, u8)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, x)| *x == 0)
    }

    /// Sum of all invariants; 0 by reciprocity.
    pub fn total(&self) -> u8 {
        self.entries.iter().fold(0, |acc, (_, x)| acc ^ x)
    }

    pub fn get(&self, place: &Place) -> u8 {
        self.entries.iter().find(|(p, _)| p == place).map_or(0, |(_, x)| *x)
    }
}

impl fmt::Display for LocalInvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(p, x)| format!("{p}:{x}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for LocalInvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Invariant vector of `Σ [aᵢ,bᵢ)` over the union of supports.
pub fn invariant_vector(symbols: &[(RatFunc, RatFunc)]) -> Result<LocalInvariantVector> {
    ensure_gate()?;
    let mut support: Vec<Place> = Vec::new();
    for (a, b) in symbols {
        for p in symbol_support(a, b) {
            if !support.contains(&p) {
                support.push(p);
            }
        }
    }
    support.sort_by(|x, y| x.canonical_cmp(y));
    let mut acc: BTreeMap<usize, u8> = BTreeMap::new();
    for (i, p) in support.iter().enumerate() {
        let mut x = 0;
        for (a, b) in symbols {
            x ^= raw_invariant(a, b, p)?;
        }
        acc.insert(i, x);
    }
    Ok(LocalInvariantVector { entries: support.into_iter().zip(acc.into_values()).collect() })
}

/// Searches `x² + xy + ay² ∈ b·F²` with polynomial `x, y` of degree ≤
/// `deg`, not both zero. A hit proves `[a,b)` split.
pub fn norm_search(a: &RatFunc, b: &RatFunc, deg: usize) -> Option<(Poly, Poly)> {
    let gf = a.gf();
    let count = (gf.size() as u64).pow(deg as u32 + 1);
    let binv = b.inv()?;
    for i in 0..count {
        let x = Poly::nth(gf, i);
        for j in 0..count {
            if i == 0 && j == 0 {
                continue;
            }
            let y = Poly::nth(gf, j);
            let (xr, yr) = (RatFunc::from_poly(x.clone()), RatFunc::from_poly(y.clone()));
            let n = xr.square().add(&xr.mul(&yr)).add(&a.mul(&yr.square()));
            if n.is_zero() || n.mul(&binv).is_square() {
                return Some((x, y));
            }
        }
    }
    None
}

/// Outcome of comparing local invariants with the norm-search oracle.
#[derive(Clone, Debug)]
pub struct GateReport {
    pub symbols: usize,
    pub split_by_search: usize,
    pub nonzero_invariants: usize,
    pub violations: Vec<String>,
}

impl GateReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.split_by_search > 0 && self.nonzero_invariants > 0
    }
}

/// Runs the comparison on `count` random symbols with slots of degree
/// ≤ `deg` over GF(2)(t), searching norms up to degree `search_deg`.
pub fn run_gate(seed: u64, count: usize, deg: usize, search_deg: usize) -> GateReport {
    let gf = Gf::new(1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rand_rf = |nonzero: bool| loop {
        let n = Poly::nth(gf, rng.gen_range(0..1u64 << (deg + 1)));
        let d = Poly::nth(gf, rng.gen_range(1..1u64 << (deg + 1)));
        if let Some(f) = RatFunc::new(n, d) {
            if !nonzero || !f.is_zero() {
                return f;
            }
        }
    };
    let mut report = GateReport { symbols: count, split_by_search: 0, nonzero_invariants: 0, violations: vec![] };
    for _ in 0..count {
        let a = rand_rf(false);
        let b = rand_rf(true);
        let mut total = 0u8;
        let mut any = false;
        for p in symbol_support(&a, &b) {
            match raw_invariant(&a, &b, &p) {
                Ok(x) => {
                    total ^= x;
                    any |= x == 1;
                }
                Err(e) => report.violations.push(format!("[{a}, {b}) at {p}: {e}")),
            }
        }
        if total != 0 {
            report.violations.push(format!("[{a}, {b}): invariants do not sum to zero"));
        }
        if any {
            report.nonzero_invariants += 1;
        }
        if norm_search(&a, &b, search_deg).is_some() {
            report.split_by_search += 1;
            if any {
                report.violations.push(format!("[{a}, {b}) is a norm but has a nonzero invariant"));
            }
        }
    }
    report
}

/// Fails unless the residue formula agreed with the norm oracle.
pub fn ensure_gate() -> Result<()> {
    static GATE: OnceLock<GateReport> = OnceLock::new();
    let report = GATE.get_or_init(|| run_gate(0x5eed, 40, 2, 2));
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("local invariant self-test failed: {:?}", report.violations)))
    }
}

/// Whether `a ∈ ℘(F_v)` in the completion at `place`.
pub fn in_local_wp(a: &RatFunc, place: &Place) -> Result<bool> {
    if a.is_zero() {
        return Ok(true);
    }
    let v = place.valuation(a);
    let rf = place.residue_field(a.gf());
    let needed = (1 - v.min(0)) as usize;
    let s = laurent::complete_at(a, place, needed.max(1));
    // coefficients for exponents v.min(0) ..= 0
    let lo = v.min(0);
    let mut c: Vec<Poly> = (lo..=0).map(|e| s.coeff(e).expect("enough precision")).collect();
    for e in lo..0 {
        let idx = (e - lo) as usize;
        if c[idx].is_zero() {
            continue;
        }
        if e % 2 != 0 {
            return Ok(false);
        }
        // c u^e = ℘(r u^(e/2)) + r u^(e/2) with r² = c
        let r = crate::fields::wp::sqrt_mod(&c[idx], rf.modulus());
        c[idx] = rf.zero();
        let half = (e / 2 - lo) as usize;
        c[half] = c[half].add(&r);
    }
    Ok(rf.trace(&c[(-lo) as usize]) == 0)
}
