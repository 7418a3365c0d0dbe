use std::fmt;

use crate::fields::{Field, FieldElement, Place, RatFunc, StepKind};
use crate::{Decision, Error, Result};

use super::local::{self, LocalInvariantVector};
use super::symbol::QuaternionSymbol;

/// Element of Br₂(F) presented as a sum of quaternion symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct BrauerClass {
    field: Field,
    symbols: Vec<QuaternionSymbol>,
}

impl BrauerClass {
    pub fn trivial(field: &Field) -> Self {
        BrauerClass { field: field.clone(), symbols: Vec::new() }
    }

    pub fn new(field: &Field, symbols: Vec<QuaternionSymbol>) -> Result<Self> {
        if symbols.iter().any(|s| s.field() != field) {
            return Err(Error::TowerMismatch("symbol outside the class field".into()));
        }
        Ok(BrauerClass { field: field.clone(), symbols })
    }

    pub fn symbol(a: &FieldElement, b: &FieldElement) -> Result<Self> {
        Ok(BrauerClass { field: a.field().clone(), symbols: vec![QuaternionSymbol::new(a, b)?] })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn symbols(&self) -> &[QuaternionSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn add(&self, other: &BrauerClass) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::TowerMismatch("class sum".into()));
        }
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().cloned());
        Ok(BrauerClass { field: self.field.clone(), symbols })
    }

    pub fn push(&mut self, s: QuaternionSymbol) -> Result<()> {
        if s.field() != &self.field {
            return Err(Error::TowerMismatch("symbol outside the class field".into()));
        }
        self.symbols.push(s);
        Ok(())
    }

    /// Rewrites with `[a,b)+[a',b) = [a+a',b)`, `[a,b)+[a,b') = [a,bb')`,
    /// ℘- and square-purging until nothing changes. The class is unchanged.
    pub fn simplify(&self) -> BrauerClass {
        let mut syms: Vec<QuaternionSymbol> =
            self.symbols.iter().map(|s| s.canonical()).filter(|s| !s.is_trivially_split()).collect();
        loop {
            let before = syms.len();
            syms = merge(syms, |s| s.b().clone(), |x, y| QuaternionSymbol::new(&(x.a() + y.a()), x.b()).unwrap());
            syms = merge(syms, |s| s.a().clone(), |x, y| QuaternionSymbol::new(x.a(), &(x.b() * y.b())).unwrap());
            if syms.len() == before {
                break;
            }
        }
        syms.sort_by_key(|s| s.to_string());
        BrauerClass { field: self.field.clone(), symbols: syms }
    }

    pub fn restrict(&self, k: &Field) -> Result<BrauerClass> {
        let symbols = self.symbols.iter().map(|s| s.restrict(k)).collect::<Result<_>>()?;
        Ok(BrauerClass { field: k.clone(), symbols })
    }

    /// Symbols transported to the flat model GF(q)(s) of a rational tower.
    pub fn model_symbols(&self) -> Result<Vec<(RatFunc, RatFunc)>> {
        if !self.field.is_rational() {
            return Err(Error::UnsupportedTower("local invariants"));
        }
        self.symbols
            .iter()
            .map(|s| Ok((model_rf(s.a())?, model_rf(s.b())?)))
            .collect()
    }

    /// Local invariants over GF(2^k)(t) (or the model of a rational tower).
    pub fn invariants(&self) -> Result<LocalInvariantVector> {
        local::invariant_vector(&self.model_symbols()?)
    }

    /// Whether the class is zero in Br(F).
    ///
    /// Complete on finite fields, on rational towers (local invariants) and
    /// on `E(α)` over a rational `E` when every slot lies in `E`.
    pub fn is_trivial(&self) -> Result<Decision> {
        let f = &self.field;
        if f.is_finite() {
            return Ok(Decision::Yes);
        }
        if f.is_rational() {
            return Ok(Decision::from_bool(self.invariants()?.is_zero()));
        }
        let simplified = self.simplify();
        if simplified.is_empty() {
            return Ok(Decision::Yes);
        }
        if let Some(d) = self.trivial_over_as_step()? {
            return Ok(d);
        }
        if simplified.len() == 1 {
            return crate::forms::witt::symbol_split_by_form(&simplified.symbols[0]);
        }
        Ok(Decision::Unknown(format!("class {simplified} over {f}")))
    }

    fn trivial_over_as_step(&self) -> Result<Option<Decision>> {
        let f = &self.field;
        let (Some(step), Some(e)) = (f.top_step(), f.below()) else { return Ok(None) };
        if step.kind != StepKind::ArtinSchreier || !e.is_rational() {
            return Ok(None);
        }
        let mut lowered = BrauerClass::trivial(&e);
        for s in &self.symbols {
            let (Some(a), Some(b)) = (s.a().lower_to(e.depth()), s.b().lower_to(e.depth())) else {
                return Ok(None);
            };
            lowered.push(QuaternionSymbol::new(&a, &b)?)?;
        }
        let a_prime = model_rf(&f.step_parameter().unwrap())?;
        // res_{E(α)/E} kills exactly the local invariants at places where α generates a field.
        for (place, x) in lowered.invariants()?.entries() {
            if *x == 1 && local::in_local_wp(&a_prime, place)? {
                return Ok(Some(Decision::No));
            }
        }
        Ok(Some(Decision::Yes))
    }

    pub fn equal(&self, other: &BrauerClass) -> Result<Decision> {
        if self.field != other.field {
            return Err(Error::TowerMismatch("class comparison".into()));
        }
        if self.simplify() == other.simplify() {
            return Ok(Decision::Yes);
        }
        self.add(other)?.is_trivial()
    }

    /// Local invariant vector entries at `place` for the class over GF(2^k)(t).
    pub fn invariant_at(&self, place: &Place) -> Result<u8> {
        let mut x = 0;
        for (a, b) in self.model_symbols()? {
            x ^= local::local_invariant(&a, &b, place)?;
        }
        Ok(x)
    }

    /// Text in the shared grammar: `{[a, b), [c, d)}`.
    pub fn to_script(&self) -> String {
        let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn model_rf(x: &FieldElement) -> Result<RatFunc> {
    Ok(x.to_model()?.as_ratfunc().unwrap().clone())
}

fn merge(
    syms: Vec<QuaternionSymbol>,
    key: impl Fn(&QuaternionSymbol) -> FieldElement,
    combine: impl Fn(&QuaternionSymbol, &QuaternionSymbol) -> QuaternionSymbol,
) -> Vec<QuaternionSymbol> {
    let mut out: Vec<QuaternionSymbol> = Vec::new();
    for s in syms {
        if let Some(pos) = out.iter().position(|o| key(o) == key(&s)) {
            let c = combine(&out[pos], &s).canonical();
            if c.is_trivially_split() {
                out.remove(pos);
            } else {
                out[pos] = c;
            }
        } else {
            out.push(s);
        }
    }
    out
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_script())
    }
}

impl fmt::Debug for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_script())
    }
}
