//! `A ~ B ⊗ ⊗[aᵢ, bᵢ)` for `A` split by `F(α₁,…,α_m, √b₁,…,√bₙ)`, peeling one
//! square root at a time.

use crate::brauer::{solve_a_for_b, solve_b_for_a, BrauerClass, QuaternionSymbol};
use crate::fields::{Field, FieldElement};
use crate::{Decision, Error, Result};

use super::lift::lift_parts;
use super::{Checks, SymbolLengthCertificate};

/// Certificate whose symbols list `B` first, then the tail `[aᵢ, bᵢ)`.
#[derive(Clone, Debug)]
pub struct MultiquadraticSplit {
    pub certificate: SymbolLengthCertificate,
    /// Number of leading symbols forming `B`.
    pub b_part: usize,
}

/// Bound on the total length for `m` Artin–Schreier and `n` square slots.
pub fn length_bound(m: usize, n: usize) -> Result<usize> {
    let p = 1usize << n;
    match m {
        1 => Ok(n + 1),
        2 => Ok(p + n + 1),
        3 => Ok(3 * p + n + 1),
        _ => Err(Error::Unsupported(format!("{m} Artin–Schreier slots"))),
    }
}

/// `alphas` are the Artin–Schreier parameters `αᵢ² + αᵢ`, `bs` the square
/// slots, all in `A`'s field.
pub fn symbol_length_mixed_multiquadratic(
    a: &BrauerClass,
    alphas: &[FieldElement],
    bs: &[FieldElement],
) -> Result<MultiquadraticSplit> {
    let f = a.field().clone();
    let bound = length_bound(alphas.len(), bs.len())?;
    let mut checks = Checks::default();
    let mut notes = Vec::new();
    match splits_over_square_roots(a, bs)? {
        Some(d) => checks.push("A split by the square-root slots", d),
        None if alphas.len() == 1 && bs.is_empty() => {
            let m = f.adj_as(&alphas[0])?;
            checks.push("A split by F(α)", a.restrict(&m)?.is_trivial()?);
        }
        None => notes.push("splitting field assumed, not checked".to_string()),
    }
    let (b_syms, tail) = peel(a, alphas, bs, &mut checks)?;
    let b_part = b_syms.len();
    let mut symbols = b_syms;
    symbols.extend(tail);
    let mut certificate = SymbolLengthCertificate::new(&f, symbols, bound, checks);
    certificate.notes = notes;
    let d = a.equal(&certificate.class()?)?;
    certificate.checks.push("A = B + Σ[aᵢ, bᵢ)", d);
    Ok(MultiquadraticSplit { certificate, b_part })
}

/// Decides `A_L = 0` for `L = F(√b₁,…,√bₙ)` when `L` is a rational tower.
fn splits_over_square_roots(a: &BrauerClass, bs: &[FieldElement]) -> Result<Option<Decision>> {
    if bs.is_empty() || !a.field().is_rational() {
        return Ok(None);
    }
    let mut l = a.field().clone();
    for b in bs {
        let b = b.embed_into(&l)?;
        if !b.is_square() {
            match l.adj_sqrt(&b) {
                Ok(next) => l = next,
                Err(_) => return Ok(None),
            }
        }
    }
    Ok(Some(a.restrict(&l)?.is_trivial()?))
}

/// Returns `(B, tail)` over `a`'s field.
fn peel(
    a: &BrauerClass,
    alphas: &[FieldElement],
    bs: &[FieldElement],
    checks: &mut Checks,
) -> Result<(Vec<QuaternionSymbol>, Vec<QuaternionSymbol>)> {
    let f = a.field().clone();
    let Some((bn, rest)) = bs.split_last() else {
        return Ok((single_symbol(a, alphas, checks)?, vec![]));
    };
    if bn.is_square() {
        // F(√bₙ) = F: the last tail symbol is trivial
        return peel(a, alphas, rest, checks);
    }
    let k = f.adj_sqrt(bn)?;
    let lift = |xs: &[FieldElement]| xs.iter().map(|x| x.embed_into(&k)).collect::<Result<Vec<_>>>();
    let (b_prime, tail_k) = peel(&a.restrict(&k)?, &lift(alphas)?, &lift(rest)?, checks)?;
    let level = f.depth();
    let mut a_prime = a.clone();
    let mut tail = Vec::new();
    for s in &tail_k {
        let ai = s.a().square().lower_to(level).ok_or(Error::SquaresNotInBase)?;
        let bi = s.b().lower_to(level).ok_or(Error::SquaresNotInBase)?;
        let sym = QuaternionSymbol::new(&ai, &bi)?;
        a_prime.push(sym.clone())?;
        tail.push(sym);
    }
    let given = BrauerClass::new(&k, b_prime)?;
    let (cert, last) = lift_parts(&a_prime, bn, Some(&given))?;
    checks.items.extend(cert.checks.items);
    tail.extend(last.filter(|s| !s.a().is_zero()));
    Ok((cert.symbols, tail))
}

/// A single symbol for `A`: `[αᵢ, z)` if some Artin–Schreier slot works,
/// else `[a*, g)` with `g` the p-basis element.
fn single_symbol(a: &BrauerClass, alphas: &[FieldElement], checks: &mut Checks) -> Result<Vec<QuaternionSymbol>> {
    if a.is_trivial()?.is_yes() {
        return Ok(vec![]);
    }
    for al in alphas {
        if let Some(z) = solve_b_for_a(a, al)? {
            return Ok(vec![QuaternionSymbol::new(al, &z)?]);
        }
    }
    let f: &Field = a.field();
    if let Some(g) = f.p_basis() {
        if let Some(x) = solve_a_for_b(a, &g)? {
            return Ok(vec![QuaternionSymbol::new(&x, &g)?]);
        }
    }
    checks.push("one-symbol presentation of B", Decision::Unknown(format!("none found for {a}")));
    Ok(a.simplify().symbols().to_vec())
}
