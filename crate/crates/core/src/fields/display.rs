//! Text rendering shared by polynomials, rational functions and tower
//! elements. The output parses back through the CLI grammar.

use super::gf::Gf;
use super::poly::Poly;

/// Renders an element of GF(2^k) as a polynomial in the generator `w`.
pub fn gf_to_string(gf: Gf, a: u16) -> String {
    if gf.k() == 1 || a <= 1 {
        return a.to_string();
    }
    let mut terms = Vec::new();
    for i in (0..gf.k()).rev() {
        if a >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            });
        }
    }
    terms.join("+")
}

fn coeff_times(gf: Gf, a: u16, mono: &str) -> String {
    let c = gf_to_string(gf, a);
    if mono.is_empty() {
        return c;
    }
    if a == 1 {
        return mono.to_string();
    }
    if c.contains('+') {
        format!("({c})*{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

pub fn poly_to_string(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let gf = p.gf();
    let mut terms = Vec::new();
    for (i, &a) in p.coeffs().iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(coeff_times(gf, a, &mono));
    }
    terms.join("+")
}

/// True when the rendering needs parentheses to be used as a factor.
pub fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '/' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

pub fn wrap(s: String) -> String {
    if needs_parens(&s) {
        format!("({s})")
    } else {
        s
    }
}
