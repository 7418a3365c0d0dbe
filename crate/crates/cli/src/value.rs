//! Evaluation of expressions into library values.

use std::collections::HashMap;
use std::fmt;

use char2qf::brauer::{BrauerClass, QuaternionSymbol};
use char2qf::fields::{Field, FieldElement, StepKind};
use char2qf::forms::{BilinearForm, QuadraticForm};

use crate::ast::{BinOp, Expr, ExprKind, Ext, ExtKind};
use crate::lexer::Pos;
use crate::EvalError;

type Result<T> = std::result::Result<T, EvalError>;

#[derive(Clone, Debug)]
pub enum Value {
    Field(Field),
    Elem(FieldElement),
    Form(QuadraticForm),
    Bilinear(BilinearForm),
    Symbol(QuaternionSymbol),
    Class(BrauerClass),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Field(_) => "field",
            Value::Elem(_) => "element",
            Value::Form(_) => "quadratic form",
            Value::Bilinear(_) => "bilinear form",
            Value::Symbol(_) => "symbol",
            Value::Class(_) => "class",
        }
    }
}

/// Canonical script text of a quadratic form.
pub fn form_script(phi: &QuadraticForm) -> String {
    let parts: Vec<String> = phi.blocks().iter().map(|(a, b)| format!("Q[{a}, {b}]")).collect();
    match parts.len() {
        0 => "perp()".into(),
        1 => parts[0].clone(),
        _ => format!("perp({})", parts.join(", ")),
    }
}

pub fn bilinear_script(b: &BilinearForm) -> String {
    let parts: Vec<String> = b.diagonal().iter().map(|x| x.to_string()).collect();
    format!("bil<{}>", parts.join(", "))
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Field(x) => write!(f, "{x}"),
            Value::Elem(x) => write!(f, "{x}"),
            Value::Form(x) => f.write_str(&form_script(x)),
            Value::Bilinear(x) => f.write_str(&bilinear_script(x)),
            Value::Symbol(x) => write!(f, "{x}"),
            Value::Class(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone)]
pub struct Env {
    names: HashMap<String, Value>,
    /// Field in which element expressions are evaluated.
    pub current: Field,
}

impl Default for Env {
    fn default() -> Self {
        Env { names: HashMap::new(), current: Field::rational(1).expect("GF(2)(t)") }
    }
}

impl Env {
    pub fn bind(&mut self, name: &str, v: Value) {
        if let Value::Field(f) = &v {
            self.current = f.clone();
        }
        self.names.insert(name.to_string(), v);
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        let cur = &self.current;
        Ok(match &e.kind {
            ExprKind::Field { size, var, exts } => Value::Field(self.field(e.pos, *size, *var, exts)?),
            ExprKind::Extend(name, exts) => match self.names.get(name) {
                Some(Value::Field(f)) => Value::Field(self.extend(f.clone(), exts)?),
                Some(v) => return Err(mismatch(e.pos, "field", v)),
                None => return Err(unbound(e.pos, name)),
            },
            ExprKind::Name(n) if !is_generator(n) => match self.names.get(n) {
                Some(Value::Elem(x)) => Value::Elem(x.embed_into(cur)?),
                Some(v) => v.clone(),
                None => return Err(unbound(e.pos, n)),
            },
            ExprKind::Q(a, b) => {
                Value::Form(QuadraticForm::new(cur, vec![(self.elem_in(a, cur)?, self.elem_in(b, cur)?)])?)
            }
            ExprKind::Perp(items) => {
                let mut phi = QuadraticForm::zero_dim(cur);
                for it in items {
                    phi = phi.orth_sum(&self.form(it)?)?;
                }
                Value::Form(phi)
            }
            ExprKind::Scale(l, phi) => Value::Form(self.form(phi)?.scale(&self.elem_in(l, cur)?)?),
            ExprKind::Pf(slots, v) => {
                let s = slots.iter().map(|x| self.elem_in(x, cur)).collect::<Result<Vec<_>>>()?;
                Value::Form(QuadraticForm::pfister(cur, &s, &self.elem_in(v, cur)?)?)
            }
            ExprKind::Bil(items) => {
                let d = items.iter().map(|x| self.elem_in(x, cur)).collect::<Result<Vec<_>>>()?;
                Value::Bilinear(BilinearForm::new(cur, d)?)
            }
            ExprKind::Symbol(a, b) => Value::Symbol(QuaternionSymbol::new(&self.elem_in(a, cur)?, &self.elem_in(b, cur)?)?),
            ExprKind::Class(items) => {
                let mut c = BrauerClass::trivial(cur);
                for it in items {
                    c = c.add(&self.class(it)?)?;
                }
                Value::Class(c)
            }
            _ => Value::Elem(self.elem_in(e, cur)?),
        })
    }

    pub fn form(&self, e: &Expr) -> Result<QuadraticForm> {
        match self.eval(e)? {
            Value::Form(phi) => Ok(phi),
            v => Err(mismatch(e.pos, "quadratic form", &v)),
        }
    }

    /// Symbols are promoted to one-symbol classes.
    pub fn class(&self, e: &Expr) -> Result<BrauerClass> {
        match self.eval(e)? {
            Value::Class(c) => Ok(c),
            Value::Symbol(s) => Ok(BrauerClass::new(&s.field().clone(), vec![s])?),
            v => Err(mismatch(e.pos, "symbol or class", &v)),
        }
    }

    pub fn elem_in(&self, e: &Expr, f: &Field) -> Result<FieldElement> {
        let bin = |a: &Expr, b: &Expr| -> Result<(FieldElement, FieldElement)> { Ok((self.elem_in(a, f)?, self.elem_in(b, f)?)) };
        Ok(match &e.kind {
            ExprKind::Int(n) => f.constant((n % 2) as u16),
            ExprKind::Name(n) => self.name_in(e.pos, n, f)?,
            ExprKind::Binary(op, a, b) => {
                let (x, y) = bin(a, b)?;
                match op {
                    BinOp::Add | BinOp::Sub => &x + &y,
                    BinOp::Mul => &x * &y,
                    BinOp::Div => x.checked_div(&y)?,
                }
            }
            // -x = x in characteristic 2
            ExprKind::Neg(a) => self.elem_in(a, f)?,
            ExprKind::Pow(a, n) => self.elem_in(a, f)?.pow(*n)?,
            _ => return Err(EvalError::usage(e.pos, "expected an element")),
        })
    }

    fn name_in(&self, pos: Pos, n: &str, f: &Field) -> Result<FieldElement> {
        match n {
            "t" => f.var().ok_or_else(|| EvalError::usage(pos, format!("{f} has no variable t"))),
            "w" => Ok(f.gf_generator()),
            _ if is_generator(n) => {
                let (kind, level) = n.split_once('#').expect("generator name");
                let level: usize = level.parse().map_err(|_| EvalError::usage(pos, "bad generator level"))?;
                let want = if kind == "sqrt" { StepKind::Inseparable } else { StepKind::ArtinSchreier };
                let ok = level >= 1 && level <= f.depth() && f.steps()[level - 1].kind == want;
                if !ok {
                    return Err(EvalError::usage(pos, format!("{n} is not a generator of {f}")));
                }
                Ok(f.generator(level).expect("checked level"))
            }
            _ => match self.names.get(n) {
                Some(Value::Elem(x)) => Ok(x.embed_into(f)?),
                Some(v) => Err(mismatch(pos, "element", v)),
                None => Err(unbound(pos, n)),
            },
        }
    }

    fn field(&self, pos: Pos, size: u64, var: bool, exts: &[Ext]) -> Result<Field> {
        if !(2..=1 << 15).contains(&size) || !size.is_power_of_two() {
            return Err(EvalError::usage(pos, format!("GF({size}) is not a supported field size")));
        }
        let k = size.trailing_zeros() as u8;
        let base = if var { Field::rational(k)? } else { Field::finite(k)? };
        self.extend(base, exts)
    }

    fn extend(&self, mut f: Field, exts: &[Ext]) -> Result<Field> {
        for ext in exts {
            let x = self.elem_in(&ext.arg, &f)?;
            f = match ext.kind {
                ExtKind::Sqrt => f.adj_sqrt(&x)?,
                ExtKind::As => f.adj_as(&x)?,
            };
        }
        Ok(f)
    }
}

fn is_generator(n: &str) -> bool {
    matches!(n, "t" | "w") || n.starts_with("sqrt#") || n.starts_with("as#")
}

fn unbound(pos: Pos, n: &str) -> EvalError {
    EvalError::usage(pos, format!("unbound name '{n}'"))
}

fn mismatch(pos: Pos, want: &str, got: &Value) -> EvalError {
    EvalError::usage(pos, format!("expected {want}, found {}", got.kind()))
}
