//! Script syntax tree. `Display` prints the canonical form, which parses
//! back to an equal tree (positions aside).

use std::fmt;

use crate::lexer::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtKind {
    Sqrt,
    As,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ext {
    pub kind: ExtKind,
    pub arg: Expr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(u64),
    Name(String),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
    /// `GF(q)` with optional `(t)` and extension steps.
    Field { size: u64, var: bool, exts: Vec<Ext> },
    /// A bound field name followed by extension steps.
    Extend(String, Vec<Ext>),
    Q(Box<Expr>, Box<Expr>),
    Perp(Vec<Expr>),
    Scale(Box<Expr>, Box<Expr>),
    Pf(Vec<Expr>, Box<Expr>),
    Bil(Vec<Expr>),
    Symbol(Box<Expr>, Box<Expr>),
    Class(Vec<Expr>),
}

/// Positions are ignored by equality so printed scripts compare equal to
/// their reparse.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Let(String, Expr),
    Cmd(Command),
}

#[derive(Clone, Debug)]
pub struct Command {
    pub name: String,
    pub args: Vec<Expr>,
    /// `--flag value` pairs; values are integers or words.
    pub flags: Vec<(String, String)>,
    /// Bare words, e.g. the statement id of `verify`.
    pub words: Vec<String>,
    pub line: usize,
}

impl PartialEq for Command {
    fn eq(&self, o: &Self) -> bool {
        (&self.name, &self.args, &self.flags, &self.words) == (&o.name, &o.args, &o.flags, &o.words)
    }
}

impl Eq for Command {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

fn list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

fn exts(f: &mut fmt::Formatter<'_>, exts: &[Ext]) -> fmt::Result {
    for e in exts {
        match e.kind {
            ExtKind::Sqrt => write!(f, ".adj_sqrt({})", e.arg)?,
            ExtKind::As => write!(f, ".adj_as({})", e.arg)?,
        }
    }
    Ok(())
}

impl Expr {
    fn is_atomic(&self) -> bool {
        !matches!(self.kind, ExprKind::Binary(..) | ExprKind::Neg(_) | ExprKind::Pow(..))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Name(s) => f.write_str(s),
            ExprKind::Binary(op, l, r) => {
                let p = op.precedence();
                let wrap_l = matches!(&l.kind, ExprKind::Binary(o, ..) if o.precedence() < p);
                // left-associative: equal precedence on the right needs parentheses
                let wrap_r = matches!(&r.kind, ExprKind::Binary(o, ..) if o.precedence() <= p)
                    || matches!(r.kind, ExprKind::Neg(_));
                if wrap_l {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, "{}", op.symbol())?;
                if wrap_r {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            ExprKind::Neg(e) => {
                if e.is_atomic() || matches!(e.kind, ExprKind::Pow(..)) {
                    write!(f, "-{e}")
                } else {
                    write!(f, "-({e})")
                }
            }
            ExprKind::Pow(b, e) => {
                if b.is_atomic() {
                    write!(f, "{b}^{e}")
                } else {
                    write!(f, "({b})^{e}")
                }
            }
            ExprKind::Field { size, var, exts: e } => {
                write!(f, "GF({size})")?;
                if *var {
                    f.write_str("(t)")?;
                }
                exts(f, e)
            }
            ExprKind::Extend(name, e) => {
                f.write_str(name)?;
                exts(f, e)
            }
            ExprKind::Q(a, b) => write!(f, "Q[{a}, {b}]"),
            ExprKind::Perp(items) => {
                f.write_str("perp(")?;
                list(f, items)?;
                f.write_str(")")
            }
            ExprKind::Scale(l, phi) => write!(f, "scale({l}, {phi})"),
            ExprKind::Pf(slots, v) => {
                f.write_str("pf<<")?;
                list(f, slots)?;
                write!(f, "; {v}]]")
            }
            ExprKind::Bil(items) => {
                f.write_str("bil<")?;
                list(f, items)?;
                f.write_str(">")
            }
            ExprKind::Symbol(a, b) => write!(f, "[{a}, {b})"),
            ExprKind::Class(items) => {
                f.write_str("{")?;
                list(f, items)?;
                f.write_str("}")
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for w in &self.words {
            write!(f, " {w}")?;
        }
        for (i, a) in self.args.iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { " " } else { ", " })?;
        }
        for (k, v) in &self.flags {
            write!(f, " --{k} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Let(name, e) => write!(f, "let {name} = {e}"),
            Stmt::Cmd(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
