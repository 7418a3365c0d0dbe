use crate::ast::{BinOp, Command, Expr, ExprKind, Ext, ExtKind, Script, Stmt};
use crate::lexer::{lex_line, Pos, Tok, Token};
use crate::ParseError;

pub const COMMANDS: [&str; 11] = ["arf", "e2", "split", "inv", "eq", "transfer", "frob", "descend", "verify", "hyp", "iso"];

/// Parses a script: one statement per line, `//` starts a comment.
pub fn parse(text: &str) -> Result<Script, ParseError> {
    let mut stmts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let toks = lex_line(line, i + 1)?;
        if toks.is_empty() {
            continue;
        }
        let end = Pos { line: i + 1, col: line.chars().count() + 1 };
        let mut p = Parser { toks, at: 0, end };
        stmts.push(p.stmt(i + 1)?);
        if let Some(t) = p.peek() {
            return Err(ParseError::new(t.pos, format!("unexpected {}", describe(&t.tok))));
        }
    }
    Ok(Script { stmts })
}

/// Parses a single expression (used by tests and the `-e` flag helpers).
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex_line(text, 1)?;
    let end = Pos { line: 1, col: text.chars().count() + 1 };
    let mut p = Parser { toks, at: 0, end };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::new(t.pos, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(e)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(n) => format!("'{n}'"),
        Tok::Flag(s) => format!("'--{s}'"),
        Tok::Punct(c) => format!("'{c}'"),
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at)
    }

    fn pos(&self) -> Pos {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn is_punct(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Punct(x), .. }) if *x == c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.is_punct(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            return Ok(());
        }
        let found = self.peek().map_or("end of line".to_string(), |t| describe(&t.tok));
        Err(ParseError::new(self.pos(), format!("expected '{c}', found {found}")))
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Token { tok: Tok::Ident(s), .. }) => Ok(s),
            Some(t) => Err(ParseError::new(t.pos, format!("expected a name, found {}", describe(&t.tok)))),
            None => Err(ParseError::new(self.end, "expected a name")),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.next() {
            Some(Token { tok: Tok::Int(n), .. }) => Ok(n),
            Some(t) => Err(ParseError::new(t.pos, format!("expected an integer, found {}", describe(&t.tok)))),
            None => Err(ParseError::new(self.end, "expected an integer")),
        }
    }

    fn stmt(&mut self, line: usize) -> Result<Stmt, ParseError> {
        let pos = self.pos();
        let head = self.ident()?;
        if head == "let" {
            let name = self.ident()?;
            if COMMANDS.contains(&name.as_str()) || is_reserved(&name) {
                return Err(ParseError::new(pos, format!("'{name}' is reserved")));
            }
            self.expect('=')?;
            return Ok(Stmt::Let(name, self.expr()?));
        }
        if !COMMANDS.contains(&head.as_str()) {
            return Err(ParseError::new(pos, format!("unknown command '{head}'")));
        }
        let mut cmd = Command { name: head, args: vec![], flags: vec![], words: vec![], line };
        if cmd.name == "verify" {
            cmd.words.push(self.word()?);
        }
        while self.peek().is_some_and(|t| !matches!(t.tok, Tok::Flag(_))) {
            if !cmd.args.is_empty() {
                self.expect(',')?;
            }
            cmd.args.push(self.expr()?);
        }
        while let Some(Token { tok: Tok::Flag(k), .. }) = self.peek().cloned() {
            self.at += 1;
            let v = match self.next() {
                Some(Token { tok: Tok::Int(n), .. }) => n.to_string(),
                Some(Token { tok: Tok::Ident(s), .. }) => s,
                _ => return Err(ParseError::new(self.pos(), format!("flag --{k} needs a value"))),
            };
            cmd.flags.push((k, v));
        }
        Ok(Stmt::Cmd(cmd))
    }

    /// Hyphenated word such as `norm-rewrite`.
    fn word(&mut self) -> Result<String, ParseError> {
        let mut w = self.ident()?;
        while self.eat('-') {
            w.push('-');
            w.push_str(&self.ident()?);
        }
        Ok(w)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.is_punct('+') {
                BinOp::Add
            } else if self.is_punct('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let pos = self.pos();
            self.at += 1;
            let rhs = self.term()?;
            lhs = Expr { kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.is_punct('*') {
                BinOp::Mul
            } else if self.is_punct('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let pos = self.pos();
            self.at += 1;
            let rhs = self.unary()?;
            lhs = Expr { kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        if self.eat('-') {
            return Ok(Expr { kind: ExprKind::Neg(Box::new(self.unary()?)), pos });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let pos = self.pos();
        let n = i64::try_from(self.int()?).map_err(|_| ParseError::new(pos, "exponent out of range"))?;
        let pos = base.pos;
        Ok(Expr { kind: ExprKind::Pow(Box::new(base), if neg { -n } else { n }), pos })
    }

    fn list_until(&mut self, close: char) -> Result<Vec<Expr>, ParseError> {
        let mut items = Vec::new();
        if self.eat(close) {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.eat(close) {
                return Ok(items);
            }
            self.expect(',')?;
        }
    }

    fn exts(&mut self) -> Result<Vec<Ext>, ParseError> {
        let mut out = Vec::new();
        while self.eat('.') {
            let pos = self.pos();
            let kind = match self.ident()?.as_str() {
                "adj_sqrt" => ExtKind::Sqrt,
                "adj_as" => ExtKind::As,
                other => return Err(ParseError::new(pos, format!("unknown extension '{other}'"))),
            };
            self.expect('(')?;
            let arg = self.expr()?;
            self.expect(')')?;
            out.push(Ext { kind, arg });
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.next() else {
            return Err(ParseError::new(pos, "expected an expression"));
        };
        let kind = match tok.tok {
            Tok::Int(n) => ExprKind::Int(n),
            Tok::Punct('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                return Ok(e);
            }
            Tok::Punct('[') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                ExprKind::Symbol(Box::new(a), Box::new(b))
            }
            Tok::Punct('{') => ExprKind::Class(self.list_until('}')?),
            Tok::Ident(name) => return self.named(name, pos),
            other => return Err(ParseError::new(pos, format!("expected an expression, found {}", describe(&other)))),
        };
        Ok(Expr { kind, pos })
    }

    fn named(&mut self, name: String, pos: Pos) -> Result<Expr, ParseError> {
        let kind = match name.as_str() {
            "GF" => {
                self.expect('(')?;
                let size = self.int()?;
                self.expect(')')?;
                let var = self.is_punct('(');
                if var {
                    self.at += 1;
                    let p = self.pos();
                    if self.ident()? != "t" {
                        return Err(ParseError::new(p, "expected 't'"));
                    }
                    self.expect(')')?;
                }
                ExprKind::Field { size, var, exts: self.exts()? }
            }
            "Q" => {
                self.expect('[')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                ExprKind::Q(Box::new(a), Box::new(b))
            }
            "perp" => {
                self.expect('(')?;
                ExprKind::Perp(self.list_until(')')?)
            }
            "scale" => {
                self.expect('(')?;
                let l = self.expr()?;
                self.expect(',')?;
                let phi = self.expr()?;
                self.expect(')')?;
                ExprKind::Scale(Box::new(l), Box::new(phi))
            }
            "pf" => {
                self.expect('<')?;
                self.expect('<')?;
                let mut slots = vec![self.expr()?];
                while self.eat(',') {
                    slots.push(self.expr()?);
                }
                self.expect(';')?;
                let v = self.expr()?;
                self.expect(']')?;
                self.expect(']')?;
                ExprKind::Pf(slots, Box::new(v))
            }
            "bil" => {
                self.expect('<')?;
                ExprKind::Bil(self.list_until('>')?)
            }
            _ if self.is_punct('.') => ExprKind::Extend(name, self.exts()?),
            _ => ExprKind::Name(name),
        };
        Ok(Expr { kind, pos })
    }
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "let" | "GF" | "Q" | "perp" | "scale" | "pf" | "bil" | "t" | "w")
        || name.starts_with("sqrt#")
        || name.starts_with("as#")
}
