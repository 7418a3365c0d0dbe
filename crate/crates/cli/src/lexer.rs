use crate::ParseError;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Identifiers, including generator names such as `sqrt#2`.
    Ident(String),
    Int(u64),
    /// Flags such as `--trials`.
    Flag(String),
    Punct(char),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

const PUNCT: &str = "()[]{},;.+-*/^=<>";

/// Tokenizes one line. `line` is the 1-based line number used in positions.
pub fn lex_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col: i + 1 };
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            break;
        } else if c == '-' && chars.get(i + 1) == Some(&'-') && chars.get(i + 2).is_some_and(|x| x.is_alphabetic()) {
            let start = i + 2;
            i = start;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '-') {
                i += 1;
            }
            out.push(Token { tok: Tok::Flag(chars[start..i].iter().collect()), pos });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| ParseError::new(pos, format!("integer {s} out of range")))?;
            out.push(Token { tok: Tok::Int(n), pos });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            // generator names `sqrt#i`, `as#i`
            if chars.get(i) == Some(&'#') {
                i += 1;
                let d = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == d {
                    return Err(ParseError::new(pos, "expected a level after '#'"));
                }
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), pos });
        } else if PUNCT.contains(c) {
            out.push(Token { tok: Tok::Punct(c), pos });
            i += 1;
        } else {
            return Err(ParseError::new(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}
