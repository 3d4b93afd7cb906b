use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Dot,
    Bar,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Eq,
    Arrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::Dot => ".",
            Tok::Bar => "|",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::Arrow => "->",
            _ => "",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn error(self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

/// Tokens with 1-based positions. `//` and `#` start line comments.
pub fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, column: col };
        let mut advance = |n: usize, k: &mut usize| {
            for _ in 0..n {
                if chars[*k] == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                *k += 1;
            }
        };
        if c.is_whitespace() {
            advance(1, &mut k);
            continue;
        }
        if c == '#' || (c == '/' && chars.get(k + 1) == Some(&'/')) {
            while k < chars.len() && chars[k] != '\n' {
                advance(1, &mut k);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            let mut end = k;
            while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_') {
                end += 1;
            }
            out.push((Tok::Ident(chars[start..end].iter().collect()), pos));
            advance(end - start, &mut k);
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            let mut end = k;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            let s: String = chars[start..end].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            advance(end - start, &mut k);
            continue;
        }
        let (tok, n) = match c {
            '+' => (Tok::Plus, 1),
            '-' if chars.get(k + 1) == Some(&'>') => (Tok::Arrow, 2),
            '-' => (Tok::Minus, 1),
            '*' => (Tok::Star, 1),
            '/' => (Tok::Slash, 1),
            '^' => (Tok::Caret, 1),
            '.' => (Tok::Dot, 1),
            '|' => (Tok::Bar, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            ';' => (Tok::Semi, 1),
            ',' => (Tok::Comma, 1),
            '=' => (Tok::Eq, 1),
            other => return Err(pos.error(format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
        advance(n, &mut k);
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let t = lex("a -> b; # c\n  x.y").unwrap();
        let kinds: Vec<&Tok> = t.iter().map(|(k, _)| k).collect();
        assert_eq!(kinds[1], &Tok::Arrow);
        assert_eq!(t[4].1, Pos { line: 2, column: 3 });
        assert_eq!(kinds.last().unwrap(), &&Tok::Eof);
    }

    #[test]
    fn bad_character() {
        let e = lex("a\n  $").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, column: 3, message: "unexpected character `$`".into() });
    }
}
