//! Text format for presentations.
//!
//! ```text
//! gens: x1..x4
//! rels: x1^2*x2^2*x3^2*x4^2
//! ```
//!
//! Words are products of factors joined by `*`; a factor is a generator name,
//! `1`, a parenthesised word or a commutator `[u,v]`, optionally raised to an
//! integer power with `^`. The `gens` and `rels` sections may share a line when
//! separated by `;`. Whitespace is insignificant and `#` starts a comment.

use std::collections::HashMap;

use super::{Presentation, Word};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Colon,
    Semi,
    Comma,
    Star,
    Caret,
    LBracket,
    RBracket,
    LParen,
    RParen,
    DotDot,
    Minus,
    Plus,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<Spanned>, (usize, usize)), ParseError> {
    let mut toks = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                advance(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(advance(&mut chars));
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(advance(&mut chars));
                } else {
                    break;
                }
            }
            Tok::Int(s.parse().map_err(|_| syntax(l, col, "integer out of range"))?)
        } else {
            advance(&mut chars);
            match c {
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '-' => Tok::Minus,
                '+' => Tok::Plus,
                '.' => {
                    if chars.peek() == Some(&'.') {
                        advance(&mut chars);
                        Tok::DotDot
                    } else {
                        return Err(syntax(l, col, "expected `..`"));
                    }
                }
                other => return Err(syntax(l, col, format!("unexpected character `{other}`"))),
            }
        };
        toks.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    Ok((toks, (line, column)))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    index: HashMap<String, usize>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn location(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.column))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (l, c) = self.location();
        syntax(l, c, message)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                self.expect(Tok::Colon, "`:`")
            }
            _ => Err(self.error(format!("expected `{kw}:`"))),
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        let (l, c) = self.location();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok((s, l, c))
            }
            _ => Err(self.error("expected a generator name")),
        }
    }

    fn generators(&mut self) -> Result<Vec<String>, ParseError> {
        let mut names = Vec::new();
        loop {
            let (first, l, c) = self.ident()?;
            if self.peek() == Some(&Tok::DotDot) {
                self.pos += 1;
                let (last, _, _) = self.ident()?;
                let (p1, a) = split_index(&first).ok_or_else(|| syntax(l, c, "range needs numbered names"))?;
                let (p2, b) = split_index(&last).ok_or_else(|| syntax(l, c, "range needs numbered names"))?;
                if p1 != p2 || a > b {
                    return Err(syntax(l, c, format!("bad range `{first}..{last}`")));
                }
                names.extend((a..=b).map(|i| format!("{p1}{i}")));
            } else {
                names.push(first);
            }
            if self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(names)
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(if negative { -n } else { n })
            }
            _ => Err(self.error("expected an integer exponent")),
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            w = w.multiply(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let (l, c) = self.location();
        let base = match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = *self.index.get(&name).ok_or(ParseError::UndeclaredGenerator {
                    name,
                    line: l,
                    column: c,
                })?;
                Word::generator(g)
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Word::identity()
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                w
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(Tok::Comma, "`,` inside commutator")?;
                let v = self.word()?;
                self.expect(Tok::RBracket, "`]`")?;
                Word::commutator(&u, &v)
            }
            _ => return Err(self.error("expected a word")),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.int()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }
}

fn split_index(name: &str) -> Option<(&str, usize)> {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 || digits == name.len() {
        return None;
    }
    let (prefix, num) = name.split_at(name.len() - digits);
    Some((prefix, num.parse().ok()?))
}

/// Parses the presentation text format.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let (toks, end) = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        index: HashMap::new(),
    };
    p.keyword("gens")?;
    if matches!(p.peek(), Some(Tok::Ident(s)) if s == "rels") && p.toks.get(p.pos + 1).map(|s| &s.tok) == Some(&Tok::Colon) {
        return Err(ParseError::EmptyGenerators);
    }
    if p.peek().is_none() || p.peek() == Some(&Tok::Semi) {
        return Err(ParseError::EmptyGenerators);
    }
    let generators = p.generators()?;
    for (i, g) in generators.iter().enumerate() {
        if p.index.insert(g.clone(), i).is_some() {
            return Err(ParseError::DuplicateGenerator(g.clone()));
        }
    }
    if p.peek() == Some(&Tok::Semi) {
        p.pos += 1;
    }
    p.keyword("rels")?;
    let mut relators = Vec::new();
    if p.peek().is_some() && p.peek() != Some(&Tok::Semi) {
        relators.push(p.word()?);
        while p.peek() == Some(&Tok::Comma) {
            p.pos += 1;
            relators.push(p.word()?);
        }
    }
    if p.peek() == Some(&Tok::Semi) {
        p.pos += 1;
    }
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(Presentation::new(generators, relators))
}
