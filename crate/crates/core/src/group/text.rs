//! Plain-text presentations:
//!
//! ```text
//! gens: a b c
//! rels: [a,b], a^2 b^-1, (a b)^3 = c
//! ```
//!
//! The two sections may also be separated by `;`. A relator is a product
//! of factors `atom` or `atom^INT`, where an atom is a generator, `1`,
//! a commutator `[x, y]` or a parenthesized product. `lhs = rhs` is read
//! as the relator `lhs · rhs⁻¹`.

use crate::error::{Error, Result};

use super::presentation::Presentation;
use super::word::Word;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if ch.is_ascii_digit() || (ch == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse()
                .map_err(|_| Error::Parse(format!("integer out of range: {text}")))?;
            out.push(Tok::Int(v));
        } else if "[](),^=".contains(ch) {
            out.push(Tok::Sym(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}`, found {:?}", self.peek())))
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::Int(1) | Tok::Sym('[' | '(')))
    }

    fn product(&mut self) -> Result<Word> {
        if !self.starts_atom() {
            return Err(Error::Parse(format!("expected a word, found {:?}", self.peek())));
        }
        let mut w = Word::identity();
        while self.starts_atom() {
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek() {
                Some(&Tok::Int(k)) => {
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| Error::Parse(format!("undeclared generator `{name}`")))?;
                Ok(Word::gen(g))
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let x = self.product()?;
                self.expect(',')?;
                let y = self.product()?;
                self.expect(']')?;
                Ok(Word::commutator(&x, &y))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(')')?;
                Ok(w)
            }
            other => Err(Error::Parse(format!("expected a word, found {other:?}"))),
        }
    }

    fn relation(&mut self) -> Result<Word> {
        let lhs = self.product()?;
        if self.eat('=') {
            let rhs = self.product()?;
            Ok(lhs.mul(&rhs.inverse()))
        } else {
            Ok(lhs)
        }
    }
}

/// Parses a single word over `names`.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut p = Parser { toks: lex(text)?, pos: 0, names };
    let w = p.relation()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at {:?}", p.peek())));
    }
    Ok(w)
}

fn section<'a>(part: &'a str, key: &str) -> Result<&'a str> {
    let part = part.trim();
    part.strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .ok_or_else(|| Error::Parse(format!("expected `{key}:` section")))
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let text = text.trim();
    let idx = text
        .find("rels")
        .ok_or_else(|| Error::Parse("missing `rels:` section".into()))?;
    let head = text[..idx].trim_end();
    let head = head.strip_suffix(';').unwrap_or(head);
    let names: Vec<String> = section(head, "gens")?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    for n in &names {
        if lex(n)? != [Tok::Ident(n.clone())] {
            return Err(Error::Parse(format!("bad generator name `{n}`")));
        }
    }
    let body = section(&text[idx..], "rels")?;
    let mut p = Parser { toks: lex(body)?, pos: 0, names: &names };
    let mut rels = Vec::new();
    if p.peek().is_some() {
        loop {
            rels.push(p.relation()?);
            if !p.eat(',') {
                break;
            }
        }
    }
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at {:?}", p.peek())));
    }
    Presentation::new(names, rels)
}
