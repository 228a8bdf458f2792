//! Lexer, AST, parser and canonical printer for construction scripts.
//!
//! ```text
//! script := stmt*
//! stmt   := "let" IDENT "=" expr | "assert" expr cmp expr | "print" expr
//! expr   := atom ("." IDENT)*
//! atom   := IDENT | INT | STRING | IDENT "(" (expr ("," expr)*)? ")"
//! cmp    := "==" | "!=" | "<=" | ">="
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::collections::BTreeSet;
use std::fmt;

use super::{DslError, DslErrorKind};

/// 1-based source position. Spans never take part in equality so that a
/// script and its re-parsed rendering compare equal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Ne,
    Le,
    Ge,
}

impl Cmp {
    pub fn as_str(self) -> &'static str {
        match self {
            Cmp::Eq => "==",
            Cmp::Ne => "!=",
            Cmp::Le => "<=",
            Cmp::Ge => ">=",
        }
    }

    /// The operator that holds when `self` fails.
    pub fn negated(self) -> &'static str {
        match self {
            Cmp::Eq => "!=",
            Cmp::Ne => "==",
            Cmp::Le => ">",
            Cmp::Ge => "<",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name(String, Span),
    Int(i64, Span),
    Str(String, Span),
    Call { name: String, args: Vec<Expr>, span: Span },
    Field { base: Box<Expr>, field: String, span: Span },
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Name(_, s) | Expr::Int(_, s) | Expr::Str(_, s) => *s,
            Expr::Call { span, .. } | Expr::Field { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Let { name: String, expr: Expr, span: Span },
    Assert { lhs: Expr, op: Cmp, rhs: Expr, span: Span },
    Print { expr: Expr, span: Span },
}

impl Stmt {
    pub fn span(&self) -> Span {
        match self {
            Stmt::Let { span, .. } | Stmt::Assert { span, .. } | Stmt::Print { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

/// Builtins with their minimum and maximum argument counts.
pub const BUILTINS: [(&str, usize, usize); 9] = [
    ("block", 1, usize::MAX),
    ("blowup", 1, 2),
    ("resolve", 3, usize::MAX),
    ("sum", 4, 4),
    ("luttinger", 4, 5),
    ("knot", 3, 3),
    ("pipeline", 1, 1),
    ("homeo", 1, 1),
    ("threshold", 3, 3),
];

const KEYWORDS: [&str; 3] = ["let", "assert", "print"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(v) => write!(f, "{v}"),
            Tok::Str(s) => write!(f, "{}", quote(s)),
            Tok::Sym(s) => write!(f, "{s}"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn syntax(span: Span, found: impl Into<String>, expected: &[&str]) -> DslError {
    DslError {
        kind: DslErrorKind::Syntax {
            found: found.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        },
        span: Some(span),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
        let ch = chars[*i];
        *i += 1;
        if ch == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let ch = chars[i];
        let span = Span { line, col };
        if ch.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
        } else if ch == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut line, &mut col);
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), span));
        } else if ch.is_ascii_digit() || (ch == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            let start = i;
            advance(&mut i, &mut line, &mut col);
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col);
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse().map_err(|_| syntax(span, text.clone(), &["INT in range"]))?;
            out.push((Tok::Int(v), span));
        } else if ch == '"' {
            advance(&mut i, &mut line, &mut col);
            let mut s = String::new();
            loop {
                let Some(&c) = chars.get(i) else {
                    return Err(syntax(span, "unterminated string", &["\""]));
                };
                advance(&mut i, &mut line, &mut col);
                match c {
                    '"' => break,
                    '\\' => {
                        let Some(&e) = chars.get(i) else {
                            return Err(syntax(span, "unterminated string", &["\""]));
                        };
                        advance(&mut i, &mut line, &mut col);
                        s.push(match e {
                            'n' => '\n',
                            't' => '\t',
                            '"' | '\\' => e,
                            _ => return Err(syntax(span, format!("\\{e}"), &["\\\"", "\\\\", "\\n", "\\t"])),
                        });
                    }
                    _ => s.push(c),
                }
            }
            out.push((Tok::Str(s), span));
        } else {
            let two: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let sym = ["==", "!=", "<=", ">="]
                .into_iter()
                .find(|s| *s == two)
                .or_else(|| ["(", ")", ",", ".", "="].into_iter().find(|s| s.starts_with(ch)));
            let Some(sym) = sym else {
                return Err(syntax(span, ch.to_string(), &["IDENT", "INT", "STRING", "(", ")", ",", ".", "="]));
            };
            for _ in sym.chars() {
                advance(&mut i, &mut line, &mut col);
            }
            out.push((Tok::Sym(sym), span));
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Span) {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, DslError> {
        let (tok, span) = self.peek();
        Err(syntax(*span, tok.to_string(), expected))
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(&self.peek().0, Tok::Sym(s) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<(), DslError> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.fail(&[sym])
        }
    }

    fn ident(&mut self) -> Result<(String, Span), DslError> {
        match self.peek().clone() {
            (Tok::Ident(s), span) if !KEYWORDS.contains(&s.as_str()) => {
                self.pos += 1;
                Ok((s, span))
            }
            _ => self.fail(&["IDENT"]),
        }
    }

    fn stmt(&mut self) -> Result<Stmt, DslError> {
        let (tok, span) = self.peek().clone();
        match tok {
            Tok::Ident(k) if k == "let" => {
                self.pos += 1;
                let (name, _) = self.ident()?;
                self.expect("=")?;
                let expr = self.expr()?;
                Ok(Stmt::Let { name, expr, span })
            }
            Tok::Ident(k) if k == "assert" => {
                self.pos += 1;
                let lhs = self.expr()?;
                let op = match &self.peek().0 {
                    Tok::Sym("==") => Cmp::Eq,
                    Tok::Sym("!=") => Cmp::Ne,
                    Tok::Sym("<=") => Cmp::Le,
                    Tok::Sym(">=") => Cmp::Ge,
                    _ => return self.fail(&["==", "!=", "<=", ">="]),
                };
                self.pos += 1;
                let rhs = self.expr()?;
                Ok(Stmt::Assert { lhs, op, rhs, span })
            }
            Tok::Ident(k) if k == "print" => {
                self.pos += 1;
                let expr = self.expr()?;
                Ok(Stmt::Print { expr, span })
            }
            _ => self.fail(&["let", "assert", "print"]),
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut e = self.atom()?;
        while self.eat(".") {
            let (field, span) = self.ident()?;
            e = Expr::Field {
                base: Box::new(e),
                field,
                span,
            };
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        match self.peek().clone() {
            (Tok::Int(v), span) => {
                self.pos += 1;
                Ok(Expr::Int(v, span))
            }
            (Tok::Str(s), span) => {
                self.pos += 1;
                Ok(Expr::Str(s, span))
            }
            (Tok::Ident(k), _) if KEYWORDS.contains(&k.as_str()) => self.fail(&["IDENT", "INT", "STRING"]),
            (Tok::Ident(name), span) => {
                self.pos += 1;
                if !self.eat("(") {
                    return Ok(Expr::Name(name, span));
                }
                let mut args = Vec::new();
                if !self.eat(")") {
                    loop {
                        args.push(self.expr()?);
                        if self.eat(")") {
                            break;
                        }
                        if !self.eat(",") {
                            return self.fail(&[",", ")"]);
                        }
                    }
                }
                Ok(Expr::Call { name, args, span })
            }
            _ => self.fail(&["IDENT", "INT", "STRING"]),
        }
    }
}

fn check_expr(e: &Expr, bound: &BTreeSet<String>) -> Result<(), DslError> {
    match e {
        Expr::Name(n, span) if !bound.contains(n) => Err(DslError {
            kind: DslErrorKind::UnboundName(n.clone()),
            span: Some(*span),
        }),
        Expr::Call { name, args, span } => {
            let Some(&(_, lo, hi)) = BUILTINS.iter().find(|b| b.0 == name) else {
                return Err(DslError {
                    kind: DslErrorKind::UnboundName(name.clone()),
                    span: Some(*span),
                });
            };
            if args.len() < lo || args.len() > hi {
                let expected = if lo == hi {
                    lo.to_string()
                } else if hi == usize::MAX {
                    format!("at least {lo}")
                } else {
                    format!("{lo} to {hi}")
                };
                return Err(DslError {
                    kind: DslErrorKind::ArityMismatch {
                        name: name.clone(),
                        expected,
                        found: args.len(),
                    },
                    span: Some(*span),
                });
            }
            args.iter().try_for_each(|a| check_expr(a, bound))
        }
        Expr::Field { base, .. } => check_expr(base, bound),
        _ => Ok(()),
    }
}

/// Checks that names are bound before use, never rebound, and that
/// builtins get a valid number of arguments.
fn check(script: &Script) -> Result<(), DslError> {
    let mut bound = BTreeSet::new();
    for s in &script.statements {
        match s {
            Stmt::Let { name, expr, span } => {
                check_expr(expr, &bound)?;
                if !bound.insert(name.clone()) {
                    return Err(DslError {
                        kind: DslErrorKind::Rebinding(name.clone()),
                        span: Some(*span),
                    });
                }
            }
            Stmt::Assert { lhs, rhs, .. } => {
                check_expr(lhs, &bound)?;
                check_expr(rhs, &bound)?;
            }
            Stmt::Print { expr, .. } => check_expr(expr, &bound)?,
        }
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<Script, DslError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut statements = Vec::new();
    while p.peek().0 != Tok::Eof {
        statements.push(p.stmt()?);
    }
    let script = Script { statements };
    check(&script)?;
    Ok(script)
}

pub fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n, _) => write!(f, "{n}"),
            Expr::Int(v, _) => write!(f, "{v}"),
            Expr::Str(s, _) => write!(f, "{}", quote(s)),
            Expr::Call { name, args, .. } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Field { base, field, .. } => write!(f, "{base}.{field}"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Let { name, expr, .. } => write!(f, "let {name} = {expr}"),
            Stmt::Assert { lhs, op, rhs, .. } => write!(f, "assert {lhs} {} {rhs}", op.as_str()),
            Stmt::Print { expr, .. } => write!(f, "print {expr}"),
        }
    }
}

/// Canonical form: one statement per line, no comments.
pub fn render(script: &Script) -> String {
    script.statements.iter().map(|s| format!("{s}\n")).collect()
}
