//! Recursive-descent parser for the polynomial expression language.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := '-' factor | base ('^' nonneg-int)?
//! base     := rational | ident | '(' expr ')'
//! rational := int ('/' positive-int)?
//! ```
//!
//! The same syntax tree evaluates to scalars or, with frame aliases bound,
//! to vectors.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Rational, ScalarField, Vars};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Ident { name: String, col: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Position of the expression text inside its source, for diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct Origin {
    pub line: usize,
    pub column: usize,
}

impl Default for Origin {
    fn default() -> Self {
        Origin { line: 1, column: 1 }
    }
}

fn syntax(origin: Origin, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: origin.line,
        column: origin.column + col,
        message: message.into(),
    }
}

fn tokenize(text: &str, origin: Origin) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    return Err(syntax(
                        origin,
                        i,
                        "decimal literals are not allowed; write an exact rational a/b",
                    ));
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    tok: Tok::Int(s.parse().expect("digits")),
                    col,
                });
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    col,
                });
                continue;
            }
            other => return Err(syntax(origin, col, format!("unexpected character `{other}`"))),
        };
        out.push(Spanned { tok, col });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    origin: Origin,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |s| s.col)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let col = self.col();
            match self.bump().map(|s| s.tok) {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| syntax(self.origin, col, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(syntax(self.origin, col, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.bump().map(|s| s.tok) {
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dcol = self.col();
                    match self.bump().map(|s| s.tok) {
                        Some(Tok::Int(d)) if !d.is_zero() => Ok(Expr::Num(Rational::new(n, d))),
                        _ => Err(syntax(
                            self.origin,
                            dcol,
                            "expected a positive integer denominator",
                        )),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => Ok(Expr::Ident {
                name,
                col: self.origin.column + col,
            }),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let rcol = self.col();
                match self.bump().map(|s| s.tok) {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(syntax(self.origin, rcol, "expected `)`")),
                }
            }
            Some(t) => Err(syntax(self.origin, col, format!("unexpected token {t:?}"))),
            None => Err(syntax(self.origin, col, "unexpected end of expression")),
        }
    }
}

pub fn parse_ast(text: &str, origin: Origin) -> Result<Expr> {
    let toks = tokenize(text, origin)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        origin,
        end_col: text.chars().count(),
    };
    let e = p.expr()?;
    if p.pos < toks.len() {
        return Err(syntax(origin, p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Value of an expression: a scalar field or a vector field.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(ScalarField),
    Vector(Vec<ScalarField>),
}

impl Expr {
    /// Evaluates with `lookup` resolving identifiers.
    pub fn eval<F>(&self, vars: &Vars, origin: Origin, lookup: &F) -> Result<Value>
    where
        F: Fn(&str) -> Option<Value>,
    {
        use Value::*;
        let type_err = |what: &str| Error::Syntax {
            line: origin.line,
            column: origin.column,
            message: format!("type error: {what}"),
        };
        Ok(match self {
            Expr::Num(q) => Scalar(ScalarField::constant(vars, q.clone())),
            Expr::Ident { name, col } => lookup(name).ok_or_else(|| Error::UnknownIdentifier {
                name: name.clone(),
                line: origin.line,
                column: *col,
            })?,
            Expr::Neg(e) => match e.eval(vars, origin, lookup)? {
                Scalar(s) => Scalar(-s),
                Vector(v) => Vector(v.into_iter().map(|c| -c).collect()),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let neg = matches!(self, Expr::Sub(..));
                match (a.eval(vars, origin, lookup)?, b.eval(vars, origin, lookup)?) {
                    (Scalar(x), Scalar(y)) => Scalar(if neg { x - y } else { x + y }),
                    (Vector(x), Vector(y)) => Vector(
                        x.iter()
                            .zip(&y)
                            .map(|(p, q)| if neg { p - q } else { p + q })
                            .collect(),
                    ),
                    _ => return Err(type_err("cannot add a scalar and a vector")),
                }
            }
            Expr::Mul(a, b) => match (a.eval(vars, origin, lookup)?, b.eval(vars, origin, lookup)?) {
                (Scalar(x), Scalar(y)) => Scalar(x * y),
                (Scalar(s), Vector(v)) | (Vector(v), Scalar(s)) => {
                    Vector(v.iter().map(|c| &s * c).collect())
                }
                _ => return Err(type_err("cannot multiply two vectors")),
            },
            Expr::Pow(b, e) => match b.eval(vars, origin, lookup)? {
                Scalar(s) => Scalar(s.pow(*e)),
                Vector(_) => return Err(type_err("cannot raise a vector to a power")),
            },
        })
    }
}

/// Parses a scalar expression over the coordinates in `vars`.
pub fn parse_expression(text: &str, vars: &Vars) -> Result<ScalarField> {
    parse_expression_at(text, vars, Origin::default())
}

pub fn parse_expression_at(text: &str, vars: &Vars, origin: Origin) -> Result<ScalarField> {
    let ast = parse_ast(text, origin)?;
    let lookup = |name: &str| {
        ScalarField::var(vars, name).ok().map(Value::Scalar)
    };
    match ast.eval(vars, origin, &lookup)? {
        Value::Scalar(s) => Ok(s),
        Value::Vector(_) => unreachable!("no vector identifiers bound"),
    }
}
