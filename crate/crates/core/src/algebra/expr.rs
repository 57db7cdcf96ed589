//! Expression syntax shared by the CLI and the JSON inputs.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := ['-' | '+'] INT | '(' ['-' | '+'] INT ')'
//! atom     := INT ['/' INT] | IDENT | '(' expr ')'
//! ```
//!
//! `/` only appears inside rational literals: division is not a ring
//! operation here, inverses come from declared invertible variables.

use super::{AlgebraError, LaurentPoly};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, AlgebraError> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Every identifier mentioned in the expression.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_symbols(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }
}

impl FromStr for Expr {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expr::parse(s)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write!(f, "{}", crate::rational::format_rational(q)),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}

/// Evaluation environment.
///
/// Bound names are replaced by their values; free names become variables.
/// A negative power is allowed only when every symbol under it is listed as
/// invertible and the base evaluates to a single term.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    pub invertible: BTreeSet<String>,
    pub bindings: BTreeMap<String, LaurentPoly>,
    /// When set, any other identifier is an error.
    pub known: Option<BTreeSet<String>>,
}

impl Scope {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_invertible<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.invertible.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn restricted_to<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.known = Some(names.into_iter().map(Into::into).collect());
        self
    }

    pub fn bind(mut self, name: impl Into<String>, value: LaurentPoly) -> Self {
        self.bindings.insert(name.into(), value);
        self
    }
}

/// Evaluates an expression tree to its normal form.
pub fn evaluate(expr: &Expr, scope: &Scope) -> Result<LaurentPoly, AlgebraError> {
    match expr {
        Expr::Num(q) => Ok(LaurentPoly::constant(q.clone())),
        Expr::Var(name) => {
            if let Some(known) = &scope.known {
                if !known.contains(name) {
                    return Err(AlgebraError::UnknownVariable(name.clone()));
                }
            }
            Ok(scope
                .bindings
                .get(name)
                .cloned()
                .unwrap_or_else(|| LaurentPoly::var(name)))
        }
        Expr::Neg(a) => Ok(-evaluate(a, scope)?),
        Expr::Add(a, b) => Ok(evaluate(a, scope)? + evaluate(b, scope)?),
        Expr::Sub(a, b) => Ok(evaluate(a, scope)? - evaluate(b, scope)?),
        Expr::Mul(a, b) => Ok(evaluate(a, scope)? * evaluate(b, scope)?),
        Expr::Pow(a, k) => {
            let base = evaluate(a, scope)?;
            if *k >= 0 {
                return Ok(base.pow(*k as u32));
            }
            if let Some(bad) = a.symbols().into_iter().find(|s| !scope.invertible.contains(s)) {
                return Err(AlgebraError::NonInvertible { variable: bad });
            }
            if base.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            base.pow_i(*k).ok_or_else(|| AlgebraError::NotAUnit {
                variable: a.to_string(),
            })
        }
    }
}

/// Parses and evaluates in one step.
pub fn evaluate_str(text: &str, scope: &Scope) -> Result<LaurentPoly, AlgebraError> {
    evaluate(&Expr::parse(text)?, scope)
}

#[derive(Debug, Clone, PartialEq, Eq)]
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

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{b7}' | '\u{d7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(AlgebraError::Parse {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn error(&self, message: &str) -> AlgebraError {
        let position = self
            .tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| self.tokens.last().map_or(0, |(p, _)| p + 1));
        AlgebraError::Parse {
            position,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, message: &str) -> Result<(), AlgebraError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(message))
        }
    }

    fn expr(&mut self) -> Result<Expr, AlgebraError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, AlgebraError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, AlgebraError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let parenthesized = self.peek() == Some(&Tok::LParen);
        if parenthesized {
            self.pos += 1;
        }
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
        let k = match self.next() {
            Some(Tok::Int(n)) => i64::try_from(n).map_err(|_| {
                self.pos -= 1;
                self.error("exponent out of range")
            })?,
            _ => {
                self.pos -= 1;
                return Err(self.error("expected an integer exponent"));
            }
        };
        if parenthesized {
            self.expect(Tok::RParen, "expected `)` after exponent")?;
        }
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr, AlgebraError> {
        match self.next() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Int(d)) if !d.is_zero() => Ok(Expr::Num(Rational::new(n, d))),
                        Some(Tok::Int(_)) => {
                            self.pos -= 1;
                            Err(self.error("zero denominator"))
                        }
                        _ => {
                            self.pos -= 1;
                            Err(self.error("`/` is only allowed inside a rational literal p/q"))
                        }
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => Ok(Expr::Var(name)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "expected `)`")?;
                Ok(e)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a number, a variable or `(`"))
            }
        }
    }
}
