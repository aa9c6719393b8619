//! A small arithmetic expression grammar shared by the polynomial and
//! rational-function readers.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := number | identifier | '(' expr ')'
//! ```
//!
//! Juxtaposition (`2x`, `x y`) is read as multiplication.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Int, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(Rat),
    Variable(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Int),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Number(digits.parse().expect("decimal digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Token::Number(_) | Token::Ident(_) | Token::Op('(')))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if self.starts_atom() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        let Some(Token::Number(n)) = self.peek().cloned() else {
            return Err(Error::Parse("exponent must be an integer".into()));
        };
        self.pos += 1;
        let n: i64 = (&n).try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                Ok(Expr::Number(Rat::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Variable(name))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

/// Interprets numbers, variables and operations in some target ring.
pub trait ExprContext {
    type Value;
    fn number(&self, q: &Rat) -> Result<Self::Value>;
    fn variable(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn pow(&self, a: Self::Value, k: i64) -> Result<Self::Value>;
}

impl Expr {
    pub fn eval<C: ExprContext>(&self, ctx: &C) -> Result<C::Value> {
        Ok(match self {
            Expr::Number(q) => ctx.number(q)?,
            Expr::Variable(v) => ctx.variable(v)?,
            Expr::Add(a, b) => ctx.add(a.eval(ctx)?, b.eval(ctx)?),
            Expr::Sub(a, b) => ctx.sub(a.eval(ctx)?, b.eval(ctx)?),
            Expr::Mul(a, b) => ctx.mul(a.eval(ctx)?, b.eval(ctx)?),
            Expr::Div(a, b) => ctx.div(a.eval(ctx)?, b.eval(ctx)?)?,
            Expr::Neg(a) => ctx.neg(a.eval(ctx)?),
            Expr::Pow(a, k) => ctx.pow(a.eval(ctx)?, *k)?,
        })
    }

    /// Constant value, when the expression has no variables.
    pub fn constant_value(&self) -> Option<Rat> {
        Some(match self {
            Expr::Number(q) => q.clone(),
            Expr::Variable(_) => return None,
            Expr::Add(a, b) => a.constant_value()? + b.constant_value()?,
            Expr::Sub(a, b) => a.constant_value()? - b.constant_value()?,
            Expr::Mul(a, b) => a.constant_value()? * b.constant_value()?,
            Expr::Div(a, b) => {
                let d = b.constant_value()?;
                if d.is_zero() {
                    return None;
                }
                a.constant_value()? / d
            }
            Expr::Neg(a) => -a.constant_value()?,
            Expr::Pow(a, k) => {
                let b = a.constant_value()?;
                if *k < 0 && b.is_zero() {
                    return None;
                }
                num_traits::pow::Pow::pow(b, *k as i32)
            }
        })
    }
}
