//! Tiny expression language for orbit-case recipes: integers, named
//! variables (sample coefficients and declared root symbols), `+ - * / ^`
//! and parentheses, evaluated exactly over a [`FieldElement`] environment.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{FieldElement, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprError {
    Parse(String),
    UnknownVariable(String),
    Scalar(ScalarError),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Parse(m) => write!(f, "expression parse error: {m}"),
            ExprError::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ExprError::Scalar(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ExprError {}

impl From<ScalarError> for ExprError {
    fn from(e: ScalarError) -> Self {
        ExprError::Scalar(e)
    }
}

pub type Env = BTreeMap<String, FieldElement>;

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<FieldElement, ExprError> {
        match self {
            Expr::Num(n) => Ok(FieldElement::from_int(*n)),
            Expr::Var(name) => env
                .get(name)
                .cloned()
                .ok_or_else(|| ExprError::UnknownVariable(name.clone())),
            Expr::Neg(e) => Ok(e.eval(env)?.neg()),
            Expr::Add(a, b) => Ok(a.eval(env)?.try_add(&b.eval(env)?)?),
            Expr::Sub(a, b) => Ok(a.eval(env)?.try_sub(&b.eval(env)?)?),
            Expr::Mul(a, b) => Ok(a.eval(env)?.try_mul(&b.eval(env)?)?),
            Expr::Div(a, b) => Ok(a.eval(env)?.try_div(&b.eval(env)?)?),
            Expr::Pow(a, k) => Ok(a.eval(env)?.pow(*k as i32)?),
        }
    }

    pub fn variables(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(e) | Expr::Pow(e, _) => e.variables(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.variables(out);
                b.variables(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>, ExprError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            '0'..='9' => {
                let mut n: i64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as i64))
                            .ok_or_else(|| ExprError::Parse("integer overflow".to_string()))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Num(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(name));
            }
            other => {
                return Err(ExprError::Parse(alloc::format!(
                    "unexpected character `{other}`"
                )))
            }
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

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Star => {
                    self.next();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Token::Slash => {
                    self.next();
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.next();
            match self.next() {
                Some(Token::Num(k)) if k >= 0 => {
                    return Ok(Expr::Pow(Box::new(base), k as u32));
                }
                _ => return Err(ExprError::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.next() {
            Some(Token::Num(n)) => Ok(Expr::Num(n)),
            Some(Token::Ident(name)) => Ok(Expr::Var(name)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ExprError::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(ExprError::Parse(alloc::format!(
                "unexpected token {other:?}"
            ))),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ExprError::Parse(alloc::format!(
            "trailing input in `{s}`"
        )));
    }
    Ok(e)
}

/// Parse and evaluate in one step.
pub fn eval_str(s: &str, env: &Env) -> Result<FieldElement, ExprError> {
    parse(s)?.eval(env)
}

/// A polynomial (in)equation `lhs = rhs` or `lhs != rhs` over the sample
/// variables, e.g. `a4^2*a3 + a5*(a1*a5 - a2*a4) = 0`.
#[derive(Clone, Debug)]
pub struct Condition {
    pub text: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub negated: bool,
}

impl Condition {
    pub fn parse(text: &str) -> Result<Self, ExprError> {
        let (negated, lhs_text, rhs_text) = if let Some((l, r)) = text.split_once("!=") {
            (true, l, r)
        } else if let Some((l, r)) = text.split_once('=') {
            (false, l, r)
        } else {
            return Err(ExprError::Parse(alloc::format!(
                "condition `{text}` must contain `=` or `!=`"
            )));
        };
        Ok(Condition {
            text: text.to_string(),
            lhs: parse(lhs_text)?,
            rhs: parse(rhs_text)?,
            negated,
        })
    }

    pub fn holds(&self, env: &Env) -> Result<bool, ExprError> {
        let l = self.lhs.eval(env)?;
        let r = self.rhs.eval(env)?;
        let eq = l == r;
        Ok(if self.negated { !eq } else { eq })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i64)]) -> Env {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), FieldElement::from_int(*v)))
            .collect()
    }

    #[test]
    fn arithmetic() {
        let e = env(&[("a1", 3), ("a2", -2)]);
        assert_eq!(
            eval_str("(a1 - a2)^2 / 5", &e).unwrap(),
            FieldElement::from_int(5)
        );
        assert_eq!(
            eval_str("-2*a2 + a1", &e).unwrap(),
            FieldElement::from_int(7)
        );
        assert_eq!(
            eval_str("1/2", &e).unwrap(),
            FieldElement::from_ratio(1, 2)
        );
    }

    #[test]
    fn unknown_variable() {
        assert!(matches!(
            eval_str("zz + 1", &env(&[])),
            Err(ExprError::UnknownVariable(_))
        ));
    }

    #[test]
    fn conditions() {
        let c = Condition::parse("a3 - 2*a2 != 0").unwrap();
        assert!(c.holds(&env(&[("a3", 5), ("a2", 1)])).unwrap());
        assert!(!c.holds(&env(&[("a3", 2), ("a2", 1)])).unwrap());
        let c = Condition::parse("a4 = 1").unwrap();
        assert!(c.holds(&env(&[("a4", 1)])).unwrap());
    }
}
