//! Parser for the textual scalar and operator syntax.
//!
//! The grammar covers integers, identifiers, `+ - * / ^`, parentheses and
//! `.` as an alternative product sign (used between PBW factors). Names of
//! the form `X<digits>` denote Lie algebra generators; anything else is a
//! parameter.

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::{ScalarError, ScalarField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
  #[error("unexpected character `{0}` at offset {1}")]
  UnexpectedChar(char, usize),
  #[error("unexpected end of input")]
  UnexpectedEnd,
  #[error("unexpected token `{0}`")]
  UnexpectedToken(String),
  #[error("unknown identifier `{0}`")]
  UnknownIdentifier(String),
  #[error("exponent must be an integer, found `{0}`")]
  BadExponent(String),
  #[error("divisor must be a nonzero scalar")]
  BadDivisor,
  #[error(transparent)]
  Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
  Int(BigInt),
  Ident(String),
  Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>, ParseError> {
  let mut out = Vec::new();
  let chars: Vec<(usize, char)> = s.char_indices().collect();
  let mut i = 0;
  while i < chars.len() {
    let (pos, c) = chars[i];
    if c.is_whitespace() {
      i += 1;
    } else if c.is_ascii_digit() {
      let start = i;
      while i < chars.len() && chars[i].1.is_ascii_digit() {
        i += 1;
      }
      let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
      out.push(Token::Int(text.parse().expect("digits")));
    } else if c.is_alphabetic() || c == '_' {
      let start = i;
      while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
        i += 1;
      }
      out.push(Token::Ident(chars[start..i].iter().map(|(_, c)| c).collect()));
    } else if "+-*/.^()".contains(c) {
      out.push(Token::Op(c));
      i += 1;
    } else {
      return Err(ParseError::UnexpectedChar(c, pos));
    }
  }
  Ok(out)
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
  Int(BigInt),
  Ident(String),
  Neg(Box<Expr>),
  Add(Box<Expr>, Box<Expr>),
  Sub(Box<Expr>, Box<Expr>),
  Mul(Box<Expr>, Box<Expr>),
  Div(Box<Expr>, Box<Expr>),
  Pow(Box<Expr>, i32),
}

struct Parser {
  tokens: Vec<Token>,
  pos: usize,
}

impl Parser {
  fn peek(&self) -> Option<&Token> { self.tokens.get(self.pos) }

  fn next(&mut self) -> Option<Token> {
    let t = self.tokens.get(self.pos).cloned();
    self.pos += 1;
    t
  }

  fn eat(&mut self, op: char) -> bool {
    if self.peek() == Some(&Token::Op(op)) {
      self.pos += 1;
      true
    } else {
      false
    }
  }

  fn sum(&mut self) -> Result<Expr, ParseError> {
    let mut lhs = self.product()?;
    loop {
      if self.eat('+') {
        lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
      } else if self.eat('-') {
        lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
      } else {
        return Ok(lhs);
      }
    }
  }

  fn product(&mut self) -> Result<Expr, ParseError> {
    let mut lhs = self.unary()?;
    loop {
      if self.eat('*') || self.eat('.') {
        lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
      } else if self.eat('/') {
        lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
      } else {
        return Ok(lhs);
      }
    }
  }

  fn unary(&mut self) -> Result<Expr, ParseError> {
    if self.eat('-') {
      return Ok(Expr::Neg(Box::new(self.unary()?)));
    }
    if self.eat('+') {
      return self.unary();
    }
    self.power()
  }

  fn power(&mut self) -> Result<Expr, ParseError> {
    let base = self.atom()?;
    if !self.eat('^') {
      return Ok(base);
    }
    let neg = self.eat('-');
    match self.next() {
      Some(Token::Int(n)) => {
        let e: i32 = (&n).try_into().map_err(|_| ParseError::BadExponent(n.to_string()))?;
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
      },
      Some(t) => Err(ParseError::BadExponent(token_text(&t))),
      None => Err(ParseError::UnexpectedEnd),
    }
  }

  fn atom(&mut self) -> Result<Expr, ParseError> {
    match self.next() {
      Some(Token::Int(n)) => Ok(Expr::Int(n)),
      Some(Token::Ident(s)) => Ok(Expr::Ident(s)),
      Some(Token::Op('(')) => {
        let e = self.sum()?;
        if self.eat(')') {
          Ok(e)
        } else {
          match self.peek() {
            Some(t) => Err(ParseError::UnexpectedToken(token_text(t))),
            None => Err(ParseError::UnexpectedEnd),
          }
        }
      },
      Some(t) => Err(ParseError::UnexpectedToken(token_text(&t))),
      None => Err(ParseError::UnexpectedEnd),
    }
  }
}

fn token_text(t: &Token) -> String {
  match t {
    Token::Int(n) => n.to_string(),
    Token::Ident(s) => s.clone(),
    Token::Op(c) => c.to_string(),
  }
}

/// Parses a complete expression.
pub fn parse(s: &str) -> Result<Expr, ParseError> {
  let mut p = Parser { tokens: tokenize(s)?, pos: 0 };
  let e = p.sum()?;
  match p.peek() {
    None => Ok(e),
    Some(t) => Err(ParseError::UnexpectedToken(token_text(t))),
  }
}

/// The generator index (0-based) named by `X<i>`, if `name` has that form.
pub fn generator_index(name: &str) -> Option<usize> {
  let digits = name.strip_prefix('X')?;
  if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
    return None;
  }
  digits.parse::<usize>().ok()?.checked_sub(1)
}

/// Whether `name` is usable as a parameter name.
pub fn is_parameter_name(name: &str) -> bool {
  let mut chars = name.chars();
  matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
    && chars.all(|c| c.is_alphanumeric() || c == '_')
    && generator_index(name).is_none()
    && !name.starts_with('X')
}

/// Evaluates an expression that must be a scalar of `F`.
pub fn eval_scalar<F: ScalarField>(e: &Expr) -> Result<F, ParseError> {
  Ok(match e {
    Expr::Int(n) => F::from_rational(&crate::Rational::from_integer(n.clone())),
    Expr::Ident(s) => {
      if generator_index(s).is_some() {
        return Err(ParseError::UnknownIdentifier(s.clone()));
      }
      F::parameter(s).ok_or_else(|| ParseError::UnknownIdentifier(s.clone()))?
    },
    Expr::Neg(a) => -eval_scalar::<F>(a)?,
    Expr::Add(a, b) => eval_scalar::<F>(a)? + eval_scalar::<F>(b)?,
    Expr::Sub(a, b) => eval_scalar::<F>(a)? - eval_scalar::<F>(b)?,
    Expr::Mul(a, b) => eval_scalar::<F>(a)? * eval_scalar::<F>(b)?,
    Expr::Div(a, b) => eval_scalar::<F>(a)?.checked_div(&eval_scalar::<F>(b)?)?,
    Expr::Pow(a, k) => {
      let base = eval_scalar::<F>(a)?;
      let base = if *k < 0 { base.inv().ok_or(ScalarError::DivisionByZero)? } else { base };
      (0..k.unsigned_abs()).fold(F::one(), |acc, _| acc * base.clone())
    },
  })
}

/// Parses a scalar such as `"(t^2-1)/t"`.
pub fn parse_scalar<F: ScalarField>(s: &str) -> Result<F, ParseError> { eval_scalar(&parse(s)?) }
