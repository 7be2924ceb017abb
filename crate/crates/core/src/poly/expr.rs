//! Integer exponent expressions over the symbols p, q, k, l and t.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' atom)?
//! atom   := integer | 'p' | 'q' | 'k' | 'l' | 't' | '(' expr ')'
//! ```
//!
//! `q` is always p^k. Division must be exact.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    P,
    Q,
    K,
    L,
    T,
}

impl Symbol {
    fn from_char(c: char) -> Option<Symbol> {
        Some(match c {
            'p' => Symbol::P,
            'q' => Symbol::Q,
            'k' => Symbol::K,
            'l' => Symbol::L,
            't' => Symbol::T,
            _ => return None,
        })
    }

    fn as_char(self) -> char {
        match self {
            Symbol::P => 'p',
            Symbol::Q => 'q',
            Symbol::K => 'k',
            Symbol::L => 'l',
            Symbol::T => 't',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExponentExpr {
    Int(u64),
    Sym(Symbol),
    Neg(Box<ExponentExpr>),
    Add(Box<ExponentExpr>, Box<ExponentExpr>),
    Sub(Box<ExponentExpr>, Box<ExponentExpr>),
    Mul(Box<ExponentExpr>, Box<ExponentExpr>),
    Div(Box<ExponentExpr>, Box<ExponentExpr>),
    Pow(Box<ExponentExpr>, Box<ExponentExpr>),
}

/// Values for the free symbols. `q` is derived from `p` and `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Bindings {
    pub p: u64,
    pub k: Option<u32>,
    pub l: Option<u64>,
    pub t: Option<i64>,
}

impl Bindings {
    pub fn new(p: u64, k: u32) -> Self {
        Bindings {
            p,
            k: Some(k),
            l: None,
            t: None,
        }
    }

    pub fn with_l(mut self, l: u64) -> Self {
        self.l = Some(l);
        self
    }

    pub fn with_t(mut self, t: i64) -> Self {
        self.t = Some(t);
        self
    }

    fn lookup(&self, s: Symbol) -> Result<i128> {
        let unbound = || Error::UnboundSymbol(s.as_char());
        Ok(match s {
            Symbol::P => self.p as i128,
            Symbol::K => self.k.ok_or_else(unbound)? as i128,
            Symbol::Q => {
                let k = self.k.ok_or_else(unbound)?;
                (self.p as i128).checked_pow(k).ok_or(Error::Overflow)?
            }
            Symbol::L => self.l.ok_or_else(unbound)? as i128,
            Symbol::T => self.t.ok_or_else(unbound)? as i128,
        })
    }
}

impl ExponentExpr {
    pub fn parse(s: &str) -> Result<Self> {
        let mut parser = Parser::new(s);
        let e = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn int(n: i64) -> Self {
        if n < 0 {
            ExponentExpr::Neg(Box::new(ExponentExpr::Int(n.unsigned_abs())))
        } else {
            ExponentExpr::Int(n as u64)
        }
    }

    pub fn eval(&self, b: &Bindings) -> Result<i128> {
        use ExponentExpr::*;
        Ok(match self {
            Int(n) => *n as i128,
            Sym(s) => b.lookup(*s)?,
            Neg(a) => a.eval(b)?.checked_neg().ok_or(Error::Overflow)?,
            Add(a, c) => a.eval(b)?.checked_add(c.eval(b)?).ok_or(Error::Overflow)?,
            Sub(a, c) => a.eval(b)?.checked_sub(c.eval(b)?).ok_or(Error::Overflow)?,
            Mul(a, c) => a.eval(b)?.checked_mul(c.eval(b)?).ok_or(Error::Overflow)?,
            Div(a, c) => {
                let (num, den) = (a.eval(b)?, c.eval(b)?);
                if den == 0 || num % den != 0 {
                    return Err(Error::Divisibility { num, den });
                }
                num / den
            }
            Pow(a, c) => {
                let (base, exp) = (a.eval(b)?, c.eval(b)?);
                if exp < 0 {
                    return Err(Error::NegativeExponent(exp));
                }
                let exp = u32::try_from(exp).map_err(|_| Error::Overflow)?;
                base.checked_pow(exp).ok_or(Error::Overflow)?
            }
        })
    }

    /// Evaluates and requires a nonnegative result.
    pub fn eval_exponent(&self, b: &Bindings) -> Result<u64> {
        let v = self.eval(b)?;
        if v < 0 {
            return Err(Error::NegativeExponent(v));
        }
        u64::try_from(v).map_err(|_| Error::Overflow)
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    fn is_atomic(&self) -> bool {
        matches!(self, ExponentExpr::Int(_) | ExponentExpr::Sym(_))
    }
}

impl fmt::Display for ExponentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ExponentExpr::*;
        let wrap = |e: &ExponentExpr, f: &mut fmt::Formatter<'_>| {
            if e.is_atomic() {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        };
        match self {
            Int(n) => write!(f, "{n}"),
            Sym(s) => write!(f, "{}", s.as_char()),
            Neg(a) => {
                write!(f, "-")?;
                wrap(a, f)
            }
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) | Pow(a, b) => {
                let op = match self {
                    Add(..) => "+",
                    Sub(..) => "-",
                    Mul(..) => "*",
                    Div(..) => "/",
                    _ => "^",
                };
                wrap(a, f)?;
                write!(f, "{op}")?;
                wrap(b, f)
            }
        }
    }
}

pub(crate) struct Parser<'a> {
    pub(crate) src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer too large".into(),
        })
    }

    pub(crate) fn expr(&mut self) -> Result<ExponentExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = ExponentExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = ExponentExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExponentExpr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = ExponentExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = ExponentExpr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<ExponentExpr> {
        if self.eat(b'-') {
            return Ok(ExponentExpr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.atom()?;
            return Ok(ExponentExpr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    pub(crate) fn atom(&mut self) -> Result<ExponentExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(ExponentExpr::Int(self.integer()?)),
            Some(c) => match Symbol::from_char(c as char) {
                Some(s) => {
                    self.pos += 1;
                    Ok(ExponentExpr::Sym(s))
                }
                None => Err(self.error("expected an integer, a symbol or '('")),
            },
            None => Err(self.error("unexpected end of input")),
        }
    }
}
