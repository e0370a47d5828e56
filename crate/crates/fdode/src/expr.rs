//! A tiny, total expression language for time-dependent coefficients.
//!
//! Grammar: real literals, the variable `t`, binary `+ - * /`, unary `-`,
//! and the functions `sin`, `cos`, `exp`, `pow(base, int)`. Expressions
//! evaluate to finite values at every finite `t` except where a division
//! by zero occurs.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum TimeExpr {
    Const(f64),
    Time,
    Add(Box<TimeExpr>, Box<TimeExpr>),
    Sub(Box<TimeExpr>, Box<TimeExpr>),
    Mul(Box<TimeExpr>, Box<TimeExpr>),
    Div(Box<TimeExpr>, Box<TimeExpr>),
    Neg(Box<TimeExpr>),
    Sin(Box<TimeExpr>),
    Cos(Box<TimeExpr>),
    Exp(Box<TimeExpr>),
    Pow(Box<TimeExpr>, i32),
}

/// Parse error with a 1-based column into the source expression string.
#[derive(Debug, Clone, PartialEq)]
pub struct ExprError {
    pub col: usize,
    pub kind: ExprErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownFunction(String),
    BadNumber(String),
    ExpectedIntExponent,
    Expected(&'static str),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}' at column {}", self.col),
            ExprErrorKind::UnexpectedEnd => write!(f, "unexpected end of expression at column {}", self.col),
            ExprErrorKind::UnknownFunction(name) => {
                write!(f, "unknown function '{name}' at column {}", self.col)
            }
            ExprErrorKind::BadNumber(s) => write!(f, "malformed number '{s}' at column {}", self.col),
            ExprErrorKind::ExpectedIntExponent => {
                write!(f, "pow() needs an integer literal exponent at column {}", self.col)
            }
            ExprErrorKind::Expected(what) => write!(f, "expected {what} at column {}", self.col),
        }
    }
}

impl std::error::Error for ExprError {}

impl TimeExpr {
    pub fn parse(src: &str) -> Result<TimeExpr, ExprError> {
        let mut p = Parser {
            chars: src.char_indices().collect(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            let (i, c) = p.chars[p.pos];
            return Err(ExprError {
                col: i + 1,
                kind: ExprErrorKind::UnexpectedChar(c),
            });
        }
        Ok(e)
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            TimeExpr::Const(c) => *c,
            TimeExpr::Time => t,
            TimeExpr::Add(a, b) => a.eval(t) + b.eval(t),
            TimeExpr::Sub(a, b) => a.eval(t) - b.eval(t),
            TimeExpr::Mul(a, b) => a.eval(t) * b.eval(t),
            TimeExpr::Div(a, b) => a.eval(t) / b.eval(t),
            TimeExpr::Neg(a) => -a.eval(t),
            TimeExpr::Sin(a) => a.eval(t).sin(),
            TimeExpr::Cos(a) => a.eval(t).cos(),
            TimeExpr::Exp(a) => a.eval(t).exp(),
            TimeExpr::Pow(a, k) => a.eval(t).powi(*k),
        }
    }

    /// True when the expression does not reference `t`.
    pub fn is_constant(&self) -> bool {
        match self {
            TimeExpr::Const(_) => true,
            TimeExpr::Time => false,
            TimeExpr::Add(a, b) | TimeExpr::Sub(a, b) | TimeExpr::Mul(a, b) | TimeExpr::Div(a, b) => {
                a.is_constant() && b.is_constant()
            }
            TimeExpr::Neg(a) | TimeExpr::Sin(a) | TimeExpr::Cos(a) | TimeExpr::Exp(a) => a.is_constant(),
            TimeExpr::Pow(a, _) => a.is_constant(),
        }
    }
}

impl fmt::Display for TimeExpr {
    /// Re-parseable form; sub-expressions are parenthesized conservatively.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeExpr::Const(c) => {
                if *c < 0.0 {
                    write!(f, "({c:?})")
                } else {
                    write!(f, "{c:?}")
                }
            }
            TimeExpr::Time => write!(f, "t"),
            TimeExpr::Add(a, b) => write!(f, "({a} + {b})"),
            TimeExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            TimeExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            TimeExpr::Div(a, b) => write!(f, "({a} / {b})"),
            TimeExpr::Neg(a) => write!(f, "(-{a})"),
            TimeExpr::Sin(a) => write!(f, "sin({a})"),
            TimeExpr::Cos(a) => write!(f, "cos({a})"),
            TimeExpr::Exp(a) => write!(f, "exp({a})"),
            TimeExpr::Pow(a, k) => write!(f, "pow({a}, {k})"),
        }
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(1, |(i, _)| i + 2),
            |(i, _)| i + 1,
        )
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, want: char) -> Result<(), ExprError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(ExprError {
                col: self.col(),
                kind: ExprErrorKind::UnexpectedChar(c),
            }),
            None => Err(ExprError {
                col: self.col(),
                kind: ExprErrorKind::UnexpectedEnd,
            }),
        }
    }

    fn expr(&mut self) -> Result<TimeExpr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = TimeExpr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some('-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = TimeExpr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<TimeExpr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = TimeExpr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = TimeExpr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<TimeExpr, ExprError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(TimeExpr::Neg(Box::new(inner)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<TimeExpr, ExprError> {
        match self.peek() {
            None => Err(ExprError {
                col: self.col(),
                kind: ExprErrorKind::UnexpectedEnd,
            }),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.eat(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.ident(),
            Some(c) => Err(ExprError {
                col: self.col(),
                kind: ExprErrorKind::UnexpectedChar(c),
            }),
        }
    }

    fn number(&mut self) -> Result<TimeExpr, ExprError> {
        self.skip_ws();
        let start_col = self.col();
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() || c == '.' {
                s.push(c);
                self.pos += 1;
            } else if (c == 'e' || c == 'E')
                && self
                    .chars
                    .get(self.pos + 1)
                    .is_some_and(|&(_, d)| d.is_ascii_digit() || d == '+' || d == '-')
            {
                s.push(c);
                self.pos += 1;
                let (_, sign) = self.chars[self.pos];
                if sign == '+' || sign == '-' {
                    s.push(sign);
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
        s.parse::<f64>().map(TimeExpr::Const).map_err(|_| ExprError {
            col: start_col,
            kind: ExprErrorKind::BadNumber(s),
        })
    }

    fn ident(&mut self) -> Result<TimeExpr, ExprError> {
        self.skip_ws();
        let start_col = self.col();
        let mut name = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == '_' {
                name.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if name == "t" {
            return Ok(TimeExpr::Time);
        }
        match name.as_str() {
            "sin" | "cos" | "exp" => {
                self.eat('(')?;
                let arg = self.expr()?;
                self.eat(')')?;
                Ok(match name.as_str() {
                    "sin" => TimeExpr::Sin(Box::new(arg)),
                    "cos" => TimeExpr::Cos(Box::new(arg)),
                    _ => TimeExpr::Exp(Box::new(arg)),
                })
            }
            "pow" => {
                self.eat('(')?;
                let base = self.expr()?;
                self.eat(',')?;
                let k = self.int_literal()?;
                self.eat(')')?;
                Ok(TimeExpr::Pow(Box::new(base), k))
            }
            _ => Err(ExprError {
                col: start_col,
                kind: ExprErrorKind::UnknownFunction(name),
            }),
        }
    }

    fn int_literal(&mut self) -> Result<i32, ExprError> {
        self.skip_ws();
        let start_col = self.col();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.pos += 1;
            self.skip_ws();
        }
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s.parse::<i32>().map_err(|_| ExprError {
            col: start_col,
            kind: ExprErrorKind::ExpectedIntExponent,
        })
    }
}
