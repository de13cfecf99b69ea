//! Expression grammar:
//!
//! ```text
//! top    := sum ('/' sum)?
//! sum    := prod (('+' | '-') prod)*
//! prod   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | name | '(' sum ')'
//! ```
//!
//! Division is accepted only once and only at the top level.  Ideals are
//! comma separated lists of expressions.

use dicrit_core::{BiPoly, FieldTower, RationalFn};
use num_bigint::BigInt;

use crate::error::CliError;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Int(BigInt),
    Var(usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

/// A parsed top-level expression: numerator and optional denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub num: Ast,
    pub den: Option<Ast>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
}

/// Variable names, with optional aliases for each of the two slots.
#[derive(Clone, Debug)]
pub struct Vars {
    names: [Vec<String>; 2],
}

impl Vars {
    pub fn new(first: &str, second: &str) -> Self {
        Vars { names: [vec![first.to_string()], vec![second.to_string()]] }
    }

    pub fn with_alias(mut self, slot: usize, alias: &str) -> Self {
        self.names[slot].push(alias.to_string());
        self
    }

    /// Display names.
    pub fn primary(&self) -> [&str; 2] {
        [&self.names[0][0], &self.names[1][0]]
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        (0..2).find(|&i| self.names[i].iter().any(|n| n == name))
    }
}

fn lex(text: &str, offset: usize) -> Result<Vec<(usize, Tok)>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
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
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((offset + pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((offset + pos, Tok::Name(chars[start..i].iter().map(|c| c.1).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((offset + pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(CliError::parse(offset + pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn top(&mut self) -> Result<Expr, CliError> {
        let num = self.sum()?;
        let den = if self.eat('/') { Some(self.sum()?) } else { None };
        match self.peek() {
            None => Ok(Expr { num, den }),
            Some(Tok::Op('/')) => Err(CliError::DivisionNotTopLevel(self.pos())),
            Some(Tok::Op(')')) => Err(CliError::parse(self.pos(), "unbalanced ')'")),
            Some(_) => Err(CliError::parse(self.pos(), "expected an operator")),
        }
    }

    fn sum(&mut self) -> Result<Ast, CliError> {
        let mut acc = self.prod()?;
        loop {
            if self.eat('+') {
                acc = Ast::Add(Box::new(acc), Box::new(self.prod()?));
            } else if self.eat('-') {
                acc = Ast::Sub(Box::new(acc), Box::new(self.prod()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn prod(&mut self) -> Result<Ast, CliError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = Ast::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Ast, CliError> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, CliError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.toks.get(self.at).map(|t| t.1.clone()) {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let e = u32::try_from(&n).ok().filter(|&e| e <= MAX_EXPONENT);
                let e = e.ok_or_else(|| CliError::parse(pos, format!("exponent above {MAX_EXPONENT}")))?;
                Ok(Ast::Pow(Box::new(base), e))
            }
            _ => Err(CliError::parse(pos, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Ast, CliError> {
        let pos = self.pos();
        match self.toks.get(self.at).map(|t| t.1.clone()) {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Ast::Int(n))
            }
            Some(Tok::Name(s)) => {
                self.at += 1;
                let v = self.vars.lookup(&s).ok_or_else(|| CliError::parse(pos, format!("unknown variable '{s}'")))?;
                Ok(Ast::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.sum()?;
                if self.peek() == Some(&Tok::Op('/')) {
                    return Err(CliError::DivisionNotTopLevel(self.pos()));
                }
                if !self.eat(')') {
                    return Err(CliError::parse(self.pos(), "expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Op('/')) => Err(CliError::DivisionNotTopLevel(pos)),
            Some(_) => Err(CliError::parse(pos, "expected a number, variable or '('")),
            None => Err(CliError::parse(pos, "unexpected end of input")),
        }
    }
}

fn parse_at(text: &str, offset: usize, vars: &Vars) -> Result<Expr, CliError> {
    let toks = lex(text, offset)?;
    let mut p = Parser { toks, at: 0, end: offset + text.len(), vars };
    p.top()
}

/// Parses one expression.
pub fn parse_expression(text: &str, vars: &Vars) -> Result<Expr, CliError> {
    parse_at(text, 0, vars)
}

pub fn eval(ast: &Ast, k: &FieldTower) -> BiPoly {
    match ast {
        Ast::Int(n) => BiPoly::constant(k, k.from_bigint(n)),
        Ast::Var(0) => BiPoly::u(k),
        Ast::Var(_) => BiPoly::w(k),
        Ast::Add(a, b) => &eval(a, k) + &eval(b, k),
        Ast::Sub(a, b) => &eval(a, k) - &eval(b, k),
        Ast::Mul(a, b) => &eval(a, k) * &eval(b, k),
        Ast::Neg(a) => -&eval(a, k),
        Ast::Pow(a, e) => eval(a, k).pow(*e),
    }
}

/// A rational function `num / den`.
pub fn parse_rational(text: &str, vars: &Vars, k: &FieldTower) -> Result<RationalFn, CliError> {
    let e = parse_expression(text, vars)?;
    let num = eval(&e.num, k);
    let den = e.den.as_ref().map_or_else(|| BiPoly::one(k), |d| eval(d, k));
    Ok(RationalFn::new(num, den)?)
}

/// A polynomial; a top-level division is allowed by a nonzero constant.
pub fn parse_polynomial(text: &str, vars: &Vars, k: &FieldTower) -> Result<BiPoly, CliError> {
    polynomial_at(text, 0, vars, k)
}

fn polynomial_at(text: &str, offset: usize, vars: &Vars, k: &FieldTower) -> Result<BiPoly, CliError> {
    let e = parse_at(text, offset, vars)?;
    let num = eval(&e.num, k);
    match &e.den {
        None => Ok(num),
        Some(d) => {
            let d = eval(d, k);
            if !d.is_constant() || d.is_zero() {
                return Err(CliError::Input(format!("'{}' is not a polynomial", text.trim())));
            }
            Ok(num.scale(&k.inv(&d.constant_term())?))
        }
    }
}

/// Comma separated generators; positions are reported in the whole string.
pub fn parse_generators(text: &str, vars: &Vars, k: &FieldTower) -> Result<Vec<BiPoly>, CliError> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ','))) {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth <= 0 => {
                let piece = &text[start..i];
                if piece.trim().is_empty() {
                    return Err(CliError::parse(start, "empty generator"));
                }
                out.push(polynomial_at(piece, start, vars, k)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    Ok(out)
}
