//! Polynomial text input and the canonical printer.
//!
//! Grammar, whitespace ignored:
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := primary ['^' uint]
//! primary := int ['/' int] | 'x' | 'z' | '(' expr ')'
//! ```
//!
//! `z` stands for the generator of Q(zeta_l) and is rejected over Q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::base::{Base, BasePoly};
use crate::cyclo::CyclotomicField;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Poly, QPoly, Rationals};

const MAX_EXPONENT: u64 = 1000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Z,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Num(digits.parse().expect("ascii digits"))));
                continue;
            }
            'x' | 'X' => Tok::X,
            'z' | 'Z' => Tok::Z,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(pos, format!("unexpected character {other:?}"))),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

#[derive(Debug)]
enum Ast {
    Const(BigRational),
    X,
    Z(usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u64),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ast::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let e: u64 = (&n)
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| syntax(pos, format!("exponent above {MAX_EXPONENT}")))?;
                Ok(Ast::Pow(Box::new(base), e))
            }
            _ => Err(syntax(pos, "expected a nonnegative integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => {
                if self.peek() != Some(&Tok::Slash) {
                    return Ok(Ast::Const(BigRational::from_integer(n)));
                }
                self.bump();
                let dpos = self.pos();
                match self.bump() {
                    Some(Tok::Num(d)) if !d.is_zero() => Ok(Ast::Const(BigRational::new(n, d))),
                    Some(Tok::Num(_)) => Err(syntax(dpos, "zero denominator")),
                    _ => Err(syntax(dpos, "expected an integer denominator")),
                }
            }
            Some(Tok::X) => Ok(Ast::X),
            Some(Tok::Z) => Ok(Ast::Z(pos)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let cpos = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(cpos, "expected ')'")),
                }
            }
            Some(t) => Err(syntax(pos, format!("unexpected token {t:?}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

fn parse_ast(text: &str) -> Result<Ast> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let ast = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(ast)
}

fn eval<F: Field>(ast: &Ast, field: &F, z: Option<&F::Elem>) -> Result<Poly<F>> {
    Ok(match ast {
        Ast::Const(c) => {
            let e = field
                .from_rational(c)
                .ok_or_else(|| Error::input(format!("{c} is not representable in {}", field.tag())))?;
            Poly::constant(field.clone(), e)
        }
        Ast::X => Poly::x(field.clone()),
        Ast::Z(pos) => match z {
            Some(z) => Poly::constant(field.clone(), z.clone()),
            None => {
                return Err(Error::input(format!(
                    "symbol z at position {pos} needs a cyclotomic base field"
                )))
            }
        },
        Ast::Neg(a) => eval(a, field, z)?.neg(),
        Ast::Add(a, b) => eval(a, field, z)?.add(&eval(b, field, z)?),
        Ast::Sub(a, b) => eval(a, field, z)?.sub(&eval(b, field, z)?),
        Ast::Mul(a, b) => eval(a, field, z)?.mul(&eval(b, field, z)?),
        Ast::Pow(a, e) => eval(a, field, z)?.pow(*e),
    })
}

/// Parses a polynomial in `x` over the requested base.
pub fn parse_polynomial(text: &str, base: Base) -> Result<BasePoly> {
    let ast = parse_ast(text)?;
    match base {
        Base::Rationals => Ok(BasePoly::Rational(eval(&ast, &Rationals, None)?)),
        Base::Cyclotomic(m) => {
            let k = CyclotomicField::new(m)?;
            let z = k.zeta();
            Ok(BasePoly::Cyclotomic(eval(&ast, &k, Some(&z))?))
        }
    }
}

/// Parses a polynomial over Q.
pub fn parse_rational(text: &str) -> Result<QPoly> {
    match parse_polynomial(text, Base::Rationals)? {
        BasePoly::Rational(p) => Ok(p),
        BasePoly::Cyclotomic(_) => unreachable!("rational base yields rational polynomial"),
    }
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Joins signed terms as `a - b + c`.
fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (negative, body)) in terms.into_iter().enumerate() {
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn rational_terms(coeffs: &[BigRational], var: &str) -> Vec<(bool, String)> {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let a = c.abs();
        let mono = power(var, k);
        let body = if mono.is_empty() {
            a.to_string()
        } else if a.is_one() {
            mono
        } else if a.is_integer() {
            format!("{a}*{mono}")
        } else {
            format!("({a})*{mono}")
        };
        terms.push((negative, body));
    }
    terms
}

/// Canonical text of a rational polynomial, e.g. `x^5 - x - 1`.
pub fn print_rational(p: &QPoly) -> String {
    join_terms(rational_terms(p.coeffs(), "x"))
}

/// Canonical text of a polynomial over Q(zeta_m), coefficients written in `z`.
pub fn print_cyclotomic(p: &Poly<CyclotomicField>) -> String {
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = power("x", k);
        if let Some(q) = c.as_rational() {
            let mut t = rational_terms(&[q], "");
            let (negative, body) = t.pop().expect("nonzero coefficient");
            let body = match (mono.is_empty(), body == "1") {
                (true, _) => body,
                (false, true) => mono,
                (false, false) => format!("{body}*{mono}"),
            };
            terms.push((negative, body));
        } else {
            let inner = join_terms(rational_terms(c.coords(), "z"));
            let body = if mono.is_empty() { format!("({inner})") } else { format!("({inner})*{mono}") };
            terms.push((false, body));
        }
    }
    join_terms(terms)
}
