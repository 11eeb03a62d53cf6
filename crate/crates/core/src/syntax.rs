//! Text syntax shared by ring elements and operator expressions.
//!
//! The grammar is a small arithmetic language:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' ['-'] INT)?
//! primary := NUMBER | IDENT | 'phi:' IDENT | IDENT '(' expr (',' expr)* ')'
//!          | '(' expr ')' | '[' row (',' row)* ']' | 'D' power | 'I' power
//! row     := '[' expr (',' expr)* ']'
//! ```
//!
//! Ring elements are written with atoms such as `x`, `ln(x)`, `exp(3/2 x)`;
//! operator expressions additionally use the generators `d`, `i`, `e`,
//! `phi:<name>`, the coefficient operators `D f` (derivative) and `I f`
//! (integral), and the shorthand `I1` for the integral of one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::IdRing;
use crate::scalar::Scalar;

/// Parsed expression tree (ring-agnostic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Integer literal.
    Int(BigInt),
    /// Identifier such as `x`, `d`, `I1`, or a user definition.
    Ident(String),
    /// Named functional `phi:<name>`.
    Phi(String),
    /// Function application such as `ln(x)`.
    Call(String, Vec<Expr>),
    /// Matrix literal `[[a, b], [c, d]]`.
    Matrix(Vec<Vec<Expr>>),
    /// Sum.
    Add(Vec<Expr>),
    /// Negation.
    Neg(Box<Expr>),
    /// Product in the given order.
    Mul(Vec<Expr>),
    /// Division; the divisor must denote a nonzero constant.
    Div(Box<Expr>, Box<Expr>),
    /// Integer power.
    Pow(Box<Expr>, i64),
    /// `D f`: derivative of a coefficient.
    Deriv(Box<Expr>),
    /// `I f`: integral of a coefficient.
    Integ(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Phi(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            if word == "phi" && i < bytes.len() && bytes[i] == b':' {
                i += 1;
                let name_start = i;
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                if name_start == i {
                    return Err(Error::Parse { pos: name_start, msg: "expected functional name after 'phi:'".into() });
                }
                out.push((start, Tok::Phi(text[name_start..i].to_string())));
            } else {
                out.push((start, Tok::Ident(word.to_string())));
            }
        } else if "+-*/^()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse { pos: self.offset(), msg: format!("expected '{c}'") })
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                terms.push(Expr::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Add(terms) })
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Phi(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('[')))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = mul2(acc, rhs);
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = Expr::Div(Box::new(acc), Box::new(rhs));
            } else if self.starts_primary() {
                let rhs = self.unary()?;
                acc = mul2(acc, rhs);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: i64 = i64::try_from(n).map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
                    Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
                }
                _ => Err(Error::Parse { pos: at, msg: "expected integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Phi(name)) => {
                self.pos += 1;
                Ok(Expr::Phi(name))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "D" {
                    return Ok(Expr::Deriv(Box::new(self.power()?)));
                }
                if name == "I" {
                    return Ok(Expr::Integ(Box::new(self.power()?)));
                }
                if self.eat('(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Ident(name))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let mut rows = Vec::new();
                loop {
                    self.expect('[')?;
                    let mut row = vec![self.expr()?];
                    while self.eat(',') {
                        row.push(self.expr()?);
                    }
                    self.expect(']')?;
                    rows.push(row);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(']')?;
                Ok(Expr::Matrix(rows))
            }
            Some(t) => Err(Error::Parse { pos: at, msg: format!("unexpected token {t:?}") }),
            None => Err(Error::Parse { pos: at, msg: "unexpected end of input".into() }),
        }
    }
}

fn mul2(a: Expr, b: Expr) -> Expr {
    match a {
        Expr::Mul(mut v) => {
            v.push(b);
            Expr::Mul(v)
        }
        a => Expr::Mul(vec![a, b]),
    }
}

/// Parses text into an expression tree.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, len: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse { pos: p.offset(), msg: "trailing input".into() });
    }
    Ok(e)
}

/// Interprets an expression as `q*x` with rational `q`; used by atoms such as
/// `exp(q x)`. Returns `(numerator, denominator)`.
pub fn linear_in_x(e: &Expr) -> Option<(BigInt, BigInt)> {
    fn go(e: &Expr) -> Option<(BigInt, BigInt, u32)> {
        // returns (num, den, degree in x)
        match e {
            Expr::Int(n) => Some((n.clone(), BigInt::one(), 0)),
            Expr::Ident(s) if s == "x" => Some((BigInt::one(), BigInt::one(), 1)),
            Expr::Neg(a) => go(a).map(|(n, d, k)| (-n, d, k)),
            Expr::Mul(v) => v.iter().try_fold((BigInt::one(), BigInt::one(), 0), |(n, d, k), f| {
                go(f).map(|(n2, d2, k2)| (n * n2, d * d2, k + k2))
            }),
            Expr::Div(a, b) => {
                let (n1, d1, k1) = go(a)?;
                let (n2, d2, k2) = go(b)?;
                if k2 != 0 || n2.is_zero() {
                    return None;
                }
                Some((n1 * d2, d1 * n2, k1))
            }
            _ => None,
        }
    }
    let (n, d, k) = go(e)?;
    match k {
        1 => Some((n, d)),
        0 if n.is_zero() => Some((n, d)),
        _ => None,
    }
}

/// Named ring elements available during elaboration.
pub type Defs<E> = BTreeMap<String, E>;

/// Evaluates an expression tree as an element of `ring`.
pub fn eval_elem<R: IdRing>(ring: &R, e: &Expr, defs: &Defs<R::Elem>) -> Result<R::Elem> {
    match e {
        Expr::Int(n) => {
            let c = R::Scalar::from_ratio(n, &BigInt::one()).ok_or_else(|| Error::Elaborate(format!("integer {n}")))?;
            Ok(ring.constant(&c))
        }
        Expr::Ident(name) => {
            if let Some(v) = defs.get(name) {
                return Ok(v.clone());
            }
            if name == "I1" {
                return Ok(ring.integrate(&ring.one()));
            }
            if matches!(name.as_str(), "d" | "i" | "e") {
                return Err(Error::Elaborate(format!("operator '{name}' inside a ring element")));
            }
            ring.atom(name, &[])
        }
        Expr::Phi(name) => Err(Error::Elaborate(format!("functional 'phi:{name}' inside a ring element"))),
        Expr::Call(name, args) => ring.atom(name, args),
        Expr::Matrix(rows) => ring.matrix_atom(rows),
        Expr::Add(v) => {
            let mut acc = ring.zero();
            for t in v {
                acc = ring.add(&acc, &eval_elem(ring, t, defs)?);
            }
            Ok(acc)
        }
        Expr::Neg(a) => Ok(ring.neg(&eval_elem(ring, a, defs)?)),
        Expr::Mul(v) => {
            let mut acc = ring.one();
            for t in v {
                acc = ring.mul(&acc, &eval_elem(ring, t, defs)?);
            }
            Ok(acc)
        }
        Expr::Div(a, b) => {
            let num = eval_elem(ring, a, defs)?;
            let c = eval_scalar::<R>(b).ok_or_else(|| Error::Elaborate("divisor must be a nonzero number".into()))?;
            let ci = c.inv().ok_or_else(|| Error::NotInvertible(format!("{c}")))?;
            Ok(ring.scale(&ci, &num))
        }
        Expr::Pow(a, k) => {
            let base = eval_elem(ring, a, defs)?;
            if *k >= 0 {
                Ok(ring.pow(&base, *k as u32))
            } else {
                let inv = ring.invert(&base).ok_or_else(|| Error::NotInvertible(ring.format(&base)))?;
                Ok(ring.pow(&inv, k.unsigned_abs() as u32))
            }
        }
        Expr::Deriv(a) => Ok(ring.derive(&eval_elem(ring, a, defs)?)),
        Expr::Integ(a) => Ok(ring.integrate(&eval_elem(ring, a, defs)?)),
    }
}

/// Evaluates a purely numeric expression (integers, `+ - * /`, powers).
pub fn eval_scalar<R: IdRing>(e: &Expr) -> Option<R::Scalar> {
    match e {
        Expr::Int(n) => R::Scalar::from_ratio(n, &BigInt::one()),
        Expr::Neg(a) => eval_scalar::<R>(a).map(|c| -c),
        Expr::Add(v) => v.iter().try_fold(R::Scalar::zero(), |acc, t| eval_scalar::<R>(t).map(|c| acc + c)),
        Expr::Mul(v) => v.iter().try_fold(R::Scalar::one(), |acc, t| eval_scalar::<R>(t).map(|c| acc * c)),
        Expr::Div(a, b) => eval_scalar::<R>(a)?.try_div(&eval_scalar::<R>(b)?),
        Expr::Pow(a, k) => {
            let b = eval_scalar::<R>(a)?;
            let b = if *k < 0 { b.inv()? } else { b };
            Some((0..k.unsigned_abs()).fold(R::Scalar::one(), |acc, _| acc * b.clone()))
        }
        _ => None,
    }
}

/// Parses and evaluates a ring element.
pub fn parse_elem<R: IdRing>(ring: &R, text: &str) -> Result<R::Elem> {
    eval_elem(ring, &parse(text)?, &Defs::new())
}

/// Formats a scalar coefficient in front of a monomial: returns the prefix
/// (e.g. `""`, `"-"`, `"3/2*"`) and whether the term is negative.
pub fn coeff_prefix<S: Scalar>(c: &S, monomial_is_one: bool) -> (bool, String) {
    let neg = c.is_negative();
    let abs = if neg { -c.clone() } else { c.clone() };
    let text = if monomial_is_one {
        format!("{abs}")
    } else if abs.is_one() {
        String::new()
    } else {
        format!("{abs}*")
    };
    (neg, text)
}

/// Joins signed terms into `a + b - c` form.
pub fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (neg, t)) in terms.into_iter().enumerate() {
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&t);
    }
    out
}

/// Helper used by atoms taking no arguments.
pub fn expect_no_args(name: &str, args: &[Expr]) -> Result<()> {
    if args.is_empty() {
        Ok(())
    } else {
        Err(Error::Elaborate(format!("'{name}' takes no arguments")))
    }
}

/// Returns `true` if the argument list is exactly the variable `x`.
pub fn is_x_arg(args: &[Expr]) -> bool {
    args.len() == 1 && args[0] == Expr::Ident("x".into())
}

/// Rational literal sign helper for printing exponents.
pub fn fmt_rational_factor(n: &BigInt, d: &BigInt) -> String {
    if d.is_one() {
        format!("{n}")
    } else if n.is_negative() {
        format!("-{}/{}", -n, d)
    } else {
        format!("{n}/{d}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_laurent_log_syntax() {
        let e = parse("3 + 2*x^-1 + 5*ln(x)^2").unwrap();
        match e {
            Expr::Add(v) => assert_eq!(v.len(), 3),
            _ => panic!("expected sum"),
        }
    }

    #[test]
    fn parses_exp_argument_as_linear() {
        let e = parse("x^2*exp(3/2 x)").unwrap();
        let Expr::Mul(v) = e else { panic!() };
        let Expr::Call(name, args) = &v[1] else { panic!() };
        assert_eq!(name, "exp");
        assert_eq!(linear_in_x(&args[0]), Some((BigInt::from(3), BigInt::from(2))));
    }

    #[test]
    fn parses_operator_tokens() {
        let e = parse("i*f*d - e*phi:at1 + I1*i - i*(D f)").unwrap();
        assert!(matches!(e, Expr::Add(_)));
        assert!(parse("d*").is_err());
        assert!(matches!(parse("x $ 1"), Err(Error::Parse { pos: 2, .. })));
    }
}
