//! Arithmetic expressions in `t`, `u`, `v` for user-defined Lagrangians.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?
//! atom  := NUMBER | "t" | "u" | "v" | "(" expr ")" | IDENT "(" expr ")"
//! IDENT := gamma | exp | ln | sin | cos | abs
//! ```
//!
//! `^` is right-associative because its exponent is a `unary`.

use std::fmt;

use crate::error::{Error, Result};
use crate::special::gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    T,
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Gamma,
    Exp,
    Ln,
    Sin,
    Cos,
    Abs,
}

impl Func {
    const ALL: [Func; 6] = [Func::Gamma, Func::Exp, Func::Ln, Func::Sin, Func::Cos, Func::Abs];

    pub fn name(self) -> &'static str {
        match self {
            Func::Gamma => "gamma",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Bin(op, Box::new(l), Box::new(r))
    }

    /// Evaluates at `(t, u, v)`. Domain violations name the failing
    /// sub-expression.
    pub fn eval(&self, t: f64, u: f64, v: f64) -> Result<f64> {
        let fail = |reason: &str| Error::ExprEval {
            expr: self.to_string(),
            reason: reason.to_string(),
        };
        let value = match self {
            Expr::Num(x) => *x,
            Expr::Var(Var::T) => t,
            Expr::Var(Var::U) => u,
            Expr::Var(Var::V) => v,
            Expr::Neg(e) => -e.eval(t, u, v)?,
            Expr::Bin(op, l, r) => {
                let x = l.eval(t, u, v)?;
                let y = r.eval(t, u, v)?;
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(fail("division by zero"));
                        }
                        x / y
                    }
                    BinOp::Pow => {
                        if y == y.round() && y.abs() <= 64.0 {
                            if x == 0.0 && y < 0.0 {
                                return Err(fail("zero raised to a negative power"));
                            }
                            x.powi(y as i32)
                        } else if x < 0.0 {
                            return Err(fail("fractional power of a negative base"));
                        } else {
                            x.powf(y)
                        }
                    }
                }
            }
            Expr::Call(f, arg) => {
                let x = arg.eval(t, u, v)?;
                match f {
                    Func::Gamma => gamma(x).map_err(|e| fail(&e.to_string()))?,
                    Func::Exp => x.exp(),
                    Func::Ln => {
                        if x <= 0.0 {
                            return Err(fail("logarithm of a nonpositive number"));
                        }
                        x.ln()
                    }
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Abs => x.abs(),
                }
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(fail("non-finite result"))
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Bin(BinOp::Pow, ..) => 4,
            Expr::Num(x) if x.is_sign_negative() => 3,
            Expr::Num(_) | Expr::Var(_) | Expr::Call(..) => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x:?}"),
            Expr::Var(Var::T) => f.write_str("t"),
            Expr::Var(Var::U) => f.write_str("u"),
            Expr::Var(Var::V) => f.write_str("v"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, e.precedence() < 3)
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Bin(op, l, r) => {
                let p = self.precedence();
                let (sym, lp, rp) = match op {
                    BinOp::Add => (" + ", l.precedence() < p, r.precedence() <= p),
                    BinOp::Sub => (" - ", l.precedence() < p, r.precedence() <= p),
                    BinOp::Mul => (" * ", l.precedence() < p, r.precedence() <= p),
                    BinOp::Div => (" / ", l.precedence() < p, r.precedence() <= p),
                    BinOp::Pow => ("^", l.precedence() < 5, r.precedence() < 3),
                };
                write_child(f, l, lp)?;
                f.write_str(sym)?;
                write_child(f, r, rp)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "number {x}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let x: f64 = text.parse().map_err(|_| Error::Parse {
                offset: start,
                expected: "a decimal number".into(),
                found: format!("'{text}'"),
            })?;
            out.push((start, Tok::Num(x)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if b"+-*/^()".contains(&c) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(Error::Parse {
                offset: i,
                expected: "one of NUMBER, t, u, v, function, operator, parenthesis".into(),
                found: format!("'{ch}'"),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        Error::Parse {
            offset: self.offset(),
            expected: expected.to_string(),
            found: self.peek().to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::bin(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            return Ok(Expr::bin(BinOp::Pow, base, self.unary()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        const ATOM: &str = "one of NUMBER, t, u, v, '(', gamma, exp, ln, sin, cos, abs, '-'";
        match self.peek().clone() {
            Tok::Num(x) => {
                self.bump();
                Ok(Expr::Num(x))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("one of '+', '-', '*', '/', '^', ')'"));
                }
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "t" => {
                    self.bump();
                    Ok(Expr::Var(Var::T))
                }
                "u" => {
                    self.bump();
                    Ok(Expr::Var(Var::U))
                }
                "v" => {
                    self.bump();
                    Ok(Expr::Var(Var::V))
                }
                _ => {
                    let Some(func) = Func::from_name(&name) else {
                        return Err(self.error(ATOM));
                    };
                    self.bump();
                    if !self.eat('(') {
                        return Err(self.error("'('"));
                    }
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.error("one of '+', '-', '*', '/', '^', ')'"));
                    }
                    Ok(Expr::Call(func, Box::new(arg)))
                }
            },
            _ => Err(self.error(ATOM)),
        }
    }
}

/// Parses `src` into an expression tree.
pub fn parse_expression(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("one of '+', '-', '*', '/', '^', end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(x: f64) -> Expr {
        Expr::Num(x)
    }

    fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    #[test]
    fn parses_power_of_v() {
        assert_eq!(
            parse_expression("v^2").unwrap(),
            Expr::bin(BinOp::Pow, var(Var::V), num(2.0))
        );
    }

    #[test]
    fn precedence_of_sum_and_product() {
        assert_eq!(
            parse_expression("v^2 + u*t").unwrap(),
            Expr::bin(
                BinOp::Add,
                Expr::bin(BinOp::Pow, var(Var::V), num(2.0)),
                Expr::bin(BinOp::Mul, var(Var::U), var(Var::T))
            )
        );
    }

    #[test]
    fn gamma_half_squared_is_pi() {
        let v = parse_expression("gamma(0.5)^2").unwrap().eval(0.0, 0.0, 0.0).unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn power_is_right_associative_and_binds_tighter_than_negation() {
        let e = parse_expression("2^3^2").unwrap();
        assert_eq!(e.eval(0.0, 0.0, 0.0).unwrap(), 512.0);
        assert_eq!(parse_expression("-2^2").unwrap().eval(0.0, 0.0, 0.0).unwrap(), -4.0);
        assert_eq!(parse_expression("2^-1").unwrap().eval(0.0, 0.0, 0.0).unwrap(), 0.5);
        assert_eq!(parse_expression("8 - 2 - 1").unwrap().eval(0.0, 0.0, 0.0).unwrap(), 5.0);
        assert_eq!(parse_expression("8 / 2 / 2").unwrap().eval(0.0, 0.0, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn numbers_with_exponents() {
        assert_eq!(parse_expression("1.5e-3").unwrap(), num(1.5e-3));
        assert_eq!(parse_expression(".25").unwrap(), num(0.25));
        assert_eq!(parse_expression("2E2").unwrap(), num(200.0));
    }

    #[test]
    fn syntax_errors_carry_offset_and_expectation() {
        match parse_expression("v^2 + * u") {
            Err(Error::Parse { offset, expected, .. }) => {
                assert_eq!(offset, 6);
                assert!(expected.contains("NUMBER"));
            }
            other => panic!("{other:?}"),
        }
        match parse_expression("sin v") {
            Err(Error::Parse { offset, expected, .. }) => {
                assert_eq!(offset, 4);
                assert_eq!(expected, "'('");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression("(v"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_expression("w"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_expression("v $"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_expression("v v"), Err(Error::Parse { offset: 2, .. })));
        assert!(parse_expression("").is_err());
    }

    #[test]
    fn evaluation_domain_errors() {
        let e = parse_expression("1 + ln(u)").unwrap();
        match e.eval(0.0, -1.0, 0.0) {
            Err(Error::ExprEval { expr, .. }) => assert_eq!(expr, "ln(u)"),
            other => panic!("{other:?}"),
        }
        assert!(parse_expression("1/t").unwrap().eval(0.0, 0.0, 0.0).is_err());
        assert!(parse_expression("u^0.5").unwrap().eval(0.0, -4.0, 0.0).is_err());
        assert_eq!(parse_expression("u^2").unwrap().eval(0.0, -4.0, 0.0).unwrap(), 16.0);
        assert!(parse_expression("gamma(t)").unwrap().eval(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn printing_reparses_to_same_tree() {
        for src in [
            "v^2 + u*t",
            "-(u - v)^2",
            "(2^3)^t",
            "a",
            "u - (v - t)",
            "u / (v * t)",
            "-(-u)",
            "exp(-t) * cos(v)^2 / abs(u + 1e-7)",
        ] {
            let Ok(e) = parse_expression(src) else { continue };
            let printed = e.to_string();
            assert_eq!(parse_expression(&printed).unwrap(), e, "{src} -> {printed}");
        }
    }
}
