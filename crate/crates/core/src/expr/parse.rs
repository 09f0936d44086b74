//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr     := [ "-" ] term { ("+" | "-") term }
//! term     := factor { "*" factor }
//! factor   := base [ "^" exponent ]
//! base     := NUMBER | "t" | FUNC "(" linarg ")" | "(" expr ")"
//! FUNC     := "exp_l" | "cos_l" | "sin_l" | "cosh_l" | "sinh_l" | "log1p_l"
//! linarg   := [ ["-"] NUMBER "*" ] "t"
//! exponent := ["-"] NUMBER
//! ```
//!
//! Whitespace-insensitive. `^` binds tighter than `*`. The leading minus on
//! an expression is accepted so that every printable tree parses back.
//! Semantic constraints are enforced during parsing: `t^α` requires α > -1,
//! `log1p_l` exponents must be non-negative integers, and trigonometric or
//! hyperbolic atoms only take the exponents 0 and 1.

use super::ast::{negate, Expr};
use crate::error::ParseError;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            b'^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // optional scientific-notation suffix, only when it scans as one
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let s = &text[start..i];
                let v: f64 = s.parse().ok().filter(|v: &f64| v.is_finite()).ok_or(
                    ParseError::Syntax {
                        position: start,
                        expected: "a finite number".into(),
                    },
                )?;
                out.push((Tok::Num(v), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: i,
                    expected: "a number, identifier, operator, or parenthesis".into(),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                position: self.here(),
                expected: what.into(),
            })
        }
    }

    fn parse_expr(&mut self) -> Result<Expr<f64>, ParseError> {
        let neg = self.eat(&Tok::Minus);
        let first = self.parse_term()?;
        let mut terms = vec![if neg { negate(first) } else { first }];
        loop {
            if self.eat(&Tok::Plus) {
                terms.push(self.parse_term()?);
            } else if self.eat(&Tok::Minus) {
                terms.push(negate(self.parse_term()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn parse_term(&mut self) -> Result<Expr<f64>, ParseError> {
        let mut factors = vec![self.parse_factor()?];
        while self.eat(&Tok::Star) {
            factors.push(self.parse_factor()?);
        }
        Ok(build_term(factors))
    }

    fn parse_factor(&mut self) -> Result<Expr<f64>, ParseError> {
        let base = self.parse_base()?;
        if self.eat(&Tok::Caret) {
            let exp_pos = self.here();
            let exp = self.parse_exponent()?;
            apply_exponent(base, exp, exp_pos)
        } else {
            Ok(base)
        }
    }

    fn parse_exponent(&mut self) -> Result<f64, ParseError> {
        let neg = self.eat(&Tok::Minus);
        match self.bump() {
            Some(Tok::Num(v)) => Ok(if neg { -v } else { v }),
            _ => Err(ParseError::Syntax {
                position: self.here(),
                expected: "an exponent (optionally signed number)".into(),
            }),
        }
    }

    fn parse_base(&mut self) -> Result<Expr<f64>, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Expr::Const(v)),
            Some(Tok::Ident(name)) => match name.as_str() {
                "t" => Ok(Expr::Power(1.0)),
                "exp_l" | "cos_l" | "sin_l" | "cosh_l" | "sinh_l" | "log1p_l" => {
                    self.expect(Tok::LParen, "'(' after function name")?;
                    let arg_pos = self.here();
                    let a = self.parse_linarg()?;
                    self.expect(Tok::RParen, "')' closing the function argument")?;
                    match name.as_str() {
                        "exp_l" => Ok(Expr::DegExp(a)),
                        "cos_l" => Ok(Expr::CosL(a)),
                        "sin_l" => Ok(Expr::SinL(a)),
                        "cosh_l" => Ok(Expr::CoshL(a)),
                        "sinh_l" => Ok(Expr::SinhL(a)),
                        _ => {
                            // log1p_l has no coefficient slot: its argument is t
                            if a == 1.0 {
                                Ok(Expr::LogPow(1))
                            } else {
                                Err(ParseError::NonLinearArgument { position: arg_pos })
                            }
                        }
                    }
                }
                _ => Err(ParseError::Syntax {
                    position: pos,
                    expected: "'t' or a function name (exp_l, cos_l, sin_l, cosh_l, sinh_l, log1p_l)"
                        .into(),
                }),
            },
            Some(Tok::LParen) => {
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(ParseError::Syntax {
                position: pos,
                expected: "a number, 't', a function call, or '('".into(),
            }),
        }
    }

    /// linarg := [ ["-"] NUMBER "*" ] "t"
    fn parse_linarg(&mut self) -> Result<f64, ParseError> {
        let pos = self.here();
        let neg = self.eat(&Tok::Minus);
        match self.bump() {
            Some(Tok::Num(v)) => {
                let coeff = if neg { -v } else { v };
                if !self.eat(&Tok::Star) {
                    return Err(ParseError::NonLinearArgument { position: self.here() });
                }
                match self.bump() {
                    Some(Tok::Ident(id)) if id == "t" => Ok(coeff),
                    _ => Err(ParseError::NonLinearArgument { position: self.here() }),
                }
            }
            Some(Tok::Ident(id)) if id == "t" && !neg => {
                // a following token other than ')' means the argument goes on
                if matches!(self.peek(), Some(Tok::RParen) | None) {
                    Ok(1.0)
                } else {
                    Err(ParseError::NonLinearArgument { position: self.here() })
                }
            }
            _ => Err(ParseError::NonLinearArgument { position: pos }),
        }
    }
}

/// Folds numeric factors into a single leading scale, matching the
/// normalized shape (`3*exp_l(-1*t)` parses as `Scale(3, DegExp(-1))`).
fn build_term(factors: Vec<Expr<f64>>) -> Expr<f64> {
    let mut coeff = 1.0;
    let mut rest = Vec::new();
    for f in factors {
        match f {
            Expr::Const(c) => coeff *= c,
            other => rest.push(other),
        }
    }
    let body = match rest.len() {
        0 => return Expr::Const(coeff),
        1 => rest.pop().unwrap(),
        _ => Expr::Prod(rest),
    };
    if coeff == 1.0 {
        body
    } else {
        Expr::Scale(coeff, Box::new(body))
    }
}

fn apply_exponent(base: Expr<f64>, x: f64, pos: usize) -> Result<Expr<f64>, ParseError> {
    match base {
        Expr::Const(c) => {
            let v = c.powf(x);
            if v.is_finite() {
                Ok(Expr::Const(v))
            } else {
                Err(ParseError::Syntax {
                    position: pos,
                    expected: "an exponent keeping the constant finite".into(),
                })
            }
        }
        Expr::Power(alpha) => {
            let merged = alpha * x;
            if merged <= -1.0 {
                Err(ParseError::ExponentOutOfRange {
                    position: pos,
                    alpha: merged,
                })
            } else {
                Ok(Expr::Power(merged))
            }
        }
        Expr::DegExp(a) => Ok(Expr::DegExp(a * x)),
        Expr::LogPow(n) => {
            let total = n as f64 * x;
            if total < 0.0 || total.fract() != 0.0 || total > u32::MAX as f64 {
                Err(ParseError::NonIntegerLogPower { position: pos })
            } else {
                Ok(Expr::LogPow(total as u32))
            }
        }
        other if x == 1.0 => Ok(other),
        _ if x == 0.0 => Ok(Expr::Const(1.0)),
        _ => Err(ParseError::Syntax {
            position: pos,
            expected: "exponent 0 or 1 here (general powers apply only to numbers, t, exp_l, and log1p_l)"
                .into(),
        }),
    }
}

/// Parses expression text into a tree, rejecting anything outside the
/// grammar with a position-tagged error.
pub fn parse<T: Real>(text: &str) -> Result<Expr<T>, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax {
            position: 0,
            expected: "a non-empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        len: text.len(),
    };
    let e = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Syntax {
            position: p.here(),
            expected: "'+', '-', '*', '^', or end of input".into(),
        });
    }
    Ok(convert(e))
}

fn convert<T: Real>(e: Expr<f64>) -> Expr<T> {
    match e {
        Expr::Const(c) => Expr::Const(T::of(c)),
        Expr::Power(a) => Expr::Power(T::of(a)),
        Expr::DegExp(a) => Expr::DegExp(T::of(a)),
        Expr::CosL(a) => Expr::CosL(T::of(a)),
        Expr::SinL(a) => Expr::SinL(T::of(a)),
        Expr::CoshL(a) => Expr::CoshL(T::of(a)),
        Expr::SinhL(a) => Expr::SinhL(T::of(a)),
        Expr::LogPow(n) => Expr::LogPow(n),
        Expr::Sum(cs) => Expr::Sum(cs.into_iter().map(convert).collect()),
        Expr::Prod(cs) => Expr::Prod(cs.into_iter().map(convert).collect()),
        Expr::Scale(c, u) => Expr::Scale(T::of(c), Box::new(convert(*u))),
    }
}
