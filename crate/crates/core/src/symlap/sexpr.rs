//! Closed forms in s: a small symbolic tree supporting evaluation, exact
//! shifting s ↦ s−a, and symbolic d/ds.
//!
//! Transforms of powers, trig, and hyperbolic atoms are rational in s, built
//! from linear factors `(s-c)`. The transform of a non-integer power `t^α`
//! additionally needs `(s-c)^x` with real x and the opaque factor
//! `Γ_{λ/(s-c)}(α+1)`; the latter has no symbolic s-derivative, so
//! differentiation refuses to cross it.

use std::fmt;

use crate::degenfun::{deg_gamma, Lambda};
use crate::error::{Error, Result};
use crate::scalar::{fmt_sig9, Real};

/// Symbolic closed form F_λ(s).
#[derive(Debug, Clone, PartialEq)]
pub enum SExpr<T> {
    Const(T),
    /// The transform variable s.
    Var,
    /// s − offset.
    LinFactor(T),
    Sum(Vec<SExpr<T>>),
    Prod(Vec<SExpr<T>>),
    /// base^k with integer k, possibly negative.
    IntPow(Box<SExpr<T>>, i32),
    /// (s − offset)^exponent with real exponent.
    SPow { offset: T, exponent: T },
    /// Γ_{λ/(s − offset)}(p); opaque to d/ds.
    DegGamma { offset: T, p: T },
}

impl<T: Real> SExpr<T> {
    /// Numeric value of the closed form at the given λ and s.
    pub fn eval(&self, lam: Lambda<T>, s: T) -> Result<T> {
        let v = self.eval_inner(lam, s)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(format!(
                "closed form is not finite at s={s}"
            )))
        }
    }

    fn eval_inner(&self, lam: Lambda<T>, s: T) -> Result<T> {
        Ok(match self {
            SExpr::Const(c) => *c,
            SExpr::Var => s,
            SExpr::LinFactor(c) => s - *c,
            SExpr::Sum(children) => {
                let mut acc = T::zero();
                for c in children {
                    acc = acc + c.eval_inner(lam, s)?;
                }
                acc
            }
            SExpr::Prod(children) => {
                let mut acc = T::one();
                for c in children {
                    acc = acc * c.eval_inner(lam, s)?;
                }
                acc
            }
            SExpr::IntPow(base, k) => {
                let v = base.eval_inner(lam, s)?;
                if v == T::zero() && *k < 0 {
                    return Err(Error::Domain(format!("pole of the closed form at s={s}")));
                }
                v.powi(*k)
            }
            SExpr::SPow { offset, exponent } => {
                let u = s - *offset;
                if u <= T::zero() {
                    return Err(Error::Domain(format!(
                        "real power of a non-positive base at s={s}"
                    )));
                }
                u.powf(*exponent)
            }
            SExpr::DegGamma { offset, p } => {
                let u = s - *offset;
                if u <= T::zero() {
                    return Err(Error::Domain(format!(
                        "degenerate gamma factor needs s > {}, got s={s}",
                        fmt_sig9(offset.as_f64())
                    )));
                }
                deg_gamma(Lambda::new(lam.value() / u)?, *p)?
            }
        })
    }

    /// Exact substitution s ↦ s − a.
    pub fn shift_s(&self, a: T) -> SExpr<T> {
        match self {
            SExpr::Const(c) => SExpr::Const(*c),
            SExpr::Var => SExpr::LinFactor(a),
            SExpr::LinFactor(c) => SExpr::LinFactor(*c + a),
            SExpr::Sum(cs) => SExpr::Sum(cs.iter().map(|c| c.shift_s(a)).collect()),
            SExpr::Prod(cs) => SExpr::Prod(cs.iter().map(|c| c.shift_s(a)).collect()),
            SExpr::IntPow(b, k) => SExpr::IntPow(Box::new(b.shift_s(a)), *k),
            SExpr::SPow { offset, exponent } => SExpr::SPow {
                offset: *offset + a,
                exponent: *exponent,
            },
            SExpr::DegGamma { offset, p } => SExpr::DegGamma {
                offset: *offset + a,
                p: *p,
            },
        }
    }

    /// True if any factor is a degenerate gamma node.
    pub fn contains_deg_gamma(&self) -> bool {
        match self {
            SExpr::DegGamma { .. } => true,
            SExpr::Sum(cs) | SExpr::Prod(cs) => cs.iter().any(SExpr::contains_deg_gamma),
            SExpr::IntPow(b, _) => b.contains_deg_gamma(),
            _ => false,
        }
    }

    /// Symbolic d/ds, exact except across [`SExpr::DegGamma`].
    pub fn diff(&self) -> Result<SExpr<T>> {
        Ok(self.diff_inner()?.simplify())
    }

    /// n-fold symbolic d/ds.
    pub fn diff_n(&self, n: u32) -> Result<SExpr<T>> {
        let mut out = self.clone().simplify();
        for _ in 0..n {
            out = out.diff()?;
        }
        Ok(out)
    }

    fn diff_inner(&self) -> Result<SExpr<T>> {
        Ok(match self {
            SExpr::Const(_) => SExpr::Const(T::zero()),
            SExpr::Var | SExpr::LinFactor(_) => SExpr::Const(T::one()),
            SExpr::Sum(cs) => {
                let mut out = Vec::with_capacity(cs.len());
                for c in cs {
                    out.push(c.diff_inner()?);
                }
                SExpr::Sum(out)
            }
            SExpr::Prod(cs) => {
                let mut out = Vec::with_capacity(cs.len());
                for i in 0..cs.len() {
                    let mut fs = cs.clone();
                    fs[i] = cs[i].diff_inner()?;
                    out.push(SExpr::Prod(fs));
                }
                SExpr::Sum(out)
            }
            SExpr::IntPow(b, k) => {
                if *k == 0 {
                    SExpr::Const(T::zero())
                } else {
                    SExpr::Prod(vec![
                        SExpr::Const(T::of(*k as f64)),
                        SExpr::IntPow(b.clone(), k - 1),
                        b.diff_inner()?,
                    ])
                }
            }
            SExpr::SPow { offset, exponent } => SExpr::Prod(vec![
                SExpr::Const(*exponent),
                SExpr::SPow {
                    offset: *offset,
                    exponent: *exponent - T::one(),
                },
            ]),
            SExpr::DegGamma { .. } => {
                return Err(Error::UnsupportedShape(
                    "the degenerate gamma factor has no symbolic s-derivative; use the numeric path"
                        .into(),
                ))
            }
        })
    }

    /// Algebraic cleanup: flattens sums and products, folds constants, and
    /// cancels matching linear factors (net integer exponent per offset).
    pub fn simplify(self) -> SExpr<T> {
        match self {
            SExpr::Sum(children) => {
                let mut terms = Vec::new();
                let mut const_acc = T::zero();
                for ch in children {
                    match ch.simplify() {
                        SExpr::Sum(inner) => {
                            for x in inner {
                                match x {
                                    SExpr::Const(c) => const_acc = const_acc + c,
                                    other => terms.push(other),
                                }
                            }
                        }
                        SExpr::Const(c) => const_acc = const_acc + c,
                        other => terms.push(other),
                    }
                }
                if const_acc != T::zero() || terms.is_empty() {
                    terms.push(SExpr::Const(const_acc));
                }
                if terms.len() == 1 {
                    terms.pop().unwrap()
                } else {
                    SExpr::Sum(terms)
                }
            }
            SExpr::Prod(children) => {
                let mut coeff = T::one();
                let mut lin: Vec<(T, i32)> = Vec::new(); // (offset, net exponent)
                let mut spow: Vec<(T, T)> = Vec::new(); // (offset, net real exponent)
                let mut rest = Vec::new();
                let mut stack: Vec<SExpr<T>> =
                    children.into_iter().map(SExpr::simplify).rev().collect();
                while let Some(f) = stack.pop() {
                    match f {
                        SExpr::Prod(inner) => stack.extend(inner.into_iter().rev()),
                        SExpr::Const(c) => coeff = coeff * c,
                        SExpr::Var => merge_lin(&mut lin, T::zero(), 1),
                        SExpr::LinFactor(c) => merge_lin(&mut lin, c, 1),
                        SExpr::IntPow(b, k) => match *b {
                            SExpr::Var => merge_lin(&mut lin, T::zero(), k),
                            SExpr::LinFactor(c) => merge_lin(&mut lin, c, k),
                            other => rest.push(SExpr::IntPow(Box::new(other), k)),
                        },
                        SExpr::SPow { offset, exponent } => merge_spow(&mut spow, offset, exponent),
                        other => rest.push(other),
                    }
                }
                if coeff == T::zero() {
                    return SExpr::Const(T::zero());
                }
                let mut factors = Vec::new();
                lin.sort_by(|a, b| a.0.as_f64().total_cmp(&b.0.as_f64()));
                for (offset, k) in lin {
                    match k {
                        0 => {}
                        1 => factors.push(SExpr::LinFactor(offset)),
                        _ => factors.push(SExpr::IntPow(Box::new(SExpr::LinFactor(offset)), k)),
                    }
                }
                spow.sort_by(|a, b| a.0.as_f64().total_cmp(&b.0.as_f64()));
                for (offset, x) in spow {
                    if x == T::zero() {
                        continue;
                    }
                    if x == T::one() {
                        factors.push(SExpr::LinFactor(offset));
                    } else {
                        factors.push(SExpr::SPow {
                            offset,
                            exponent: x,
                        });
                    }
                }
                factors.extend(rest);
                if factors.is_empty() {
                    return SExpr::Const(coeff);
                }
                if coeff != T::one() {
                    factors.insert(0, SExpr::Const(coeff));
                }
                if factors.len() == 1 {
                    factors.pop().unwrap()
                } else {
                    SExpr::Prod(factors)
                }
            }
            SExpr::IntPow(b, k) => {
                let b = b.simplify();
                if k == 0 {
                    return SExpr::Const(T::one());
                }
                if k == 1 {
                    return b;
                }
                match b {
                    SExpr::Const(c) => SExpr::Const(c.powi(k)),
                    SExpr::IntPow(b2, j) => SExpr::IntPow(b2, j * k).simplify(),
                    SExpr::Prod(fs) => SExpr::Prod(
                        fs.into_iter()
                            .map(|f| SExpr::IntPow(Box::new(f), k))
                            .collect(),
                    )
                    .simplify(),
                    SExpr::SPow { offset, exponent } => SExpr::SPow {
                        offset,
                        exponent: exponent * T::of(k as f64),
                    },
                    other => SExpr::IntPow(Box::new(other), k),
                }
            }
            SExpr::SPow { offset, exponent } => {
                if exponent == T::zero() {
                    SExpr::Const(T::one())
                } else if exponent == T::one() {
                    SExpr::LinFactor(offset)
                } else {
                    SExpr::SPow { offset, exponent }
                }
            }
            other => other,
        }
    }
}

fn merge_lin<T: Real>(acc: &mut Vec<(T, i32)>, offset: T, k: i32) {
    for entry in acc.iter_mut() {
        if entry.0 == offset {
            entry.1 += k;
            return;
        }
    }
    acc.push((offset, k));
}

fn merge_spow<T: Real>(acc: &mut Vec<(T, T)>, offset: T, x: T) {
    for entry in acc.iter_mut() {
        if entry.0 == offset {
            entry.1 = entry.1 + x;
            return;
        }
    }
    acc.push((offset, x));
}

// ---------------------------------------------------------------------------
// Printing: numerator/denominator form with 9-significant-digit numbers.
// ---------------------------------------------------------------------------

fn num_str<T: Real>(x: T) -> String {
    fmt_sig9(x.as_f64())
}

fn lin_str<T: Real>(offset: T) -> String {
    if offset == T::zero() {
        "s".to_string()
    } else if offset < T::zero() {
        format!("(s+{})", num_str(-offset))
    } else {
        format!("(s-{})", num_str(offset))
    }
}

/// Renders one multiplicative factor raised to `exponent ≥ 1`.
fn factor_str<T: Real>(f: &SExpr<T>, exponent: u32) -> String {
    let base = match f {
        SExpr::Const(c) => num_str(*c),
        SExpr::Var => "s".to_string(),
        SExpr::LinFactor(c) => lin_str(*c),
        SExpr::Sum(_) => format!("({})", sum_str(f)),
        SExpr::Prod(_) => format!("({})", term_str(f).1),
        SExpr::IntPow(b, k) => {
            // only non-negative k reaches here; negatives go to the denominator
            return factor_str(b, exponent * (*k as u32));
        }
        SExpr::SPow { offset, exponent } => {
            return format!("{}^{}", lin_str(*offset), num_str(*exponent));
        }
        SExpr::DegGamma { offset, p } => {
            let arg = if *offset == T::zero() {
                "lambda/s".to_string()
            } else {
                format!("lambda/{}", lin_str(*offset))
            };
            format!("dgamma({arg}, {})", num_str(*p))
        }
    };
    if exponent == 1 {
        base
    } else {
        format!("{base}^{exponent}")
    }
}

/// Renders a product-like term as (is_negative, body): positive-exponent
/// factors form the numerator, negative-exponent factors the denominator.
fn term_str<T: Real>(e: &SExpr<T>) -> (bool, String) {
    let factors: Vec<&SExpr<T>> = match e {
        SExpr::Prod(fs) => fs.iter().collect(),
        other => vec![other],
    };
    let mut coeff = 1.0f64;
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    for f in factors {
        match f {
            SExpr::Const(c) => coeff *= c.as_f64(),
            SExpr::IntPow(b, k) if *k < 0 => den.push(factor_str(b, (-*k) as u32)),
            SExpr::SPow { offset, exponent } if *exponent < T::zero() => den.push(factor_str(
                &SExpr::SPow {
                    offset: *offset,
                    exponent: -*exponent,
                },
                1,
            )),
            other => num.push(factor_str(other, 1)),
        }
    }
    let neg = coeff < 0.0;
    let coeff = coeff.abs();
    if coeff != 1.0 || num.is_empty() {
        num.insert(0, fmt_sig9(coeff));
    }
    let num_body = num.join("*");
    let body = if den.is_empty() {
        num_body
    } else if den.len() == 1 {
        format!("{num_body}/{}", den[0])
    } else {
        format!("{num_body}/({})", den.join("*"))
    };
    (neg, body)
}

fn sum_str<T: Real>(e: &SExpr<T>) -> String {
    let SExpr::Sum(terms) = e else {
        return term_str(e).1;
    };
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let (neg, body) = term_str(t);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        out.push_str(&body);
    }
    out
}

impl<T: Real> fmt::Display for SExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Sum(_) => write!(f, "{}", sum_str(self)),
            other => {
                let (neg, body) = term_str(other);
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{body}")
            }
        }
    }
}
