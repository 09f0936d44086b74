//! Canonical text form: `parse(to_text(e))` reproduces `normalize(e)`.

use std::fmt;

use super::ast::Expr;
use crate::scalar::Real;

impl<T: Real> Expr<T> {
    /// Canonical text of the normalized expression.
    pub fn to_text(&self) -> String {
        self.clone().normalize().to_string()
    }
}

/// Exact scalar formatting (shortest round-trip representation), so printed
/// parameters re-parse to identical values.
fn param<T: Real>(x: T) -> String {
    format!("{x}")
}

fn linarg<T: Real>(a: T) -> String {
    if a == T::one() {
        "t".to_string()
    } else {
        format!("{}*t", param(a))
    }
}

fn atom<T: Real>(e: &Expr<T>) -> String {
    match e {
        Expr::Const(c) => param(*c),
        Expr::Power(a) if *a == T::one() => "t".to_string(),
        Expr::Power(a) => format!("t^{}", param(*a)),
        Expr::DegExp(a) => format!("exp_l({})", linarg(*a)),
        Expr::CosL(a) => format!("cos_l({})", linarg(*a)),
        Expr::SinL(a) => format!("sin_l({})", linarg(*a)),
        Expr::CoshL(a) => format!("cosh_l({})", linarg(*a)),
        Expr::SinhL(a) => format!("sinh_l({})", linarg(*a)),
        Expr::LogPow(1) => "log1p_l(t)".to_string(),
        Expr::LogPow(n) => format!("log1p_l(t)^{n}"),
        _ => unreachable!("atom() called on a non-atom"),
    }
}

/// Renders a term as (is_negative, body-without-sign).
fn term<T: Real>(e: &Expr<T>) -> (bool, String) {
    match e {
        Expr::Const(c) => (*c < T::zero(), param(c.abs())),
        Expr::Scale(c, inner) => {
            let body = term(inner).1;
            let mag = c.abs();
            let s = if mag == T::one() {
                body
            } else {
                format!("{}*{body}", param(mag))
            };
            (*c < T::zero(), s)
        }
        Expr::Prod(factors) => (
            false,
            factors.iter().map(atom).collect::<Vec<_>>().join("*"),
        ),
        other => (false, atom(other)),
    }
}

impl<T: Real> fmt::Display for Expr<T> {
    /// Canonical printing for normalized trees. Arbitrary trees print via
    /// [`Expr::to_text`], which normalizes first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    let (neg, body) = term(t);
                    if i == 0 {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else if neg {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    write!(f, "{body}")?;
                }
                Ok(())
            }
            other => {
                let (neg, body) = term(other);
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{body}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn prints_examples() {
        assert_eq!(Expr::SinL(2.0).to_text(), "sin_l(2*t)");
        assert_eq!(
            Expr::Scale(3.0, Box::new(Expr::DegExp(-1.0))).to_text(),
            "3*exp_l(-1*t)"
        );
        assert_eq!(
            Expr::Sum(vec![Expr::Power(2.0), Expr::Const(1.0)]).to_text(),
            "t^2 + 1"
        );
    }

    #[test]
    fn prints_signs_and_products() {
        let e = Expr::Sum(vec![
            Expr::Scale(-2.0, Box::new(Expr::Power(1.5))),
            Expr::Prod(vec![Expr::DegExp(0.3), Expr::SinL(2.0)]),
            Expr::Const(-1.0),
        ]);
        assert_eq!(e.to_text(), "-2*t^1.5 + exp_l(0.3*t)*sin_l(2*t) - 1");
    }

    #[test]
    fn printed_text_parses_back_to_normal_form() {
        let cases: Vec<Expr<f64>> = vec![
            Expr::Prod(vec![Expr::DegExp(1.0), Expr::DegExp(2.0)]),
            Expr::Scale(1.0, Box::new(Expr::CosL(2.0))),
            Expr::Sum(vec![
                Expr::Const(2.0),
                Expr::Prod(vec![
                    Expr::LogPow(1),
                    Expr::LogPow(2),
                    Expr::Scale(-0.5, Box::new(Expr::Power(2.0))),
                ]),
            ]),
            Expr::Scale(-1.0, Box::new(Expr::SinhL(0.25))),
        ];
        for e in cases {
            let printed = e.to_text();
            let reparsed: Expr<f64> = parse(&printed).unwrap();
            assert_eq!(reparsed, e.clone().normalize(), "text: {printed}");
        }
    }
}
