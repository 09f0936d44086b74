//! Expression tree for functions of t, closed under the symbolic
//! t-derivative.
//!
//! Atoms mirror the functions with known transforms: powers of t, the
//! degenerate exponential `(1+λt)^{a/λ}`, degenerate trig/hyperbolic pairs,
//! and powers of `ln(1+λt)`. Function arguments are restricted to the linear
//! form `a*t` because every closed-form transform rule has exactly that
//! shape. The reciprocal `1/(1+λt)` is not a separate node: it equals
//! `(1+λt)^{-λ/λ}`, i.e. `DegExp(-λ)`, which keeps the tree closed under
//! differentiation.

use crate::degenfun::{deg_hyp, deg_pow, deg_trig, log1p_pow, Lambda};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parse tree of a function of t.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<T> {
    /// Constant c.
    Const(T),
    /// t^α with α > -1.
    Power(T),
    /// (1+λt)^{a/λ}, the degenerate exponential of a·t.
    DegExp(T),
    /// cos_λ(a·t).
    CosL(T),
    /// sin_λ(a·t).
    SinL(T),
    /// cosh_λ(a·t).
    CoshL(T),
    /// sinh_λ(a·t).
    SinhL(T),
    /// (ln(1+λt))^n.
    LogPow(u32),
    Sum(Vec<Expr<T>>),
    Prod(Vec<Expr<T>>),
    /// c · child.
    Scale(T, Box<Expr<T>>),
}

/// Ordering key used to canonicalize product factors.
fn atom_rank<T>(e: &Expr<T>) -> u8 {
    match e {
        Expr::Power(_) => 0,
        Expr::DegExp(_) => 1,
        Expr::LogPow(_) => 2,
        Expr::CosL(_) => 3,
        Expr::SinL(_) => 4,
        Expr::CoshL(_) => 5,
        Expr::SinhL(_) => 6,
        _ => 7,
    }
}

fn atom_param<T: Real>(e: &Expr<T>) -> f64 {
    match e {
        Expr::Power(a)
        | Expr::DegExp(a)
        | Expr::CosL(a)
        | Expr::SinL(a)
        | Expr::CoshL(a)
        | Expr::SinhL(a)
        | Expr::Const(a) => a.as_f64(),
        Expr::LogPow(n) => *n as f64,
        _ => 0.0,
    }
}

/// Negation used by the parser and printer: folds the sign into the
/// constant layer instead of introducing a new node kind.
pub(crate) fn negate<T: Real>(e: Expr<T>) -> Expr<T> {
    match e {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Scale(c, u) => Expr::Scale(-c, u),
        other => Expr::Scale(-T::one(), Box::new(other)),
    }
}

impl<T: Real> Expr<T> {
    /// Value of the expression at `t ≥ 0` for the given λ.
    pub fn eval_at(&self, lam: Lambda<T>, t: T) -> Result<T> {
        if t < T::zero() || !t.is_finite() {
            return Err(Error::Domain(format!("evaluation requires t >= 0, got {t}")));
        }
        let v = self.eval_inner(lam, t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(format!("expression value is not finite at t={t}")))
        }
    }

    fn eval_inner(&self, lam: Lambda<T>, t: T) -> Result<T> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Power(alpha) => t.powf(*alpha),
            Expr::DegExp(a) => deg_pow(lam, *a, t)?,
            Expr::CosL(a) => deg_trig(lam, *a, t)?.0,
            Expr::SinL(a) => deg_trig(lam, *a, t)?.1,
            Expr::CoshL(a) => deg_hyp(lam, *a, t)?.0,
            Expr::SinhL(a) => deg_hyp(lam, *a, t)?.1,
            Expr::LogPow(n) => log1p_pow(lam, *n, t),
            Expr::Sum(children) => {
                let mut acc = T::zero();
                for c in children {
                    acc = acc + c.eval_inner(lam, t)?;
                }
                acc
            }
            Expr::Prod(children) => {
                let mut acc = T::one();
                for c in children {
                    acc = acc * c.eval_inner(lam, t)?;
                }
                acc
            }
            Expr::Scale(c, inner) => *c * inner.eval_inner(lam, t)?,
        })
    }

    /// Canonical form: flattens nested sums and products, distributes
    /// products over sums, merges degenerate-exponential factors (adding
    /// their parameters), merges log-power factors, merges t-power factors
    /// when the merged exponent stays above -1, and folds all constants into
    /// a single leading scale. Idempotent.
    pub fn normalize(self) -> Expr<T> {
        match self {
            Expr::Sum(children) => {
                let mut terms = Vec::new();
                let mut const_acc = T::zero();
                for ch in children {
                    match ch.normalize() {
                        Expr::Sum(inner) => {
                            for x in inner {
                                match x {
                                    Expr::Const(c) => const_acc = const_acc + c,
                                    other => terms.push(other),
                                }
                            }
                        }
                        Expr::Const(c) => const_acc = const_acc + c,
                        other => terms.push(other),
                    }
                }
                if const_acc != T::zero() || terms.is_empty() {
                    terms.push(Expr::Const(const_acc));
                }
                if terms.len() == 1 {
                    terms.pop().unwrap()
                } else {
                    Expr::Sum(terms)
                }
            }
            Expr::Prod(children) => {
                let normalized: Vec<_> = children.into_iter().map(Expr::normalize).collect();
                let mut coeff = T::one();
                let mut flat = Vec::new();
                flatten_product(normalized, &mut coeff, &mut flat);
                // distribute over any sum factor, one at a time
                if let Some(idx) = flat.iter().position(|f| matches!(f, Expr::Sum(_))) {
                    let Expr::Sum(sum_terms) = flat.remove(idx) else {
                        unreachable!()
                    };
                    let out = sum_terms
                        .into_iter()
                        .map(|t| {
                            let mut fs = flat.clone();
                            fs.push(t);
                            Expr::Scale(coeff, Box::new(Expr::Prod(fs)))
                        })
                        .collect();
                    return Expr::Sum(out).normalize();
                }
                rebuild_product(coeff, flat)
            }
            Expr::Scale(c, inner) => {
                let inner = inner.normalize();
                if c == T::zero() {
                    return Expr::Const(T::zero());
                }
                match inner {
                    Expr::Const(d) => Expr::Const(c * d),
                    Expr::Scale(d, u) => {
                        let cd = c * d;
                        if cd == T::one() {
                            *u
                        } else {
                            Expr::Scale(cd, u)
                        }
                    }
                    Expr::Sum(terms) => {
                        let out = terms
                            .into_iter()
                            .map(|t| Expr::Scale(c, Box::new(t)))
                            .collect();
                        Expr::Sum(out).normalize()
                    }
                    other => {
                        if c == T::one() {
                            other
                        } else {
                            Expr::Scale(c, Box::new(other))
                        }
                    }
                }
            }
            // parameter-zero atoms are constants
            Expr::Power(a) if a == T::zero() => Expr::Const(T::one()),
            Expr::DegExp(a) if a == T::zero() => Expr::Const(T::one()),
            Expr::CosL(a) if a == T::zero() => Expr::Const(T::one()),
            Expr::CoshL(a) if a == T::zero() => Expr::Const(T::one()),
            Expr::SinL(a) if a == T::zero() => Expr::Const(T::zero()),
            Expr::SinhL(a) if a == T::zero() => Expr::Const(T::zero()),
            Expr::LogPow(0) => Expr::Const(T::one()),
            atom => atom,
        }
    }

    /// Symbolic derivative in t. The result stays inside the expression
    /// language: the factor `1/(1+λt)` arising from the chain rule is encoded
    /// as `DegExp(-λ)`.
    ///
    /// Fails with [`Error::NonDifferentiableAtZero`] for `t^α` with
    /// α ∈ (-1, 0), whose derivative exponent would leave the representable
    /// range.
    pub fn deriv_t(&self, lam: Lambda<T>) -> Result<Expr<T>> {
        Ok(self.deriv_inner(lam)?.normalize())
    }

    fn deriv_inner(&self, lam: Lambda<T>) -> Result<Expr<T>> {
        let l = lam.value();
        Ok(match self {
            Expr::Const(_) => Expr::Const(T::zero()),
            Expr::Power(alpha) => {
                if *alpha == T::zero() {
                    Expr::Const(T::zero())
                } else if *alpha == T::one() {
                    Expr::Const(T::one())
                } else if *alpha > T::zero() {
                    Expr::Scale(*alpha, Box::new(Expr::Power(*alpha - T::one())))
                } else {
                    return Err(Error::NonDifferentiableAtZero(format!(
                        "t^{alpha} with exponent in (-1, 0) differentiates to an exponent <= -1"
                    )));
                }
            }
            Expr::DegExp(a) => Expr::Scale(*a, Box::new(Expr::DegExp(*a - l))),
            Expr::CosL(a) => Expr::Scale(
                -*a,
                Box::new(Expr::Prod(vec![Expr::DegExp(-l), Expr::SinL(*a)])),
            ),
            Expr::SinL(a) => Expr::Scale(
                *a,
                Box::new(Expr::Prod(vec![Expr::DegExp(-l), Expr::CosL(*a)])),
            ),
            Expr::CoshL(a) => Expr::Scale(
                *a,
                Box::new(Expr::Prod(vec![Expr::DegExp(-l), Expr::SinhL(*a)])),
            ),
            Expr::SinhL(a) => Expr::Scale(
                *a,
                Box::new(Expr::Prod(vec![Expr::DegExp(-l), Expr::CoshL(*a)])),
            ),
            Expr::LogPow(n) => {
                if *n == 0 {
                    Expr::Const(T::zero())
                } else {
                    Expr::Scale(
                        T::of(*n as f64) * l,
                        Box::new(Expr::Prod(vec![Expr::DegExp(-l), Expr::LogPow(n - 1)])),
                    )
                }
            }
            Expr::Sum(children) => {
                let mut out = Vec::with_capacity(children.len());
                for c in children {
                    out.push(c.deriv_inner(lam)?);
                }
                Expr::Sum(out)
            }
            Expr::Prod(children) => {
                let mut out = Vec::with_capacity(children.len());
                for i in 0..children.len() {
                    let mut fs = children.clone();
                    fs[i] = children[i].deriv_inner(lam)?;
                    out.push(Expr::Prod(fs));
                }
                Expr::Sum(out)
            }
            Expr::Scale(c, inner) => Expr::Scale(*c, Box::new(inner.deriv_inner(lam)?)),
        })
    }
}

fn flatten_product<T: Real>(children: Vec<Expr<T>>, coeff: &mut T, flat: &mut Vec<Expr<T>>) {
    for ch in children {
        match ch {
            Expr::Prod(inner) => flatten_product(inner, coeff, flat),
            Expr::Scale(c, u) => {
                *coeff = *coeff * c;
                flatten_product(vec![*u], coeff, flat);
            }
            Expr::Const(c) => *coeff = *coeff * c,
            other => flat.push(other),
        }
    }
}

fn rebuild_product<T: Real>(coeff: T, flat: Vec<Expr<T>>) -> Expr<T> {
    let mut deg_a = T::zero();
    let mut log_n: u32 = 0;
    let mut powers: Vec<T> = Vec::new();
    let mut atoms: Vec<Expr<T>> = Vec::new();
    for f in flat {
        match f {
            Expr::DegExp(a) => deg_a = deg_a + a,
            Expr::LogPow(n) => log_n += n,
            Expr::Power(a) => powers.push(a),
            other => atoms.push(other),
        }
    }
    if coeff == T::zero() {
        return Expr::Const(T::zero());
    }
    match powers.len() {
        0 => {}
        1 => atoms.push(Expr::Power(powers[0])),
        _ => {
            let total = powers.iter().fold(T::zero(), |acc, &a| acc + a);
            if total > -T::one() {
                if total != T::zero() {
                    atoms.push(Expr::Power(total));
                }
            } else {
                // merged exponent would violate α > -1; keep factors apart
                atoms.extend(powers.into_iter().map(Expr::Power));
            }
        }
    }
    if deg_a != T::zero() {
        atoms.push(Expr::DegExp(deg_a));
    }
    if log_n > 0 {
        atoms.push(Expr::LogPow(log_n));
    }
    atoms.sort_by(|a, b| {
        atom_rank(a)
            .cmp(&atom_rank(b))
            .then(atom_param(a).total_cmp(&atom_param(b)))
    });
    let body = match atoms.len() {
        0 => return Expr::Const(coeff),
        1 => atoms.pop().unwrap(),
        _ => Expr::Prod(atoms),
    };
    if coeff == T::one() {
        body
    } else {
        Expr::Scale(coeff, Box::new(body))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rel_err;

    fn lam(x: f64) -> Lambda<f64> {
        Lambda::new(x).unwrap()
    }

    #[test]
    fn eval_basics() {
        assert_eq!(Expr::Power(2.0).eval_at(lam(0.1), 3.0).unwrap(), 9.0);
        // sin_λ(2t) at λ=1, t=e−1: sin(2·ln e) = sin 2
        let v = Expr::SinL(2.0)
            .eval_at(lam(1.0), std::f64::consts::E - 1.0)
            .unwrap();
        assert!((v - 0.9092974268256817).abs() < 1e-8);
        let sum = Expr::Sum(vec![Expr::Const(1.0), Expr::Const(2.0)]);
        assert_eq!(sum.eval_at(lam(0.3), 7.0).unwrap(), 3.0);
        assert!(Expr::Power(2.0).eval_at(lam(0.1), -1.0).is_err());
    }

    #[test]
    fn eval_singular_power_at_zero_is_overflow() {
        assert!(matches!(
            Expr::Power(-0.5).eval_at(lam(0.1), 0.0),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn normalize_merges_factors() {
        let e = Expr::Prod(vec![Expr::DegExp(1.0), Expr::DegExp(2.0)]);
        assert_eq!(e.normalize(), Expr::DegExp(3.0));
        let e = Expr::<f64>::Prod(vec![Expr::LogPow(1), Expr::LogPow(2)]);
        assert_eq!(e.normalize(), Expr::LogPow(3));
        let e = Expr::Scale(1.0, Box::new(Expr::CosL(2.0)));
        assert_eq!(e.normalize(), Expr::CosL(2.0));
    }

    #[test]
    fn normalize_cancels_reciprocal_pairs() {
        let e = Expr::Prod(vec![Expr::DegExp(0.7), Expr::DegExp(-0.7)]);
        assert_eq!(e.normalize(), Expr::Const(1.0));
    }

    #[test]
    fn normalize_folds_constants_and_distributes() {
        let e = Expr::Prod(vec![
            Expr::Const(2.0),
            Expr::Sum(vec![Expr::Power(1.0), Expr::Const(3.0)]),
        ]);
        let n = e.normalize();
        assert_eq!(
            n,
            Expr::Sum(vec![
                Expr::Scale(2.0, Box::new(Expr::Power(1.0))),
                Expr::Const(6.0)
            ])
        );
    }

    #[test]
    fn normalize_keeps_non_integrable_power_merge_apart() {
        let e = Expr::Prod(vec![Expr::Power(-0.9), Expr::Power(-0.9)]);
        let n = e.clone().normalize();
        assert_eq!(n, Expr::Prod(vec![Expr::Power(-0.9), Expr::Power(-0.9)]));
        assert_eq!(n.clone().normalize(), n);
    }

    #[test]
    fn deriv_matches_examples() {
        let d = Expr::Power(2.0).deriv_t(lam(0.3)).unwrap();
        assert_eq!(d, Expr::Scale(2.0, Box::new(Expr::Power(1.0))));
        let d = Expr::SinL(1.0).deriv_t(lam(0.3)).unwrap();
        assert_eq!(d, Expr::Prod(vec![Expr::DegExp(-0.3), Expr::CosL(1.0)]));
        let d = Expr::CoshL(2.0).deriv_t(lam(0.3)).unwrap();
        assert_eq!(
            d,
            Expr::Scale(
                2.0,
                Box::new(Expr::Prod(vec![Expr::DegExp(-0.3), Expr::SinhL(2.0)]))
            )
        );
    }

    #[test]
    fn deriv_of_fractional_power_in_unit_interval_is_rejected() {
        assert!(matches!(
            Expr::Power(-0.5).deriv_t(lam(0.1)),
            Err(Error::NonDifferentiableAtZero(_))
        ));
    }

    #[test]
    fn deriv_agrees_with_central_differences() {
        let lamv = lam(0.4);
        let exprs = vec![
            Expr::Sum(vec![
                Expr::Power(2.0),
                Expr::Scale(3.0, Box::new(Expr::DegExp(-1.0))),
            ]),
            Expr::Prod(vec![Expr::DegExp(0.5), Expr::SinL(2.0)]),
            Expr::Prod(vec![Expr::LogPow(2), Expr::CoshL(0.5)]),
            Expr::Power(1.5),
        ];
        for e in exprs {
            let d = e.deriv_t(lamv).unwrap();
            for &t in &[0.1, 0.7, 2.3, 9.5] {
                let h = 1e-4 * (1.0 + t);
                let fd = (e.eval_at(lamv, t - 2.0 * h).unwrap()
                    - 8.0 * e.eval_at(lamv, t - h).unwrap()
                    + 8.0 * e.eval_at(lamv, t + h).unwrap()
                    - e.eval_at(lamv, t + 2.0 * h).unwrap())
                    / (12.0 * h);
                let sym = d.eval_at(lamv, t).unwrap();
                assert!(rel_err(fd, sym) < 1e-6, "{e:?} at t={t}: {fd} vs {sym}");
            }
        }
    }

    #[test]
    fn normalize_preserves_values() {
        let lamv = lam(0.25);
        let e = Expr::Prod(vec![
            Expr::Scale(2.0, Box::new(Expr::DegExp(1.0))),
            Expr::Sum(vec![Expr::Power(0.5), Expr::CosL(1.0)]),
            Expr::DegExp(-0.4),
        ]);
        let n = e.clone().normalize();
        for &t in &[0.0, 0.5, 1.7, 6.0] {
            let a = e.eval_at(lamv, t).unwrap();
            let b = n.eval_at(lamv, t).unwrap();
            assert!(rel_err(a, b) <= 1e-13, "t={t}: {a} vs {b}");
        }
        assert_eq!(n.clone().normalize(), n);
    }
}
