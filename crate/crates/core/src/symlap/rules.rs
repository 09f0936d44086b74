//! Rule-based symbolic transform: maps a normalized expression to a closed
//! form in s together with its validity threshold σ_min and the trace of
//! applied rules.
//!
//! Per additive term the pipeline is: identify at most one base atom with a
//! direct table rule, fold all degenerate-exponential factors into a net
//! shift s ↦ s−a, then resolve log-power factors through n-fold symbolic
//! d/ds times (−λ)ⁿ. Products of two or more base atoms have no closed form
//! and are reported as unsupported, pointing the caller at the numeric path.

use crate::degenfun::Lambda;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::scalar::{fmt_sig9, Real};

use super::sexpr::SExpr;

/// Symbolic transform: closed form, validity threshold, applied-rule trace.
#[derive(Debug, Clone)]
pub struct TransformResult<T> {
    pub closed_form: SExpr<T>,
    /// Infimum of s for which the defining integral converges.
    pub sigma_min: T,
    /// Applied rule identifiers, in application order.
    pub trace: Vec<String>,
}

/// Multiplicative decomposition of one normalized additive term.
pub(crate) struct TermShape<T> {
    pub coeff: T,
    /// Net degenerate-exponential parameter (transform shift).
    pub shift: T,
    /// Net log-power exponent.
    pub log_power: u32,
    /// Remaining rule-bearing atoms: powers, trig, hyperbolic.
    pub atoms: Vec<Expr<T>>,
}

impl<T: Real> TermShape<T> {
    pub fn power_exponent_sum(&self) -> T {
        self.atoms.iter().fold(T::zero(), |acc, a| match a {
            Expr::Power(alpha) => acc + *alpha,
            _ => acc,
        })
    }

    fn hyp_abs_sum(&self) -> T {
        self.atoms.iter().fold(T::zero(), |acc, a| match a {
            Expr::CoshL(x) | Expr::SinhL(x) => acc + x.abs(),
            _ => acc,
        })
    }

    /// Convergence threshold of this term: λ plus the net shift, plus |a|
    /// for each hyperbolic factor, plus α·λ for the power factors.
    pub fn sigma_min(&self, lam: Lambda<T>) -> T {
        lam.value() + self.shift + self.hyp_abs_sum() + self.power_exponent_sum() * lam.value()
    }
}

/// Decomposes one normalized term (anything except a sum).
pub(crate) fn term_shape<T: Real>(term: &Expr<T>) -> TermShape<T> {
    let mut shape = TermShape {
        coeff: T::one(),
        shift: T::zero(),
        log_power: 0,
        atoms: Vec::new(),
    };
    fn walk<T: Real>(e: &Expr<T>, shape: &mut TermShape<T>) {
        match e {
            Expr::Const(c) => shape.coeff = shape.coeff * *c,
            Expr::Scale(c, inner) => {
                shape.coeff = shape.coeff * *c;
                walk(inner, shape);
            }
            Expr::Prod(fs) => {
                for f in fs {
                    walk(f, shape);
                }
            }
            Expr::DegExp(a) => shape.shift = shape.shift + *a,
            Expr::LogPow(n) => shape.log_power += n,
            other => shape.atoms.push(other.clone()),
        }
    }
    walk(term, &mut shape);
    shape
}

fn additive_terms<T: Real>(f: &Expr<T>) -> Vec<Expr<T>> {
    match f.clone().normalize() {
        Expr::Sum(terms) => terms,
        single => vec![single],
    }
}

/// Threshold σ_min of the transform integral: `C + λ`, where C is the net
/// degenerate-exponential-order constant of the dominant additive term.
pub fn convergence_threshold<T: Real>(f: &Expr<T>, lam: Lambda<T>) -> T {
    additive_terms(f)
        .iter()
        .map(|t| term_shape(t).sigma_min(lam))
        .fold(T::neg_infinity(), T::max)
}

fn factorial<T: Real>(n: u32) -> T {
    (1..=n).fold(T::one(), |acc, j| acc * T::of(j as f64))
}

fn inv_lin<T: Real>(offset: T) -> SExpr<T> {
    SExpr::IntPow(Box::new(SExpr::LinFactor(offset)), -1)
}

/// Denominator `(s-λ)² ± a²` shared by the trig and hyperbolic rules.
fn quad_denominator<T: Real>(l: T, a_sq: T) -> SExpr<T> {
    SExpr::IntPow(
        Box::new(SExpr::Sum(vec![
            SExpr::IntPow(Box::new(SExpr::LinFactor(l)), 2),
            SExpr::Const(a_sq),
        ])),
        -1,
    )
}

/// Symbolic transform of `f` at degeneracy λ.
///
/// # Example
///
/// ```
/// use deglap::expr::parse;
/// use deglap::symlap::transform;
/// use deglap::Lambda;
///
/// let f = parse("sin_l(2*t)").unwrap();
/// let r = transform(&f, Lambda::new(0.1).unwrap()).unwrap();
/// assert_eq!(r.closed_form.to_string(), "2/((s-0.1)^2+4)");
/// assert_eq!(r.sigma_min, 0.1);
/// ```
pub fn transform<T: Real>(f: &Expr<T>, lam: Lambda<T>) -> Result<TransformResult<T>> {
    let normalized = f.clone().normalize();
    if let Expr::Sum(terms) = &normalized {
        let mut children = Vec::new();
        let mut sigma = T::neg_infinity();
        let mut trace = vec!["linearity".to_string()];
        for t in terms {
            let r = transform_term(t, lam)?;
            sigma = sigma.max(r.sigma_min);
            trace.extend(r.trace);
            children.push(r.closed_form);
        }
        return Ok(TransformResult {
            closed_form: SExpr::Sum(children).simplify(),
            sigma_min: sigma,
            trace,
        });
    }
    transform_term(&normalized, lam)
}

fn transform_term<T: Real>(term: &Expr<T>, lam: Lambda<T>) -> Result<TransformResult<T>> {
    let shape = term_shape(term);
    let l = lam.value();
    if shape.atoms.len() > 1 {
        return Err(Error::UnsupportedShape(format!(
            "no closed-form rule for the atom product in `{}`; use the numeric path",
            term.to_text()
        )));
    }
    let mut trace = Vec::new();
    if shape.coeff != T::one() {
        trace.push("linearity".to_string());
    }
    let (mut form, rule) = match shape.atoms.first() {
        None => (inv_lin(l), "unit".to_string()),
        Some(Expr::Power(alpha)) => {
            let af = alpha.as_f64();
            if af >= 0.0 && af.fract() == 0.0 {
                let n = af as u32;
                let mut fs = vec![SExpr::Const(factorial::<T>(n))];
                for j in 1..=(n + 1) {
                    fs.push(inv_lin(T::of(j as f64) * l));
                }
                (SExpr::Prod(fs), format!("power-int({n})"))
            } else {
                let p = *alpha + T::one();
                (
                    SExpr::Prod(vec![
                        SExpr::SPow {
                            offset: T::zero(),
                            exponent: -p,
                        },
                        SExpr::DegGamma {
                            offset: T::zero(),
                            p,
                        },
                    ]),
                    format!("power-frac({})", fmt_sig9(af)),
                )
            }
        }
        Some(Expr::CosL(a)) => (
            SExpr::Prod(vec![SExpr::LinFactor(l), quad_denominator(l, *a * *a)]),
            "cos".to_string(),
        ),
        Some(Expr::SinL(a)) => (
            SExpr::Prod(vec![SExpr::Const(*a), quad_denominator(l, *a * *a)]),
            "sin".to_string(),
        ),
        Some(Expr::CoshL(a)) => (
            SExpr::Prod(vec![SExpr::LinFactor(l), quad_denominator(l, -(*a * *a))]),
            "cosh".to_string(),
        ),
        Some(Expr::SinhL(a)) => (
            SExpr::Prod(vec![SExpr::Const(*a), quad_denominator(l, -(*a * *a))]),
            "sinh".to_string(),
        ),
        Some(other) => {
            return Err(Error::UnsupportedShape(format!(
                "no transform rule for `{}`",
                other.to_text()
            )))
        }
    };
    trace.push(rule);
    if shape.shift != T::zero() {
        form = form.shift_s(shape.shift);
        trace.push(format!("shift({})", fmt_sig9(shape.shift.as_f64())));
    }
    if shape.log_power > 0 {
        if form.contains_deg_gamma() {
            return Err(Error::UnsupportedShape(
                "log-power factors over a non-integer power route through the degenerate gamma \
                 factor, which has no symbolic s-derivative; use the numeric path"
                    .into(),
            ));
        }
        form = form.diff_n(shape.log_power)?;
        form = SExpr::Prod(vec![
            SExpr::Const((-l).powi(shape.log_power as i32)),
            form,
        ]);
        trace.push(format!("log-power({})", shape.log_power));
    }
    if shape.coeff != T::one() {
        form = SExpr::Prod(vec![SExpr::Const(shape.coeff), form]);
    }
    Ok(TransformResult {
        closed_form: form.simplify(),
        sigma_min: shape.sigma_min(lam),
        trace,
    })
}

/// Replaces s by s−a in a closed form and raises its threshold by a.
pub fn shift<T: Real>(f: &SExpr<T>, sigma: T, a: T) -> (SExpr<T>, T) {
    (f.shift_s(a), sigma + a)
}

/// n-fold symbolic d/ds of a closed form (no degenerate gamma factors).
pub fn sexpr_diff<T: Real>(f: &SExpr<T>, n: u32) -> Result<SExpr<T>> {
    f.diff_n(n)
}

/// Transform of the n-th t-derivative of `f` via the derivative rule:
/// the rising product `s(s+λ)···(s+(n-1)λ)` times the transform of
/// `(1+λt)^{-n} f(t)`, minus the initial-value sum
/// `Σ f^{(i)}(0) · s(s+λ)···(s+(n-i-2)λ)`.
///
/// The multiplication by `(1+λt)^{-n}` is implemented as the exact shift of
/// the transform of `f` by `-nλ`, since `(1+λt)^{-n} = (1+λt)^{(-nλ)/λ}`.
pub fn transform_derivative<T: Real>(
    f: &Expr<T>,
    n: u32,
    lam: Lambda<T>,
) -> Result<TransformResult<T>> {
    if n == 0 {
        return Err(Error::Domain("derivative order must be >= 1".into()));
    }
    let base = transform(f, lam)?;
    let l = lam.value();
    let (shifted, sigma) = shift(&base.closed_form, base.sigma_min, -T::of(n as f64) * l);
    let mut main = vec![shifted];
    for i in 0..n {
        main.push(SExpr::LinFactor(-T::of(i as f64) * l)); // s + iλ
    }
    let mut terms = vec![SExpr::Prod(main)];
    let mut fi = f.clone().normalize();
    for i in 0..n {
        let v = fi.eval_at(lam, T::zero()).map_err(|e| match e {
            Error::Overflow(msg) => Error::NonDifferentiableAtZero(msg),
            other => other,
        })?;
        if v != T::zero() {
            let mut iv = vec![SExpr::Const(-v)];
            for lidx in 1..=(n - i - 1) {
                iv.push(SExpr::LinFactor(-T::of((lidx - 1) as f64) * l)); // s + (l-1)λ
            }
            terms.push(SExpr::Prod(iv));
        }
        if i + 1 < n {
            fi = fi.deriv_t(lam)?;
        }
    }
    let mut trace = base.trace;
    trace.push(format!("derivative-rule({n})"));
    Ok(TransformResult {
        closed_form: SExpr::Sum(terms).simplify(),
        sigma_min: sigma,
        trace,
    })
}
