//! Executable adjudication of every identity the symbolic layer implements,
//! using the quadrature integrals as independent oracles.
//!
//! One check deserves a note: the gamma recurrence
//! `Γ_λ(s+1) = s/(1-λ)^E · Γ_{λ/(1-λ)}(s)` circulates with two different
//! exponents E. The Beta-identity algebra and the quadrature oracle both
//! confirm `E = s+1`; the implementation follows that variant. The `E = s-1`
//! variant is retained as a documented failing sub-check (`THM1_PRINTED`)
//! that verifies the deviation equals the predicted factor `(1-λ)²` instead
//! of silently dropping it.

use serde::Serialize;
use std::fmt;

use crate::degenfun::{deg_gamma, deg_gamma_int};
use crate::error::{Error, Result};
use crate::expr::parse;
use crate::numlap::{fd_derivative, num_deg_gamma, num_transform};
use crate::scalar::{fmt_sig9, rel_err, round_sig9};
use crate::symlap::{shift, transform, transform_derivative};

type Lambda = crate::degenfun::Lambda<f64>;
type Expr = crate::expr::Expr<f64>;

/// Identifier of a registered check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckId {
    /// Gamma recurrence, adjudicated exponent variant.
    Thm1,
    /// Gamma recurrence, printed exponent variant (documented failure).
    Thm1Printed,
    /// k-step gamma recurrence.
    Thm2,
    /// Integer-argument gamma product form vs quadrature.
    Thm3,
    /// Beta-identity path vs defining-integral quadrature.
    Beta,
    /// Every transform-table rule vs quadrature.
    Table,
    /// Pointwise derivative identities of the trig/hyperbolic pairs.
    DerivIds,
    /// Derivative rule vs transform of the symbolic derivative.
    Thm6,
    /// Log-power rule: symbolic s-derivatives vs finite differences.
    Thm7,
    /// Taylor-series form of the shift rule, truncated at N = 25.
    Eq52,
    /// Classical λ = 0 reduction and λ → 0 convergence.
    Limit,
}

impl CheckId {
    /// Registration order; `run_all` executes and reports in this order.
    pub const ALL: [CheckId; 11] = [
        CheckId::Thm1,
        CheckId::Thm1Printed,
        CheckId::Thm2,
        CheckId::Thm3,
        CheckId::Beta,
        CheckId::Table,
        CheckId::DerivIds,
        CheckId::Thm6,
        CheckId::Thm7,
        CheckId::Eq52,
        CheckId::Limit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Thm1 => "THM1",
            CheckId::Thm1Printed => "THM1_PRINTED",
            CheckId::Thm2 => "THM2",
            CheckId::Thm3 => "THM3",
            CheckId::Beta => "BETA",
            CheckId::Table => "TABLE",
            CheckId::DerivIds => "DERIV_IDS",
            CheckId::Thm6 => "THM6",
            CheckId::Thm7 => "THM7",
            CheckId::Eq52 => "EQ52",
            CheckId::Limit => "LIMIT",
        }
    }

    pub fn parse(text: &str) -> Result<CheckId> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == text)
            .ok_or_else(|| Error::UnknownCheckId(text.to_string()))
    }

    /// Registered tolerance of the check.
    pub fn default_tolerance(self) -> f64 {
        match self {
            CheckId::Thm1 | CheckId::Thm1Printed => 1e-8,
            CheckId::Thm2 => 1e-7,
            CheckId::Thm3 | CheckId::Beta => 1e-8,
            CheckId::Table => 1e-6,
            CheckId::DerivIds => 1e-6,
            CheckId::Thm6 => 1e-10,
            CheckId::Thm7 => 1e-5,
            CheckId::Eq52 => 1e-8,
            CheckId::Limit => 1e-3,
        }
    }

    /// The printed-variant sub-check documents a known failure; it never
    /// affects aggregate pass/fail or exit codes.
    pub fn is_informational(self) -> bool {
        matches!(self, CheckId::Thm1Printed)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Optional per-run parameter overrides. Values outside a check's registered
/// domain are rejected with [`Error::ParameterOutOfDomain`].
#[derive(Debug, Clone, Default)]
pub struct CheckParams {
    pub tol: Option<f64>,
    pub lambdas: Option<Vec<f64>>,
    pub ks: Option<Vec<u32>>,
}

/// Outcome of one check over its parameter grid.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub grid: Vec<String>,
    pub max_rel_error: f64,
    pub passed: bool,
    pub notes: String,
}

/// Accumulates grid labels and the running worst error.
struct Acc {
    grid: Vec<String>,
    max_err: f64,
    worst: String,
}

impl Acc {
    fn new() -> Self {
        Acc {
            grid: Vec::new(),
            max_err: 0.0,
            worst: String::new(),
        }
    }

    fn record(&mut self, label: String, err: f64) {
        if err > self.max_err || self.worst.is_empty() {
            self.max_err = err;
            self.worst = label.clone();
        }
        self.grid.push(label);
    }

    fn report(self, id: CheckId, tol: f64, notes_prefix: &str) -> CheckReport {
        let passed = self.max_err <= tol;
        let notes = if passed {
            notes_prefix.to_string()
        } else {
            format!("{notes_prefix}; worst grid point: {}", self.worst)
        };
        CheckReport {
            check_id: id.as_str().to_string(),
            grid: self.grid,
            max_rel_error: round_sig9(self.max_err),
            passed,
            notes,
        }
    }
}

const ORACLE_TOL: f64 = 1e-10;

fn lam(x: f64) -> Result<Lambda> {
    Lambda::new(x)
}

fn expr(text: &str) -> Expr {
    parse(text).expect("registered expression parses")
}

/// Runs one registered check.
pub fn run_check(id: CheckId, params: &CheckParams) -> Result<CheckReport> {
    if let Some(tol) = params.tol {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::ParameterOutOfDomain(format!(
                "tolerance override must lie in (0, 1), got {tol}"
            )));
        }
    }
    let tol = params.tol.unwrap_or_else(|| id.default_tolerance());
    match id {
        CheckId::Thm1 => check_thm1(params, tol, false),
        CheckId::Thm1Printed => check_thm1(params, tol, true),
        CheckId::Thm2 => check_thm2(params, tol),
        CheckId::Thm3 => check_thm3(params, tol),
        CheckId::Beta => check_beta(params, tol),
        CheckId::Table => check_table(tol),
        CheckId::DerivIds => check_deriv_ids(tol),
        CheckId::Thm6 => check_thm6(tol),
        CheckId::Thm7 => check_thm7(tol),
        CheckId::Eq52 => check_eq52(tol),
        CheckId::Limit => check_limit(tol),
    }
}

/// Runs every registered check in registration order. Failures inside a
/// check (for example a quadrature that cannot reach tolerance) become
/// failed reports rather than errors.
pub fn run_all(params: &CheckParams) -> Vec<CheckReport> {
    CheckId::ALL
        .iter()
        .map(|&id| {
            run_check(id, params).unwrap_or_else(|e| CheckReport {
                check_id: id.as_str().to_string(),
                grid: Vec::new(),
                max_rel_error: f64::INFINITY,
                passed: false,
                notes: format!("check aborted: {e}"),
            })
        })
        .collect()
}

/// Aggregate verdict of a report set, ignoring informational checks.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| {
        r.passed
            || CheckId::parse(&r.check_id)
                .map(CheckId::is_informational)
                .unwrap_or(false)
    })
}

// ---------------------------------------------------------------------------

fn thm1_lambdas(params: &CheckParams) -> Result<Vec<f64>> {
    let lambdas = params.lambdas.clone().unwrap_or_else(|| vec![0.1, 0.2]);
    for &l in &lambdas {
        if !(l > 0.0 && l < 1.0) {
            return Err(Error::ParameterOutOfDomain(format!(
                "the gamma recurrence requires 0 < lambda < 1, got {l}"
            )));
        }
    }
    Ok(lambdas)
}

fn check_thm1(params: &CheckParams, tol: f64, printed_variant: bool) -> Result<CheckReport> {
    let lambdas = thm1_lambdas(params)?;
    let mut acc = Acc::new();
    let mut ratio_worst: f64 = 0.0;
    for &l in &lambdas {
        for &s in &[0.5, 1.5, 2.5] {
            if s >= (1.0 - l) / l {
                continue;
            }
            let oracle = num_deg_gamma(lam(l)?, s + 1.0, ORACLE_TOL)?.value;
            let mu = l / (1.0 - l);
            let gamma_mu = deg_gamma(lam(mu)?, s)?;
            let exponent = if printed_variant { s - 1.0 } else { s + 1.0 };
            let subject = s / (1.0 - l).powf(exponent) * gamma_mu;
            let label = format!("lambda={}, s={}", fmt_sig9(l), fmt_sig9(s));
            acc.record(label, rel_err(oracle, subject));
            if printed_variant {
                // the deviation itself must match the predicted (1-λ)² factor
                let predicted = (1.0 - l).powi(2);
                ratio_worst = ratio_worst.max(rel_err(subject / oracle, predicted));
            }
        }
    }
    let id = if printed_variant {
        CheckId::Thm1Printed
    } else {
        CheckId::Thm1
    };
    let notes = if printed_variant {
        format!(
            "informational (documented failure): the (s-1)-exponent variant deviates from the \
             quadrature oracle by the factor (1-lambda)^2; the observed ratio matches that \
             prediction to {}",
            fmt_sig9(ratio_worst.max(1e-16))
        )
    } else {
        "the (s+1)-exponent variant of the gamma recurrence holds against quadrature; \
         see THM1_PRINTED for the rejected printed variant"
            .to_string()
    };
    let mut report = acc.report(id, tol, &notes);
    if printed_variant {
        report.notes = notes.clone();
        if ratio_worst > 1e-8 {
            report.notes = format!("{notes} (RATIO MISMATCH beyond 1e-8)");
        }
    }
    Ok(report)
}

#[allow(clippy::neg_cmp_op_on_partial_ord)] // !(l > 0) also rejects NaN
fn check_thm2(params: &CheckParams, tol: f64) -> Result<CheckReport> {
    let lambdas = params.lambdas.clone().unwrap_or_else(|| vec![0.05, 0.1]);
    let ks = params.ks.clone().unwrap_or_else(|| vec![1, 2, 3]);
    for &l in &lambdas {
        for &k in &ks {
            if k == 0 || !(l > 0.0) || l >= 1.0 / (k as f64 + 1.0) {
                return Err(Error::ParameterOutOfDomain(format!(
                    "the k-step recurrence requires k >= 1 and 0 < lambda < 1/(k+1), got k={k}, lambda={l}"
                )));
            }
        }
    }
    let mut acc = Acc::new();
    for &l in &lambdas {
        for &k in &ks {
            let kf = k as f64;
            let hi = (1.0 - l) / l;
            for &frac in &[0.25, 0.5, 0.75] {
                let s = kf + frac * (hi - kf);
                let oracle = num_deg_gamma(lam(l)?, s + 1.0, ORACLE_TOL)?.value;
                let mut numer = 1.0;
                for j in 0..=k {
                    numer *= s - j as f64;
                }
                let mut denom = 1.0;
                for j in 1..=k {
                    denom *= 1.0 - j as f64 * l;
                }
                denom *= (1.0 - (kf + 1.0) * l).powf(s - kf + 1.0);
                let mu = l / (1.0 - (kf + 1.0) * l);
                let subject = numer / denom * deg_gamma(lam(mu)?, s - kf)?;
                acc.record(
                    format!("lambda={}, k={k}, s={}", fmt_sig9(l), fmt_sig9(s)),
                    rel_err(oracle, subject),
                );
            }
        }
    }
    Ok(acc.report(
        CheckId::Thm2,
        tol,
        "k-step gamma recurrence vs quadrature oracle",
    ))
}

fn check_thm3(params: &CheckParams, tol: f64) -> Result<CheckReport> {
    let lambdas = params
        .lambdas
        .clone()
        .unwrap_or_else(|| vec![0.05, 0.1, 0.2]);
    for &l in &lambdas {
        if !(l > 0.0 && l < 1.0) {
            return Err(Error::ParameterOutOfDomain(format!(
                "the product form requires 0 < lambda < 1, got {l}"
            )));
        }
    }
    let mut acc = Acc::new();
    for &l in &lambdas {
        let mut k = 1u32;
        while (k as f64) * l < 1.0 {
            let subject = deg_gamma_int(lam(l)?, k)?;
            let oracle = num_deg_gamma(lam(l)?, k as f64, ORACLE_TOL)?.value;
            acc.record(
                format!("lambda={}, k={k}", fmt_sig9(l)),
                rel_err(oracle, subject),
            );
            k += 1;
        }
    }
    Ok(acc.report(
        CheckId::Thm3,
        tol,
        "integer-argument product form vs quadrature oracle",
    ))
}

#[allow(clippy::neg_cmp_op_on_partial_ord)] // !(l > 0) also rejects NaN
fn check_beta(params: &CheckParams, tol: f64) -> Result<CheckReport> {
    let lambdas = params
        .lambdas
        .clone()
        .unwrap_or_else(|| vec![0.05, 0.1, 0.2, 0.5]);
    for &l in &lambdas {
        if !(l > 0.0) {
            return Err(Error::ParameterOutOfDomain(format!(
                "the Beta-identity check requires lambda > 0, got {l}"
            )));
        }
    }
    let mut acc = Acc::new();
    for &l in &lambdas {
        for &s in &[0.25, 0.5, 1.0, 1.5, 2.5] {
            if s >= 1.0 / l {
                continue;
            }
            let subject = deg_gamma(lam(l)?, s)?;
            let oracle = num_deg_gamma(lam(l)?, s, ORACLE_TOL)?.value;
            acc.record(
                format!("lambda={}, s={}", fmt_sig9(l), fmt_sig9(s)),
                rel_err(oracle, subject),
            );
        }
    }
    Ok(acc.report(
        CheckId::Beta,
        tol,
        "Beta-identity evaluation vs defining-integral quadrature",
    ))
}

/// Transform-table entries; the flag marks the endpoint-singular power whose
/// quadrature comparison runs at a tolerance two orders looser.
const TABLE_ENTRIES: [(&str, bool); 22] = [
    ("1", false),
    ("exp_l(0.4*t)", false),
    ("exp_l(-0.4*t)", false),
    ("cos_l(2*t)", false),
    ("sin_l(2*t)", false),
    ("cosh_l(0.5*t)", false),
    ("sinh_l(0.5*t)", false),
    ("t", false),
    ("t^2", false),
    ("t^3", false),
    ("t^4", false),
    ("t^-0.5", true),
    ("t^0.5", false),
    ("t^1.5", false),
    ("log1p_l(t)", false),
    ("log1p_l(t)^2", false),
    ("log1p_l(t)*exp_l(0.3*t)", false),
    ("log1p_l(t)^2*exp_l(0.3*t)", false),
    ("exp_l(0.3*t)*sin_l(2*t)", false),
    ("exp_l(0.3*t)*cos_l(2*t)", false),
    ("exp_l(0.2*t)*t^2", false),
    ("exp_l(0.2*t)*cosh_l(0.5*t)", false),
];

fn check_table(tol: f64) -> Result<CheckReport> {
    let singular_tol = tol * 100.0;
    let mut acc = Acc::new();
    let mut all_within = true;
    let mut first_breach = String::new();
    for &(text, singular) in &TABLE_ENTRIES {
        let f = expr(text);
        let entry_tol = if singular { singular_tol } else { tol };
        for &l in &[0.05, 0.2] {
            let lm = lam(l)?;
            let sym = transform(&f, lm)?;
            for &delta in &[0.1, 0.5, 1.0, 5.0] {
                let s = sym.sigma_min + delta;
                let closed = sym.closed_form.eval(lm, s)?;
                let numeric = num_transform(&f, lm, s, ORACLE_TOL)?.value;
                let err = rel_err(closed, numeric);
                let label = format!("{text}, lambda={}, s={}", fmt_sig9(l), fmt_sig9(s));
                if err > entry_tol && all_within {
                    all_within = false;
                    first_breach = label.clone();
                }
                acc.record(label, err);
            }
        }
    }
    let notes = format!(
        "symbolic table rules vs quadrature at tolerance {} ({} for the endpoint-singular power)",
        fmt_sig9(tol),
        fmt_sig9(singular_tol)
    );
    let mut report = acc.report(CheckId::Table, singular_tol, &notes);
    report.passed = all_within;
    if !all_within {
        report.notes = format!("{notes}; tolerance exceeded at: {first_breach}");
    }
    Ok(report)
}

fn check_deriv_ids(tol: f64) -> Result<CheckReport> {
    use crate::degenfun::{deg_hyp, deg_trig};
    let mut acc = Acc::new();
    let diff5 = |f: &dyn Fn(f64) -> f64, x: f64, h: f64| {
        (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
    };
    for &l in &[0.0, 0.1, 0.5] {
        let lm = lam(l)?;
        for &a in &[0.5, 1.0, 2.0] {
            for &t in &[0.3, 1.0, 2.7] {
                let h = 1e-4 * (1.0 + t);
                let factor = a / (1.0 + l * t);
                let (c, s) = deg_trig(lm, a, t)?;
                let (ch, sh) = deg_hyp(lm, a, t)?;
                let cases: [(&str, f64, f64); 4] = [
                    (
                        "d/dt cos",
                        diff5(&|x| deg_trig(lm, a, x).unwrap().0, t, h),
                        -factor * s,
                    ),
                    (
                        "d/dt sin",
                        diff5(&|x| deg_trig(lm, a, x).unwrap().1, t, h),
                        factor * c,
                    ),
                    (
                        "d/dt cosh",
                        diff5(&|x| deg_hyp(lm, a, x).unwrap().0, t, h),
                        factor * sh,
                    ),
                    (
                        "d/dt sinh",
                        diff5(&|x| deg_hyp(lm, a, x).unwrap().1, t, h),
                        factor * ch,
                    ),
                ];
                for (name, fd, expected) in cases {
                    acc.record(
                        format!(
                            "{name}, lambda={}, a={}, t={}",
                            fmt_sig9(l),
                            fmt_sig9(a),
                            fmt_sig9(t)
                        ),
                        rel_err(fd, expected),
                    );
                }
            }
        }
    }
    Ok(acc.report(
        CheckId::DerivIds,
        tol,
        "pointwise derivative identities via central differences",
    ))
}

fn check_thm6(tol: f64) -> Result<CheckReport> {
    let mut acc = Acc::new();
    for text in ["t^2", "sin_l(1*t)", "cosh_l(0.5*t)"] {
        let f = expr(text);
        for n in 1..=2u32 {
            for &l in &[0.1, 0.3] {
                let lm = lam(l)?;
                let via_rule = transform_derivative(&f, n, lm)?;
                let mut d = f.clone();
                for _ in 0..n {
                    d = d.deriv_t(lm)?;
                }
                let direct = transform(&d, lm)?;
                for &delta in &[0.4, 1.0, 3.0] {
                    let s = via_rule.sigma_min.max(direct.sigma_min) + delta;
                    let a = via_rule.closed_form.eval(lm, s)?;
                    let b = direct.closed_form.eval(lm, s)?;
                    acc.record(
                        format!("{text}, n={n}, lambda={}, s={}", fmt_sig9(l), fmt_sig9(s)),
                        rel_err(a, b),
                    );
                }
            }
        }
    }
    Ok(acc.report(
        CheckId::Thm6,
        tol,
        "derivative rule vs transform of the symbolic t-derivative",
    ))
}

fn check_thm7(tol: f64) -> Result<CheckReport> {
    let mut acc = Acc::new();
    for text in ["1", "exp_l(0.3*t)", "cos_l(2*t)"] {
        let f = expr(text);
        for n in 1..=2u32 {
            for &l in &[0.1, 0.2] {
                let lm = lam(l)?;
                let sym = transform(&f, lm)?;
                let dn = sym.closed_form.diff_n(n)?;
                let sign = (-l).powi(n as i32);
                for &delta in &[0.7, 1.5] {
                    let s = sym.sigma_min + delta;
                    let symbolic = sign * dn.eval(lm, s)?;
                    // finite differences of the quadrature-evaluated transform
                    let quad_f = |x: f64| Ok(num_transform(&f, lm, x, 1e-12)?.value);
                    let h = 0.02 * s.max(1.0);
                    let fd = sign * fd_derivative(quad_f, s, n, h)?;
                    acc.record(
                        format!(
                            "fd: {text}, n={n}, lambda={}, s={}",
                            fmt_sig9(l),
                            fmt_sig9(s)
                        ),
                        rel_err(symbolic, fd),
                    );
                    // direct quadrature of the log-power product
                    let log_f = Expr::Prod(vec![Expr::LogPow(n), f.clone()]);
                    let direct = num_transform(&log_f, lm, s, ORACLE_TOL)?.value;
                    acc.record(
                        format!(
                            "quad: {text}, n={n}, lambda={}, s={}",
                            fmt_sig9(l),
                            fmt_sig9(s)
                        ),
                        rel_err(symbolic, direct),
                    );
                }
            }
        }
    }
    Ok(acc.report(
        CheckId::Thm7,
        tol,
        "log-power rule: symbolic s-derivatives vs finite differences and quadrature",
    ))
}

fn check_eq52(tol: f64) -> Result<CheckReport> {
    const N: u32 = 25;
    let mut acc = Acc::new();
    for text in ["1", "exp_l(0.2*t)"] {
        let f = expr(text);
        for &l in &[0.1, 0.2] {
            let lm = lam(l)?;
            let sym = transform(&f, lm)?;
            let s = sym.sigma_min + 2.0;
            for &a in &[0.3, 0.6, 0.9] {
                // |a| < 0.5·(s - σ_min) keeps the series tail below 1e-8
                debug_assert!(a < 0.5 * (s - sym.sigma_min));
                let exact = shift(&sym.closed_form, sym.sigma_min, a).0.eval(lm, s)?;
                let mut series = 0.0;
                let mut deriv = sym.closed_form.clone().simplify();
                let mut coeff = 1.0; // (−a)ⁿ/n!
                for n in 0..=N {
                    if n > 0 {
                        deriv = deriv.diff()?;
                        coeff *= -a / n as f64;
                    }
                    series += coeff * deriv.eval(lm, s)?;
                }
                acc.record(
                    format!(
                        "{text}, lambda={}, s={}, a={}",
                        fmt_sig9(l),
                        fmt_sig9(s),
                        fmt_sig9(a)
                    ),
                    rel_err(series, exact),
                );
            }
        }
    }
    Ok(acc.report(
        CheckId::Eq52,
        tol,
        "shift rule as a truncated s-derivative series (N = 25)",
    ))
}

fn check_limit(tol: f64) -> Result<CheckReport> {
    let mut acc = Acc::new();
    // exact symbolic reduction at λ = 0
    let classical: [(&str, &str); 8] = [
        ("1", "1/s"),
        ("t", "1/s^2"),
        ("t^3", "6/s^4"),
        ("exp_l(-3*t)", "1/(s+3)"),
        ("sin_l(2*t)", "2/(s^2+4)"),
        ("cos_l(2*t)", "s/(s^2+4)"),
        ("cosh_l(0.5*t)", "s/(s^2-0.25)"),
        ("sinh_l(0.5*t)", "0.5/(s^2-0.25)"),
    ];
    for (text, expected) in classical {
        let r = transform(&expr(text), Lambda::classical())?;
        let printed = r.closed_form.to_string();
        let err = if printed == expected { 0.0 } else { 1.0 };
        acc.record(
            format!("classical form of {text}: {printed}"),
            err,
        );
    }
    // monotone convergence of the gamma function
    let steps = [1e-2, 1e-3, 1e-4];
    for &s in &[0.5, 1.5, 2.5] {
        let target = deg_gamma(Lambda::classical(), s)?;
        let errs: Vec<f64> = steps
            .iter()
            .map(|&l| Ok(rel_err(deg_gamma(lam(l)?, s)?, target)))
            .collect::<Result<_>>()?;
        let monotone = errs[0] > errs[1] && errs[1] > errs[2];
        acc.record(
            format!("gamma limit, s={}", fmt_sig9(s)),
            if monotone { errs[2] } else { 1.0 },
        );
    }
    // monotone convergence of each table entry at fixed s
    for text in ["1", "t^2", "sin_l(2*t)", "cosh_l(0.5*t)"] {
        let f = expr(text);
        let s = 2.0;
        let target = transform(&f, Lambda::classical())?
            .closed_form
            .eval(Lambda::classical(), s)?;
        let errs: Vec<f64> = steps
            .iter()
            .map(|&l| {
                let lm = lam(l)?;
                Ok(rel_err(transform(&f, lm)?.closed_form.eval(lm, s)?, target))
            })
            .collect::<Result<_>>()?;
        let monotone = errs[0] > errs[1] && errs[1] > errs[2];
        acc.record(
            format!("table limit, {text}, s=2"),
            if monotone { errs[2] } else { 1.0 },
        );
    }
    Ok(acc.report(
        CheckId::Limit,
        tol,
        "classical reduction at lambda = 0 and monotone convergence for lambda -> 0",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_ids_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(CheckId::parse(id.as_str()).unwrap(), id);
        }
        assert!(matches!(
            CheckId::parse("NOPE"),
            Err(Error::UnknownCheckId(_))
        ));
    }

    #[test]
    fn thm3_passes() {
        let r = run_check(CheckId::Thm3, &CheckParams::default()).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.max_rel_error <= 1e-8);
        assert!(!r.grid.is_empty());
    }

    #[test]
    fn thm1_adjudication() {
        let ok = run_check(CheckId::Thm1, &CheckParams::default()).unwrap();
        assert!(ok.passed, "{ok:?}");
        let printed = run_check(CheckId::Thm1Printed, &CheckParams::default()).unwrap();
        assert!(!printed.passed);
        assert!(printed.notes.contains("informational"));
        assert!(
            !printed.notes.contains("RATIO MISMATCH"),
            "{}",
            printed.notes
        );
        // the grid deviation is the (1-λ)² factor, far above tolerance
        assert!(printed.max_rel_error > 0.1);
    }

    #[test]
    fn eq52_reference_point() {
        // f = 1, a = 0.3, λ = 0.2, s = 2: truncated series matches the shift
        let f = expr("1");
        let lm = lam(0.2).unwrap();
        let sym = transform(&f, lm).unwrap();
        let exact = shift(&sym.closed_form, sym.sigma_min, 0.3)
            .0
            .eval(lm, 2.0)
            .unwrap();
        let mut series = 0.0;
        let mut deriv = sym.closed_form.clone();
        let mut coeff = 1.0;
        for n in 0..=25u32 {
            if n > 0 {
                deriv = deriv.diff().unwrap();
                coeff *= -0.3 / n as f64;
            }
            series += coeff * deriv.eval(lm, 2.0).unwrap();
        }
        assert!(rel_err(series, exact) <= 1e-8);
        assert!(rel_err(exact, 1.0 / (2.0 - 0.3 - 0.2)) < 1e-15);
    }

    #[test]
    fn out_of_domain_overrides_are_rejected() {
        let params = CheckParams {
            lambdas: Some(vec![0.3]),
            ks: Some(vec![3]),
            ..Default::default()
        };
        assert!(matches!(
            run_check(CheckId::Thm2, &params),
            Err(Error::ParameterOutOfDomain(_))
        ));
        let params = CheckParams {
            lambdas: Some(vec![1.5]),
            ..Default::default()
        };
        assert!(matches!(
            run_check(CheckId::Thm1, &params),
            Err(Error::ParameterOutOfDomain(_))
        ));
        let params = CheckParams {
            tol: Some(2.0),
            ..Default::default()
        };
        assert!(matches!(
            run_check(CheckId::Thm3, &params),
            Err(Error::ParameterOutOfDomain(_))
        ));
    }

    #[test]
    fn reports_serialize_with_fixed_field_order() {
        let report = CheckReport {
            check_id: "THM3".into(),
            grid: vec!["lambda=0.1, k=1".into()],
            max_rel_error: 1.5e-10,
            passed: true,
            notes: "ok".into(),
        };
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"check_id":"THM3","grid":["lambda=0.1, k=1"],"max_rel_error":1.5e-10,"passed":true,"notes":"ok"}"#
        );
    }
}
