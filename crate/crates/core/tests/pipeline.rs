//! Cross-module integration: the full verification sweep and the identities
//! that tie the symbolic, pointwise, and numeric layers together.

use deglap::degenfun::{deg_gamma, Lambda};
use deglap::expr::parse;
use deglap::numlap::{num_transform, DEFAULT_TOL};
use deglap::rel_err;
use deglap::symlap::{transform, SExpr};
use deglap::verify::{all_passed, run_all, CheckId, CheckParams};

fn lam(x: f64) -> Lambda<f64> {
    Lambda::new(x).unwrap()
}

#[test]
fn full_sweep_passes_except_documented_printed_variant() {
    let reports = run_all(&CheckParams::default());
    assert_eq!(reports.len(), CheckId::ALL.len());
    for (report, id) in reports.iter().zip(CheckId::ALL) {
        assert_eq!(report.check_id, id.as_str());
        if id.is_informational() {
            assert!(!report.passed, "{}: expected documented failure", id);
        } else {
            assert!(
                report.passed,
                "{}: max_rel_error={:.3e}: {}",
                id, report.max_rel_error, report.notes
            );
        }
    }
    assert!(all_passed(&reports));
}

#[test]
fn loose_tolerance_passes_every_regular_check() {
    let params = CheckParams {
        tol: Some(1e-2),
        ..Default::default()
    };
    let reports = run_all(&params);
    assert!(all_passed(&reports));
}

#[test]
fn power_transform_forms_are_consistent() {
    // n!/((s-λ)···(s-(n+1)λ)) equals s^{-(n+1)}·Γ_{λ/s}(n+1) for n ≤ 4
    for n in 0..=4u32 {
        for &(l, s) in &[(0.1, 1.0), (0.05, 0.8), (0.15, 2.5)] {
            if s <= (n + 1) as f64 * l {
                continue;
            }
            let mut product = 1.0;
            for j in 1..=(n + 1) {
                product *= s - j as f64 * l;
            }
            let factorial: f64 = (1..=n).map(|j| j as f64).product();
            let rational = factorial / product;
            let via_gamma = s.powi(-(n as i32) - 1) * deg_gamma(lam(l / s), (n + 1) as f64).unwrap();
            assert!(
                rel_err(rational, via_gamma) <= 1e-12,
                "n={n} lambda={l} s={s}: {rational} vs {via_gamma}"
            );
        }
    }
}

#[test]
fn gamma_at_one_is_geometric() {
    // Γ_λ(1) = 1/(1-λ) on (0, 1)
    for &l in &[0.05, 0.25, 0.5, 0.75, 0.95] {
        assert!(rel_err(deg_gamma(lam(l), 1.0).unwrap(), 1.0 / (1.0 - l)) <= 1e-13);
    }
}

#[test]
fn symbolic_and_numeric_transforms_agree_on_a_sum() {
    let f = parse::<f64>("t^2 + 3*exp_l(-1*t) - 0.5*sin_l(2*t)").unwrap();
    let lm = lam(0.1);
    let sym = transform(&f, lm).unwrap();
    for &delta in &[0.2, 1.0, 4.0] {
        let s = sym.sigma_min + delta;
        let closed = sym.closed_form.eval(lm, s).unwrap();
        let quad = num_transform(&f, lm, s, DEFAULT_TOL).unwrap();
        assert!(
            rel_err(closed, quad.value) <= 1e-8,
            "s={s}: {closed} vs {}",
            quad.value
        );
    }
}

#[test]
fn generic_scalar_pipeline_works_with_f32() {
    let lm = Lambda::<f32>::new(0.1).unwrap();
    let f = parse::<f32>("sin_l(2*t)").unwrap();
    let sym = transform(&f, lm).unwrap();
    let s = 2.0f32;
    let closed = sym.closed_form.eval(lm, s).unwrap();
    assert!((closed - 2.0 / (1.9f32 * 1.9 + 4.0)).abs() < 1e-6);
    let quad = num_transform(&f, lm, s, 1e-4f32).unwrap();
    assert!((quad.value - closed).abs() / closed.abs() < 1e-3);
}

#[test]
fn transform_result_traces_are_never_empty() {
    for text in ["1", "t^3", "cos_l(2*t)", "exp_l(0.3*t)*sin_l(2*t)", "t^2 + 1"] {
        let r = transform(&parse::<f64>(text).unwrap(), lam(0.2)).unwrap();
        assert!(!r.trace.is_empty(), "{text}");
        assert!(r.sigma_min.is_finite());
        assert!(!matches!(r.closed_form, SExpr::Sum(ref v) if v.is_empty()));
    }
}
