//! Acceptance suite: one test per criterion, each printing a PASS line when
//! its assertions hold (run with `cargo test --test acceptance -- --nocapture`
//! to see the lines).

use deglap::degenfun::{deg_gamma, deg_gamma_int, deg_hyp, deg_trig, Lambda};
use deglap::expr::{parse, Expr};
use deglap::numlap::num_deg_gamma;
use deglap::rel_err;
use deglap::verify::{run_check, CheckId, CheckParams};

fn lam(x: f64) -> Lambda<f64> {
    Lambda::new(x).unwrap()
}

fn check(id: CheckId) -> deglap::verify::CheckReport {
    run_check(id, &CheckParams::default()).unwrap()
}

fn pass(line: &str) {
    println!("ACCEPTANCE {line}: PASS");
}

/// Deterministic xorshift64* sampler for the random-grid criteria.
struct Rng(u64);
impl Rng {
    fn next_unit(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[test]
fn acceptance_01_gamma_product_form_vs_quadrature() {
    // λ ∈ {0.05, 0.1, 0.2}, every k ≥ 1 with kλ < 1, ≤ 1e-8 relative
    let r = check(CheckId::Thm3);
    assert!(
        r.passed && r.max_rel_error <= 1e-8,
        "max_rel_error={:.3e}: {}",
        r.max_rel_error,
        r.notes
    );
    // grid covers 19 + 9 + 4 integer arguments
    assert_eq!(r.grid.len(), 32);
    pass("01 gamma product form vs quadrature");
}

#[test]
fn acceptance_02_beta_identity_cross_check() {
    // λ ∈ {0.05, 0.1, 0.2, 0.5} × s ∈ {0.25, 0.5, 1, 1.5, 2.5} ∩ (0, 1/λ)
    let r = check(CheckId::Beta);
    assert!(
        r.passed && r.max_rel_error <= 1e-8,
        "max_rel_error={:.3e}: {}",
        r.max_rel_error,
        r.notes
    );
    assert_eq!(r.grid.len(), 19); // λ = 0.5 loses s = 2.5
    pass("02 Beta-identity path vs defining-integral quadrature");
}

#[test]
fn acceptance_03_recurrence_adjudication() {
    let r = check(CheckId::Thm1);
    assert!(r.passed && r.max_rel_error <= 1e-8, "{}", r.notes);
    // the printed exponent variant deviates by exactly (1-λ)²
    for &l in &[0.1, 0.2] {
        for &s in &[0.5, 1.5, 2.5] {
            let oracle = num_deg_gamma(lam(l), s + 1.0, 1e-10).unwrap().value;
            let mu = l / (1.0 - l);
            let confirmed = s / (1.0 - l).powf(s + 1.0) * deg_gamma(lam(mu), s).unwrap();
            let printed = s / (1.0 - l).powf(s - 1.0) * deg_gamma(lam(mu), s).unwrap();
            assert!(rel_err(confirmed, oracle) <= 1e-8, "lambda={l} s={s}");
            assert!(
                rel_err(printed / oracle, (1.0 - l).powi(2)) <= 1e-8,
                "lambda={l} s={s}"
            );
        }
    }
    let info = check(CheckId::Thm1Printed);
    assert!(!info.passed && info.notes.contains("informational"));
    pass("03 recurrence exponent adjudication ((s+1) confirmed, (s-1) off by (1-lambda)^2)");
}

#[test]
fn acceptance_04_k_step_recurrence() {
    // k ∈ {1,2,3}, λ ∈ {0.05, 0.1}, three interior s samples, ≤ 1e-7
    let r = check(CheckId::Thm2);
    assert!(
        r.passed && r.max_rel_error <= 1e-7,
        "max_rel_error={:.3e}: {}",
        r.max_rel_error,
        r.notes
    );
    assert_eq!(r.grid.len(), 18);
    pass("04 k-step gamma recurrence");
}

#[test]
fn acceptance_05_transform_table_vs_quadrature() {
    // every rule at s = σ_min + δ, δ ∈ {0.1, 0.5, 1, 5}, λ ∈ {0.05, 0.2};
    // ≤ 1e-6 relative, ≤ 1e-4 for the endpoint-singular power
    let r = check(CheckId::Table);
    assert!(
        r.passed,
        "max_rel_error={:.3e}: {}",
        r.max_rel_error,
        r.notes
    );
    assert_eq!(r.grid.len(), 22 * 2 * 4);
    pass("05 transform table vs quadrature");
}

#[test]
fn acceptance_06_derivative_rule() {
    // f ∈ {t², sin_l(t), cosh_l(0.5t)}, n ∈ {1,2}, ≤ 1e-10 at sampled s
    let r = check(CheckId::Thm6);
    assert!(
        r.passed && r.max_rel_error <= 1e-10,
        "max_rel_error={:.3e}: {}",
        r.max_rel_error,
        r.notes
    );
    pass("06 derivative rule vs direct transform of the derivative");
}

#[test]
fn acceptance_07_log_power_rule() {
    // (−1)ⁿλⁿ dⁿF/dsⁿ vs finite differences of the quadrature transform,
    // n ∈ {1,2}, f ∈ {1, exp_l(0.3t), cos_l(2t)}, ≤ 1e-5
    let r = check(CheckId::Thm7);
    assert!(
        r.passed && r.max_rel_error <= 1e-5,
        "max_rel_error={:.3e}: {}",
        r.max_rel_error,
        r.notes
    );
    pass("07 log-power rule vs finite-difference and quadrature oracles");
}

#[test]
fn acceptance_08_shift_series() {
    // series truncated at N = 25 with |a| < 0.5(s − σ_min) matches the shift
    let r = check(CheckId::Eq52);
    assert!(
        r.passed && r.max_rel_error <= 1e-8,
        "max_rel_error={:.3e}: {}",
        r.max_rel_error,
        r.notes
    );
    pass("08 shift rule as truncated derivative series");
}

#[test]
fn acceptance_09_classical_limits() {
    // exact λ = 0 reduction; monotone convergence along λ = 1e-2, 1e-3, 1e-4
    // with final relative error ≤ 1e-3
    let r = check(CheckId::Limit);
    assert!(
        r.passed && r.max_rel_error <= 1e-3,
        "max_rel_error={:.3e}: {}",
        r.max_rel_error,
        r.notes
    );
    pass("09 classical limits");
}

#[test]
fn acceptance_10_pointwise_identities() {
    // cos² + sin² = 1 and cosh² − sinh² = 1 over 10³ random samples, ≤ 1e-12
    let mut rng = Rng(0x853c49e6748fea9b);
    for _ in 0..1000 {
        let l = 2.0 * rng.next_unit();
        let a = 4.0 * rng.next_unit() - 2.0;
        let t = 6.0 * rng.next_unit();
        let lm = lam(l);
        let (c, s) = deg_trig(lm, a, t).unwrap();
        assert!((c * c + s * s - 1.0).abs() <= 1e-12, "lambda={l} a={a} t={t}");
        let (ch, sh) = deg_hyp(lm, a * 0.6, t * 0.6).unwrap();
        assert!(
            (ch * ch - sh * sh - 1.0).abs() <= 1e-12,
            "lambda={l} a={a} t={t}"
        );
    }
    // derivative identities via finite differences, ≤ 1e-6 relative
    let r = check(CheckId::DerivIds);
    assert!(
        r.passed && r.max_rel_error <= 1e-6,
        "max_rel_error={:.3e}: {}",
        r.max_rel_error,
        r.notes
    );
    pass("10 pointwise trig/hyperbolic identities");
}

#[test]
fn acceptance_11_parser_rejections_are_position_tagged() {
    use deglap::ParseError;
    // (the 10³-case round-trip corpus lives in the parser property suite,
    // and the byte-exact CLI goldens in the CLI crate's integration tests)
    let cases: Vec<(&str, usize)> = vec![
        ("t^", 2),
        ("", 0),
        ("foo(t)", 0),
        ("(t", 2),
        ("2**t", 2),
        ("t t", 2),
        ("sin_l(t)^2", 9),
        ("t^2^3", 3),
    ];
    for (text, pos) in cases {
        match parse::<f64>(text) {
            Err(e) => assert_eq!(e.position(), pos, "{text:?}: {e}"),
            Ok(ast) => panic!("{text:?} unexpectedly parsed to {ast:?}"),
        }
    }
    match parse::<f64>("t^-1.5") {
        Err(ParseError::ExponentOutOfRange { position: 2, .. }) => {}
        other => panic!("expected range error, got {other:?}"),
    }
    match parse::<f64>("log1p_l(t)^2.5") {
        Err(ParseError::NonIntegerLogPower { position: 11 }) => {}
        other => panic!("expected log-power error, got {other:?}"),
    }
    match parse::<f64>("sin_l(t*t)") {
        Err(ParseError::NonLinearArgument { .. }) => {}
        other => panic!("expected linear-argument error, got {other:?}"),
    }
    // round-trip smoke cases beyond the generated corpus
    for text in ["t^2 + 3*exp_l(-1*t)", "sin_l(2*t)", "-2*t - 1"] {
        let e: Expr<f64> = parse(text).unwrap();
        let reparsed: Expr<f64> = parse(&e.to_text()).unwrap();
        assert_eq!(reparsed, e.normalize());
    }
    pass("11 parser grammar rejections and round-trip");
}

#[test]
fn acceptance_gamma_examples_from_the_product_form() {
    // spot values: Γ_{0.2}(1) = 1.25, Γ_{0.1}(3) = 2/(0.9·0.8·0.7), Γ_0(4) = 6
    assert!(rel_err(deg_gamma_int(lam(0.2), 1).unwrap(), 1.25) < 1e-14);
    assert!(rel_err(deg_gamma_int(lam(0.1), 3).unwrap(), 3.968253968253968) < 1e-14);
    assert_eq!(deg_gamma_int(Lambda::<f64>::classical(), 4).unwrap(), 6.0);
    pass("extra: integer gamma spot values");
}
