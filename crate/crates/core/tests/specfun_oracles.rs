//! Special functions against oracles written here from scratch, plus values
//! frozen from a 30-digit evaluation.

use approx::assert_relative_eq;
use mmwave_mplp::specfun::{bessel_k1, gamma_fn, integrate, sinc, varrho, QuadratureSpec};

/// `K1(μ) = ∫_0^∞ exp(-μ cosh t) cosh t dt`, trapezoidal rule with a fine
/// fixed step. The integrand is entire and doubly exponentially decaying,
/// so the rule converges geometrically.
fn k1_oracle(mu: f64) -> f64 {
    let t_max = (2.0 * (50.0 + mu) / mu).ln() + 2.0;
    let h = 1e-3;
    let n = (t_max / h) as usize;
    let mut s = 0.5 * (-mu).exp();
    for i in 1..=n {
        let c = (i as f64 * h).cosh();
        s += (-mu * c).exp() * c;
    }
    s * h
}

/// Stirling series for `ln Γ(z)`, z large.
fn ln_gamma_stirling(z: f64) -> f64 {
    // B_{2k} / (2k (2k-1))
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
    ];
    let mut series = 0.0;
    let mut zp = z;
    let z2 = z * z;
    for c in C {
        series += c / zp;
        zp *= z2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// `Γ(x) = Γ(x + 20) / ∏_{k<20} (x + k)`.
fn gamma_oracle(x: f64) -> f64 {
    let prod: f64 = (0..20).map(|k| x + k as f64).product();
    ln_gamma_stirling(x + 20.0).exp() / prod
}

/// Midpoint sum of `∫_1^∞ dμ / (1 + μ^α / t)` in `s = ln μ` on `[0, ln 1e6]`
/// with `n` panels, plus the tail beyond 1e6 to leading order.
fn varrho_oracle(t: f64, alpha: f64, n: usize) -> f64 {
    let top = 1e6f64.ln();
    let h = top / n as f64;
    let mut s = 0.0;
    for i in 0..n {
        let mu = ((i as f64 + 0.5) * h).exp();
        s += mu / (1.0 + mu.powf(alpha) / t);
    }
    s * h + t * 1e6f64.powf(1.0 - alpha) / (alpha - 1.0)
}

#[test]
fn k1_matches_integral_oracle() {
    let mut mu = 1e-8;
    while mu <= 50.0 {
        assert_relative_eq!(bessel_k1(mu).unwrap(), k1_oracle(mu), max_relative = 1e-10);
        mu *= 1.9;
    }
    assert_relative_eq!(
        bessel_k1(50.0).unwrap(),
        k1_oracle(50.0),
        max_relative = 1e-10
    );
}

#[test]
fn k1_reference_values() {
    assert_relative_eq!(
        k1_oracle(1.0),
        0.601_907_230_197_234_6,
        max_relative = 1e-14
    );
    assert_relative_eq!(
        bessel_k1(1.0).unwrap(),
        0.601_907_230_197_234_6,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        bessel_k1(10.0).unwrap(),
        1.864_877_345_382_558_5e-5,
        max_relative = 1e-13
    );
    let asym = (std::f64::consts::PI / 20.0).sqrt() * (-10f64).exp() * (1.0 + 3.0 / 80.0);
    assert_relative_eq!(bessel_k1(10.0).unwrap(), asym, max_relative = 0.01);
    assert!((1e-6 * bessel_k1(1e-6).unwrap() - 1.0).abs() < 1e-4);
}

#[test]
fn k1_decreasing_and_domain() {
    let v: Vec<f64> = (1..400)
        .map(|i| bessel_k1(i as f64 * 0.125).unwrap())
        .collect();
    assert!(v.windows(2).all(|w| w[1] < w[0]));
    assert!(bessel_k1(0.0).is_err());
    assert!(bessel_k1(-1.0).is_err());
}

#[test]
fn gamma_matches_stirling_oracle() {
    let mut x = 0.05;
    while x < 12.0 {
        assert_relative_eq!(gamma_fn(x).unwrap(), gamma_oracle(x), max_relative = 1e-12);
        x += 0.0173;
    }
    let r = 1.0 - 2.5 / 7.0;
    assert_relative_eq!(
        gamma_oracle(r),
        1.398_530_858_266_806_8,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        gamma_fn(r).unwrap(),
        1.398_530_858_266_806_8,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        gamma_fn(0.5).unwrap(),
        std::f64::consts::PI.sqrt(),
        max_relative = 1e-14
    );
    assert!(gamma_fn(0.0).is_err());
}

#[test]
fn gamma_recurrence() {
    let mut x = 0.1;
    while x <= 10.0 {
        let lhs = gamma_fn(x + 1.0).unwrap();
        let rhs = x * gamma_fn(x).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        x += 0.01;
    }
}

#[test]
fn varrho_against_oracles() {
    let spec = QuadratureSpec::default();
    // α = 2: ∫_1^∞ t/(t+μ²) dμ = √t (π/2 − atan(1/√t)).
    for t in [0.01f64, 0.3, 1.0, 4.0, 50.0] {
        let closed = t.sqrt() * (std::f64::consts::FRAC_PI_2 - (1.0 / t.sqrt()).atan());
        assert_relative_eq!(varrho(t, 2.0, &spec).unwrap(), closed, max_relative = 1e-8);
    }
    assert_relative_eq!(
        varrho(1.0, 2.0, &spec).unwrap(),
        std::f64::consts::FRAC_PI_4,
        max_relative = 1e-10
    );
    let oracle = varrho_oracle(10.0, 2.5, 10_000_000);
    assert_relative_eq!(oracle, 2.345_985_618_480_541, max_relative = 1e-9);
    assert_relative_eq!(
        varrho(10.0, 2.5, &spec).unwrap(),
        oracle,
        max_relative = 1e-6
    );
    assert_eq!(varrho(0.0, 2.5, &spec).unwrap(), 0.0);
    assert!(varrho(1.0, 1.0, &spec).is_err());
}

#[test]
fn varrho_monotonicity() {
    let spec = QuadratureSpec::default();
    let ts: Vec<f64> = (-40..=40).map(|i| 10f64.powf(i as f64 / 10.0)).collect();
    for alpha in [2.0, 2.5, 4.0] {
        let v: Vec<f64> = ts
            .iter()
            .map(|&t| varrho(t, alpha, &spec).unwrap())
            .collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0]));
    }
    for &t in &ts {
        let a = varrho(t, 2.2, &spec).unwrap();
        let b = varrho(t, 3.0, &spec).unwrap();
        assert!(b <= a, "t = {t}");
    }
}

#[test]
fn quadrature_against_summation_oracle() {
    let spec = QuadratureSpec::default();
    let r = 0.357;
    // 10^8-panel midpoint sum in s = ln x over [-40, 20]; the integrand
    // x·exp(-x^r) is negligible beyond both ends.
    let n = 100_000_000usize;
    let (lo, hi) = (-40.0f64, 20.0f64);
    let h = (hi - lo) / n as f64;
    let mut oracle = 0.0;
    for i in 0..n {
        let x = (lo + (i as f64 + 0.5) * h).exp();
        oracle += x * (-x.powf(r)).exp();
    }
    oracle *= h;
    assert_relative_eq!(oracle, 4.700_478_665_981_191, max_relative = 1e-10);
    let got = integrate(|x: f64| (-x.powf(r)).exp(), 0.0, f64::INFINITY, &spec).unwrap();
    assert_relative_eq!(got.value, oracle, max_relative = 1e-8);

    let e = integrate(|x: f64| (-x).exp(), 0.0, f64::INFINITY, &spec).unwrap();
    assert_relative_eq!(e.value, 1.0, max_relative = 1e-12);
    let g = integrate(|x: f64| x * (-x * x).exp(), 0.0, f64::INFINITY, &spec).unwrap();
    assert_relative_eq!(g.value, 0.5, max_relative = 1e-12);
}

#[test]
fn sinc_values() {
    assert_eq!(sinc(0.0), 1.0);
    assert_relative_eq!(sinc(0.5), 2.0 / std::f64::consts::PI, max_relative = 1e-15);
    assert!(sinc(1.0).abs() < 1e-15);
}
