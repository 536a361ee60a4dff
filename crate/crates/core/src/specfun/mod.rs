//! Special functions and quadrature used by the closed-form coverage results.
//!
//! Everything here is pure and reentrant. The only Bessel order provided is
//! `K1`, and only for real positive arguments.

mod bessel;
mod gamma;
mod quadrature;

pub use bessel::bessel_k1;
pub use gamma::gamma_fn;
pub use quadrature::{integrate, Integral, QuadratureSpec};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{function} is undefined at {arg}")]
    Domain { function: &'static str, arg: f64 },

    #[error("integral diverges for alpha_L = {alpha_l} (requires alpha_L > 1)")]
    Divergent { alpha_l: f64 },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:e}, error bound {error_bound:e})"
    )]
    NonConvergence {
        estimate: f64,
        error_bound: f64,
        subdivisions: usize,
    },

    #[error("integrand returned a non-finite value at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("invalid quadrature settings: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, SpecFunError>;

/// Normalized sinc, `sin(pi x) / (pi x)`, continuous at zero.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let px = std::f64::consts::PI * x;
    px.sin() / px
}

/// `varrho(t) = ∫_1^∞ 1 / (1 + t⁻¹ μ^α_L) dμ`.
///
/// This integral shows up in every interference Laplace transform on a LOS
/// street. Substituting `μ = s^{-1/(α_L - 1)}` maps it onto the unit interval
/// with a bounded integrand:
///
/// ```text
/// varrho(t) = 1/(α_L - 1) ∫_0^1 t / (1 + t s^{α_L/(α_L - 1)}) ds
/// ```
///
/// which is then handed to the adaptive Gauss-Kronrod engine.
pub fn varrho(t: f64, alpha_l: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(alpha_l > 1.0) {
        return Err(SpecFunError::Divergent { alpha_l });
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(SpecFunError::Domain {
            function: "varrho",
            arg: t,
        });
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let q = alpha_l / (alpha_l - 1.0);
    let scale = 1.0 / (alpha_l - 1.0);
    let integral = integrate(|s| t / (1.0 + t * s.powf(q)), 0.0, 1.0, spec)?;
    Ok(scale * integral.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sinc_reference_points() {
        assert_eq!(sinc(0.0), 1.0);
        assert_relative_eq!(sinc(0.5), 2.0 / std::f64::consts::PI, max_relative = 1e-15);
        assert!(sinc(1.0).abs() < 1e-15);
        assert_relative_eq!(sinc(-0.5), sinc(0.5));
    }

    #[test]
    fn varrho_zero_threshold() {
        let spec = QuadratureSpec::default();
        assert_eq!(varrho(0.0, 2.5, &spec).unwrap(), 0.0);
    }

    #[test]
    fn varrho_square_law_closed_form() {
        // For α_L = 2 the integral is √t·arctan(√t).
        let spec = QuadratureSpec::default();
        for &t in &[1e-4f64, 0.1, 1.0, 3.0, 10.0, 1e3, 1e6] {
            let expected = t.sqrt() * t.sqrt().atan();
            let got = varrho(t, 2.0, &spec).unwrap();
            assert_relative_eq!(got, expected, max_relative = 1e-10);
        }
        assert_relative_eq!(
            varrho(1.0, 2.0, &spec).unwrap(),
            std::f64::consts::FRAC_PI_4,
            max_relative = 1e-12
        );
    }

    #[test]
    fn varrho_rejects_divergent_exponent() {
        let spec = QuadratureSpec::default();
        assert!(matches!(
            varrho(1.0, 1.0, &spec),
            Err(SpecFunError::Divergent { .. })
        ));
        assert!(matches!(
            varrho(1.0, 0.5, &spec),
            Err(SpecFunError::Divergent { .. })
        ));
        assert!(matches!(
            varrho(-1.0, 2.5, &spec),
            Err(SpecFunError::Domain { .. })
        ));
    }

    #[test]
    fn varrho_monotone_grid() {
        let spec = QuadratureSpec::default();
        let ts: Vec<f64> = (0..40).map(|i| 10f64.powf(-3.0 + 0.2 * i as f64)).collect();
        for alpha in [1.5, 2.0, 2.5, 4.0, 7.0] {
            let vals: Vec<f64> = ts
                .iter()
                .map(|&t| varrho(t, alpha, &spec).unwrap())
                .collect();
            assert!(vals.windows(2).all(|w| w[1] >= w[0]), "alpha = {alpha}");
        }
        // Nonincreasing in alpha_L for fixed t > 0.
        for &t in &[0.01, 1.0, 100.0] {
            let by_alpha: Vec<f64> = [1.5, 2.0, 2.5, 3.0, 5.0]
                .iter()
                .map(|&a| varrho(t, a, &spec).unwrap())
                .collect();
            assert!(by_alpha.windows(2).all(|w| w[1] <= w[0]), "t = {t}");
        }
    }
}
