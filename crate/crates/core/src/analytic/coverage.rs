use super::{
    constants, db_to_linear, integrate_half_line, AnalyticConstants, AnalyticError, Result,
};
use crate::channel::AntennaModel;
use crate::geometry::NetworkConfig;

/// Scale of `x` where the integrands below start to decay.
fn decay_scale(k: &AnalyticConstants, lambda_b: f64) -> f64 {
    let interference = 1.0 / (k.beta_2 + k.gamma_t);
    if k.beta_1 > 0.0 {
        interference.min(lambda_b * k.beta_1.powf(-1.0 / k.alpha_l))
    } else {
        interference
    }
}

// ∫_0^∞ exp(-β₁(x/λ_B)^α_L - (β₂+γ_T)x - (β₃+γ_C)x^r)(γ_T + rγ_C x^{r-1}) dx,
// evaluated in s = x^r so the x^{r-1} singularity disappears.
fn coverage_from_constants(k: &AnalyticConstants, lambda_b: f64, with_noise: bool) -> Result<f64> {
    if k.threshold == 0.0 {
        return Ok(1.0);
    }
    let b1 = if with_noise { k.beta_1 } else { 0.0 };
    let lin = k.beta_2 + k.gamma_t;
    let frac = k.beta_3 + k.gamma_c;
    let inv_r = 1.0 / k.r;
    let integrand = |s: f64| {
        if s == 0.0 {
            return if k.r < 1.0 {
                k.gamma_c
            } else {
                k.gamma_c + k.gamma_t
            };
        }
        let x = s.powf(inv_r);
        let noise = if b1 > 0.0 {
            b1 * (x / lambda_b).powf(k.alpha_l)
        } else {
            0.0
        };
        let e = (-noise - lin * x - frac * s).exp();
        e * (k.gamma_t * inv_r * s.powf(inv_r - 1.0) + k.gamma_c)
    };
    let x0 = if with_noise {
        decay_scale(k, lambda_b)
    } else {
        1.0 / lin
    };
    let p = integrate_half_line(integrand, x0.powf(k.r))?;
    Ok(p.clamp(0.0, 1.0))
}

/// SINR coverage probability `P(SINR > T)` with noise and typical plus
/// cross interference.
pub fn coverage(threshold: f64, config: &NetworkConfig, antenna: &AntennaModel) -> Result<f64> {
    let k = constants(config, antenna, threshold)?;
    coverage_from_constants(&k, config.lambda_b, true)
}

/// Coverage with noise dropped. The result does not depend on `lambda_b`.
pub fn coverage_interference_limited(
    threshold: f64,
    config: &NetworkConfig,
    antenna: &AntennaModel,
) -> Result<f64> {
    let k = constants(config, antenna, threshold)?;
    coverage_from_constants(&k, config.lambda_b, false)
}

/// Coverage with cross interference removed but cross stations still
/// eligible to serve. Matches the `TypicalOnly` simulation filter.
pub fn coverage_typical_interference(
    threshold: f64,
    config: &NetworkConfig,
    antenna: &AntennaModel,
) -> Result<f64> {
    let k = AnalyticConstants {
        beta_3: 0.0,
        ..constants(config, antenna, threshold)?
    };
    coverage_from_constants(&k, config.lambda_b, true)
}

/// First-order expansion of coverage in the street intensity.
///
/// Linear in `λ_S` by construction and equal to [`coverage`] at `λ_S = 0`.
pub fn coverage_taylor(
    threshold: f64,
    config: &NetworkConfig,
    antenna: &AntennaModel,
) -> Result<f64> {
    let k = constants(config, antenna, threshold)?;
    if threshold == 0.0 {
        return Ok(1.0);
    }
    let lb = config.lambda_b;
    let lin = k.beta_2 + k.gamma_t;
    let noise = |x: f64| {
        if k.beta_1 > 0.0 {
            k.beta_1 * (x / lb).powf(k.alpha_l)
        } else {
            0.0
        }
    };
    let a = |x: f64| (-noise(x) - lin * x).exp();
    // -A'(x)
    let minus_da = |x: f64| {
        let dn = if k.beta_1 > 0.0 {
            k.beta_1 * k.alpha_l * x.powf(k.alpha_l - 1.0) / lb.powf(k.alpha_l)
        } else {
            0.0
        };
        a(x) * (dn + lin)
    };
    let x0 = decay_scale(&k, lb);
    let i0 = integrate_half_line(a, x0)?;
    let ir = integrate_half_line(|x: f64| a(x) * x.powf(k.r), x0)?;
    let jr = integrate_half_line(|x: f64| minus_da(x) * x.powf(k.r), x0)?;
    let frac = k.beta_3 + k.gamma_c;
    Ok(k.gamma_t * i0 - k.gamma_t * frac * ir + k.gamma_c * jr)
}

/// Central finite difference of coverage in `λ_S` at the config's street
/// intensity, with step `0.1 λ_S`.
pub fn coverage_slope_lambda_s(
    threshold: f64,
    config: &NetworkConfig,
    antenna: &AntennaModel,
) -> Result<f64> {
    let lambda_s = config.isotropic_lambda_s()?;
    if !(lambda_s > 0.0) {
        return Err(AnalyticError::InvalidArgument(
            "slope in the street intensity needs lambda_s > 0".into(),
        ));
    }
    let h = 0.1 * lambda_s;
    let up = coverage(
        threshold,
        &config.with_isotropic_streets(lambda_s + h),
        antenna,
    )?;
    let down = coverage(
        threshold,
        &config.with_isotropic_streets(lambda_s - h),
        antenna,
    )?;
    Ok((up - down) / (2.0 * h))
}

/// Base-station intensity where coverage stops improving with more streets.
///
/// Bisects in `ln λ_B` over `bracket` on the sign of
/// [`coverage_slope_lambda_s`] until the bracket is relatively narrower
/// than `1e-3`.
pub fn lambda_b_crossover(
    threshold: f64,
    config: &NetworkConfig,
    antenna: &AntennaModel,
    bracket: (f64, f64),
) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(AnalyticError::InvalidArgument(format!(
            "crossover bracket must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )));
    }
    let slope = |lambda_b: f64| {
        coverage_slope_lambda_s(
            threshold,
            &NetworkConfig {
                lambda_b,
                ..*config
            },
            antenna,
        )
    };
    let mut s_lo = slope(lo)?;
    let s_hi = slope(hi)?;
    if s_lo.signum() == s_hi.signum() || s_lo == 0.0 || s_hi == 0.0 {
        if s_lo == 0.0 {
            return Ok(lo);
        }
        if s_hi == 0.0 {
            return Ok(hi);
        }
        return Err(AnalyticError::NoSignChange {
            lo,
            hi,
            slope_lo: s_lo,
            slope_hi: s_hi,
        });
    }
    while hi / lo - 1.0 > 1e-3 {
        let mid = (lo * hi).sqrt();
        let s_mid = slope(mid)?;
        if s_mid == 0.0 {
            return Ok(mid);
        }
        if s_mid.signum() == s_lo.signum() {
            lo = mid;
            s_lo = s_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveMethod {
    AnalyticExact,
    AnalyticTaylor,
    InterferenceLimited,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageCurve {
    pub thresholds_db: Vec<f64>,
    pub values: Vec<f64>,
    pub method: CurveMethod,
    pub meta: Vec<(String, String)>,
}

/// Evaluates one of the closed forms over a grid of thresholds in dB.
pub fn coverage_curve(
    thresholds_db: &[f64],
    config: &NetworkConfig,
    antenna: &AntennaModel,
    method: CurveMethod,
) -> Result<CoverageCurve> {
    let f = match method {
        CurveMethod::AnalyticExact => coverage,
        CurveMethod::AnalyticTaylor => coverage_taylor,
        CurveMethod::InterferenceLimited => coverage_interference_limited,
        CurveMethod::MonteCarlo => {
            return Err(AnalyticError::InvalidArgument(
                "Monte Carlo curves come from the montecarlo module".into(),
            ))
        }
    };
    let values = thresholds_db
        .iter()
        .map(|&t| f(db_to_linear(t), config, antenna))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverageCurve {
        thresholds_db: thresholds_db.to_vec(),
        values,
        method,
        meta: Vec::new(),
    })
}
