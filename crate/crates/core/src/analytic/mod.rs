//! Closed-form association and coverage results.
//!
//! Everything here assumes isotropic streets (`lambda_s_h == lambda_s_v`)
//! and `alpha_n > alpha_l`. Thresholds are linear SINR values unless a name
//! says `_db`.
//!
//! Most integrals are written in the variable `x = λ_B u^{-1/α_L}`, under
//! which the typical-street CDF becomes `exp(-γ_T x)` and the cross-street
//! CDF becomes `exp(-γ_C x^r)` with `r = α_L / α_N`.

mod association;
mod coverage;

pub use association::{assoc_prob_typical, assoc_prob_typical_approx, ApproxForm};
pub use coverage::{
    coverage, coverage_curve, coverage_interference_limited, coverage_slope_lambda_s,
    coverage_taylor, coverage_typical_interference, lambda_b_crossover, CoverageCurve, CurveMethod,
};

use crate::channel::{AntennaModel, ChannelError};
use crate::geometry::{GeometryError, NetworkConfig};
use crate::specfun::{bessel_k1, gamma_fn, integrate, varrho, QuadratureSpec, SpecFunError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalyticError {
    #[error(transparent)]
    Config(#[from] GeometryError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(
        "alpha_n must exceed alpha_l strictly for the closed forms, got {alpha_l} and {alpha_n}"
    )]
    DegenerateExponents { alpha_l: f64, alpha_n: f64 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(
        "coverage slope does not change sign on [{lo}, {hi}] (slopes {slope_lo:e}, {slope_hi:e})"
    )]
    NoSignChange {
        lo: f64,
        hi: f64,
        slope_lo: f64,
        slope_hi: f64,
    },
}

pub type Result<T> = std::result::Result<T, AnalyticError>;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(v: f64) -> f64 {
    10.0 * v.log10()
}

/// Scales shared by every closed form at one SINR threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticConstants {
    pub gamma_t: f64,
    pub gamma_c: f64,
    pub gamma_p: f64,
    pub beta_1: f64,
    pub beta_2: f64,
    pub beta_3: f64,
    /// `beta_3 / λ_S`, finite even when `λ_S = 0`.
    pub zeta_1: f64,
    /// `gamma_c / λ_S`, finite even when `λ_S = 0`.
    pub zeta_2: f64,
    pub epsilon: f64,
    /// `ϱ(T)`, kept for the parallel-interference bound.
    pub varrho_t: f64,
    pub threshold: f64,
    pub r: f64,
    pub alpha_l: f64,
    pub alpha_n: f64,
    pub lambda_s: f64,
    pub lambda_b: f64,
}

pub fn constants(
    config: &NetworkConfig,
    antenna: &AntennaModel,
    threshold: f64,
) -> Result<AnalyticConstants> {
    config.validate()?;
    let lambda_s = config.isotropic_lambda_s()?;
    if !(config.alpha_n > config.alpha_l) {
        return Err(AnalyticError::DegenerateExponents {
            alpha_l: config.alpha_l,
            alpha_n: config.alpha_n,
        });
    }
    if !(threshold >= 0.0 && threshold.is_finite()) {
        return Err(AnalyticError::InvalidArgument(format!(
            "SINR threshold must be finite and nonnegative, got {threshold}"
        )));
    }
    let (al, an) = (config.alpha_l, config.alpha_n);
    let r = al / an;
    let c = config.corner_loss_linear();
    let big_g = antenna.g_main;
    let p = antenna.p_t;
    let spec = QuadratureSpec::default();

    let rho_main = varrho(threshold, al, &spec)?;
    let rho_side = varrho(threshold * antenna.g_side / big_g, al, &spec)?;

    let gamma_t = 2.0 * big_g.powf(1.0 / al);
    let zeta_2 = 2f64.powf(1.0 + r) * (c * big_g).powf(1.0 / an) * gamma_fn(1.0 - r)?;
    let epsilon = (p * rho_main).powf(r) + ((1.0 - p) * rho_side).powf(r);
    let zeta_1 = zeta_2 * epsilon;
    let gamma_c = zeta_2 * lambda_s;

    Ok(AnalyticConstants {
        gamma_t,
        gamma_c,
        gamma_p: gamma_c * c.powf(1.0 / an),
        beta_1: threshold * config.noise_n0,
        beta_2: gamma_t * (p * rho_main + (1.0 - p) * rho_side),
        beta_3: zeta_1 * lambda_s,
        zeta_1,
        zeta_2,
        epsilon,
        varrho_t: rho_main,
        threshold,
        r,
        alpha_l: al,
        alpha_n: an,
        lambda_s,
        lambda_b: config.lambda_b,
    })
}

/// CDF of the strongest typical-street link gain.
pub fn cdf_gain_typical(u: f64, k: &AnalyticConstants, lambda_b: f64) -> f64 {
    (-k.gamma_t * lambda_b * u.powf(-1.0 / k.alpha_l)).exp()
}

/// CDF of the strongest cross-street link gain.
pub fn cdf_gain_cross(u: f64, k: &AnalyticConstants, lambda_b: f64) -> f64 {
    (-k.gamma_c * lambda_b.powf(k.r) * u.powf(-1.0 / k.alpha_n)).exp()
}

/// How to evaluate the parallel-street gain CDF.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParallelCdf {
    /// The `z K1(z)` expression.
    #[default]
    Bessel,
    /// Its small-argument limit, identically 1.
    Unity,
}

/// CDF of the strongest parallel-street link gain.
pub fn cdf_gain_parallel(
    u: f64,
    k: &AnalyticConstants,
    lambda_b: f64,
    mode: ParallelCdf,
) -> Result<f64> {
    match mode {
        ParallelCdf::Unity => Ok(1.0),
        ParallelCdf::Bessel => {
            let arg = 2.0 * k.gamma_p * k.lambda_s * lambda_b.powf(k.r) * u.powf(-1.0 / k.alpha_n);
            z_k1(2.0 * arg.sqrt())
        }
    }
}

// z K1(z), with its limit 1 at z = 0.
fn z_k1(z: f64) -> Result<f64> {
    if z == 0.0 {
        Ok(1.0)
    } else {
        Ok((z * bessel_k1(z)?).min(1.0))
    }
}

/// CDF of the association gain, typical and cross streets combined.
pub fn cdf_gain_combined(u: f64, k: &AnalyticConstants, lambda_b: f64) -> f64 {
    cdf_gain_typical(u, k, lambda_b) * cdf_gain_cross(u, k, lambda_b)
}

/// Density of the combined association gain.
pub fn pdf_gain_combined(u: f64, k: &AnalyticConstants, lambda_b: f64) -> f64 {
    let cdf = cdf_gain_combined(u, k, lambda_b);
    if cdf == 0.0 {
        // The hazard overflows long before this point.
        return 0.0;
    }
    let hazard = k.gamma_t * lambda_b / k.alpha_l * u.powf(-1.0 / k.alpha_l - 1.0)
        + k.gamma_c * lambda_b.powf(k.r) / k.alpha_n * u.powf(-1.0 / k.alpha_n - 1.0);
    cdf * hazard
}

/// Median of the combined association gain.
pub fn median_association_gain(k: &AnalyticConstants, lambda_b: f64) -> f64 {
    // Typical-only median as a starting point; the cross term only lowers
    // the CDF, so the true median is at or above it.
    let mut lo = (k.gamma_t * lambda_b / std::f64::consts::LN_2).powf(k.alpha_l);
    let mut hi = lo;
    while cdf_gain_combined(hi, k, lambda_b) < 0.5 {
        hi *= 2.0;
    }
    while cdf_gain_combined(lo, k, lambda_b) > 0.5 {
        lo *= 0.5;
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if cdf_gain_combined(mid, k, lambda_b) < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo - 1.0 < 1e-14 {
            break;
        }
    }
    (lo * hi).sqrt()
}

/// Coverage probability given association gain `u`.
pub fn conditional_coverage(u: f64, k: &AnalyticConstants, lambda_b: f64) -> f64 {
    let noise = k.beta_1 / u;
    let typical = k.beta_2 * lambda_b * u.powf(-1.0 / k.alpha_l);
    let cross = k.beta_3 * lambda_b.powf(k.r) * u.powf(-1.0 / k.alpha_n);
    (-noise - typical - cross).exp()
}

/// Approximate lower bound on the Laplace transform of parallel-street
/// interference at association gain `u`.
pub fn lt_parallel_lower_bound(
    threshold: f64,
    u: f64,
    config: &NetworkConfig,
    antenna: &AntennaModel,
) -> Result<f64> {
    if !(u > 0.0) {
        return Err(AnalyticError::InvalidArgument(format!(
            "association gain must be positive, got {u}"
        )));
    }
    let k = constants(config, antenna, threshold)?;
    let arg = 2.0
        * k.gamma_p
        * k.lambda_s
        * config.lambda_b.powf(k.r)
        * k.varrho_t.powf(k.r)
        * u.powf(-1.0 / k.alpha_n);
    z_k1(2.0 * arg.sqrt())
}

/// Lower bounds from Jensen's inequality on the typical- and cross-street
/// interference Laplace transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JensenBounds {
    pub typical: f64,
    pub cross: f64,
}

pub fn jensen_lt_bounds(
    threshold: f64,
    config: &NetworkConfig,
    antenna: &AntennaModel,
) -> Result<JensenBounds> {
    let k = constants(config, antenna, threshold)?;
    let spec = QuadratureSpec::default();
    let p = antenna.p_t;
    let rho_side = varrho(
        threshold * antenna.g_side / antenna.g_main,
        k.alpha_l,
        &spec,
    )?;
    let typical = (-p * k.varrho_t - (1.0 - p) * rho_side).exp();
    let c = config.corner_loss_linear();
    let cross = (-2.0
        * k.lambda_s
        * c.powf(1.0 / k.alpha_n)
        * gamma_fn(1.0 - k.r)?
        * gamma_fn(1.0 + k.r)?
        * k.epsilon)
        .exp();
    Ok(JensenBounds { typical, cross })
}

/// `∫_0^∞ f`, split at `x0` so both halves see a well-scaled integrand.
pub(crate) fn integrate_half_line<F: Fn(f64) -> f64>(f: F, x0: f64) -> Result<f64> {
    let spec = QuadratureSpec::default();
    let head = integrate(&f, 0.0, x0, &spec)?;
    let tail = integrate(&f, x0, f64::INFINITY, &spec)?;
    Ok(head.value + tail.value)
}
