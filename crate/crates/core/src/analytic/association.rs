use super::{constants, integrate_half_line, Result};
use crate::channel::AntennaModel;
use crate::geometry::NetworkConfig;
use crate::specfun::sinc;

/// Probability that the strongest link comes from the receiver's own street.
///
/// Independent of the threshold, noise and `lambda_b`.
pub fn assoc_prob_typical(config: &NetworkConfig, antenna: &AntennaModel) -> Result<f64> {
    let k = constants(config, antenna, 0.0)?;
    let integrand = |x: f64| (-k.gamma_c * x.powf(k.r) - k.gamma_t * x).exp();
    let chi = k.gamma_t * integrate_half_line(integrand, 1.0 / k.gamma_t)?;
    Ok(chi.clamp(0.0, 1.0))
}

/// Which closed form of the linearized association probability to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApproxForm {
    /// Coefficient built from `γ_C / λ_S`, the first-order term of
    /// [`assoc_prob_typical`].
    #[default]
    Consistent,
    /// Coefficient built from `γ_C` itself, which counts `λ_S` twice.
    AsPrinted,
}

/// Linear-in-`λ_S` approximation of [`assoc_prob_typical`].
pub fn assoc_prob_typical_approx(
    config: &NetworkConfig,
    antenna: &AntennaModel,
    form: ApproxForm,
) -> Result<f64> {
    let k = constants(config, antenna, 0.0)?;
    let r = k.r;
    let tail = match form {
        ApproxForm::Consistent => {
            let c = config.corner_loss_linear();
            2f64.powf(1.0 + r) * (c * antenna.g_main).powf(1.0 / k.alpha_n)
        }
        ApproxForm::AsPrinted => 2f64.powf(1.0 + r) * k.gamma_c,
    };
    Ok(1.0 - tail / sinc(r) * k.gamma_t.powf(-r) * k.lambda_s)
}
