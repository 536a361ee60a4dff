use super::{GeometryError, Result};

/// Scalar model parameters shared by the analytic and simulation paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkConfig {
    /// Horizontal streets per meter of y-extent.
    pub lambda_s_h: f64,
    /// Vertical streets per meter of x-extent.
    pub lambda_s_v: f64,
    /// Base stations per meter of street.
    pub lambda_b: f64,
    pub alpha_l: f64,
    pub alpha_n: f64,
    pub delta_db: f64,
    pub n_t: u32,
    pub noise_n0: f64,
    pub tx_power: f64,
    pub window_half: f64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self::table_one()
    }
}

impl NetworkConfig {
    /// Reference urban microcell parameters: 8×8 array, α_L = 2.5,
    /// α_N = 7, 20 dB corner loss, 0.01 streets/m, 0.01 BSs/m, no noise.
    pub fn table_one() -> Self {
        Self {
            lambda_s_h: 0.01,
            lambda_s_v: 0.01,
            lambda_b: 0.01,
            alpha_l: 2.5,
            alpha_n: 7.0,
            delta_db: 20.0,
            n_t: 64,
            noise_n0: 0.0,
            tx_power: 1.0,
            window_half: 5000.0,
        }
    }

    /// Same street intensity in both directions.
    pub fn with_isotropic_streets(mut self, lambda_s: f64) -> Self {
        self.lambda_s_h = lambda_s;
        self.lambda_s_v = lambda_s;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(GeometryError::InvalidConfig(msg));
        // Street intensities may be zero: a lone typical street is a useful
        // degenerate case.
        if !(self.lambda_s_h >= 0.0 && self.lambda_s_h.is_finite())
            || !(self.lambda_s_v >= 0.0 && self.lambda_s_v.is_finite())
        {
            return fail(format!(
                "street intensities must be finite and nonnegative, got ({}, {})",
                self.lambda_s_h, self.lambda_s_v
            ));
        }
        if !(self.lambda_b > 0.0 && self.lambda_b.is_finite()) {
            return fail(format!("lambda_b must be positive, got {}", self.lambda_b));
        }
        if !(self.alpha_l > 1.0 && self.alpha_n >= self.alpha_l && self.alpha_n.is_finite()) {
            return fail(format!(
                "need alpha_n >= alpha_l > 1, got alpha_l = {}, alpha_n = {}",
                self.alpha_l, self.alpha_n
            ));
        }
        if !(self.delta_db >= 0.0 && self.delta_db.is_finite()) {
            return fail(format!("delta_db must be >= 0, got {}", self.delta_db));
        }
        if self.n_t == 0 {
            return fail("n_t must be at least 1".into());
        }
        if !(self.noise_n0 >= 0.0 && self.noise_n0.is_finite()) {
            return fail(format!("noise_n0 must be >= 0, got {}", self.noise_n0));
        }
        if self.tx_power != 1.0 {
            return fail(format!(
                "transmit power is normalized to 1, got {}",
                self.tx_power
            ));
        }
        if !(self.window_half > 0.0 && self.window_half.is_finite()) {
            return fail(format!(
                "window_half must be positive, got {}",
                self.window_half
            ));
        }
        Ok(())
    }

    /// The common street intensity, or an error for anisotropic configs.
    pub fn isotropic_lambda_s(&self) -> Result<f64> {
        if self.lambda_s_h == self.lambda_s_v {
            Ok(self.lambda_s_h)
        } else {
            Err(GeometryError::InvalidConfig(format!(
                "analytic results need isotropic streets, got lambda_s_h = {} and lambda_s_v = {}",
                self.lambda_s_h, self.lambda_s_v
            )))
        }
    }

    /// Linear power factor applied per corner, `10^(-Δ/10)`.
    pub fn corner_loss_linear(&self) -> f64 {
        10f64.powf(-self.delta_db / 10.0)
    }
}
