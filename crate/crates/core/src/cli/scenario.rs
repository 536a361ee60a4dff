//! Scenario files: flat `section.key=value` lines, `#` comments.
//!
//! ```text
//! network.lambda_s=0.01
//! network.alpha_n=7
//! thresholds.start=-10
//! sweep.parameter=lambda_s
//! sweep.values=0.001,0.01,0.05
//! ```
//!
//! `network.lambda_s` sets both street directions. Serialization writes
//! them separately, so `parse(serialize(s)) == s` for every valid scenario.

use super::CliError;
use crate::geometry::NetworkConfig;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdGrid {
    pub start_db: f64,
    pub stop_db: f64,
    pub step_db: f64,
}

impl Default for ThresholdGrid {
    fn default() -> Self {
        Self {
            start_db: -10.0,
            stop_db: 30.0,
            step_db: 1.0,
        }
    }
}

impl ThresholdGrid {
    /// Grid points from start to stop inclusive. Values are computed as
    /// `start + i·step` so that no rounding accumulates.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop_db - self.start_db) / self.step_db + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| self.start_db + i as f64 * self.step_db)
            .collect()
    }

    fn validate(&self) -> Result<(), String> {
        if !(self.start_db.is_finite() && self.stop_db.is_finite()) {
            return Err("threshold grid bounds must be finite".into());
        }
        if !(self.step_db > 0.0 && self.step_db.is_finite()) {
            return Err(format!(
                "threshold step must be positive, got {}",
                self.step_db
            ));
        }
        if self.stop_db < self.start_db {
            return Err(format!(
                "threshold grid is empty: start {} > stop {}",
                self.start_db, self.stop_db
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McScenario {
    pub n_layouts: usize,
    pub n_fading: usize,
    pub seed: u64,
}

impl Default for McScenario {
    fn default() -> Self {
        Self {
            n_layouts: 1000,
            n_fading: 4,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    LambdaS,
    LambdaB,
    AlphaN,
    DeltaDb,
    NT,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::LambdaS => "lambda_s",
            SweepParameter::LambdaB => "lambda_b",
            SweepParameter::AlphaN => "alpha_n",
            SweepParameter::DeltaDb => "delta_db",
            SweepParameter::NT => "n_t",
        }
    }

    /// `config` with this parameter set to `value`.
    pub fn apply(&self, config: &NetworkConfig, value: f64) -> Result<NetworkConfig, CliError> {
        let mut c = *config;
        match self {
            SweepParameter::LambdaS => c = c.with_isotropic_streets(value),
            SweepParameter::LambdaB => c.lambda_b = value,
            SweepParameter::AlphaN => c.alpha_n = value,
            SweepParameter::DeltaDb => c.delta_db = value,
            SweepParameter::NT => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64) {
                    return Err(CliError::InvalidArgument(format!(
                        "n_t must be a positive integer, got {value}"
                    )));
                }
                c.n_t = value as u32;
            }
        }
        Ok(c)
    }
}

impl FromStr for SweepParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "lambda_s" => Ok(SweepParameter::LambdaS),
            "lambda_b" => Ok(SweepParameter::LambdaB),
            "alpha_n" => Ok(SweepParameter::AlphaN),
            "delta_db" => Ok(SweepParameter::DeltaDb),
            "n_t" | "nt" => Ok(SweepParameter::NT),
            _ => Err(format!(
                "unknown sweep parameter {s:?}; expected one of lambda_s, lambda_b, alpha_n, delta_db, n_t"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Includes the antenna element count `n_t`.
    pub network: NetworkConfig,
    pub thresholds: ThresholdGrid,
    pub mc: McScenario,
    pub sweep: Option<Sweep>,
    pub outputs: PathBuf,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            network: NetworkConfig::table_one(),
            thresholds: ThresholdGrid::default(),
            mc: McScenario::default(),
            sweep: None,
            outputs: PathBuf::from("out"),
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| CliError::Scenario {
        line,
        message: format!("{key}: cannot parse {value:?}: {e}"),
    })
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        text.parse()
    }

    /// Unset keys keep their defaults. Unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Scenario::default();
        let mut sweep_param: Option<SweepParameter> = None;
        let mut sweep_values: Option<Vec<f64>> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| CliError::Scenario {
                line,
                message: format!("expected key=value, got {content:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let n = &mut s.network;
            match key {
                "network.lambda_s" => *n = n.with_isotropic_streets(parse_value(key, value, line)?),
                "network.lambda_s_h" => n.lambda_s_h = parse_value(key, value, line)?,
                "network.lambda_s_v" => n.lambda_s_v = parse_value(key, value, line)?,
                "network.lambda_b" => n.lambda_b = parse_value(key, value, line)?,
                "network.alpha_l" => n.alpha_l = parse_value(key, value, line)?,
                "network.alpha_n" => n.alpha_n = parse_value(key, value, line)?,
                "network.delta_db" => n.delta_db = parse_value(key, value, line)?,
                "network.noise_n0" => n.noise_n0 = parse_value(key, value, line)?,
                "network.tx_power" => n.tx_power = parse_value(key, value, line)?,
                "network.window_half" => n.window_half = parse_value(key, value, line)?,
                "antenna.n_t" => n.n_t = parse_value(key, value, line)?,
                "thresholds.start" => s.thresholds.start_db = parse_value(key, value, line)?,
                "thresholds.stop" => s.thresholds.stop_db = parse_value(key, value, line)?,
                "thresholds.step" => s.thresholds.step_db = parse_value(key, value, line)?,
                "mc.n_layouts" => s.mc.n_layouts = parse_value(key, value, line)?,
                "mc.n_fading" => s.mc.n_fading = parse_value(key, value, line)?,
                "mc.seed" => s.mc.seed = parse_value(key, value, line)?,
                "sweep.parameter" => {
                    sweep_param = Some(
                        value
                            .parse()
                            .map_err(|message| CliError::Scenario { line, message })?,
                    )
                }
                "sweep.values" => {
                    sweep_values = Some(
                        value
                            .split(',')
                            .map(|v| parse_value(key, v.trim(), line))
                            .collect::<Result<_, _>>()?,
                    )
                }
                "outputs.dir" => s.outputs = PathBuf::from(value),
                _ => {
                    return Err(CliError::Scenario {
                        line,
                        message: format!("unknown key {key:?}"),
                    })
                }
            }
        }
        s.sweep = match (sweep_param, sweep_values) {
            (Some(parameter), Some(values)) => Some(Sweep { parameter, values }),
            (None, None) => None,
            _ => {
                return Err(CliError::Scenario {
                    line: 0,
                    message: "sweep.parameter and sweep.values must be given together".into(),
                })
            }
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |message: String| CliError::Scenario { line: 0, message };
        self.network.validate().map_err(|e| bad(e.to_string()))?;
        self.thresholds.validate().map_err(bad)?;
        if self.mc.n_layouts == 0 || self.mc.n_fading == 0 {
            return Err(bad("mc.n_layouts and mc.n_fading must be positive".into()));
        }
        if let Some(sw) = &self.sweep {
            if sw.values.is_empty() || sw.values.iter().any(|v| !v.is_finite()) {
                return Err(bad(
                    "sweep.values must be a nonempty list of finite numbers".into(),
                ));
            }
            for v in &sw.values {
                let c = sw
                    .parameter
                    .apply(&self.network, *v)
                    .map_err(|e| bad(e.to_string()))?;
                c.validate()
                    .map_err(|e| bad(format!("sweep value {v}: {e}")))?;
            }
        }
        Ok(())
    }

    /// One `key=value` per line, every key present.
    pub fn serialize(&self) -> String {
        let n = &self.network;
        let mut out = String::new();
        let mut put = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k}={v}");
        };
        put("network.lambda_s_h", &n.lambda_s_h);
        put("network.lambda_s_v", &n.lambda_s_v);
        put("network.lambda_b", &n.lambda_b);
        put("network.alpha_l", &n.alpha_l);
        put("network.alpha_n", &n.alpha_n);
        put("network.delta_db", &n.delta_db);
        put("network.noise_n0", &n.noise_n0);
        put("network.tx_power", &n.tx_power);
        put("network.window_half", &n.window_half);
        put("antenna.n_t", &n.n_t);
        put("thresholds.start", &self.thresholds.start_db);
        put("thresholds.stop", &self.thresholds.stop_db);
        put("thresholds.step", &self.thresholds.step_db);
        put("mc.n_layouts", &self.mc.n_layouts);
        put("mc.n_fading", &self.mc.n_fading);
        put("mc.seed", &self.mc.seed);
        if let Some(sw) = &self.sweep {
            put("sweep.parameter", &sw.parameter.name());
            let values: Vec<String> = sw.values.iter().map(f64::to_string).collect();
            put("sweep.values", &values.join(","));
        }
        put("outputs.dir", &self.outputs.display());
        out
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Scenario::parse(s)
    }
}
