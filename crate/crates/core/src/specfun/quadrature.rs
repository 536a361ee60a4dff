#![allow(clippy::excessive_precision)]

use super::{Result, SpecFunError};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Tolerances for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(SpecFunError::InvalidSpec(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol > 0.0) {
            return Err(SpecFunError::InvalidSpec(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(SpecFunError::InvalidSpec(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_bound: f64,
    pub subdivisions: usize,
}

// 15-point Kronrod abscissae; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(SpecFunError::NonFiniteIntegrand { x })
        }
    };

    let fc = eval(center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { a, b, value, error })
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    let first = gauss_kronrod(f, a, b)?;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1;

    let tolerance = |v: f64| spec.abs_tol.max(spec.rel_tol * v.abs());
    while total_err > tolerance(total) {
        if subdivisions >= spec.max_subdivisions {
            return Err(SpecFunError::NonConvergence {
                estimate: total,
                error_bound: total_err,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split further in floating point.
            return Err(SpecFunError::NonConvergence {
                estimate: total,
                error_bound: total_err,
                subdivisions,
            });
        }
        let left = gauss_kronrod(f, worst.a, mid)?;
        let right = gauss_kronrod(f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }

    // Re-sum from the panels to shed accumulated update roundoff.
    let panels = heap.into_vec();
    let value = panels.iter().map(|p| p.value).sum();
    let error_bound = panels.iter().map(|p| p.error).sum();
    Ok(Integral {
        value,
        error_bound,
        subdivisions,
    })
}

/// Adaptive 15-point Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Either endpoint may be infinite. A half-line `[a, ∞)` is mapped to
/// `[0, 1)` through `x = a + t / (1 - t)`, and the whole line is split at
/// zero into two half-lines.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Integral> {
    spec.validate()?;
    if a.is_nan() || b.is_nan() {
        return Err(SpecFunError::Domain {
            function: "integrate",
            arg: f64::NAN,
        });
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error_bound: 0.0,
            subdivisions: 0,
        });
    }
    if a > b {
        let r = integrate(f, b, a, spec)?;
        return Ok(Integral {
            value: -r.value,
            ..r
        });
    }

    match (a.is_finite(), b.is_finite()) {
        (true, true) => adaptive(&f, a, b, spec),
        (true, false) => upper_half_line(&f, a, spec),
        (false, true) => lower_half_line(&f, b, spec),
        (false, false) => {
            let lower = lower_half_line(&f, 0.0, spec)?;
            let upper = upper_half_line(&f, 0.0, spec)?;
            Ok(Integral {
                value: lower.value + upper.value,
                error_bound: lower.error_bound + upper.error_bound,
                subdivisions: lower.subdivisions + upper.subdivisions,
            })
        }
    }
}

fn upper_half_line<F: Fn(f64) -> f64>(f: &F, a: f64, spec: &QuadratureSpec) -> Result<Integral> {
    let g = |t: f64| {
        let s = 1.0 - t;
        f(a + t / s) / (s * s)
    };
    adaptive(&g, 0.0, 1.0, spec)
}

fn lower_half_line<F: Fn(f64) -> f64>(f: &F, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    let g = |t: f64| {
        let s = 1.0 - t;
        f(b - t / s) / (s * s)
    };
    adaptive(&g, 0.0, 1.0, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kronrod_rule_is_exact_for_low_degree_polynomials() {
        for k in 0..=22 {
            let r = gauss_kronrod(&|x: f64| x.powi(k), -1.0, 1.0).unwrap();
            let exact = if k % 2 == 0 {
                2.0 / (k as f64 + 1.0)
            } else {
                0.0
            };
            assert!((r.value - exact).abs() < 1e-14, "degree {k}");
        }
    }

    #[test]
    fn closed_forms() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x: f64| (-x).exp(), 0.0, f64::INFINITY, &spec).unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-10);
        let r = integrate(|x: f64| x * (-x * x).exp(), 0.0, f64::INFINITY, &spec).unwrap();
        assert_relative_eq!(r.value, 0.5, max_relative = 1e-10);
        let r = integrate(
            |x: f64| (-x * x).exp(),
            f64::NEG_INFINITY,
            f64::INFINITY,
            &spec,
        )
        .unwrap();
        assert_relative_eq!(r.value, std::f64::consts::PI.sqrt(), max_relative = 1e-10);
        let r = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, &spec).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let spec = QuadratureSpec::default();
        let fwd = integrate(|x: f64| x * x, 0.0, 2.0, &spec).unwrap();
        let rev = integrate(|x: f64| x * x, 2.0, 0.0, &spec).unwrap();
        assert_relative_eq!(fwd.value, -rev.value);
    }

    #[test]
    fn error_bound_meets_tolerance() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-8);
        assert!(r.error_bound <= spec.abs_tol.max(spec.rel_tol * r.value.abs()));
    }

    #[test]
    fn reports_nonconvergence() {
        let spec = QuadratureSpec::new(1e-14, 1e-300, 3).unwrap();
        let err = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &spec).unwrap_err();
        match err {
            SpecFunError::NonConvergence {
                estimate,
                subdivisions,
                ..
            } => {
                assert!(estimate.is_finite());
                assert_eq!(subdivisions, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_spec() {
        assert!(QuadratureSpec::new(0.0, 1e-12, 10).is_err());
        assert!(QuadratureSpec::new(1e-9, -1.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-9, 1e-12, 0).is_err());
    }
}
