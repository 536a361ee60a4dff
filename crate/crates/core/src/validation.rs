//! The acceptance suite, shared by `mmwave validate` and the `acceptance`
//! test target.
//!
//! Each criterion returns a single pass/fail outcome with a short detail
//! line. Monte Carlo data used by more than one criterion is computed once
//! per [`Validator`].

use crate::analytic::{
    assoc_prob_typical, assoc_prob_typical_approx, cdf_gain_combined, cdf_gain_cross,
    cdf_gain_parallel, cdf_gain_typical, constants, coverage, coverage_interference_limited,
    coverage_slope_lambda_s, coverage_taylor, coverage_typical_interference, db_to_linear,
    lambda_b_crossover, ApproxForm, ParallelCdf,
};
use crate::channel::{
    antenna_model, parallel_candidates, path_gain, strongest_path, AntennaModel, PathDescriptor,
};
use crate::geometry::{
    parse_street_map, sample_mplp, BaseStation, BeamMark, Category, NetworkConfig, StreetRef,
};
use crate::montecarlo::{
    estimate_coverage_all, estimate_ergodic_rate, sample_associations, sinr_sample,
    AssociationSample, CoverageEstimates, InterferenceFilter, LayoutModel, McSettings, RateForm,
};
use crate::rng::{derive_seed, substream};
use crate::specfun::{bessel_k1, gamma_fn, varrho, QuadratureSpec};
use crate::stats::{ks_distance, linear_fit};
use rand::Rng;
use std::sync::OnceLock;

/// Street map shipped with the crate: 8 east-west and 15 north-south main
/// streets over a 2002 m × 1659 m box.
pub const BUNDLED_MAP: &str = include_str!("../data/downtown.map");

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "association-gain CDF matches Monte Carlo"),
    (2, "coverage matches Monte Carlo"),
    (
        3,
        "cross and parallel interference negligible unless alpha_n near alpha_l",
    ),
    (
        4,
        "dense-BS coverage reaches the interference-limited asymptote",
    ),
    (
        5,
        "coverage is linear in street intensity with a sign change in lambda_b",
    ),
    (6, "association probability"),
    (7, "typical association is invariant to lambda_b"),
    (8, "ergodic rate agrees across street models"),
    (9, "special functions against independent oracles"),
    (10, "path optimality and monotonicity properties"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{:>2}] {}: {}", self.id, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationOptions {
    pub seed: u64,
    pub workers: Option<usize>,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            seed: 20_190_501,
            workers: None,
        }
    }
}

// Sample sizes.
const ASSOC_LAYOUTS: usize = 10_000;
const COVERAGE_LAYOUTS: usize = 2_500;
const COVERAGE_FADING: usize = 4;
const NEAR_LOS_LAYOUTS: usize = 1_000;
const RATE_LAYOUTS: usize = 3_000;
const RATE_FADING: usize = 2;
const PATH_LAYOUTS: usize = 1_000;

// Noisy setting used by the density criteria; noise is what makes coverage
// depend on lambda_b at all.
const NOISY_N0: f64 = 1e-4;
const NOISY_T_DB: f64 = 10.0;

pub struct Validator {
    opts: ValidationOptions,
    antenna: AntennaModel,
    associations: OnceLock<Result<Vec<Option<AssociationSample>>, String>>,
    coverage_table_one: OnceLock<Result<CoverageEstimates, String>>,
}

fn threshold_grid() -> Vec<f64> {
    (-10..=30).map(|t| t as f64).collect()
}

type Check = Result<(bool, String), String>;

impl Validator {
    pub fn new(opts: ValidationOptions) -> Self {
        Self {
            opts,
            antenna: antenna_model(64).expect("64 elements"),
            associations: OnceLock::new(),
            coverage_table_one: OnceLock::new(),
        }
    }

    fn settings(&self, n_layouts: usize, n_fading: usize, salt: u64) -> McSettings {
        McSettings::new(n_layouts, n_fading, derive_seed(self.opts.seed, &[salt]))
            .with_workers(self.opts.workers)
    }

    fn associations(&self) -> Result<&Vec<Option<AssociationSample>>, String> {
        self.associations
            .get_or_init(|| {
                sample_associations(
                    &NetworkConfig::table_one(),
                    &self.antenna,
                    &self.settings(ASSOC_LAYOUTS, 1, 1),
                )
                .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn coverage_table_one(&self) -> Result<&CoverageEstimates, String> {
        self.coverage_table_one
            .get_or_init(|| {
                estimate_coverage_all(
                    &NetworkConfig::table_one(),
                    &self.antenna,
                    &threshold_grid(),
                    &self.settings(COVERAGE_LAYOUTS, COVERAGE_FADING, 2),
                )
                .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn run_all(&self) -> Vec<Outcome> {
        CRITERIA.iter().map(|(id, _)| self.run(*id)).collect()
    }

    /// Runs one criterion by number. Unknown numbers fail.
    pub fn run(&self, id: u8) -> Outcome {
        let name = CRITERIA
            .iter()
            .find(|(i, _)| *i == id)
            .map_or("unknown criterion", |(_, n)| n);
        let result = match id {
            1 => self.cdf_match(),
            2 => self.coverage_match(),
            3 => self.interference_negligibility(),
            4 => self.asymptote(),
            5 => self.linear_scaling(),
            6 => self.association(),
            7 => self.lambda_b_invariance(),
            8 => self.street_models(),
            9 => self.special_functions(),
            10 => self.properties(),
            _ => Err(format!("no criterion {id}")),
        };
        let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
        Outcome {
            id,
            name,
            passed,
            detail,
        }
    }

    fn cdf_match(&self) -> Check {
        let cfg = NetworkConfig::table_one();
        let k = constants(&cfg, &self.antenna, 1.0).map_err(|e| e.to_string())?;
        let gains: Vec<f64> = self
            .associations()?
            .iter()
            .flatten()
            .map(|s| s.gain)
            .collect();
        // Segments shorter than 1 m are clamped, which caps the simulated
        // gain at G; the closed form has no cap.
        let g_max = self.antenna.g_main;
        let cdf = |u: f64| {
            if u >= g_max {
                1.0
            } else {
                cdf_gain_combined(u, &k, cfg.lambda_b)
            }
        };
        let d = ks_distance(&gains, cdf);
        Ok((
            d <= 0.02,
            format!(
                "Kolmogorov distance {d:.4} over {} layouts (limit 0.02)",
                gains.len()
            ),
        ))
    }

    fn coverage_match(&self) -> Check {
        let cfg = NetworkConfig::table_one();
        let est = self.coverage_table_one()?;
        let mc = est.results(InterferenceFilter::TypicalCross);
        let mut worst = (0.0f64, 0.0);
        for (t_db, e) in est.thresholds_db.iter().zip(mc) {
            let a =
                coverage(db_to_linear(*t_db), &cfg, &self.antenna).map_err(|e| e.to_string())?;
            let d = (a - e.estimate).abs();
            if d > worst.0 {
                worst = (d, *t_db);
            }
        }
        Ok((
            worst.0 <= 0.03,
            format!(
                "max |analytic - MC| = {:.4} at {} dB (limit 0.03)",
                worst.0, worst.1
            ),
        ))
    }

    fn interference_negligibility(&self) -> Check {
        let est = self.coverage_table_one()?;
        let filters = [
            InterferenceFilter::TypicalOnly,
            InterferenceFilter::TypicalCross,
            InterferenceFilter::All,
        ];
        let mut worst_ratio = 0.0f64;
        for i in 0..est.thresholds_db.len() {
            for a in filters {
                for b in filters {
                    let (ea, eb) = (est.results(a)[i], est.results(b)[i]);
                    let hw = ea
                        .half_width_95
                        .max(eb.half_width_95)
                        .max(f64::MIN_POSITIVE);
                    worst_ratio = worst_ratio.max((ea.estimate - eb.estimate).abs() / hw);
                }
            }
        }
        let near = NetworkConfig {
            alpha_n: 2.51,
            ..NetworkConfig::table_one()
        };
        let est_near = estimate_coverage_all(
            &near,
            &self.antenna,
            &threshold_grid(),
            &self.settings(NEAR_LOS_LAYOUTS, COVERAGE_FADING, 3),
        )
        .map_err(|e| e.to_string())?;
        let gap = est_near
            .results(InterferenceFilter::TypicalOnly)
            .iter()
            .zip(est_near.results(InterferenceFilter::TypicalCross))
            .map(|(a, b)| a.estimate - b.estimate)
            .fold(f64::NEG_INFINITY, f64::max);
        // The closed form keeps cross stations arbitrarily close to far
        // intersections; the 1 m clamp and the finite window remove them.
        let mut analytic_gap = 0.0f64;
        for t_db in threshold_grid() {
            let t = db_to_linear(t_db);
            let d = coverage_typical_interference(t, &near, &self.antenna)
                .map_err(|e| e.to_string())?
                - coverage(t, &near, &self.antenna).map_err(|e| e.to_string())?;
            analytic_gap = analytic_gap.max(d);
        }
        Ok((
            worst_ratio <= 2.0 && gap > 0.03,
            format!(
                "alpha_n=7: largest filter gap {worst_ratio:.2} half-widths (limit 2); \
                 alpha_n=2.51: typical-only minus typical+cross up to {gap:.4} (need > 0.03, \
                 closed form gives {analytic_gap:.4})"
            ),
        ))
    }

    fn asymptote(&self) -> Check {
        let t = db_to_linear(NOISY_T_DB);
        let mut worst = 0.0f64;
        let mut asym = Vec::new();
        for ls in [0.001, 0.01, 0.05] {
            let cfg = NetworkConfig {
                lambda_b: 0.2,
                noise_n0: NOISY_N0,
                ..NetworkConfig::table_one().with_isotropic_streets(ls)
            };
            let c = coverage(t, &cfg, &self.antenna).map_err(|e| e.to_string())?;
            let a =
                coverage_interference_limited(t, &cfg, &self.antenna).map_err(|e| e.to_string())?;
            worst = worst.max((c - a).abs());
            asym.push(a);
        }
        let ordered = asym.windows(2).all(|w| w[1] < w[0]);
        Ok((
            worst <= 0.02 && ordered,
            format!(
                "max |P_c(lambda_b=0.2) - asymptote| = {worst:.2e} (limit 0.02); asymptotes {:.4} > {:.4} > {:.4}",
                asym[0], asym[1], asym[2]
            ),
        ))
    }

    fn linear_scaling(&self) -> Check {
        let t = db_to_linear(NOISY_T_DB);
        let base = NetworkConfig {
            noise_n0: NOISY_N0,
            ..NetworkConfig::table_one()
        };
        let err = |e: crate::analytic::AnalyticError| e.to_string();
        let xs: Vec<f64> = (1..=20).map(|i| 0.001 * i as f64).collect();
        let mut min_r2 = f64::INFINITY;
        let mut slopes = Vec::new();
        for lb in [0.005, 0.01] {
            let ys = xs
                .iter()
                .map(|&l| {
                    coverage(
                        t,
                        &NetworkConfig {
                            lambda_b: lb,
                            ..base.with_isotropic_streets(l)
                        },
                        &self.antenna,
                    )
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            let fit = linear_fit(&xs, &ys).ok_or("degenerate fit")?;
            min_r2 = min_r2.min(fit.r_squared);
            slopes.push(fit.slope);
        }
        let root = lambda_b_crossover(t, &base, &self.antenna, (0.005, 0.01)).map_err(err)?;
        let slope_at = |lb: f64| {
            coverage_slope_lambda_s(
                t,
                &NetworkConfig {
                    lambda_b: lb,
                    ..base
                },
                &self.antenna,
            )
        };
        let s_root = slope_at(root).map_err(err)?.abs();
        let s_ends = slope_at(0.005)
            .map_err(err)?
            .abs()
            .min(slope_at(0.01).map_err(err)?.abs());

        let mut taylor_worst = 0.0f64;
        for an in [3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0] {
            for ls in [0.001, 0.01, 0.02] {
                let cfg = NetworkConfig {
                    alpha_n: an,
                    ..base.with_isotropic_streets(ls)
                };
                let d = coverage_taylor(t, &cfg, &self.antenna).map_err(err)?
                    - coverage(t, &cfg, &self.antenna).map_err(err)?;
                taylor_worst = taylor_worst.max(d.abs());
            }
        }
        let passed = min_r2 >= 0.98
            && slopes[0] > 0.0
            && slopes[1] < 0.0
            && s_root < 0.1 * s_ends
            && taylor_worst <= 0.02;
        Ok((
            passed,
            format!(
                "R^2 >= {min_r2:.5}; slope {:+.4} at lambda_b=0.005, {:+.4} at 0.01; crossover {root:.5}; \
                 Taylor error {taylor_worst:.4} (limit 0.02)",
                slopes[0], slopes[1]
            ),
        ))
    }

    fn association(&self) -> Check {
        let err = |e: crate::analytic::AnalyticError| e.to_string();
        let cfg = NetworkConfig::table_one();
        let samples = self.associations()?;
        let present: Vec<Category> = samples.iter().flatten().map(|s| s.category).collect();
        let n = present.len() as f64;
        let frac = |c: Category| present.iter().filter(|&&x| x == c).count() as f64 / n;
        let exact = assoc_prob_typical(&cfg, &self.antenna).map_err(err)?;
        let mc_gap = (frac(Category::Typical) - exact).abs();
        let parallel = frac(Category::Parallel);

        let mut approx_worst = 0.0f64;
        for ls in [0.001, 0.005, 0.01, 0.02, 0.03, 0.04, 0.05] {
            let c = cfg.with_isotropic_streets(ls);
            let d = assoc_prob_typical_approx(&c, &self.antenna, ApproxForm::Consistent)
                .map_err(err)?
                - assoc_prob_typical(&c, &self.antenna).map_err(err)?;
            approx_worst = approx_worst.max(d.abs());
        }
        let dense =
            assoc_prob_typical(&cfg.with_isotropic_streets(0.1), &self.antenna).map_err(err)?;
        Ok((
            mc_gap <= 0.02 && approx_worst <= 0.02 && dense > 0.7 && parallel < 0.01,
            format!(
                "chi_T {exact:.4} vs MC {:.4}; approximation error {approx_worst:.4}; \
                 chi_T(lambda_s=0.1) {dense:.4}; parallel fraction {parallel:.5}",
                frac(Category::Typical)
            ),
        ))
    }

    fn lambda_b_invariance(&self) -> Check {
        let cfg = NetworkConfig::table_one();
        let at = |lambda_b| assoc_prob_typical(&NetworkConfig { lambda_b, ..cfg }, &self.antenna);
        let a = at(0.001).map_err(|e| e.to_string())?;
        let b = at(0.1).map_err(|e| e.to_string())?;
        let d = (a - b).abs();
        Ok((d < 1e-9, format!("|chi_T(0.001) - chi_T(0.1)| = {d:.1e}")))
    }

    fn street_models(&self) -> Check {
        let map = parse_street_map(BUNDLED_MAP).map_err(|e| e.to_string())?;
        let dens = map.densities();
        let bounds = map.layout.bounds;
        let cfg = NetworkConfig::table_one();
        let models = [
            LayoutModel::Mplp {
                bounds,
                lambda_h: dens.lambda_h,
                lambda_v: dens.lambda_v,
            },
            LayoutModel::FixedGrid {
                bounds,
                spacing_h: 133.5,
                spacing_v: 207.4,
            },
            LayoutModel::Fixed(map.layout.clone()),
        ];
        let mut rates = Vec::new();
        for (i, m) in models.iter().enumerate() {
            let r = estimate_ergodic_rate(
                m,
                &cfg,
                &self.antenna,
                &self.settings(RATE_LAYOUTS, RATE_FADING, 10 + i as u64),
                RateForm::Shannon,
            )
            .map_err(|e| e.to_string())?;
            rates.push(r);
        }
        let mut worst = 0.0f64;
        let mut disjoint = Vec::new();
        for i in 0..3 {
            for j in (i + 1)..3 {
                let (a, b) = (rates[i], rates[j]);
                worst = worst.max((a.estimate - b.estimate).abs() / a.estimate.min(b.estimate));
                let (alo, ahi) = a.interval();
                let (blo, bhi) = b.interval();
                if ahi < blo || bhi < alo {
                    disjoint.push(format!("{}/{}", models[i].name(), models[j].name()));
                }
            }
        }
        let ci_note = if disjoint.is_empty() {
            "all intervals overlap".to_string()
        } else {
            format!("non-overlapping intervals: {}", disjoint.join(", "))
        };
        Ok((
            worst <= 0.05,
            format!(
                "rates mplp {:.3}, grid {:.3}, map {:.3} bit/s/Hz; max relative gap {:.3} (limit 0.05); {ci_note}",
                rates[0].estimate, rates[1].estimate, rates[2].estimate, worst
            ),
        ))
    }

    fn special_functions(&self) -> Check {
        let mut k1_worst = 0.0f64;
        let mut mu = 1e-8;
        while mu <= 50.0 {
            let got = bessel_k1(mu).map_err(|e| e.to_string())?;
            let want = k1_integral_oracle(mu);
            k1_worst = k1_worst.max(((got - want) / want).abs());
            mu *= 1.37;
        }
        let spec = QuadratureSpec::default();
        let mut rho_worst = 0.0f64;
        for t in [1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1e4] {
            let got = varrho(t, 2.0, &spec).map_err(|e| e.to_string())?;
            let want = t.sqrt() * t.sqrt().atan();
            rho_worst = rho_worst.max(((got - want) / want).abs());
        }
        let mut gamma_worst = 0.0f64;
        let mut x = 0.1;
        while x <= 10.0 {
            let lhs = gamma_fn(x + 1.0).map_err(|e| e.to_string())?;
            let rhs = x * gamma_fn(x).map_err(|e| e.to_string())?;
            gamma_worst = gamma_worst.max(((lhs - rhs) / rhs).abs());
            x += 0.01;
        }
        Ok((
            k1_worst <= 1e-10 && rho_worst <= 1e-8 && gamma_worst <= 1e-12,
            format!(
                "K1 rel. error {k1_worst:.1e} (limit 1e-10); varrho {rho_worst:.1e} (limit 1e-8); \
                 gamma recurrence {gamma_worst:.1e} (limit 1e-12)"
            ),
        ))
    }

    fn properties(&self) -> Check {
        let paths = path_optimality_violations(PATH_LAYOUTS, derive_seed(self.opts.seed, &[20]));
        let filters =
            filter_monotonicity_violations(&self.antenna, 300, derive_seed(self.opts.seed, &[21]))
                .map_err(|e| e.to_string())?;
        let cdfs = cdf_monotonicity_violations(&self.antenna).map_err(|e| e.to_string())?;
        Ok((
            paths.0 == 0 && filters.0 == 0 && cdfs.0 == 0,
            format!(
                "path optimality {}/{} violations; filter ordering {}/{}; CDF monotonicity {}/{}",
                paths.0, paths.1, filters.0, filters.1, cdfs.0, cdfs.1
            ),
        ))
    }
}

/// `K1(μ) = ∫_0^∞ exp(-μ cosh t) cosh t dt` by the trapezoidal rule, which
/// converges geometrically for this analytic, doubly decaying integrand.
pub fn k1_integral_oracle(mu: f64) -> f64 {
    // Beyond t_max the integrand is below e^{-40} of its peak.
    let t_max = (2.0 * (40.0 + mu) / mu).ln() + 1.0;
    let h = 0.02;
    let n = (t_max / h).ceil() as usize;
    let mut sum = 0.5 * (-mu).exp();
    for i in 1..=n {
        let t = i as f64 * h;
        let c = t.cosh();
        sum += (-mu * c).exp() * c;
    }
    // Scale out e^{-μ} first would lose nothing here; the terms stay normal.
    sum * h
}

/// Parallel stations on random small layouts whose returned path is beaten
/// by some admissible vertical street. Returns `(violations, checked)`.
pub fn path_optimality_violations(n_layouts: usize, seed: u64) -> (usize, usize) {
    let mut violations = 0;
    let mut checked = 0;
    for i in 0..n_layouts {
        let mut rng = substream(seed, &[i as u64]);
        let cfg = NetworkConfig {
            window_half: 200.0,
            delta_db: rng.random_range(0.0..30.0),
            alpha_n: rng.random_range(2.6..8.0),
            ..NetworkConfig::table_one().with_isotropic_streets(rng.random_range(0.005..0.05))
        };
        let Ok(layout) = sample_mplp(&cfg, rng.random()) else {
            continue;
        };
        for &y in layout.horizontal_intercepts.iter().filter(|y| **y != 0.0) {
            let x: f64 = rng.random_range(-200.0..=200.0);
            let street = StreetRef::horizontal(y);
            let bs = BaseStation {
                street,
                offset: x,
                category: Category::Parallel,
                beam_mark: BeamMark::SideLobe,
                fading_seedable_id: 0,
            };
            let Some(best) = strongest_path(&bs, &layout, &cfg) else {
                continue;
            };
            let best_gain = path_gain(&best, &cfg).gain_linear;
            let (lo, hi) = (x.min(0.0), x.max(0.0));
            let between: Vec<f64> = layout
                .vertical_intercepts
                .iter()
                .copied()
                .filter(|v| (lo..=hi).contains(v))
                .collect();
            let admissible: Vec<f64> = if between.is_empty() {
                parallel_candidates(x, &layout.vertical_intercepts).collect()
            } else {
                between
            };
            checked += 1;
            let beaten = admissible.iter().any(|&xk| {
                let g = path_gain(&PathDescriptor::parallel(x - xk, y, xk), &cfg).gain_linear;
                g > best_gain * (1.0 + 1e-12)
            });
            if beaten {
                log::debug!("path optimality: x={x} y={y} admissible={admissible:?} best={best:?} cfg={cfg:?}");
                violations += 1;
            }
        }
    }
    (violations, checked)
}

/// Per-sample SINR ordering across filters on common random numbers.
/// Returns `(violations, checked)`.
pub fn filter_monotonicity_violations(
    antenna: &AntennaModel,
    n_layouts: usize,
    seed: u64,
) -> Result<(usize, usize), crate::montecarlo::McError> {
    let cfg = NetworkConfig {
        window_half: 1000.0,
        noise_n0: 1e-6,
        ..NetworkConfig::table_one()
    };
    let mut violations = 0;
    let mut checked = 0;
    for i in 0..n_layouts as u64 {
        let s = derive_seed(seed, &[i]);
        let layout = sample_mplp(&cfg, s)?;
        let bss = crate::geometry::place_base_stations(&layout, &cfg, antenna.p_t, s)?;
        let Ok(sample) = sinr_sample(&layout, &bss, &cfg, antenna, InterferenceFilter::All, s)
        else {
            continue;
        };
        let v: Vec<f64> = InterferenceFilter::ALL
            .iter()
            .map(|f| sample.sinr_with(*f, cfg.noise_n0))
            .collect();
        checked += 1;
        if !v.windows(2).all(|w| w[0] >= w[1]) {
            violations += 1;
        }
    }
    Ok((violations, checked))
}

/// Analytic CDFs on a log grid for a handful of configurations.
/// Returns `(violations, checked)`.
pub fn cdf_monotonicity_violations(
    antenna: &AntennaModel,
) -> Result<(usize, usize), crate::analytic::AnalyticError> {
    let mut violations = 0;
    let mut checked = 0;
    for ls in [0.001, 0.01, 0.1] {
        for an in [2.6, 4.0, 7.0] {
            let cfg = NetworkConfig {
                alpha_n: an,
                ..NetworkConfig::table_one().with_isotropic_streets(ls)
            };
            let k = constants(&cfg, antenna, 1.0)?;
            let lb = cfg.lambda_b;
            let mut prev = [0.0f64; 4];
            for i in 0..=400 {
                let u = 10f64.powf(-30.0 + 0.1 * i as f64);
                let cur = [
                    cdf_gain_typical(u, &k, lb),
                    cdf_gain_cross(u, &k, lb),
                    cdf_gain_parallel(u, &k, lb, ParallelCdf::Bessel)?,
                    cdf_gain_combined(u, &k, lb),
                ];
                for (c, p) in cur.iter().zip(prev.iter()) {
                    checked += 1;
                    if !(0.0..=1.0).contains(c) || c < p {
                        violations += 1;
                    }
                }
                prev = cur;
            }
        }
    }
    Ok((violations, checked))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_oracle_reference_points() {
        assert!((k1_integral_oracle(1.0) - 0.601_907_230_197_234_6).abs() < 1e-13);
        let asym = |m: f64| {
            (std::f64::consts::PI / (2.0 * m)).sqrt() * (-m).exp() * (1.0 + 3.0 / (8.0 * m))
        };
        assert!((k1_integral_oracle(10.0) / asym(10.0) - 1.0).abs() < 0.01);
    }

    #[test]
    fn bundled_map_has_expected_counts() {
        let m = parse_street_map(BUNDLED_MAP).unwrap();
        assert_eq!(m.layout.horizontal_intercepts.len(), 8);
        assert_eq!(m.layout.vertical_intercepts.len(), 15);
        assert_eq!(m.duplicates, 0);
    }

    #[test]
    fn quick_analytic_criteria_pass() {
        let v = Validator::new(ValidationOptions::default());
        for id in [4, 5, 7, 9] {
            let o = v.run(id);
            assert!(o.passed, "{o}");
        }
        assert!(!v.run(42).passed);
    }
}
