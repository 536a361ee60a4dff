use super::{EstimatorResult, InterferenceFilter, McError, NetworkRealization, Result, SinrSample};
use crate::analytic::{CoverageCurve, CurveMethod};
use crate::channel::AntennaModel;
use crate::geometry::{
    fixed_grid_in, place_base_stations_into, sample_mplp_in, BaseStation, Bounds, Category,
    NetworkConfig, StreetLayout,
};
use crate::rng::{derive_seed, substream, TAG_GRID_OFFSET};
use crate::stats::pairwise_sum;
use rand::Rng;
use rayon::prelude::*;
use std::borrow::Cow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McSettings {
    pub n_layouts: usize,
    /// Fading rounds per layout.
    pub n_fading: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl McSettings {
    pub fn new(n_layouts: usize, n_fading: usize, seed: u64) -> Self {
        Self {
            n_layouts,
            n_fading,
            seed,
            workers: None,
        }
    }

    pub fn with_workers(mut self, workers: Option<usize>) -> Self {
        self.workers = workers;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_layouts == 0 || self.n_fading == 0 {
            return Err(McError::InvalidSettings(format!(
                "need at least one layout and one fading round, got {} x {}",
                self.n_layouts, self.n_fading
            )));
        }
        if self.workers == Some(0) {
            return Err(McError::InvalidSettings(
                "worker count must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Source of street layouts for a Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub enum LayoutModel {
    /// Fresh Poisson street system per layout.
    Mplp {
        bounds: Bounds,
        lambda_h: f64,
        lambda_v: f64,
    },
    /// Regular grid with a uniformly random offset per layout.
    FixedGrid {
        bounds: Bounds,
        spacing_h: f64,
        spacing_v: f64,
    },
    /// The same streets every time; only stations and fading vary.
    Fixed(StreetLayout),
}

impl LayoutModel {
    /// Poisson streets over the square window of `config`.
    pub fn mplp(config: &NetworkConfig) -> Self {
        LayoutModel::Mplp {
            bounds: Bounds::square(config.window_half),
            lambda_h: config.lambda_s_h,
            lambda_v: config.lambda_s_v,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LayoutModel::Mplp { .. } => "mplp",
            LayoutModel::FixedGrid { .. } => "grid",
            LayoutModel::Fixed(_) => "map",
        }
    }

    fn realize(&self, seed: u64) -> Result<Cow<'_, StreetLayout>> {
        Ok(match self {
            LayoutModel::Mplp {
                bounds,
                lambda_h,
                lambda_v,
            } => Cow::Owned(sample_mplp_in(*bounds, *lambda_h, *lambda_v, seed)?),
            LayoutModel::FixedGrid {
                bounds,
                spacing_h,
                spacing_v,
            } => {
                let mut rng = substream(seed, &[TAG_GRID_OFFSET]);
                let off_h = rng.random_range(0.0..*spacing_h);
                let off_v = rng.random_range(0.0..*spacing_v);
                Cow::Owned(fixed_grid_in(
                    *bounds, *spacing_h, *spacing_v, off_h, off_v,
                )?)
            }
            LayoutModel::Fixed(layout) => Cow::Borrowed(layout),
        })
    }
}

// Realizes every layout in index order and hands it to `f`. The output
// order matches the layout index whatever the worker count.
fn run_layouts<T, F>(
    model: &LayoutModel,
    config: &NetworkConfig,
    antenna: &AntennaModel,
    settings: &McSettings,
    f: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&NetworkRealization, u64) -> T + Sync,
{
    settings.validate()?;
    config.validate()?;
    let job = || {
        (0..settings.n_layouts as u64)
            .into_par_iter()
            .map_init(Vec::<BaseStation>::new, |stations, idx| {
                let seed = derive_seed(settings.seed, &[idx]);
                let layout = model.realize(seed)?;
                place_base_stations_into(&layout, config.lambda_b, antenna.p_t, seed, stations)?;
                let net = NetworkRealization::new(&layout, stations, config, antenna);
                Ok(f(&net, seed))
            })
            .collect::<Result<Vec<T>>>()
    };
    match settings.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(job),
        None => job(),
    }
}

/// Coverage estimates for every interference filter from one set of draws.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageEstimates {
    pub thresholds_db: Vec<f64>,
    /// One entry per filter, in [`InterferenceFilter::ALL`] order.
    pub per_filter: Vec<(InterferenceFilter, Vec<EstimatorResult>)>,
    /// Mean interference power per category over non-empty samples.
    pub mean_interference: super::Interference,
    /// Samples with no reachable station, counted as outages.
    pub n_empty: usize,
}

impl CoverageEstimates {
    pub fn results(&self, filter: InterferenceFilter) -> &[EstimatorResult] {
        &self
            .per_filter
            .iter()
            .find(|(f, _)| *f == filter)
            .expect("every filter is estimated")
            .1
    }

    pub fn curve(&self, filter: InterferenceFilter) -> CoverageCurve {
        let r = self.results(filter);
        let n = r.first().map_or(0, |e| e.n_samples);
        CoverageCurve {
            thresholds_db: self.thresholds_db.clone(),
            values: r.iter().map(|e| e.estimate).collect(),
            method: CurveMethod::MonteCarlo,
            meta: vec![
                ("filter".into(), filter.name().into()),
                ("n_samples".into(), n.to_string()),
                (
                    "seed".into(),
                    r.first().map_or(0, |e| e.seed_root).to_string(),
                ),
            ],
        }
    }
}

/// Empirical `P(SINR > T)` on `thresholds_db` for all four filters, using
/// common random numbers.
pub fn estimate_coverage_all(
    config: &NetworkConfig,
    antenna: &AntennaModel,
    thresholds_db: &[f64],
    settings: &McSettings,
) -> Result<CoverageEstimates> {
    estimate_coverage_with(
        &LayoutModel::mplp(config),
        config,
        antenna,
        thresholds_db,
        settings,
    )
}

fn estimate_coverage_with(
    model: &LayoutModel,
    config: &NetworkConfig,
    antenna: &AntennaModel,
    thresholds_db: &[f64],
    settings: &McSettings,
) -> Result<CoverageEstimates> {
    let per_layout = run_layouts(model, config, antenna, settings, |net, seed| {
        (0..settings.n_fading as u64)
            .map(|round| {
                net.fading_round(seed, round, InterferenceFilter::All, config.noise_n0)
                    .ok()
            })
            .collect::<Vec<Option<SinrSample>>>()
    })?;
    let samples: Vec<Option<SinrSample>> = per_layout.into_iter().flatten().collect();
    let n = samples.len();
    let thresholds: Vec<f64> = thresholds_db.iter().map(|t| 10f64.powf(t / 10.0)).collect();

    let per_filter = InterferenceFilter::ALL
        .iter()
        .map(|&filter| {
            let sinrs: Vec<f64> = samples
                .iter()
                .map(|s| s.map_or(0.0, |s| s.sinr_with(filter, config.noise_n0)))
                .collect();
            let results = thresholds
                .iter()
                .map(|&t| {
                    let hits = sinrs.iter().filter(|&&s| s > t).count();
                    EstimatorResult::proportion(hits, n, settings.seed)
                })
                .collect();
            (filter, results)
        })
        .collect();

    let present: Vec<&SinrSample> = samples.iter().flatten().collect();
    let mean_of = |get: fn(&SinrSample) -> f64| {
        let v: Vec<f64> = present.iter().map(|s| get(s)).collect();
        pairwise_sum(&v) / v.len().max(1) as f64
    };
    let mean_interference = super::Interference {
        typical: mean_of(|s| s.interference_breakdown.typical),
        cross: mean_of(|s| s.interference_breakdown.cross),
        parallel: mean_of(|s| s.interference_breakdown.parallel),
    };

    Ok(CoverageEstimates {
        thresholds_db: thresholds_db.to_vec(),
        per_filter,
        mean_interference,
        n_empty: n - present.len(),
    })
}

/// Coverage curve for a single filter.
pub fn estimate_coverage(
    config: &NetworkConfig,
    antenna: &AntennaModel,
    thresholds_db: &[f64],
    filter: InterferenceFilter,
    settings: &McSettings,
) -> Result<(CoverageCurve, Vec<EstimatorResult>)> {
    let all = estimate_coverage_all(config, antenna, thresholds_db, settings)?;
    Ok((all.curve(filter), all.results(filter).to_vec()))
}

/// Association outcome of one layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociationSample {
    /// `G ·` strongest path gain.
    pub gain: f64,
    pub category: Category,
}

/// Association outcome per layout; `None` where no station is reachable.
/// Fading plays no part in association, so `n_fading` is ignored.
pub fn sample_associations(
    config: &NetworkConfig,
    antenna: &AntennaModel,
    settings: &McSettings,
) -> Result<Vec<Option<AssociationSample>>> {
    run_layouts(
        &LayoutModel::mplp(config),
        config,
        antenna,
        settings,
        |net, _| {
            net.association()
                .map(|(gain, category)| AssociationSample { gain, category })
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociationSplit {
    pub typical: EstimatorResult,
    pub cross: EstimatorResult,
    pub parallel: EstimatorResult,
    /// Layouts without any reachable station, left out of the split.
    pub n_empty: usize,
}

/// Fraction of layouts whose serving station is on each street category.
pub fn estimate_association_split(
    config: &NetworkConfig,
    antenna: &AntennaModel,
    settings: &McSettings,
) -> Result<AssociationSplit> {
    let samples = sample_associations(config, antenna, settings)?;
    let present: Vec<Category> = samples.iter().flatten().map(|s| s.category).collect();
    let n = present.len();
    let count = |c: Category| present.iter().filter(|&&x| x == c).count();
    Ok(AssociationSplit {
        typical: EstimatorResult::proportion(count(Category::Typical), n, settings.seed),
        cross: EstimatorResult::proportion(count(Category::Cross), n, settings.seed),
        parallel: EstimatorResult::proportion(count(Category::Parallel), n, settings.seed),
        n_empty: samples.len() - n,
    })
}

/// Per-sample rate functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RateForm {
    /// `log2(1 + SINR)` in bit/s/Hz.
    #[default]
    Shannon,
    /// `1 + SINR`, read literally.
    OnePlusSinr,
}

impl RateForm {
    pub fn apply(&self, sinr: f64) -> f64 {
        match self {
            RateForm::Shannon => sinr.ln_1p() / std::f64::consts::LN_2,
            RateForm::OnePlusSinr => 1.0 + sinr,
        }
    }
}

/// Mean rate over `n_layouts × n_fading` samples with all interference.
///
/// Empty networks contribute a zero SINR. A sample with neither noise nor
/// interference has infinite SINR and makes the estimate infinite.
pub fn estimate_ergodic_rate(
    model: &LayoutModel,
    config: &NetworkConfig,
    antenna: &AntennaModel,
    settings: &McSettings,
    form: RateForm,
) -> Result<EstimatorResult> {
    let per_layout = run_layouts(model, config, antenna, settings, |net, seed| {
        (0..settings.n_fading as u64)
            .map(|round| {
                let sinr = net
                    .fading_round(seed, round, InterferenceFilter::All, config.noise_n0)
                    .map_or(0.0, |s| s.sinr_linear);
                form.apply(sinr)
            })
            .collect::<Vec<f64>>()
    })?;
    let rates: Vec<f64> = per_layout.into_iter().flatten().collect();
    Ok(EstimatorResult::mean(&rates, settings.seed))
}
