//! Seeded Monte Carlo oracle for the closed forms.
//!
//! A sample is one street layout, one set of base stations and one or more
//! rounds of Rayleigh fading. Every random draw comes from a substream keyed
//! by the layout index, so results are identical for any worker count.

mod estimators;

pub use estimators::{
    estimate_association_split, estimate_coverage, estimate_coverage_all, estimate_ergodic_rate,
    sample_associations, AssociationSample, AssociationSplit, CoverageEstimates, LayoutModel,
    McSettings, RateForm,
};

use crate::channel::{path_gain, strongest_path, AntennaModel};
use crate::geometry::{BaseStation, Category, GeometryError, NetworkConfig, StreetLayout};
use crate::rng::{substream, TAG_FADING};
use rand_distr::{Distribution, Exp1};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum McError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("no base station can reach the receiver")]
    EmptyNetwork,
    #[error("invalid Monte Carlo settings: {0}")]
    InvalidSettings(String),
    #[error("building worker pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

pub type Result<T> = std::result::Result<T, McError>;

/// Which interferers count towards the SINR denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InterferenceFilter {
    NoiseOnly,
    TypicalOnly,
    TypicalCross,
    All,
}

impl InterferenceFilter {
    pub const ALL: [InterferenceFilter; 4] = [
        InterferenceFilter::NoiseOnly,
        InterferenceFilter::TypicalOnly,
        InterferenceFilter::TypicalCross,
        InterferenceFilter::All,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InterferenceFilter::NoiseOnly => "noise_only",
            InterferenceFilter::TypicalOnly => "typical",
            InterferenceFilter::TypicalCross => "typical_cross",
            InterferenceFilter::All => "all",
        }
    }
}

/// Aggregate interference power per category of interferer.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Interference {
    pub typical: f64,
    pub cross: f64,
    pub parallel: f64,
}

impl Interference {
    pub fn filtered(&self, filter: InterferenceFilter) -> f64 {
        match filter {
            InterferenceFilter::NoiseOnly => 0.0,
            InterferenceFilter::TypicalOnly => self.typical,
            InterferenceFilter::TypicalCross => self.typical + self.cross,
            InterferenceFilter::All => self.typical + self.cross + self.parallel,
        }
    }

    fn add(&mut self, category: Category, power: f64) {
        match category {
            Category::Typical => self.typical += power,
            Category::Cross => self.cross += power,
            Category::Parallel => self.parallel += power,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrSample {
    /// SINR under the filter the sample was requested with. Infinite when
    /// neither noise nor admitted interference is present.
    pub sinr_linear: f64,
    /// Serving-link fading times the association gain.
    pub signal_power: f64,
    pub association_gain_u: f64,
    pub associated_category: Category,
    pub interference_breakdown: Interference,
}

impl SinrSample {
    pub fn sinr_with(&self, filter: InterferenceFilter, noise_n0: f64) -> f64 {
        let denom = noise_n0 + self.interference_breakdown.filtered(filter);
        if denom == 0.0 {
            f64::INFINITY
        } else {
            self.signal_power / denom
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Link {
    category: Category,
    /// Path gain without antenna gain; zero for unreachable stations.
    gain: f64,
    /// Beam gain the station presents to the receiver when interfering.
    beam_gain: f64,
}

/// Path gains of one realized network, ready for fading rounds.
#[derive(Debug, Clone)]
pub struct NetworkRealization {
    links: Vec<Link>,
    serving: Option<usize>,
    g_main: f64,
}

impl NetworkRealization {
    pub fn new(
        layout: &StreetLayout,
        stations: &[BaseStation],
        config: &NetworkConfig,
        antenna: &AntennaModel,
    ) -> Self {
        let mut links: Vec<Link> = Vec::with_capacity(stations.len());
        let mut serving: Option<usize> = None;
        for (i, bs) in stations.iter().enumerate() {
            let gain = strongest_path(bs, layout, config)
                .map(|d| path_gain(&d, config).gain_linear)
                .unwrap_or(0.0);
            if gain > 0.0 && serving.is_none_or(|s| gain > links[s].gain) {
                serving = Some(i);
            }
            links.push(Link {
                category: bs.category,
                gain,
                beam_gain: antenna.beam_gain(bs.beam_mark),
            });
        }
        Self {
            links,
            serving,
            g_main: antenna.g_main,
        }
    }

    pub fn station_count(&self) -> usize {
        self.links.len()
    }

    /// Association gain `G · max path gain` and the winning category.
    pub fn association(&self) -> Option<(f64, Category)> {
        self.serving.map(|s| {
            let l = &self.links[s];
            (self.g_main * l.gain, l.category)
        })
    }

    /// One round of i.i.d. unit-mean exponential fading drawn from `seed`,
    /// one draw per station in order.
    pub fn fading_round(
        &self,
        seed: u64,
        round: u64,
        filter: InterferenceFilter,
        noise_n0: f64,
    ) -> Result<SinrSample> {
        let serving = self.serving.ok_or(McError::EmptyNetwork)?;
        let mut rng = substream(seed, &[TAG_FADING, round]);
        let u = self.g_main * self.links[serving].gain;
        let mut signal = 0.0;
        let mut interference = Interference::default();
        for (i, link) in self.links.iter().enumerate() {
            let h: f64 = Exp1.sample(&mut rng);
            if i == serving {
                signal = h * u;
            } else {
                debug_assert!(self.g_main * link.gain <= u);
                interference.add(link.category, link.beam_gain * h * link.gain);
            }
        }
        let mut sample = SinrSample {
            sinr_linear: 0.0,
            signal_power: signal,
            association_gain_u: u,
            associated_category: self.links[serving].category,
            interference_breakdown: interference,
        };
        sample.sinr_linear = sample.sinr_with(filter, noise_n0);
        Ok(sample)
    }
}

/// SINR at the receiver for a given network and seed.
///
/// The serving station maximizes the fading-free association gain; every
/// other reachable station interferes with its marked beam gain and an
/// independent `Exp(1)` fading draw.
pub fn sinr_sample(
    layout: &StreetLayout,
    stations: &[BaseStation],
    config: &NetworkConfig,
    antenna: &AntennaModel,
    filter: InterferenceFilter,
    seed: u64,
) -> Result<SinrSample> {
    NetworkRealization::new(layout, stations, config, antenna).fading_round(
        seed,
        0,
        filter,
        config.noise_n0,
    )
}

/// Point estimate with a 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorResult {
    pub estimate: f64,
    pub half_width_95: f64,
    pub n_samples: usize,
    pub seed_root: u64,
}

impl EstimatorResult {
    pub fn proportion(hits: usize, n: usize, seed_root: u64) -> Self {
        let p = if n == 0 {
            f64::NAN
        } else {
            hits as f64 / n as f64
        };
        Self {
            estimate: p,
            half_width_95: crate::stats::proportion_half_width(p, n),
            n_samples: n,
            seed_root,
        }
    }

    pub fn mean(values: &[f64], seed_root: u64) -> Self {
        let (m, v) = crate::stats::mean_var(values);
        Self {
            estimate: m,
            half_width_95: 1.96 * (v / values.len() as f64).sqrt(),
            n_samples: values.len(),
            seed_root,
        }
    }

    pub fn interval(&self) -> (f64, f64) {
        (
            self.estimate - self.half_width_95,
            self.estimate + self.half_width_95,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::antenna_model;
    use crate::geometry::{BeamMark, Bounds, StreetRef, StreetSource};

    fn typical_bs(x: f64, id: u64) -> BaseStation {
        BaseStation {
            street: StreetRef::horizontal(0.0),
            offset: x,
            category: Category::Typical,
            beam_mark: BeamMark::SideLobe,
            fading_seedable_id: id,
        }
    }

    fn lone_street() -> StreetLayout {
        StreetLayout::new(
            vec![],
            vec![],
            Bounds::square(1000.0),
            StreetSource::LoadedMap,
        )
        .unwrap()
    }

    #[test]
    fn single_station_without_noise_is_infinite() {
        let cfg = NetworkConfig::table_one();
        let ant = antenna_model(64).unwrap();
        let s = sinr_sample(
            &lone_street(),
            &[typical_bs(50.0, 0)],
            &cfg,
            &ant,
            InterferenceFilter::NoiseOnly,
            1,
        )
        .unwrap();
        assert!(s.sinr_linear.is_infinite());
    }

    #[test]
    fn nearest_typical_station_serves() {
        let cfg = NetworkConfig::table_one();
        let ant = antenna_model(64).unwrap();
        let bss = [typical_bs(200.0, 0), typical_bs(-100.0, 1)];
        let s = sinr_sample(&lone_street(), &bss, &cfg, &ant, InterferenceFilter::All, 3).unwrap();
        assert_eq!(s.association_gain_u, 64.0 * 100f64.powf(-2.5));
        assert!(s.interference_breakdown.typical > 0.0);
        assert!(s.sinr_linear.is_finite());
    }

    #[test]
    fn empty_network_is_an_error() {
        let cfg = NetworkConfig::table_one();
        let ant = antenna_model(64).unwrap();
        let r = sinr_sample(&lone_street(), &[], &cfg, &ant, InterferenceFilter::All, 3);
        assert!(matches!(r, Err(McError::EmptyNetwork)));
    }

    #[test]
    fn breakdown_is_additive_across_filters() {
        let cfg = NetworkConfig {
            window_half: 800.0,
            ..NetworkConfig::table_one()
        };
        let ant = antenna_model(64).unwrap();
        let layout = crate::geometry::sample_mplp(&cfg, 5).unwrap();
        let bss = crate::geometry::place_base_stations(&layout, &cfg, ant.p_t, 5).unwrap();
        let get = |f| sinr_sample(&layout, &bss, &cfg, &ant, f, 77).unwrap();
        let all = get(InterferenceFilter::All);
        let t = get(InterferenceFilter::TypicalOnly).interference_breakdown;
        let total = all.interference_breakdown.filtered(InterferenceFilter::All);
        let parts = t.typical + t.cross + t.parallel;
        assert!((total - parts).abs() <= 1e-12 * total);
        let noise = get(InterferenceFilter::NoiseOnly).sinr_linear;
        assert!(noise >= get(InterferenceFilter::TypicalOnly).sinr_linear);
        assert!(get(InterferenceFilter::TypicalCross).sinr_linear >= all.sinr_linear);
    }
}
