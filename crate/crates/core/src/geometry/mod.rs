//! Street systems and base-station placement.
//!
//! The receiver always sits at the origin on the horizontal street `y = 0`
//! (the typical street). Horizontal streets are identified by their
//! y-intercepts, vertical streets by their x-intercepts. Streets have zero
//! width.

mod config;
mod map;

pub use config::NetworkConfig;
pub use map::{load_street_map, parse_street_map, MapDensities, ParsedMap};

use crate::rng::{substream, TAG_STATIONS, TAG_STREETS};
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("invalid network configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: street at {coordinate} m lies outside the bounding box [0, {limit}]")]
    OutOfBounds {
        line: usize,
        coordinate: f64,
        limit: f64,
    },

    #[error("street map is invalid: {0}")]
    Validation(String),

    #[error("reading street map {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// Axis-aligned simulation window in receiver-centred coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Bounds {
    pub fn square(half: f64) -> Self {
        Self {
            x_min: -half,
            x_max: half,
            y_min: -half,
            y_max: half,
        }
    }

    /// Rectangle of the given size centred on the origin.
    pub fn centered(width: f64, height: f64) -> Self {
        Self {
            x_min: -0.5 * width,
            x_max: 0.5 * width,
            y_min: -0.5 * height,
            y_max: 0.5 * height,
        }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (self.x_min..=self.x_max).contains(&x) && (self.y_min..=self.y_max).contains(&y)
    }

    fn validate(&self) -> Result<()> {
        let ok = self.x_min < self.x_max
            && self.y_min < self.y_max
            && self.x_min <= 0.0
            && self.x_max >= 0.0
            && self.y_min <= 0.0
            && self.y_max >= 0.0
            && [self.x_min, self.x_max, self.y_min, self.y_max]
                .iter()
                .all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(GeometryError::InvalidConfig(format!(
                "window {self:?} must be finite, non-empty and contain the origin"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreetSource {
    Mplp,
    FixedGrid,
    LoadedMap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StreetLayout {
    /// Sorted, duplicate-free y-intercepts; always contains `0.0`.
    pub horizontal_intercepts: Vec<f64>,
    /// Sorted, duplicate-free x-intercepts.
    pub vertical_intercepts: Vec<f64>,
    pub bounds: Bounds,
    pub source: StreetSource,
}

impl StreetLayout {
    /// Builds a layout from raw intercepts, enforcing the layout invariants:
    /// everything inside the window, sorted, deduplicated, typical street
    /// present.
    pub fn new(
        mut horizontal: Vec<f64>,
        mut vertical: Vec<f64>,
        bounds: Bounds,
        source: StreetSource,
    ) -> Result<Self> {
        bounds.validate()?;
        if let Some(y) = horizontal
            .iter()
            .find(|y| !(bounds.y_min..=bounds.y_max).contains(*y))
        {
            return Err(GeometryError::Validation(format!(
                "horizontal street y = {y} outside window"
            )));
        }
        if let Some(x) = vertical
            .iter()
            .find(|x| !(bounds.x_min..=bounds.x_max).contains(*x))
        {
            return Err(GeometryError::Validation(format!(
                "vertical street x = {x} outside window"
            )));
        }
        horizontal.push(0.0);
        sort_dedup(&mut horizontal);
        sort_dedup(&mut vertical);
        Ok(Self {
            horizontal_intercepts: horizontal,
            vertical_intercepts: vertical,
            bounds,
            source,
        })
    }

    /// Largest distance from the receiver to the window edge.
    pub fn window_half(&self) -> f64 {
        [
            -self.bounds.x_min,
            self.bounds.x_max,
            -self.bounds.y_min,
            self.bounds.y_max,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn street_count(&self) -> usize {
        self.horizontal_intercepts.len() + self.vertical_intercepts.len()
    }

    /// Streets in the fixed order used for seeding: horizontal first, then
    /// vertical, each ascending.
    pub fn streets(&self) -> impl Iterator<Item = StreetRef> + '_ {
        self.horizontal_intercepts
            .iter()
            .map(|&y| StreetRef::horizontal(y))
            .chain(
                self.vertical_intercepts
                    .iter()
                    .map(|&x| StreetRef::vertical(x)),
            )
    }

    pub fn street_length(&self, street: &StreetRef) -> f64 {
        match street.orientation {
            Orientation::Horizontal => self.bounds.width(),
            Orientation::Vertical => self.bounds.height(),
        }
    }

    fn street_span(&self, street: &StreetRef) -> (f64, f64) {
        match street.orientation {
            Orientation::Horizontal => (self.bounds.x_min, self.bounds.x_max),
            Orientation::Vertical => (self.bounds.y_min, self.bounds.y_max),
        }
    }
}

fn sort_dedup(v: &mut Vec<f64>) {
    v.sort_by(f64::total_cmp);
    v.dedup();
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreetRef {
    pub orientation: Orientation,
    pub intercept: f64,
}

impl StreetRef {
    pub fn horizontal(y: f64) -> Self {
        Self {
            orientation: Orientation::Horizontal,
            intercept: y,
        }
    }

    pub fn vertical(x: f64) -> Self {
        Self {
            orientation: Orientation::Vertical,
            intercept: x,
        }
    }
}

/// Where a base station sits relative to the receiver's street.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Typical,
    Cross,
    Parallel,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Typical, Category::Cross, Category::Parallel];

    pub fn of(street: &StreetRef) -> Self {
        match street.orientation {
            Orientation::Vertical => Category::Cross,
            Orientation::Horizontal if street.intercept == 0.0 => Category::Typical,
            Orientation::Horizontal => Category::Parallel,
        }
    }
}

/// Whether an interfering base station points its main lobe at the receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeamMark {
    MainLobe,
    SideLobe,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseStation {
    pub street: StreetRef,
    /// Coordinate along the street: x for horizontal streets, y for vertical.
    pub offset: f64,
    pub category: Category,
    pub beam_mark: BeamMark,
    /// Index used to address this station's fading draws.
    pub fading_seedable_id: u64,
}

impl BaseStation {
    pub fn position(&self) -> (f64, f64) {
        match self.street.orientation {
            Orientation::Horizontal => (self.offset, self.street.intercept),
            Orientation::Vertical => (self.street.intercept, self.offset),
        }
    }
}

fn poisson_count<R: Rng>(rng: &mut R, mean: f64) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("positive finite Poisson mean");
    dist.sample(rng) as usize
}

fn uniform_points<R: Rng>(rng: &mut R, lo: f64, hi: f64, intensity: f64) -> Vec<f64> {
    let n = poisson_count(rng, intensity * (hi - lo));
    (0..n).map(|_| rng.random_range(lo..=hi)).collect()
}

/// Manhattan Poisson line process over the square window of `config`.
pub fn sample_mplp(config: &NetworkConfig, seed: u64) -> Result<StreetLayout> {
    config.validate()?;
    sample_mplp_in(
        Bounds::square(config.window_half),
        config.lambda_s_h,
        config.lambda_s_v,
        seed,
    )
}

/// Manhattan Poisson line process over an arbitrary window.
///
/// `lambda_h` is the intensity of horizontal streets per meter of y-extent,
/// `lambda_v` that of vertical streets per meter of x-extent.
pub fn sample_mplp_in(
    bounds: Bounds,
    lambda_h: f64,
    lambda_v: f64,
    seed: u64,
) -> Result<StreetLayout> {
    bounds.validate()?;
    if !(lambda_h >= 0.0 && lambda_v >= 0.0) {
        return Err(GeometryError::InvalidConfig(
            "street intensities must be nonnegative".into(),
        ));
    }
    let mut rng = substream(seed, &[TAG_STREETS]);
    let horizontal = uniform_points(&mut rng, bounds.y_min, bounds.y_max, lambda_h);
    let vertical = uniform_points(&mut rng, bounds.x_min, bounds.x_max, lambda_v);
    StreetLayout::new(horizontal, vertical, bounds, StreetSource::Mplp)
}

/// Regular street grid over a square window.
///
/// `spacing_h` is the horizontal distance between neighbouring vertical
/// streets and `spacing_v` the vertical distance between neighbouring
/// horizontal streets. Vertical streets sit at `offset_h + k·spacing_h`,
/// horizontal streets at `offset_v + k·spacing_v`; the horizontal line
/// nearest the receiver is then moved onto `y = 0`.
pub fn fixed_grid(
    spacing_h: f64,
    spacing_v: f64,
    offset_h: f64,
    offset_v: f64,
    window_half: f64,
) -> Result<StreetLayout> {
    fixed_grid_in(
        Bounds::square(window_half),
        spacing_h,
        spacing_v,
        offset_h,
        offset_v,
    )
}

pub fn fixed_grid_in(
    bounds: Bounds,
    spacing_h: f64,
    spacing_v: f64,
    offset_h: f64,
    offset_v: f64,
) -> Result<StreetLayout> {
    bounds.validate()?;
    if !(spacing_h > 0.0 && spacing_v > 0.0) {
        return Err(GeometryError::InvalidConfig(format!(
            "grid spacings must be positive, got ({spacing_h}, {spacing_v})"
        )));
    }
    let vertical = lattice(bounds.x_min, bounds.x_max, spacing_h, offset_h);
    let mut horizontal = lattice(bounds.y_min, bounds.y_max, spacing_v, offset_v);
    if let Some((idx, _)) = horizontal
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
    {
        horizontal[idx] = 0.0;
    }
    StreetLayout::new(horizontal, vertical, bounds, StreetSource::FixedGrid)
}

fn lattice(lo: f64, hi: f64, spacing: f64, offset: f64) -> Vec<f64> {
    // Tolerance keeps lines that land on the window edge up to roundoff.
    let eps = 1e-9 * spacing;
    let k_min = ((lo - offset) / spacing - 1e-9).ceil() as i64;
    let k_max = ((hi - offset) / spacing + 1e-9).floor() as i64;
    (k_min..=k_max)
        .map(|k| offset + k as f64 * spacing)
        .map(|v| v.clamp(lo, hi))
        .filter(|v| *v >= lo - eps && *v <= hi + eps)
        .collect()
}

/// Drops 1-D Poisson base stations on every street of `layout`.
///
/// Each street draws from its own substream, so the stations on one street do
/// not depend on how many streets precede it. Each station is independently
/// marked `MainLobe` with probability `p_t`.
pub fn place_base_stations(
    layout: &StreetLayout,
    config: &NetworkConfig,
    p_t: f64,
    seed: u64,
) -> Result<Vec<BaseStation>> {
    let mut out = Vec::new();
    place_base_stations_into(layout, config.lambda_b, p_t, seed, &mut out)?;
    Ok(out)
}

pub(crate) fn place_base_stations_into(
    layout: &StreetLayout,
    lambda_b: f64,
    p_t: f64,
    seed: u64,
    out: &mut Vec<BaseStation>,
) -> Result<()> {
    if !(0.0..=1.0).contains(&p_t) {
        return Err(GeometryError::InvalidConfig(format!(
            "thinning probability must lie in [0, 1], got {p_t}"
        )));
    }
    if !(lambda_b > 0.0) {
        return Err(GeometryError::InvalidConfig(format!(
            "base-station intensity must be positive, got {lambda_b}"
        )));
    }
    out.clear();
    let mut next_id = 0u64;
    for (street_idx, street) in layout.streets().enumerate() {
        let mut rng = substream(seed, &[TAG_STATIONS, street_idx as u64]);
        let (lo, hi) = layout.street_span(&street);
        let n = poisson_count(&mut rng, lambda_b * (hi - lo));
        let category = Category::of(&street);
        for _ in 0..n {
            let offset = rng.random_range(lo..=hi);
            let beam_mark = if rng.random_bool(p_t) {
                BeamMark::MainLobe
            } else {
                BeamMark::SideLobe
            };
            out.push(BaseStation {
                street,
                offset,
                category,
                beam_mark,
                fading_seedable_id: next_id,
            });
            next_id += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_one() -> NetworkConfig {
        NetworkConfig::table_one()
    }

    #[test]
    fn mplp_contains_typical_street_and_respects_window() {
        let cfg = NetworkConfig {
            window_half: 1000.0,
            ..table_one()
        };
        for seed in 0..50 {
            let l = sample_mplp(&cfg, seed).unwrap();
            assert!(l.horizontal_intercepts.contains(&0.0));
            assert!(l.horizontal_intercepts.windows(2).all(|w| w[0] < w[1]));
            assert!(l.vertical_intercepts.windows(2).all(|w| w[0] < w[1]));
            assert!(l.vertical_intercepts.iter().all(|x| x.abs() <= 1000.0));
            assert_eq!(l.source, StreetSource::Mplp);
        }
    }

    #[test]
    fn mplp_is_deterministic() {
        let cfg = table_one();
        assert_eq!(
            sample_mplp(&cfg, 42).unwrap(),
            sample_mplp(&cfg, 42).unwrap()
        );
        assert_ne!(
            sample_mplp(&cfg, 42).unwrap(),
            sample_mplp(&cfg, 43).unwrap()
        );
    }

    #[test]
    fn grid_example() {
        let l = fixed_grid(100.0, 100.0, 0.0, 0.0, 500.0).unwrap();
        let expected: Vec<f64> = (-5..=5).map(|k| 100.0 * k as f64).collect();
        assert_eq!(l.vertical_intercepts, expected);
        assert_eq!(l.horizontal_intercepts, expected);
        assert_eq!(l.source, StreetSource::FixedGrid);
    }

    #[test]
    fn grid_forces_typical_street() {
        let l = fixed_grid(133.5, 207.4, 17.0, 40.0, 1000.0).unwrap();
        assert!(l.horizontal_intercepts.contains(&0.0));
        // The line at 40 moved to 0; no other line was added or removed.
        assert!(!l.horizontal_intercepts.contains(&40.0));
        let n_expected = ((2.0 * 1000.0) / 207.4f64).floor() as i64 + 1;
        let n = l.horizontal_intercepts.len() as i64;
        assert!((n - n_expected).abs() <= 1);
        let nv_expected = ((2.0 * 1000.0) / 133.5f64).floor() as i64 + 1;
        assert!((l.vertical_intercepts.len() as i64 - nv_expected).abs() <= 1);
    }

    #[test]
    fn grid_rejects_bad_spacing() {
        assert!(fixed_grid(0.0, 10.0, 0.0, 0.0, 100.0).is_err());
        assert!(fixed_grid(10.0, -1.0, 0.0, 0.0, 100.0).is_err());
    }

    #[test]
    fn categories_follow_streets() {
        let cfg = NetworkConfig {
            window_half: 500.0,
            lambda_b: 0.05,
            ..table_one()
        };
        let layout = sample_mplp(&cfg, 3).unwrap();
        let bss = place_base_stations(&layout, &cfg, 0.3, 9).unwrap();
        assert!(!bss.is_empty());
        for bs in &bss {
            let (x, y) = bs.position();
            assert!(layout.bounds.contains(x, y));
            match bs.category {
                Category::Typical => assert_eq!(y, 0.0),
                Category::Parallel => {
                    assert_eq!(bs.street.orientation, Orientation::Horizontal);
                    assert_ne!(y, 0.0)
                }
                Category::Cross => assert_eq!(bs.street.orientation, Orientation::Vertical),
            }
        }
        let ids: Vec<u64> = bss.iter().map(|b| b.fading_seedable_id).collect();
        assert_eq!(ids, (0..bss.len() as u64).collect::<Vec<_>>());
    }

    #[test]
    fn zero_thinning_marks_everything_side_lobe() {
        let cfg = NetworkConfig {
            window_half: 500.0,
            ..table_one()
        };
        let layout = sample_mplp(&cfg, 1).unwrap();
        let bss = place_base_stations(&layout, &cfg, 0.0, 2).unwrap();
        assert!(bss.iter().all(|b| b.beam_mark == BeamMark::SideLobe));
        let bss = place_base_stations(&layout, &cfg, 1.0, 2).unwrap();
        assert!(bss.iter().all(|b| b.beam_mark == BeamMark::MainLobe));
        assert!(place_base_stations(&layout, &cfg, 1.5, 2).is_err());
    }

    #[test]
    fn station_streams_are_per_street() {
        // Adding a street must not move the stations on existing streets.
        let bounds = Bounds::square(300.0);
        let a = StreetLayout::new(vec![], vec![100.0], bounds, StreetSource::LoadedMap).unwrap();
        let b =
            StreetLayout::new(vec![], vec![100.0, 200.0], bounds, StreetSource::LoadedMap).unwrap();
        let cfg = NetworkConfig {
            lambda_b: 0.05,
            ..table_one()
        };
        let sa = place_base_stations(&a, &cfg, 0.5, 11).unwrap();
        let sb = place_base_stations(&b, &cfg, 0.5, 11).unwrap();
        let on = |v: &[BaseStation], x: f64| -> Vec<f64> {
            v.iter()
                .filter(|s| s.street == StreetRef::vertical(x) || s.category == Category::Typical)
                .map(|s| s.offset)
                .collect()
        };
        assert_eq!(on(&sa, 100.0), on(&sb, 100.0));
    }

    #[test]
    fn layout_rejects_out_of_window_streets() {
        let r = StreetLayout::new(
            vec![600.0],
            vec![],
            Bounds::square(500.0),
            StreetSource::Mplp,
        );
        assert!(r.is_err());
    }
}
