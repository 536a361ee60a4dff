//! Manhattan-distance pathloss, sectorized antennas and strongest paths.
//!
//! Paths are stored with the LOS segment leaving the base station first.
//! The first segment uses the LOS exponent; every later segment follows a
//! corner and uses the NLOS exponent plus the corner loss.

use crate::geometry::{BaseStation, BeamMark, Category, NetworkConfig, StreetLayout};
use std::f64::consts::PI;
use thiserror::Error;

/// Shortest segment length used anywhere in a path, in meters.
pub const MIN_SEGMENT: f64 = 1.0;

#[derive(Debug, Error, PartialEq)]
pub enum ChannelError {
    #[error("antenna needs at least one element")]
    NoAntennaElements,
    #[error("path segments must be positive and finite, got {0:?}")]
    BadSegments(Vec<f64>),
    #[error("{category:?} paths have {expected} segments, got {got}")]
    SegmentCount {
        category: Category,
        expected: usize,
        got: usize,
    },
}

pub type Result<T> = std::result::Result<T, ChannelError>;

/// Sectorized antenna: main-lobe gain, side-lobe gain, beamwidth and the
/// probability that an interferer's main lobe covers the receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaModel {
    pub g_main: f64,
    pub g_side: f64,
    pub beamwidth: f64,
    pub p_t: f64,
}

impl AntennaModel {
    pub fn beam_gain(&self, mark: BeamMark) -> f64 {
        match mark {
            BeamMark::MainLobe => self.g_main,
            BeamMark::SideLobe => self.g_side,
        }
    }
}

pub fn antenna_model(n_t: u32) -> Result<AntennaModel> {
    if n_t == 0 {
        return Err(ChannelError::NoAntennaElements);
    }
    let n = n_t as f64;
    let rn = n.sqrt();
    let k = 3f64.sqrt() / (2.0 * PI);
    let s = (3f64.sqrt() / (2.0 * rn)).sin();
    let g_side = (rn - k * n * s) / (rn - k * s);
    let beamwidth = 3f64.sqrt() / rn;
    Ok(AntennaModel {
        g_main: n,
        g_side,
        beamwidth,
        p_t: beamwidth / (2.0 * PI),
    })
}

/// Segment lengths of a single path, LOS segment first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathDescriptor {
    segments: [f64; 3],
    len: usize,
    pub category: Category,
}

impl PathDescriptor {
    pub fn new(category: Category, segments: &[f64]) -> Result<Self> {
        let expected = match category {
            Category::Typical => 1,
            Category::Cross => 2,
            Category::Parallel => 3,
        };
        if segments.len() != expected {
            return Err(ChannelError::SegmentCount {
                category,
                expected,
                got: segments.len(),
            });
        }
        if !segments.iter().all(|d| *d > 0.0 && d.is_finite()) {
            return Err(ChannelError::BadSegments(segments.to_vec()));
        }
        let mut s = [0.0; 3];
        s[..expected].copy_from_slice(segments);
        Ok(Self {
            segments: s,
            len: expected,
            category,
        })
    }

    pub fn typical(d1: f64) -> Self {
        Self::clamped(Category::Typical, [d1, 0.0, 0.0], 1)
    }

    pub fn cross(d1: f64, d2: f64) -> Self {
        Self::clamped(Category::Cross, [d1, d2, 0.0], 2)
    }

    pub fn parallel(d1: f64, d2: f64, d3: f64) -> Self {
        Self::clamped(Category::Parallel, [d1, d2, d3], 3)
    }

    fn clamped(category: Category, raw: [f64; 3], len: usize) -> Self {
        let mut segments = [0.0; 3];
        for i in 0..len {
            segments[i] = raw[i].abs().max(MIN_SEGMENT);
        }
        Self {
            segments,
            len,
            category,
        }
    }

    pub fn segments(&self) -> &[f64] {
        &self.segments[..self.len]
    }

    pub fn corners(&self) -> usize {
        self.len - 1
    }
}

pub fn pathloss_db(desc: &PathDescriptor, alpha_l: f64, alpha_n: f64, delta_db: f64) -> f64 {
    let s = desc.segments();
    let nlos: f64 = s[1..].iter().map(|d| d.log10()).sum();
    10.0 * (alpha_l * s[0].log10() + alpha_n * nlos) + desc.corners() as f64 * delta_db
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGain {
    pub gain_linear: f64,
    pub descriptor: PathDescriptor,
}

/// Linear path gain, without antenna gain.
pub fn path_gain(desc: &PathDescriptor, config: &NetworkConfig) -> PathGain {
    PathGain {
        gain_linear: gain_linear(
            desc,
            config.alpha_l,
            config.alpha_n,
            config.corner_loss_linear(),
        ),
        descriptor: *desc,
    }
}

fn gain_linear(desc: &PathDescriptor, alpha_l: f64, alpha_n: f64, c: f64) -> f64 {
    let s = desc.segments();
    let mut g = s[0].powf(-alpha_l);
    for d in &s[1..] {
        g *= c * d.powf(-alpha_n);
    }
    g
}

/// Strongest corner-minimal path from `bs` to the receiver at the origin.
///
/// Returns `None` for a parallel station when the layout has no vertical
/// street to turn through.
pub fn strongest_path(
    bs: &BaseStation,
    layout: &StreetLayout,
    config: &NetworkConfig,
) -> Option<PathDescriptor> {
    let (x, y) = bs.position();
    match bs.category {
        Category::Typical => Some(PathDescriptor::typical(x)),
        Category::Cross => Some(PathDescriptor::cross(y, x)),
        Category::Parallel => {
            let c = config.corner_loss_linear();
            parallel_candidates(x, &layout.vertical_intercepts)
                .map(|xk| PathDescriptor::parallel(x - xk, y, xk))
                .max_by(|a, b| {
                    gain_linear(a, config.alpha_l, config.alpha_n, c).total_cmp(&gain_linear(
                        b,
                        config.alpha_l,
                        config.alpha_n,
                        c,
                    ))
                })
        }
    }
}

/// Vertical streets worth turning through for a parallel station at
/// horizontal offset `x`.
///
/// With streets between the receiver and the station, only the two
/// extremes of that set can be optimal, except that the 1 m clamp flattens
/// the gain near either end. Streets within the clamp of the station or of
/// the receiver are therefore also represented by their innermost member.
/// Without streets in between, the nearest street on each side of the
/// interval is tried.
pub fn parallel_candidates(x: f64, vertical: &[f64]) -> impl Iterator<Item = f64> {
    let lo = x.min(0.0);
    let hi = x.max(0.0);
    let start = vertical.partition_point(|v| *v < lo);
    let end = vertical.partition_point(|v| *v <= hi);
    let mut out: [Option<f64>; 4] = [None; 4];
    if start < end {
        let between = &vertical[start..end];
        out[0] = Some(between[0]);
        out[1] = between.last().copied();
        // Innermost street within the clamp of each endpoint.
        let lo_zone = between.partition_point(|v| *v <= lo + MIN_SEGMENT);
        let hi_zone = between.partition_point(|v| *v < hi - MIN_SEGMENT);
        if lo_zone > 0 {
            out[2] = Some(between[lo_zone - 1]);
        }
        if hi_zone < between.len() {
            out[3] = Some(between[hi_zone]);
        }
    } else {
        if start > 0 {
            out[0] = Some(vertical[start - 1]);
        }
        if end < vertical.len() {
            out[1] = Some(vertical[end]);
        }
    }
    out.into_iter().flatten()
}

/// Received power at the origin.
pub fn received_power(tx_power: f64, path: &PathGain, beam_gain: f64, fading: f64) -> f64 {
    tx_power * beam_gain * fading * path.gain_linear
}

/// Association metric: fading-free link gain including the main-lobe gain.
pub fn association_gain(path: &PathGain, antenna: &AntennaModel) -> f64 {
    antenna.g_main * path.gain_linear
}
