//! SINR coverage of mmWave microcells on Manhattan street systems.
//!
//! Streets form a Manhattan Poisson line process, base stations sit on the
//! streets as a Poisson point process, and signals propagate along streets
//! with an extra loss at every corner. [`analytic`] has the closed forms,
//! [`montecarlo`] the simulator that checks them.
//!
//! ```
//! use mmwave_mplp::analytic::{coverage, db_to_linear};
//! use mmwave_mplp::channel::antenna_model;
//! use mmwave_mplp::geometry::NetworkConfig;
//!
//! let cfg = NetworkConfig::table_one();
//! let ant = antenna_model(64).unwrap();
//! let p = coverage(db_to_linear(10.0), &cfg, &ant).unwrap();
//! assert!((p - 0.8594).abs() < 1e-4);
//! ```

// NaN must fail parameter checks, hence `!(x > 0.0)` throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod channel;
pub mod cli;
pub mod geometry;
pub mod montecarlo;
pub mod rng;
pub mod specfun;
pub mod stats;
pub mod validation;
