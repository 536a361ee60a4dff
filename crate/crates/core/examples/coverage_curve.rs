//! Coverage probability against the SINR threshold: closed form, its
//! first-order street expansion, and a small simulation per interference
//! filter.
//!
//! `cargo run --release --example coverage_curve -- 400` sets the number of
//! simulated layouts.

use mmwave_mplp::analytic::{coverage_curve, CurveMethod};
use mmwave_mplp::channel::antenna_model;
use mmwave_mplp::geometry::NetworkConfig;
use mmwave_mplp::montecarlo::{estimate_coverage_all, InterferenceFilter, McSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let layouts = std::env::args().nth(1).map_or(Ok(200), |s| s.parse())?;
    let cfg = NetworkConfig::table_one();
    let antenna = antenna_model(cfg.n_t)?;
    let grid: Vec<f64> = (-10..=30).step_by(5).map(f64::from).collect();

    let exact = coverage_curve(&grid, &cfg, &antenna, CurveMethod::AnalyticExact)?;
    let taylor = coverage_curve(&grid, &cfg, &antenna, CurveMethod::AnalyticTaylor)?;
    let mc = estimate_coverage_all(&cfg, &antenna, &grid, &McSettings::new(layouts, 4, 7))?;

    println!("T[dB]  exact   taylor  mc:noise typical t+cross  all     ±95%");
    for (i, t) in grid.iter().enumerate() {
        let r = |f| mc.results(f)[i];
        println!(
            "{t:5}  {:.4}  {:.4}  {:.4}   {:.4}  {:.4}   {:.4}  {:.4}",
            exact.values[i],
            taylor.values[i],
            r(InterferenceFilter::NoiseOnly).estimate,
            r(InterferenceFilter::TypicalOnly).estimate,
            r(InterferenceFilter::TypicalCross).estimate,
            r(InterferenceFilter::All).estimate,
            r(InterferenceFilter::TypicalCross).half_width_95,
        );
    }
    println!("mean interference per category: {:?}", mc.mean_interference);
    Ok(())
}
