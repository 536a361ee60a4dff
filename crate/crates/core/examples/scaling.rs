//! How coverage scales with station and street density in a noisy network:
//! convergence to the interference-limited asymptote, the linear trend in
//! street intensity, and the station density where that trend flips sign.

use mmwave_mplp::analytic::{
    coverage, coverage_interference_limited, coverage_slope_lambda_s, db_to_linear,
    lambda_b_crossover,
};
use mmwave_mplp::channel::antenna_model;
use mmwave_mplp::geometry::NetworkConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let antenna = antenna_model(64)?;
    let t = db_to_linear(10.0);
    let base = NetworkConfig {
        noise_n0: 1e-4,
        ..NetworkConfig::table_one()
    };

    println!("lambda_b  coverage  asymptote");
    for lb in [0.001, 0.005, 0.01, 0.05, 0.2] {
        let cfg = NetworkConfig {
            lambda_b: lb,
            ..base
        };
        println!(
            "{lb:8}  {:.5}   {:.5}",
            coverage(t, &cfg, &antenna)?,
            coverage_interference_limited(t, &cfg, &antenna)?
        );
    }

    for lb in [0.005, 0.01] {
        let slope = coverage_slope_lambda_s(
            t,
            &NetworkConfig {
                lambda_b: lb,
                ..base
            },
            &antenna,
        )?;
        println!("d coverage / d lambda_s at lambda_b = {lb}: {slope:+.4}");
    }
    let root = lambda_b_crossover(t, &base, &antenna, (0.005, 0.01))?;
    println!("more streets stop helping above lambda_b = {root:.5}");
    Ok(())
}
