//! Association with a station on the receiver's own street: exact
//! integral, closed-form approximation, and simulated category split.

use mmwave_mplp::analytic::{assoc_prob_typical, assoc_prob_typical_approx, ApproxForm};
use mmwave_mplp::channel::antenna_model;
use mmwave_mplp::geometry::NetworkConfig;
use mmwave_mplp::montecarlo::{estimate_association_split, McSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let antenna = antenna_model(64)?;
    println!("lambda_s  exact   approx  printed  mc_typical  mc_cross  mc_parallel");
    for (i, ls) in [0.001, 0.01, 0.05, 0.1].into_iter().enumerate() {
        let cfg = NetworkConfig::table_one().with_isotropic_streets(ls);
        let split = estimate_association_split(&cfg, &antenna, &McSettings::new(300, 1, i as u64))?;
        println!(
            "{ls:8}  {:.4}  {:.4}  {:.4}   {:.4}      {:.4}    {:.4}",
            assoc_prob_typical(&cfg, &antenna)?,
            assoc_prob_typical_approx(&cfg, &antenna, ApproxForm::Consistent)?,
            assoc_prob_typical_approx(&cfg, &antenna, ApproxForm::AsPrinted)?,
            split.typical.estimate,
            split.cross.estimate,
            split.parallel.estimate,
        );
    }
    Ok(())
}
