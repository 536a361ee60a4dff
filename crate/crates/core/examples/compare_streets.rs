//! Ergodic rate on random streets, a fixed grid and the bundled street map,
//! with densities and spacings fitted from the map.

use mmwave_mplp::channel::antenna_model;
use mmwave_mplp::geometry::{parse_street_map, NetworkConfig};
use mmwave_mplp::montecarlo::{estimate_ergodic_rate, LayoutModel, McSettings, RateForm};
use mmwave_mplp::validation::BUNDLED_MAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = parse_street_map(BUNDLED_MAP)?;
    let d = map.densities();
    let bounds = map.layout.bounds;
    let cfg = NetworkConfig::table_one();
    let antenna = antenna_model(cfg.n_t)?;
    let models = [
        LayoutModel::Mplp {
            bounds,
            lambda_h: d.lambda_h,
            lambda_v: d.lambda_v,
        },
        LayoutModel::FixedGrid {
            bounds,
            spacing_h: d.spacing_h(),
            spacing_v: d.spacing_v(),
        },
        LayoutModel::Fixed(map.layout.clone()),
    ];
    println!(
        "map: {:.1} m between north-south streets, {:.1} m between east-west streets",
        d.spacing_h(),
        d.spacing_v()
    );
    for (i, m) in models.iter().enumerate() {
        let r = estimate_ergodic_rate(
            m,
            &cfg,
            &antenna,
            &McSettings::new(1000, 2, i as u64),
            RateForm::Shannon,
        )?;
        println!(
            "{:5} {:.3} ± {:.3} bit/s/Hz",
            m.name(),
            r.estimate,
            r.half_width_95
        );
    }
    Ok(())
}
