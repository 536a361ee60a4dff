//! Parsing a street map file and placing base stations on it.
//!
//! `cargo run --example street_map -- path/to/file.map`; without an
//! argument the bundled map is used.

use mmwave_mplp::channel::antenna_model;
use mmwave_mplp::geometry::{
    load_street_map, parse_street_map, place_base_stations, Category, NetworkConfig,
};
use mmwave_mplp::validation::BUNDLED_MAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = match std::env::args().nth(1) {
        Some(path) => load_street_map(path)?,
        None => parse_street_map(BUNDLED_MAP)?,
    };
    let d = map.densities();
    println!(
        "{} x {} m, {} east-west and {} north-south streets ({} duplicates dropped)",
        map.width,
        map.height,
        map.layout.horizontal_intercepts.len(),
        map.layout.vertical_intercepts.len(),
        map.duplicates
    );
    println!(
        "fitted densities: {:.5} /m east-west, {:.5} /m north-south",
        d.lambda_h, d.lambda_v
    );
    println!(
        "receiver street after recentring: y = 0, x in [{}, {}]",
        map.layout.bounds.x_min, map.layout.bounds.x_max
    );

    let cfg = NetworkConfig::table_one();
    let antenna = antenna_model(cfg.n_t)?;
    let stations = place_base_stations(&map.layout, &cfg, antenna.p_t, 3)?;
    for c in Category::ALL {
        let n = stations.iter().filter(|b| b.category == c).count();
        println!("{c:?}: {n} stations");
    }
    Ok(())
}
