//! Corner-minimal strongest paths from base stations to the receiver at
//! the origin, on a small hand-built street grid.

use mmwave_mplp::channel::{
    antenna_model, association_gain, path_gain, pathloss_db, strongest_path,
};
use mmwave_mplp::geometry::{
    BaseStation, BeamMark, Bounds, Category, NetworkConfig, StreetLayout, StreetRef, StreetSource,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = NetworkConfig::table_one();
    let antenna = antenna_model(cfg.n_t)?;
    let layout = StreetLayout::new(
        vec![30.0, -120.0],
        vec![20.0, 50.0, 80.0],
        Bounds::square(500.0),
        StreetSource::LoadedMap,
    )?;

    let stations = [
        (StreetRef::horizontal(0.0), -137.0),
        (StreetRef::vertical(50.0), 25.0),
        (StreetRef::horizontal(30.0), 100.0),
        (StreetRef::horizontal(-120.0), -40.0),
    ];
    for (street, offset) in stations {
        let bs = BaseStation {
            street,
            offset,
            category: Category::of(&street),
            beam_mark: BeamMark::SideLobe,
            fading_seedable_id: 0,
        };
        let Some(path) = strongest_path(&bs, &layout, &cfg) else {
            println!("{:?} at {:?}: unreachable", bs.category, bs.position());
            continue;
        };
        let gain = path_gain(&path, &cfg);
        println!(
            "{:?} at {:?}: segments {:?}, {} corners, pathloss {:.2} dB, association gain {:.3e}",
            bs.category,
            bs.position(),
            path.segments(),
            path.corners(),
            pathloss_db(&path, cfg.alpha_l, cfg.alpha_n, cfg.delta_db),
            association_gain(&gain, &antenna),
        );
    }
    Ok(())
}
