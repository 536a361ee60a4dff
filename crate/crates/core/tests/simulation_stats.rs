//! Statistical checks of the generators and the simulator. Sample sizes are
//! chosen so each check fails with probability well under 1e-3 when the
//! code is right.

use mmwave_mplp::analytic::{
    conditional_coverage, constants, db_to_linear, median_association_gain,
};
use mmwave_mplp::channel::{antenna_model, path_gain, strongest_path};
use mmwave_mplp::geometry::{place_base_stations, sample_mplp, BeamMark, Category, NetworkConfig};
use mmwave_mplp::montecarlo::{InterferenceFilter, NetworkRealization};
use mmwave_mplp::stats::mean_var;

#[test]
fn street_counts_are_poisson() {
    let cfg = NetworkConfig {
        window_half: 1000.0,
        ..NetworkConfig::table_one()
    };
    let counts: Vec<f64> = (0..10_000u64)
        .map(|s| sample_mplp(&cfg, s).unwrap().vertical_intercepts.len() as f64)
        .collect();
    let (m, v) = mean_var(&counts);
    assert!((m - 20.0).abs() < 0.2, "mean {m}");
    assert!((v / 20.0 - 1.0).abs() < 0.05, "variance {v}");
}

#[test]
fn layouts_are_reproducible() {
    let cfg = NetworkConfig::table_one();
    let a = sample_mplp(&cfg, 99).unwrap();
    let b = sample_mplp(&cfg, 99).unwrap();
    assert_eq!(a.horizontal_intercepts, b.horizontal_intercepts);
    assert_eq!(a.vertical_intercepts, b.vertical_intercepts);
    assert!(a.horizontal_intercepts.contains(&0.0));
    let sa = place_base_stations(&a, &cfg, 0.1, 5).unwrap();
    let sb = place_base_stations(&b, &cfg, 0.1, 5).unwrap();
    assert_eq!(sa, sb);
}

#[test]
fn main_lobe_marks_are_binomial() {
    let cfg = NetworkConfig::table_one();
    let p = antenna_model(64).unwrap().p_t;
    let (mut main, mut total) = (0usize, 0usize);
    let mut seed = 0;
    while total < 100_000 {
        let layout = sample_mplp(&cfg, seed).unwrap();
        for bs in place_base_stations(&layout, &cfg, p, seed).unwrap() {
            total += 1;
            main += usize::from(bs.beam_mark == BeamMark::MainLobe);
        }
        seed += 1;
    }
    let sigma = (p * (1.0 - p) / total as f64).sqrt();
    let frac = main as f64 / total as f64;
    assert!((frac - p).abs() < 3.0 * sigma, "{frac} vs {p} ± {sigma}");
}

#[test]
fn parallel_stations_are_weak() {
    let cfg = NetworkConfig::table_one();
    let mut typical = Vec::new();
    let mut parallel = Vec::new();
    for seed in 0..1000u64 {
        let layout = sample_mplp(&cfg, seed).unwrap();
        let stations = place_base_stations(&layout, &cfg, 0.0, seed).unwrap();
        let best = |cat: Category| {
            stations
                .iter()
                .filter(|b| b.category == cat)
                .filter_map(|b| strongest_path(b, &layout, &cfg))
                .map(|d| path_gain(&d, &cfg).gain_linear)
                .fold(0.0f64, f64::max)
        };
        typical.push(best(Category::Typical));
        parallel.push(best(Category::Parallel));
    }
    let mut sorted = typical.clone();
    sorted.sort_by(f64::total_cmp);
    let q01 = sorted[sorted.len() / 100];
    let frac = parallel.iter().filter(|&&g| g > q01).count() as f64 / parallel.len() as f64;
    assert!(frac < 0.01, "{frac}");
}

/// Coverage among samples whose association gain falls near the median
/// matches the closed-form conditional coverage averaged over those gains.
#[test]
fn binned_conditional_coverage() {
    let cfg = NetworkConfig::table_one();
    let ant = antenna_model(64).unwrap();
    let t = db_to_linear(10.0);
    let k = constants(&cfg, &ant, t).unwrap();
    let u0 = median_association_gain(&k, cfg.lambda_b);
    let (mut hits, mut n, mut predicted) = (0usize, 0usize, 0.0);
    for seed in 0..2000u64 {
        let layout = sample_mplp(&cfg, seed).unwrap();
        let stations = place_base_stations(&layout, &cfg, ant.p_t, seed).unwrap();
        let net = NetworkRealization::new(&layout, &stations, &cfg, &ant);
        let Some((u, _)) = net.association() else {
            continue;
        };
        if !(0.5 * u0..=2.0 * u0).contains(&u) {
            continue;
        }
        for round in 0..4 {
            let s = net
                .fading_round(seed, round, InterferenceFilter::TypicalCross, cfg.noise_n0)
                .unwrap();
            n += 1;
            hits += usize::from(s.sinr_linear > t);
            predicted += conditional_coverage(u, &k, cfg.lambda_b);
        }
    }
    assert!(n > 1000, "only {n} samples in the bin");
    let empirical = hits as f64 / n as f64;
    let predicted = predicted / n as f64;
    assert!(
        (empirical - predicted).abs() <= 0.03,
        "{empirical} vs {predicted} over {n}"
    );
}
