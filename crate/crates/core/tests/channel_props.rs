use approx::assert_relative_eq;
use mmwave_mplp::channel::{antenna_model, path_gain, pathloss_db, strongest_path, PathDescriptor};
use mmwave_mplp::geometry::{
    BaseStation, BeamMark, Bounds, Category, NetworkConfig, StreetLayout, StreetRef, StreetSource,
};
use proptest::prelude::*;

fn cfg(alpha_n: f64, delta_db: f64) -> NetworkConfig {
    NetworkConfig {
        alpha_n,
        delta_db,
        ..NetworkConfig::table_one()
    }
}

fn station(street: StreetRef, offset: f64) -> BaseStation {
    BaseStation {
        street,
        offset,
        category: Category::of(&street),
        beam_mark: BeamMark::SideLobe,
        fading_seedable_id: 0,
    }
}

#[test]
fn hand_evaluated_parallel_pathloss() {
    // 25·log10(20) + 70·log10(30) + 70·log10(80) + 2·20
    let d = PathDescriptor::new(Category::Parallel, &[20.0, 30.0, 80.0]).unwrap();
    let want = 25.0 * 20f64.log10() + 70.0 * 30f64.log10() + 70.0 * 80f64.log10() + 40.0;
    assert_relative_eq!(pathloss_db(&d, 2.5, 7.0, 20.0), want, max_relative = 1e-14);
    assert_relative_eq!(want, 309.14, epsilon = 0.01);
    // The same three streets used in the other order: long LOS leg first.
    let best = PathDescriptor::new(Category::Parallel, &[80.0, 30.0, 20.0]).unwrap();
    assert_relative_eq!(pathloss_db(&best, 2.5, 7.0, 20.0), 282.05, epsilon = 0.01);
}

proptest! {
    #[test]
    fn gain_is_pathloss_in_linear_units(
        segs in proptest::collection::vec(1.0..5000.0f64, 1..=3),
        an in 2.6..10.0f64,
        delta in 0.0..40.0f64,
    ) {
        let cat = [Category::Typical, Category::Cross, Category::Parallel][segs.len() - 1];
        let d = PathDescriptor::new(cat, &segs).unwrap();
        let c = cfg(an, delta);
        let g = path_gain(&d, &c).gain_linear;
        let pl = pathloss_db(&d, c.alpha_l, c.alpha_n, c.delta_db);
        prop_assert!((10.0 * g.log10() + pl).abs() <= 1e-9 * pl.abs().max(1.0));
    }

    #[test]
    fn pathloss_increases_with_every_segment(
        segs in proptest::collection::vec(1.0..5000.0f64, 1..=3),
        which in 0usize..3,
        stretch in 1.001..10.0f64,
    ) {
        let cat = [Category::Typical, Category::Cross, Category::Parallel][segs.len() - 1];
        let i = which % segs.len();
        let mut longer = segs.clone();
        longer[i] *= stretch;
        let a = pathloss_db(&PathDescriptor::new(cat, &segs).unwrap(), 2.5, 7.0, 20.0);
        let b = pathloss_db(&PathDescriptor::new(cat, &longer).unwrap(), 2.5, 7.0, 20.0);
        prop_assert!(b > a);
    }

    /// A typical station reached around a block (four extra corners) is
    /// weaker than the direct line of sight, even if the detour gets the
    /// main lobe and the direct path only the side lobe.
    #[test]
    fn corners_dominate_beam_gain(
        x in 1.0..3000.0f64,
        up in 1.0..2000.0f64,
        x1 in 0.0..1.0f64,
        x2 in 0.0..1.0f64,
        delta in 10.0..40.0f64,
        an in 2.6..10.0f64,
        nt in prop::sample::select(vec![4u32, 16, 64, 256]),
    ) {
        let c = cfg(an, delta);
        let ant = antenna_model(nt).unwrap();
        // Up a cross street at a, along a parallel street, down at b, home.
        let (a, b) = (x1 * x, x2 * x);
        let direct = path_gain(&PathDescriptor::typical(x), &c).gain_linear;
        let segs = [(x - a).max(1.0), up, (a - b).abs().max(1.0), up, b.max(1.0)];
        let mut detour = segs[0].powf(-c.alpha_l);
        for s in &segs[1..] {
            detour *= c.corner_loss_linear() * s.powf(-c.alpha_n);
        }
        prop_assert!(direct * ant.g_side > detour * ant.g_main);
    }

    #[test]
    fn cross_path_turns_once(x in -3000.0..3000.0f64, y in -3000.0..3000.0f64) {
        prop_assume!(x.abs() >= 1.0 && y.abs() >= 1.0);
        let layout = StreetLayout::new(vec![], vec![x], Bounds::square(5000.0), StreetSource::LoadedMap).unwrap();
        let d = strongest_path(&station(StreetRef::vertical(x), y), &layout, &NetworkConfig::table_one()).unwrap();
        prop_assert_eq!(d.segments(), &[y.abs(), x.abs()][..]);
        prop_assert_eq!(d.corners(), 1);
    }

    #[test]
    fn parallel_path_is_best_admissible(
        xs in proptest::collection::vec(-500.0..500.0f64, 1..12),
        bs_x in -500.0..500.0f64,
        y in 1.0..500.0f64,
    ) {
        let c = NetworkConfig::table_one();
        let layout = StreetLayout::new(vec![y], xs.clone(), Bounds::square(1000.0), StreetSource::LoadedMap).unwrap();
        let best = strongest_path(&station(StreetRef::horizontal(y), bs_x), &layout, &c).unwrap();
        let g = path_gain(&best, &c).gain_linear;
        let (lo, hi) = (bs_x.min(0.0), bs_x.max(0.0));
        let between: Vec<f64> = layout.vertical_intercepts.iter().copied().filter(|v| (lo..=hi).contains(v)).collect();
        for xk in between {
            let alt = path_gain(&PathDescriptor::parallel(bs_x - xk, y, xk), &c).gain_linear;
            prop_assert!(alt <= g * (1.0 + 1e-12), "via {xk}: {alt} > {g}");
        }
    }
}
