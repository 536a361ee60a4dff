use super::{version, CliError, Result, Scenario, SweepParameter};
use crate::analytic::{
    assoc_prob_typical, assoc_prob_typical_approx, coverage as analytic_coverage,
    coverage_interference_limited, db_to_linear, ApproxForm,
};
use crate::channel::{antenna_model, AntennaModel};
use crate::geometry::{load_street_map, parse_street_map, ParsedMap};
use crate::montecarlo::{
    estimate_association_split, estimate_coverage_all, estimate_ergodic_rate, InterferenceFilter,
    LayoutModel, McSettings, RateForm,
};
use crate::rng::derive_seed;
use crate::stats::linear_fit;
use crate::validation::{ValidationOptions, Validator, BUNDLED_MAP, CRITERIA};
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

const DEFAULT_LAMBDA_S: [f64; 8] = [0.001, 0.002, 0.005, 0.01, 0.02, 0.03, 0.05, 0.1];
const DEFAULT_LAMBDA_B: [f64; 8] = [0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2];

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Opens `<outputs>/<name>` and writes the `#` metadata block.
fn open_csv(
    scenario: &Scenario,
    command: &str,
    name: &str,
    extra: &[(&str, String)],
) -> Result<(csv::Writer<File>, PathBuf)> {
    std::fs::create_dir_all(&scenario.outputs).map_err(io_err(&scenario.outputs))?;
    let path = scenario.outputs.join(name);
    let mut f = File::create(&path).map_err(io_err(&path))?;
    let mut header = format!(
        "# mmwave {}\n# command: {command}\n# seed: {}\n",
        version(),
        scenario.mc.seed
    );
    for (k, v) in extra {
        header.push_str(&format!("# {k}: {v}\n"));
    }
    for line in scenario.serialize().lines() {
        header.push_str(&format!("# scenario: {line}\n"));
    }
    f.write_all(header.as_bytes()).map_err(io_err(&path))?;
    Ok((csv::Writer::from_writer(f), path))
}

fn finish(w: csv::Writer<File>, path: &Path, footer: &[String]) -> Result<()> {
    let mut f = w.into_inner().map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e.into_error(),
    })?;
    for line in footer {
        writeln!(f, "# {line}").map_err(io_err(path))?;
    }
    log::info!("wrote {}", path.display());
    Ok(())
}

fn antenna(s: &Scenario) -> Result<AntennaModel> {
    Ok(antenna_model(s.network.n_t)?)
}

fn settings(s: &Scenario, workers: Option<usize>, salt: Option<u64>) -> McSettings {
    let seed = match salt {
        Some(i) => derive_seed(s.mc.seed, &[i]),
        None => s.mc.seed,
    };
    McSettings::new(s.mc.n_layouts, s.mc.n_fading, seed).with_workers(workers)
}

fn f(v: f64) -> String {
    v.to_string()
}

/// Writes `coverage.csv`.
pub fn coverage(s: &Scenario, workers: Option<usize>) -> Result<PathBuf> {
    let ant = antenna(s)?;
    let grid = s.thresholds.points();
    let est = estimate_coverage_all(&s.network, &ant, &grid, &settings(s, workers, None))?;
    let (mut w, path) = open_csv(
        s,
        "coverage",
        "coverage.csv",
        &[(
            "mc_ci_halfwidth",
            "95% half-width of mc_typical_cross".into(),
        )],
    )?;
    w.write_record([
        "threshold_db",
        "analytic",
        "mc_noise_only",
        "mc_typical",
        "mc_typical_cross",
        "mc_all",
        "mc_ci_halfwidth",
    ])?;
    for (i, t) in grid.iter().enumerate() {
        let a = analytic_coverage(db_to_linear(*t), &s.network, &ant)?;
        let r = |flt| est.results(flt)[i];
        w.write_record([
            f(*t),
            f(a),
            f(r(InterferenceFilter::NoiseOnly).estimate),
            f(r(InterferenceFilter::TypicalOnly).estimate),
            f(r(InterferenceFilter::TypicalCross).estimate),
            f(r(InterferenceFilter::All).estimate),
            f(r(InterferenceFilter::TypicalCross).half_width_95),
        ])?;
    }
    finish(w, &path, &[])?;
    Ok(path)
}

fn sweep_values(
    s: &Scenario,
    allowed: &[SweepParameter],
    default: SweepParameter,
    defaults: &[f64],
) -> Result<(SweepParameter, Vec<f64>)> {
    match &s.sweep {
        None => Ok((default, defaults.to_vec())),
        Some(sw) if allowed.contains(&sw.parameter) => Ok((sw.parameter, sw.values.clone())),
        Some(sw) => Err(CliError::InvalidArgument(format!(
            "this command cannot sweep {}; allowed: {}",
            sw.parameter.name(),
            allowed
                .iter()
                .map(|p| p.name())
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

/// Writes `assoc.csv`.
pub fn assoc(s: &Scenario, workers: Option<usize>) -> Result<PathBuf> {
    let ant = antenna(s)?;
    let (param, values) = sweep_values(
        s,
        &[SweepParameter::LambdaS],
        SweepParameter::LambdaS,
        &DEFAULT_LAMBDA_S,
    )?;
    let (mut w, path) = open_csv(
        s,
        "assoc",
        "assoc.csv",
        &[("ci", "95% half-width of mc_typical".into())],
    )?;
    w.write_record([
        "lambda_s",
        "chi_exact",
        "chi_approx",
        "mc_typical",
        "mc_cross",
        "mc_parallel",
        "ci",
    ])?;
    for (i, v) in values.iter().enumerate() {
        let cfg = param.apply(&s.network, *v)?;
        let exact = assoc_prob_typical(&cfg, &ant)?;
        let approx = assoc_prob_typical_approx(&cfg, &ant, ApproxForm::Consistent)?;
        let split = estimate_association_split(&cfg, &ant, &settings(s, workers, Some(i as u64)))?;
        w.write_record([
            f(*v),
            f(exact),
            f(approx),
            f(split.typical.estimate),
            f(split.cross.estimate),
            f(split.parallel.estimate),
            f(split.typical.half_width_95),
        ])?;
    }
    finish(w, &path, &[])?;
    Ok(path)
}

/// Writes `scaling.csv`. Closed forms only, so `workers` is unused.
pub fn scaling(s: &Scenario, _workers: Option<usize>) -> Result<PathBuf> {
    let ant = antenna(s)?;
    let (param, values) = sweep_values(
        s,
        &[SweepParameter::LambdaS, SweepParameter::LambdaB],
        SweepParameter::LambdaB,
        &DEFAULT_LAMBDA_B,
    )?;
    let (mut w, path) = open_csv(s, "scaling", "scaling.csv", &[])?;
    w.write_record([param.name(), "threshold_db", "coverage", "asymptote"])?;
    let grid = s.thresholds.points();
    let mut per_threshold: Vec<Vec<f64>> = vec![Vec::with_capacity(values.len()); grid.len()];
    for v in &values {
        let cfg = param.apply(&s.network, *v)?;
        for (j, t) in grid.iter().enumerate() {
            let lin = db_to_linear(*t);
            let c = analytic_coverage(lin, &cfg, &ant)?;
            let a = coverage_interference_limited(lin, &cfg, &ant)?;
            per_threshold[j].push(c);
            w.write_record([f(*v), f(*t), f(c), f(a)])?;
        }
    }
    let mut footer = Vec::new();
    if param == SweepParameter::LambdaS {
        for (t, ys) in grid.iter().zip(&per_threshold) {
            if let Some(fit) = linear_fit(&values, ys) {
                footer.push(format!(
                    "fit threshold_db={t} slope={} intercept={} r_squared={}",
                    fit.slope, fit.intercept, fit.r_squared
                ));
            }
        }
    }
    finish(w, &path, &footer)?;
    Ok(path)
}

/// Writes `compare_streets.csv`: ergodic rate for random streets with the
/// map's densities, a fixed grid with the map's mean spacings, and the map.
pub fn compare_streets(
    s: &Scenario,
    workers: Option<usize>,
    map_path: Option<&Path>,
    form: RateForm,
) -> Result<PathBuf> {
    let ant = antenna(s)?;
    let (map, source): (ParsedMap, String) = match map_path {
        Some(p) => (load_street_map(p)?, p.display().to_string()),
        None => (parse_street_map(BUNDLED_MAP)?, "bundled".into()),
    };
    let dens = map.densities();
    let bounds = map.layout.bounds;
    let models = [
        LayoutModel::Mplp {
            bounds,
            lambda_h: dens.lambda_h,
            lambda_v: dens.lambda_v,
        },
        LayoutModel::FixedGrid {
            bounds,
            spacing_h: dens.spacing_h(),
            spacing_v: dens.spacing_v(),
        },
        LayoutModel::Fixed(map.layout.clone()),
    ];
    let (mut w, path) = open_csv(
        s,
        "compare-streets",
        "compare_streets.csv",
        &[
            ("map", source),
            ("map_lambda_h", f(dens.lambda_h)),
            ("map_lambda_v", f(dens.lambda_v)),
            ("grid_spacing_h", f(dens.spacing_h())),
            ("grid_spacing_v", f(dens.spacing_v())),
            ("rate_form", format!("{form:?}")),
            ("ci", "95% half-width".into()),
        ],
    )?;
    w.write_record(["model", "ergodic_rate", "ci"])?;
    for (i, m) in models.iter().enumerate() {
        let r = estimate_ergodic_rate(
            m,
            &s.network,
            &ant,
            &settings(s, workers, Some(i as u64)),
            form,
        )?;
        w.write_record([m.name().to_string(), f(r.estimate), f(r.half_width_95)])?;
    }
    finish(w, &path, &[])?;
    Ok(path)
}

/// Prints one line per criterion and returns the number of failures.
pub fn validate(seed: Option<u64>, workers: Option<usize>, only: &[u8]) -> i32 {
    let mut opts = ValidationOptions::default();
    if let Some(s) = seed {
        opts.seed = s;
    }
    opts.workers = workers;
    let v = Validator::new(opts);
    let ids: Vec<u8> = if only.is_empty() {
        CRITERIA.iter().map(|(id, _)| *id).collect()
    } else {
        only.to_vec()
    };
    let mut failed = 0;
    for id in ids {
        let o = v.run(id);
        println!("{o}");
        failed += i32::from(!o.passed);
    }
    failed
}
