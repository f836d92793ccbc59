//! Subcommand implementations. Each builds its effective config from flags
//! over the optional config file, echoes it into the CSV header, runs the
//! core computation, and returns the process exit code: 0 all verdicts
//! pass, 2 at least one theory mismatch (usage and runtime errors surface
//! as `Err` and exit 1).

use std::sync::Arc;

use anyhow::{bail, Result};

use thermoplate_core::{
    classify_regularity, fit_decay, geometric_indices, lemma_ratio_scan, ratio_test,
    scan_and_verify, simulate_decay, DecayKind, EigenModel, LemmaScanConfig, Regularity,
    SweepConfig, Verdict, WitnessPoint, LEMMA_ITEMS,
};

use crate::args::{
    Cli, EvolveArgs, InequalitiesArgs, RegionMapArgs, ScanArgs, SweepFlags, VerifyArgs,
    WitnessArgs,
};
use crate::output::{fmt, write_header, Sink};
use crate::overlay::{parse_grid, parse_model, resolve, FileConfig};
use crate::verify;

pub struct Common {
    pub model_spec: String,
    pub model: EigenModel,
    pub seed: u64,
    pub threads: usize,
    pub output: String,
}

impl Common {
    pub fn build(cli: &Cli, file: &FileConfig) -> Result<Self> {
        let model_spec = cli
            .model
            .clone()
            .or_else(|| file.get_string("model"))
            .unwrap_or_else(|| "power-law:1:2".to_string());
        let model = parse_model(&model_spec)?;
        let seed = resolve(cli.seed, file, "seed", 42)?;
        let threads = resolve(cli.threads, file, "threads", 0)?;
        let output = cli
            .output
            .clone()
            .or_else(|| file.get_string("output"))
            .unwrap_or_else(|| "-".to_string());
        Ok(Common {
            model_spec,
            model,
            seed,
            threads,
            output,
        })
    }

    fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("model".into(), self.model_spec.clone()),
            ("seed".into(), self.seed.to_string()),
            ("threads".into(), self.threads.to_string()),
        ]
    }
}

fn sweep_config(flags: &SweepFlags, file: &FileConfig) -> Result<SweepConfig> {
    let defaults = SweepConfig::default();
    let config = SweepConfig {
        lambda_min: resolve(flags.lambda_min, file, "lambda-min", defaults.lambda_min)?,
        lambda_max: resolve(flags.lambda_max, file, "lambda-max", defaults.lambda_max)?,
        points_per_octave: resolve(
            flags.points_per_octave,
            file,
            "points-per-octave",
            defaults.points_per_octave,
        )?,
        exponent_tol: resolve(flags.exponent_tol, file, "exponent-tol", defaults.exponent_tol)?,
        exponent_tol_analytic: resolve(
            flags.exponent_tol_analytic,
            file,
            "exponent-tol-analytic",
            defaults.exponent_tol_analytic,
        )?,
        use_envelope: !(flags.raw_fit || file.get::<bool>("raw-fit")?.unwrap_or(false)),
        search: defaults.search,
    };
    Ok(config)
}

fn echo_sweep(config: &SweepConfig) -> Vec<(String, String)> {
    vec![
        ("lambda-min".into(), fmt(config.lambda_min)),
        ("lambda-max".into(), fmt(config.lambda_max)),
        ("points-per-octave".into(), config.points_per_octave.to_string()),
        ("exponent-tol".into(), fmt(config.exponent_tol)),
        ("exponent-tol-analytic".into(), fmt(config.exponent_tol_analytic)),
        ("envelope-fit".into(), config.use_envelope.to_string()),
    ]
}

fn echo_param(key: &str, value: f64) -> (String, String) {
    (key.into(), fmt(value))
}

pub fn resolvent_scan(cli: &Cli, args: &ScanArgs, file: &FileConfig) -> Result<u8> {
    let common = Common::build(cli, file)?;
    let sigma = resolve(args.sigma, file, "sigma", 1.0)?;
    let omega = resolve(args.omega, file, "omega", 0.0)?;
    let sweep = sweep_config(&args.sweep, file)?;

    let report = scan_and_verify(&common.model, sigma, omega, &sweep)?;

    let mut sink = Sink::open(&common.output)?;
    let mut config = common.echo();
    config.push(echo_param("sigma", sigma));
    config.push(echo_param("omega", omega));
    config.extend(echo_sweep(&sweep));
    write_header(&mut sink, "resolvent-scan", &config)?;
    sink.row("lambda,norm,argmax_mode,identity_residual")?;
    for s in &report.samples {
        sink.row(&format!(
            "{},{},{},{}",
            fmt(s.lambda),
            fmt(s.norm),
            s.argmax_mode,
            fmt(s.identity_residual)
        ))?;
    }
    let p = &report.prediction;
    sink.comment(&format!("fitted_exponent = {}", fmt(report.phi_measured)))?;
    sink.comment(&format!("fit_slope = {}", fmt(report.fit.slope)))?;
    sink.comment(&format!("fit_r_squared = {}", fmt(report.fit.r_squared)))?;
    sink.comment(&format!(
        "fit_window = [{}, {}]",
        fmt(report.fit.lambda_window.0),
        fmt(report.fit.lambda_window.1)
    ))?;
    sink.comment(&format!("samples_used = {}", report.fit.samples_used))?;
    sink.comment(&format!("predicted_regularity = {}", p.regularity.as_str()))?;
    if let Some(phi) = p.expected_decay_exponent() {
        sink.comment(&format!("phi_theory = {}", fmt(phi)))?;
    }
    if let Some(bound) = p.gevrey_order_bound {
        sink.comment(&format!("gevrey_order_bound = {}", fmt(bound)))?;
    }
    if let Some(rate) = p.poly_rate {
        sink.comment(&format!("poly_rate = {}", fmt(rate)))?;
    }
    sink.comment(&format!("sharp = {}", p.sharp))?;
    sink.comment(&format!("band_bounded = {}", report.band_bounded))?;
    sink.comment(&format!("verdict = {}", report.verdict.as_str()))?;
    sink.finish()?;

    Ok(if report.verdict == Verdict::Mismatch { 2 } else { 0 })
}

pub fn region_map(cli: &Cli, args: &RegionMapArgs, file: &FileConfig) -> Result<u8> {
    let common = Common::build(cli, file)?;
    let sweep = sweep_config(&args.sweep, file)?;
    let sigma_grid: Vec<f64> = if let Some(sigma) = args.sigma {
        vec![sigma]
    } else if let Some(spec) = args
        .sigma_grid
        .clone()
        .or_else(|| file.get_string("sigma-grid"))
    {
        parse_grid(&spec)?
    } else {
        parse_grid("0.1:1.5:0.1")?
    };
    let omega_grid: Vec<f64> = if let Some(spec) = args
        .omega_grid
        .clone()
        .or_else(|| file.get_string("omega-grid"))
    {
        parse_grid(&spec)?
    } else {
        vec![resolve(args.omega, file, "omega", 0.0)?]
    };

    let mut sink = Sink::open(&common.output)?;
    let mut config = common.echo();
    config.push((
        "sigma-grid".into(),
        sigma_grid.iter().map(|v| fmt(*v)).collect::<Vec<_>>().join(" "),
    ));
    config.push((
        "omega-grid".into(),
        omega_grid.iter().map(|v| fmt(*v)).collect::<Vec<_>>().join(" "),
    ));
    config.extend(echo_sweep(&sweep));
    write_header(&mut sink, "region-map", &config)?;
    sink.row("sigma,omega,predicted_regularity,phi_theory,phi_measured,r_squared,verdict")?;

    let mut mismatches = 0usize;
    for &omega in &omega_grid {
        for &sigma in &sigma_grid {
            let report = scan_and_verify(&common.model, sigma, omega, &sweep)?;
            if report.verdict == Verdict::Mismatch {
                mismatches += 1;
            }
            let phi_theory = report
                .prediction
                .expected_decay_exponent()
                .map(fmt)
                .unwrap_or_default();
            sink.row(&format!(
                "{},{},{},{},{},{},{}",
                fmt(sigma),
                fmt(omega),
                report.prediction.regularity.as_str(),
                phi_theory,
                fmt(report.phi_measured),
                fmt(report.fit.r_squared),
                report.verdict.as_str()
            ))?;
        }
    }
    sink.comment(&format!(
        "points = {}, mismatches = {mismatches}",
        sigma_grid.len() * omega_grid.len()
    ))?;
    sink.finish()?;
    Ok(if mismatches > 0 { 2 } else { 0 })
}

pub fn witness(cli: &Cli, args: &WitnessArgs, file: &FileConfig) -> Result<u8> {
    let common = Common::build(cli, file)?;
    let sigma = resolve(args.sigma, file, "sigma", 0.75)?;
    let omega = resolve(args.omega, file, "omega", 0.0)?;
    let n_start = resolve(args.n_start, file, "n-start", 20)?;
    let n_end = resolve(args.n_end, file, "n-end", 160)?;
    let n_count = resolve(args.n_count, file, "n-count", 7)?;
    if n_start == 0 || n_end < n_start {
        bail!("need 1 <= n-start <= n-end, got {n_start}..{n_end}");
    }

    let indices = geometric_indices(n_start, n_end, n_count);
    let points: Vec<WitnessPoint> = indices
        .iter()
        .map(|&n| {
            if omega == 0.0 {
                thermoplate_core::witness_zero(sigma, n, &common.model)
            } else {
                thermoplate_core::witness_omega(sigma, omega, n, &common.model)
            }
        })
        .collect::<thermoplate_core::Result<_>>()?;
    let test = ratio_test(&points)?;
    let prediction = classify_regularity(sigma, omega)?;

    let mut sink = Sink::open(&common.output)?;
    let mut config = common.echo();
    config.push(echo_param("sigma", sigma));
    config.push(echo_param("omega", omega));
    config.push(("n-start".into(), n_start.to_string()));
    config.push(("n-end".into(), n_end.to_string()));
    config.push(("n-count".into(), n_count.to_string()));
    write_header(&mut sink, "witness", &config)?;
    sink.row("n,eta,lambda,abs_mu,abs_nu,lower_bound,ratio")?;
    for p in &points {
        sink.row(&format!(
            "{},{},{},{},{},{},{}",
            p.n,
            fmt(p.eta),
            fmt(p.lambda),
            fmt(p.mu.norm()),
            fmt(p.nu.norm()),
            fmt(p.lower_bound()),
            fmt(p.ratio())
        ))?;
    }
    sink.comment(&format!(
        "predicted_exponent = {}",
        fmt(points[0].predicted_exponent)
    ))?;
    sink.comment(&format!("max_rel_spread = {}", fmt(test.max_rel_spread)))?;
    sink.comment(&format!("converged = {}", test.converged))?;
    sink.comment(&format!("sharp_regime = {}", prediction.sharp))?;
    let verdict = if !prediction.sharp {
        "descriptive"
    } else if test.converged {
        "match"
    } else {
        "mismatch"
    };
    sink.comment(&format!("verdict = {verdict}"))?;
    sink.finish()?;
    Ok(if verdict == "mismatch" { 2 } else { 0 })
}

pub fn evolve(cli: &Cli, args: &EvolveArgs, file: &FileConfig) -> Result<u8> {
    let common = Common::build(cli, file)?;
    let sigma = resolve(args.sigma, file, "sigma", 1.0)?;
    let omega = resolve(args.omega, file, "omega", 0.0)?;
    let modes = resolve(args.modes, file, "modes", 64)?;
    let t_max = resolve(args.t_max, file, "t-max", 50.0)?;
    let ppo = resolve(args.t_points_per_octave, file, "t-points-per-octave", 4)?;
    let init_kind = args
        .init
        .clone()
        .or_else(|| file.get_string("init"))
        .unwrap_or_else(|| "smoothed".to_string());
    let fit_kind = args
        .fit
        .clone()
        .or_else(|| file.get_string("fit"))
        .unwrap_or_else(|| "exponential".to_string());
    if !(t_max > 0.0) || ppo == 0 || modes == 0 {
        bail!("need t-max > 0, t-points-per-octave >= 1 and modes >= 1");
    }

    let model = Arc::new(common.model.clone());
    let init = match init_kind.as_str() {
        "smoothed" => thermoplate_core::smoothed_state(&model, sigma, omega, modes, common.seed)?,
        "random" => thermoplate_core::random_state(&model, sigma, omega, modes, common.seed)?,
        other => bail!("unknown init kind {other:?} (smoothed or random)"),
    };

    // dyadic grid over ten octaves, plus t = 0
    let octaves = 10u32;
    let mut times = vec![0.0];
    for j in (0..=octaves * ppo).rev() {
        times.push(t_max * 2f64.powf(-(j as f64) / ppo as f64));
    }
    let curve = simulate_decay(&model, sigma, omega, &init, &times)?;

    let fitted: Option<(&str, f64)> = match fit_kind.as_str() {
        "exponential" => Some(("decay_rate", fit_decay(&curve, DecayKind::Exponential)?)),
        "polynomial" => Some(("decay_exponent", fit_decay(&curve, DecayKind::Polynomial)?)),
        "none" => None,
        other => bail!("unknown fit kind {other:?} (exponential, polynomial, or none)"),
    };
    let contraction_ok = curve.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12));

    let mut sink = Sink::open(&common.output)?;
    let mut config = common.echo();
    config.push(echo_param("sigma", sigma));
    config.push(echo_param("omega", omega));
    config.push(("modes".into(), modes.to_string()));
    config.push(echo_param("t-max", t_max));
    config.push(("t-points-per-octave".into(), ppo.to_string()));
    config.push(("init".into(), init_kind.clone()));
    config.push(("fit".into(), fit_kind.clone()));
    write_header(&mut sink, "evolve", &config)?;
    sink.row("t,norm")?;
    for &(t, norm) in &curve {
        sink.row(&format!("{},{}", fmt(t), fmt(norm)))?;
    }
    if let Some((label, value)) = fitted {
        sink.comment(&format!("{label} = {}", fmt(value)))?;
    }
    sink.comment(&format!("contraction_ok = {contraction_ok}"))?;
    sink.finish()?;
    Ok(if contraction_ok { 0 } else { 2 })
}

pub fn inequalities(cli: &Cli, args: &InequalitiesArgs, file: &FileConfig) -> Result<u8> {
    let common = Common::build(cli, file)?;
    let sigma = resolve(args.sigma, file, "sigma", 1.0)?;
    let omega = resolve(args.omega, file, "omega", 0.0)?;
    let defaults = LemmaScanConfig::default();
    let config = LemmaScanConfig {
        lambda_min: resolve(args.lambda_min, file, "lambda-min", defaults.lambda_min)?,
        lambda_max: resolve(args.lambda_max, file, "lambda-max", defaults.lambda_max)?,
        points_per_octave: resolve(
            args.points_per_octave,
            file,
            "points-per-octave",
            defaults.points_per_octave,
        )?,
        support_halfwidth: defaults.support_halfwidth,
        seed: common.seed,
    };
    let items: Vec<&str> = match args.items.clone().or_else(|| file.get_string("items")) {
        Some(spec) => {
            let mut ids = Vec::new();
            for raw in spec.split(',') {
                let id = raw.trim();
                let item = thermoplate_core::lemma_item(id)?;
                ids.push(item.id);
            }
            ids
        }
        None => LEMMA_ITEMS
            .iter()
            .filter(|item| item.applies(sigma, omega))
            .map(|item| item.id)
            .collect(),
    };
    if items.is_empty() {
        bail!("no lemma items apply at sigma = {sigma}, omega = {omega}");
    }

    let mut sink = Sink::open(&common.output)?;
    let mut header = common.echo();
    header.push(echo_param("sigma", sigma));
    header.push(echo_param("omega", omega));
    header.push(("items".into(), items.join(" ")));
    header.push(("lambda-min".into(), fmt(config.lambda_min)));
    header.push(("lambda-max".into(), fmt(config.lambda_max)));
    header.push(("points-per-octave".into(), config.points_per_octave.to_string()));
    write_header(&mut sink, "inequalities", &header)?;
    sink.row("item_id,lambda,ratio")?;

    let mut all_bounded = true;
    let mut footers = Vec::new();
    for id in &items {
        let scan = lemma_ratio_scan(id, &common.model, sigma, omega, &config)?;
        for &(lambda, ratio) in &scan.ratios {
            sink.row(&format!("{id},{},{}", fmt(lambda), fmt(ratio)))?;
        }
        if !scan.report.bounded_verdict {
            all_bounded = false;
        }
        footers.push(format!(
            "{id}: sup_ratio = {}, argmax_lambda = {}, bounded = {}",
            fmt(scan.report.sup_ratio),
            fmt(scan.report.argmax_lambda),
            scan.report.bounded_verdict
        ));
    }
    for line in footers {
        sink.comment(&line)?;
    }
    sink.finish()?;
    Ok(if all_bounded { 0 } else { 2 })
}

pub fn run_verify(cli: &Cli, args: &VerifyArgs, file: &FileConfig) -> Result<u8> {
    let common = Common::build(cli, file)?;
    let draws = resolve(args.draws, file, "draws", 10_000)?;
    let mut sink = Sink::open(&common.output)?;
    let mut config = common.echo();
    config.push(("draws".into(), draws.to_string()));
    write_header(&mut sink, "verify", &config)?;
    let results = verify::run_all(draws, common.seed);
    let mut all_passed = true;
    for r in &results {
        if !r.passed {
            all_passed = false;
        }
        sink.row(&format!(
            "{} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        ))?;
    }
    sink.comment(&format!(
        "suites = {}, failed = {}",
        results.len(),
        results.iter().filter(|r| !r.passed).count()
    ))?;
    sink.finish()?;
    Ok(if all_passed { 0 } else { 2 })
}

/// Regularity prediction summary used by the region-map notes.
pub fn describe_prediction(regularity: Regularity) -> &'static str {
    regularity.as_str()
}
