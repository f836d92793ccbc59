//! The invariant suites behind `thermoplate verify`: exact identities,
//! oracle agreement, and semigroup structure, each reported as one
//! pass/fail line.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thermoplate_core::{
    block_resolvent_norm, dense_oracle_norm, generator_block, interpolation_check,
    propagate_block, propagator, resolvent_identity_check, resolvent_norm, witness_omega,
    witness_zero, EigenModel, SearchParams,
};

pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn random_vec3(rng: &mut ChaCha8Rng, scale: f64) -> [Complex64; 3] {
    let mut x = [Complex64::new(0.0, 0.0); 3];
    for v in x.iter_mut() {
        *v = Complex64::new(
            scale * (rng.gen::<f64>() - 0.5),
            scale * (rng.gen::<f64>() - 0.5),
        );
    }
    x
}

fn dissipation_identity(draws: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for k in 0..draws {
        let eta = 10f64.powf(rng.gen::<f64>() * 7.0 - 1.0);
        let sigma = rng.gen::<f64>() * 2.5 - 1.0;
        let omega = [0.0, 0.5, 1.0][k % 3];
        let block = generator_block(eta, sigma, omega).unwrap();
        let x = random_vec3(&mut rng, 2.0);
        let residual = (block.dissipation_rate(&x) + eta * x[2].norm_sqr()).abs();
        let slack = 1e-12 * (1.0 + block.weighted_norm_sq(&x));
        worst = worst.max(residual / slack.max(f64::MIN_POSITIVE));
    }
    SuiteResult {
        name: "dissipation-identity",
        passed: worst <= 1.0,
        detail: format!("{draws} draws, worst residual {worst:.3e} of the 1e-12 (1 + |x|_W^2) slack"),
    }
}

fn resolvent_identity(draws: usize, seed: u64) -> SuiteResult {
    let model = EigenModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1d);
    let combos = 100usize;
    let per = (draws / combos).max(1);
    let mut worst = 0.0f64;
    for k in 0..combos {
        let sigma = rng.gen::<f64>() * 1.5;
        let omega = if k % 2 == 0 { 0.0 } else { rng.gen::<f64>() };
        let lambda = 10f64.powf(rng.gen::<f64>() * 5.0);
        let r = resolvent_identity_check(&model, sigma, omega, lambda, per, rng.gen()).unwrap();
        worst = worst.max(r);
    }
    SuiteResult {
        name: "resolvent-identity",
        passed: worst <= 1e-10,
        detail: format!("{} solves, worst normalized residual {worst:.3e} (tol 1e-10)", combos * per),
    }
}

fn interpolation_unit_constant(draws: usize, seed: u64) -> SuiteResult {
    let model = EigenModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2e);
    let mut failures = 0usize;
    for _ in 0..draws {
        let len = rng.gen_range(1..=24usize);
        let coeffs: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let alpha = rng.gen::<f64>() * 4.0 - 2.0;
        let beta = alpha + rng.gen::<f64>() * 2.0 + 1e-6;
        let gamma = beta + rng.gen::<f64>() * 2.0 + 1e-6;
        if !interpolation_check(&model, &coeffs, alpha, beta, gamma)
            .unwrap()
            .holds
        {
            failures += 1;
        }
    }
    SuiteResult {
        name: "interpolation-unit-constant",
        passed: failures == 0,
        detail: format!("{draws} random modal vectors, {failures} violations of L = 1"),
    }
}

fn propagator_at_zero(seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3f);
    let mut exact = true;
    for _ in 0..200 {
        let eta = 10f64.powf(rng.gen::<f64>() * 5.0 - 1.0);
        let sigma = rng.gen::<f64>() * 2.5 - 1.0;
        let omega = rng.gen::<f64>();
        let p = propagator(generator_block(eta, sigma, omega).unwrap());
        let x0 = random_vec3(&mut rng, 1.0);
        if propagate_block(&p, &x0, 0.0) != x0 {
            exact = false;
        }
    }
    SuiteResult {
        name: "propagator-at-zero",
        passed: exact,
        detail: "200 blocks, e^{0 M} x = x exactly".into(),
    }
}

fn semigroup_property(seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4a);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let eta = 10f64.powf(rng.gen::<f64>() * 4.0 - 1.0);
        let sigma = rng.gen::<f64>() * 1.5;
        let omega = rng.gen::<f64>();
        let p = propagator(generator_block(eta, sigma, omega).unwrap());
        let x0 = random_vec3(&mut rng, 1.0);
        let t = rng.gen::<f64>() * 10.0;
        let s = rng.gen::<f64>() * 10.0;
        let joint = propagate_block(&p, &x0, t + s);
        let split = propagate_block(&p, &propagate_block(&p, &x0, t), s);
        for k in 0..3 {
            worst = worst.max((joint[k] - split[k]).norm());
        }
    }
    SuiteResult {
        name: "semigroup-property",
        passed: worst <= 1e-10,
        detail: format!("500 blocks, worst |e^{{(t+s)M}}x - e^{{sM}}e^{{tM}}x| = {worst:.3e} (tol 1e-10)"),
    }
}

fn contraction(seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5b);
    let mut worst_growth = 0.0f64;
    for _ in 0..500 {
        let eta = 10f64.powf(rng.gen::<f64>() * 5.0 - 1.0);
        let sigma = rng.gen::<f64>() * 2.5 - 1.0;
        let omega = rng.gen::<f64>();
        let p = propagator(generator_block(eta, sigma, omega).unwrap());
        let x0 = random_vec3(&mut rng, 1.0);
        let n0 = p.block.weighted_norm(&x0);
        let mut prev = n0;
        for &t in &[0.1, 1.0, 10.0] {
            let n = p.block.weighted_norm(&propagate_block(&p, &x0, t));
            worst_growth = worst_growth.max((n - prev) / n0.max(f64::MIN_POSITIVE));
            prev = n;
        }
    }
    SuiteResult {
        name: "contraction",
        passed: worst_growth <= 1e-12,
        detail: format!("500 trajectories, worst relative norm growth {worst_growth:.3e} (tol 1e-12)"),
    }
}

fn oracle_agreement(seed: u64) -> SuiteResult {
    let model = EigenModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6c);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let sigma = rng.gen::<f64>() * 1.5;
        let omega = if rng.gen::<bool>() { 0.0 } else { rng.gen::<f64>() };
        let lambda = 10f64.powf(rng.gen::<f64>() * 3.0 - 1.0);
        let dense = dense_oracle_norm(&model, lambda, sigma, omega, 8).unwrap();
        let mut block_max = 0.0f64;
        for n in 1..=8u64 {
            let b = generator_block(model.eigenvalue(n).unwrap(), sigma, omega).unwrap();
            block_max = block_max.max(block_resolvent_norm(&b, lambda).unwrap());
        }
        worst = worst.max((dense - block_max).abs() / block_max);
    }
    SuiteResult {
        name: "dense-oracle-agreement",
        passed: worst <= 1e-10,
        detail: format!("50 random (sigma, omega, lambda) at N = 8, worst rel err {worst:.3e} (tol 1e-10)"),
    }
}

fn witness_residuals() -> SuiteResult {
    let model = EigenModel::default();
    let mut ok = true;
    for &sigma in &[0.0, 0.25, 0.75, 1.0, 1.25, 1.5] {
        for &n in &[3u64, 10, 100] {
            if witness_zero(sigma, n, &model).is_err() {
                ok = false;
            }
            if witness_omega(sigma, 1.0, n, &model).is_err() {
                ok = false;
            }
        }
    }
    SuiteResult {
        name: "witness-residuals",
        passed: ok,
        detail: "2x2 witness systems solved to 1e-12 relative residual across the sigma range".into(),
    }
}

fn axis_regularity() -> SuiteResult {
    let model = EigenModel::default();
    let search = SearchParams::default();
    let mut ok = true;
    let mut worst_residual = 0.0f64;
    for k in -2..=24 {
        let lambda = 2f64.powi(k);
        for &(sigma, omega) in &[(0.25, 0.0), (1.0, 0.0), (1.5, 0.0), (1.1, 1.0), (1.5, 1.0)] {
            match resolvent_norm(&model, lambda, sigma, omega, &search) {
                Ok(s) => worst_residual = worst_residual.max(s.identity_residual),
                Err(_) => ok = false,
            }
        }
    }
    SuiteResult {
        name: "axis-regularity",
        passed: ok,
        detail: format!(
            "no singular systems on the sampled axis; worst probe residual {worst_residual:.3e}"
        ),
    }
}

/// All suites, in reporting order.
pub fn run_all(draws: usize, seed: u64) -> Vec<SuiteResult> {
    vec![
        dissipation_identity(draws, seed),
        resolvent_identity(draws, seed),
        interpolation_unit_constant(draws, seed),
        propagator_at_zero(seed),
        semigroup_property(seed),
        contraction(seed),
        oracle_agreement(seed),
        witness_residuals(),
        axis_regularity(),
    ]
}
