//! Cross-module invariants: the dissipation identity, block decoupling
//! against the dense oracle, interpolation with L = 1, and the contraction
//! structure of the propagated flow.

use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thermoplate_core::{
    block_resolvent_norm, classify_regularity, dense_oracle_norm, fit_decay, generator_block,
    interpolation_check, propagate_block, propagator, random_state, resolvent_identity_check,
    resolvent_norm, resonant_mode, simulate_decay, witness_omega, witness_zero, DecayKind,
    EigenModel, Regularity, SearchParams,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_vec3(rng: &mut ChaCha8Rng, scale: f64) -> [Complex64; 3] {
    let mut x = [c(0.0, 0.0); 3];
    for v in x.iter_mut() {
        *v = c(
            scale * (rng.gen::<f64>() - 0.5),
            scale * (rng.gen::<f64>() - 0.5),
        );
    }
    x
}

#[test]
fn dissipation_identity_ten_thousand_draws() {
    // the exact modal content of ||theta||_1^2 = Re <(i l - A) U, U>
    let mut rng = ChaCha8Rng::seed_from_u64(0xd155);
    let omegas = [0.0, 0.5, 1.0];
    for k in 0..10_000 {
        let eta = 10f64.powf(rng.gen::<f64>() * 6.0 - 1.0);
        let sigma = rng.gen::<f64>() * 2.5 - 1.0;
        let omega = omegas[k % 3];
        let block = generator_block(eta, sigma, omega).unwrap();
        let x = random_vec3(&mut rng, 2.0);
        let lhs = block.dissipation_rate(&x);
        let expect = -eta * x[2].norm_sqr();
        let slack = 1e-12 * (1.0 + block.weighted_norm_sq(&x)) * eta.max(1.0);
        assert!(
            (lhs - expect).abs() <= slack,
            "eta={eta} sigma={sigma} omega={omega}: {lhs} vs {expect}"
        );
    }
}

#[test]
fn dissipation_ignores_uv_phases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    for _ in 0..2_000 {
        let eta = 10f64.powf(rng.gen::<f64>() * 4.0);
        let sigma = rng.gen::<f64>() * 2.5 - 1.0;
        let omega = rng.gen::<f64>();
        let block = generator_block(eta, sigma, omega).unwrap();
        let x = random_vec3(&mut rng, 1.0);
        let base = block.dissipation_rate(&x);
        let mut y = x;
        y[0] *= Complex64::from_polar(1.0, rng.gen::<f64>() * 7.0);
        y[1] *= Complex64::from_polar(1.0, rng.gen::<f64>() * 7.0);
        let rotated = block.dissipation_rate(&y);
        let slack = 1e-12 * (1.0 + block.weighted_norm_sq(&x)) * eta.max(1.0);
        assert!((base - rotated).abs() <= slack);
    }
}

#[test]
fn block_eigenvalues_never_cross_the_axis() {
    // contraction generator per mode, checked through the characteristic
    // cubic of each block
    let mut rng = ChaCha8Rng::seed_from_u64(0xe16);
    for _ in 0..2_000 {
        let eta = 10f64.powf(rng.gen::<f64>() * 7.0 - 1.0);
        let sigma = rng.gen::<f64>() * 2.5 - 1.0;
        let omega = [0.0, 0.5, 1.0][rng.gen_range(0..3)];
        let p = propagator(generator_block(eta, sigma, omega).unwrap());
        for z in p.eigvals {
            assert!(
                z.re <= 1e-10 * eta.max(1.0),
                "Re = {} at eta={eta} sigma={sigma} omega={omega}",
                z.re
            );
        }
    }
}

#[test]
fn dense_oracle_equals_block_sup() {
    // block decoupling over parameter draws, N <= 16
    let model = EigenModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b10c);
    for _ in 0..40 {
        let sigma = rng.gen::<f64>() * 1.5;
        let omega = if rng.gen::<bool>() { 0.0 } else { rng.gen::<f64>() };
        let lambda = 10f64.powf(rng.gen::<f64>() * 3.0 - 1.0);
        let n = rng.gen_range(1..=16u64);
        let dense = dense_oracle_norm(&model, lambda, sigma, omega, n).unwrap();
        let mut block_max = 0.0f64;
        for k in 1..=n {
            let b = generator_block(model.eigenvalue(k).unwrap(), sigma, omega).unwrap();
            block_max = block_max.max(block_resolvent_norm(&b, lambda).unwrap());
        }
        assert!(
            (dense - block_max).abs() <= 1e-10 * block_max,
            "N={n} sigma={sigma} omega={omega} lambda={lambda}: {dense} vs {block_max}"
        );
    }
}

#[test]
fn resolvent_identity_holds_along_sweeps() {
    let model = EigenModel::default();
    for &(sigma, omega) in &[(0.25, 0.0), (1.0, 0.0), (0.8, 0.5), (1.4, 1.0)] {
        for &lambda in &[16.0, 1024.0, 65_536.0] {
            let worst = resolvent_identity_check(&model, sigma, omega, lambda, 100, 99).unwrap();
            assert!(worst <= 1e-10, "sigma={sigma} omega={omega} lambda={lambda}: {worst}");
        }
    }
}

#[test]
fn interpolation_with_unit_constant_ten_thousand_draws() {
    let model = EigenModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e77);
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=24usize);
        let coeffs: Vec<Complex64> = (0..len)
            .map(|_| {
                if rng.gen::<f64>() < 0.2 {
                    c(0.0, 0.0)
                } else {
                    c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
                }
            })
            .collect();
        let alpha = rng.gen::<f64>() * 4.0 - 2.0;
        let beta = alpha + rng.gen::<f64>() * 2.0 + 1e-6;
        let gamma = beta + rng.gen::<f64>() * 2.0 + 1e-6;
        let r = interpolation_check(&model, &coeffs, alpha, beta, gamma).unwrap();
        assert!(r.holds, "lhs {} rhs {}", r.lhs, r.rhs);
    }
}

#[test]
fn witness_lower_bounds_stay_below_operator_norm() {
    let model = EigenModel::default();
    let search = SearchParams::default();
    for &n in &[5u64, 20, 80] {
        for &sigma in &[0.25, 0.75, 1.0, 1.3] {
            let w = witness_zero(sigma, n, &model).unwrap();
            let s = resolvent_norm(&model, w.lambda, sigma, 0.0, &search).unwrap();
            assert!(
                s.norm >= w.lower_bound() - 1e-9,
                "zero witness sigma={sigma} n={n}: {} vs {}",
                s.norm,
                w.lower_bound()
            );
            let w = witness_omega(sigma, 1.0, n, &model).unwrap();
            let s = resolvent_norm(&model, w.lambda, sigma, 1.0, &search).unwrap();
            assert!(
                s.norm >= w.lower_bound() - 1e-9,
                "omega witness sigma={sigma} n={n}: {} vs {}",
                s.norm,
                w.lower_bound()
            );
        }
    }
}

#[test]
fn sharpness_wall_diverges_for_zero_witness() {
    // |lambda|^{2s-1+delta} (lower bound / ||F||) increases monotonically
    // over the trailing half once delta = 0.2 overshoots the sharp exponent
    let model = EigenModel::default();
    let ns = thermoplate_core::geometric_indices(20, 160, 7);
    let walls: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let w = witness_zero(0.75, n, &model).unwrap();
            w.lambda.powf(2.0 * 0.75 - 1.0 + 0.2) * w.lower_bound()
        })
        .collect();
    for pair in walls[walls.len() / 2 - 1..].windows(2) {
        assert!(pair[1] > pair[0], "wall not increasing: {walls:?}");
    }
}

#[test]
fn contraction_over_random_states() {
    let model = Arc::new(EigenModel::default());
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0);
    for trial in 0..10 {
        let sigma = rng.gen::<f64>() * 1.5;
        let omega = if trial % 2 == 0 { 0.0 } else { rng.gen::<f64>() };
        let init = random_state(&model, sigma, omega, 16, 1000 + trial).unwrap();
        let t_grid: Vec<f64> = (0..24).map(|k| k as f64 * 0.7).collect();
        let curve = simulate_decay(&model, sigma, omega, &init, &t_grid).unwrap();
        let initial = init.weighted_norm(sigma, omega).unwrap();
        for &(t, norm) in &curve {
            assert!(norm <= initial * (1.0 + 1e-12), "t={t}: {norm} > {initial}");
        }
        for w in curve.windows(2) {
            assert!(w[1].1 <= w[0].1 * (1.0 + 1e-12));
        }
    }
}

#[test]
fn propagator_semigroup_on_states() {
    let model = Arc::new(EigenModel::default());
    let init = random_state(&model, 0.75, 0.0, 8, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e9);
    for _ in 0..50 {
        let t = rng.gen::<f64>() * 10.0;
        let s = rng.gen::<f64>() * 10.0;
        for (i, x0) in init.coeffs.iter().enumerate() {
            let eta = model.eigenvalue(i as u64 + 1).unwrap();
            let p = propagator(generator_block(eta, 0.75, 0.0).unwrap());
            let joint = propagate_block(&p, x0, t + s);
            let split = propagate_block(&p, &propagate_block(&p, x0, t), s);
            for k in 0..3 {
                assert!((joint[k] - split[k]).norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn polynomial_and_exponential_fits_have_expected_signs() {
    // smoke-level decay coherence: exp-stable parameters give a definite
    // exponential rate, and a synthetic t^{-2} tail is recovered exactly
    let model = Arc::new(EigenModel::default());
    let init = thermoplate_core::smoothed_state(&model, 1.0, 0.0, 32, 7).unwrap();
    let times: Vec<f64> = (0..=40).map(|k| k as f64).collect();
    let curve = simulate_decay(&model, 1.0, 0.0, &init, &times).unwrap();
    let rate = fit_decay(&curve, DecayKind::Exponential).unwrap();
    assert!(rate > 0.0);

    let synthetic: Vec<(f64, f64)> = (0..200)
        .map(|k| {
            let t = 0.1 * 1.06f64.powi(k);
            (t, 5.0 * t.powi(-2))
        })
        .collect();
    let exponent = fit_decay(&synthetic, DecayKind::Polynomial).unwrap();
    assert!((exponent - 2.0).abs() < 1e-6);
}

#[test]
fn classified_plane_is_total_on_its_domain() {
    // every (sigma, omega) in [0, 3/2] x {0, 0.3, 1} classifies, and the
    // invariants of the prediction record hold
    for k in 0..=30 {
        let sigma = k as f64 * 0.05;
        for &omega in &[0.0, 0.3, 1.0] {
            let p = classify_regularity(sigma, omega).unwrap();
            match p.regularity {
                Regularity::Analytic => assert_eq!(p.phi, Some(1.0)),
                Regularity::Gevrey => {
                    let phi = p.phi.unwrap();
                    assert!(phi > 0.0 && phi < 1.0, "phi {phi} at sigma={sigma}");
                    assert!((p.gevrey_order_bound.unwrap() - 1.0 / phi).abs() < 1e-12);
                }
                Regularity::Polynomial => assert!(p.poly_rate.unwrap() > 0.0),
                Regularity::ExpStableOnly => assert_eq!(p.phi, Some(0.0)),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn frac_power_additive(
        eta in 1e-3f64..1e9,
        r1 in -2.0f64..2.0,
        r2 in -2.0f64..2.0,
    ) {
        let lhs = thermoplate_core::frac_power_coeff(eta, r1 + r2).unwrap();
        let rhs = thermoplate_core::frac_power_coeff(eta, r1).unwrap()
            * thermoplate_core::frac_power_coeff(eta, r2).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()));
    }

    #[test]
    fn eigenvalues_nondecreasing(
        scale in 1e-3f64..1e3,
        exponent in 0.1f64..4.0,
        n in 1u64..5_000,
    ) {
        let m = EigenModel::power_law(scale, exponent).unwrap();
        prop_assert!(m.eigenvalue(n).unwrap() <= m.eigenvalue(n + 1).unwrap());
    }

    #[test]
    fn resonant_mode_is_global_minimizer(
        lambda in 0.1f64..5e3,
        omega in prop::sample::select(vec![0.0, 0.25, 1.0]),
    ) {
        let m = EigenModel::default();
        let got = resonant_mode(&m, lambda, omega).unwrap();
        let objective = |n: u64| {
            let eta = m.eigenvalue(n).unwrap();
            (lambda * lambda * (1.0 + omega * eta) - eta * eta).abs()
        };
        let brute = (1..=10_000u64)
            .min_by(|&a, &b| objective(a).total_cmp(&objective(b)))
            .unwrap();
        prop_assert_eq!(got, brute);
    }

    #[test]
    fn weighted_norm_is_positive_definite(
        eta in 1e-2f64..1e6,
        sigma in -1.0f64..1.5,
        omega in 0.0f64..2.0,
        re in -3.0f64..3.0,
        im in -3.0f64..3.0,
        slot in 0usize..3,
    ) {
        let block = generator_block(eta, sigma, omega).unwrap();
        let mut x = [c(0.0, 0.0); 3];
        x[slot] = c(re, im);
        let n = block.weighted_norm_sq(&x);
        prop_assert!(n >= 0.0);
        if re != 0.0 || im != 0.0 {
            prop_assert!(n > 0.0);
        }
    }
}
