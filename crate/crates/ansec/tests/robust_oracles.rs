//! Oracles for the worst-case machinery: S-procedure block identities
//! checked against independent ball-minimization, closed-form robust
//! capacities, degeneration to the perfect-knowledge solver at zero radii,
//! and certificate soundness against sampled channel balls.

use ansec::model::{ball_quadratic_min, worst_case_eval, ChannelSet, CovarianceTriple, SystemConfig};
use ansec::perfect_region;
use ansec::robust_region::{
    beta_max, build_lmis, robust_inner, robust_qoms_srm, robust_region_sweep, t1_wc_bound,
    wc_multicast_capacity, RobustSettings,
};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use sdp::HermitianMatrix;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Five-receiver, two-antenna channel fixture used across the test suite.
fn five_user_channels() -> Vec<Vec<Complex64>> {
    vec![
        vec![c(0.3802, -1.5972), c(1.2968, 0.6096)],
        vec![c(0.2254, -0.3066), c(-0.9247, 0.2423)],
        vec![c(0.5303, -0.9545), c(1.9583, 2.1460)],
        vec![c(0.5129, 0.5054), c(-0.0446, -0.1449)],
        vec![c(0.0878, -0.9963), c(1.0534, 1.0021)],
    ]
}

fn random_channel(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0))
        .collect()
}

fn random_psd(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
    let a = random_channel(rng, n);
    let b = random_channel(rng, n);
    HermitianMatrix::outer(&a).add_scaled(rng.random::<f64>(), &HermitianMatrix::outer(&b))
}

#[test]
fn collapsed_cap_block_matches_scalar_inequality() {
    // At zero radius the eavesdropper cap degenerates to the scalar
    // condition (beta - 1)(1 + h Qa h^H) >= h Qc h^H.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let h1 = random_channel(&mut rng, 2);
        let hk = random_channel(&mut rng, 2);
        let cs = ChannelSet::new(2, vec![h1, hk.clone()], vec![0.0, 0.0]).unwrap();
        let qc = random_psd(&mut rng, 2);
        let qa = random_psd(&mut rng, 2);
        let beta = 1.0 + rng.random::<f64>() * 3.0;
        let triple =
            CovarianceTriple::new(HermitianMatrix::zeros(2), qc.clone(), qa.clone()).unwrap();
        let blocks = build_lmis(beta, 1.0, 0.0, &triple, &[0.0], &[0.0, 0.0], 0.0, &cs);
        let block = &blocks.eaves_caps[0];
        assert_eq!(block.dim(), 1);
        let expected = (beta - 1.0) * (1.0 + qa.quad_form(&hk)) - qc.quad_form(&hk);
        assert!(
            (block.get(0, 0).re - expected).abs() < 1e-10,
            "collapsed block {} vs scalar {}",
            block.get(0, 0).re,
            expected
        );
    }
}

#[test]
fn qoms_floor_multiplier_is_tight_for_isotropic_covariance() {
    // With Q0 = c I the optimal multiplier is delta* = c (||h||/eps - 1) and
    // the floor block is feasible exactly when tau' <= c (||h|| - eps)^2.
    let h = vec![c(0.9, -0.3), c(0.4, 1.1)];
    let other = vec![c(1.0, 0.0), c(0.0, 1.0)];
    let eps = 0.3;
    let cval = 2.0;
    let norm = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let cs = ChannelSet::new(2, vec![other, h.clone()], vec![0.0, eps]).unwrap();
    let q0 = HermitianMatrix::scaled_identity(2, cval);
    let triple =
        CovarianceTriple::new(q0, HermitianMatrix::zeros(2), HermitianMatrix::zeros(2)).unwrap();
    let delta_star = cval * (norm / eps - 1.0);
    let threshold = cval * (norm - eps).powi(2);

    for (factor, feasible) in [(1.0 - 1e-3, true), (1.0 + 1e-3, false)] {
        let tau_prime = threshold * factor;
        let blocks = build_lmis(
            1.5,
            1.0,
            tau_prime,
            &triple,
            &[0.0],
            &[0.0, delta_star],
            0.0,
            &cs,
        );
        let min_eig = blocks.qoms_floors[1].min_eigenvalue();
        if feasible {
            assert!(min_eig >= -1e-9, "expected feasible floor, min eig {min_eig}");
        } else {
            assert!(min_eig < 0.0, "expected infeasible floor, min eig {min_eig}");
        }
    }
}

#[test]
fn feasible_cap_block_bounds_leakage_over_the_ball() {
    // A PSD cap block certifies h Qc h^H <= (beta - 1)(1 + h Qa h^H) for
    // every channel in the ball; check against direct ball minimization.
    let h1 = vec![c(0.2, 0.1), c(-0.4, 0.6)];
    let hk = vec![c(0.8, -0.5), c(0.3, 0.9)];
    let eps = 0.4;
    let beta = 3.0;
    let cs = ChannelSet::new(2, vec![h1, hk.clone()], vec![0.0, eps]).unwrap();
    let qa = HermitianMatrix::scaled_identity(2, 1.0);
    let qc = HermitianMatrix::outer(&[c(0.5, 0.0), c(0.2, -0.1)]);
    let triple = CovarianceTriple::new(HermitianMatrix::zeros(2), qc.clone(), qa.clone()).unwrap();

    let m = qa.scaled(beta - 1.0).add_scaled(-1.0, &qc);
    let mut certified = None;
    for i in 0..200 {
        let t = 0.02 * i as f64;
        let blocks = build_lmis(beta, 1.0, 0.0, &triple, &[t], &[0.0, 0.0], 0.0, &cs);
        if blocks.eaves_caps[0].min_eigenvalue() >= -1e-9 {
            certified = Some(t);
            break;
        }
    }
    assert!(certified.is_some(), "no multiplier certified the cap block");
    let worst_margin = ball_quadratic_min(&m, &hk, eps, beta - 1.0);
    assert!(
        worst_margin >= -1e-7,
        "certified cap violated in the ball: margin {worst_margin}"
    );
}

#[test]
fn wc_capacity_matches_aligned_beamforming_closed_form() {
    // Identical channels and radii reduce worst-case multicast capacity to
    // robust beamforming at one ball: log2(1 + P (||h|| - eps)^2).
    let h = vec![c(1.2, -0.7), c(0.4, 0.9)];
    let eps = 0.25;
    let power = 8.0;
    let norm = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let cs = ChannelSet::new(2, vec![h.clone(), h], vec![eps, eps]).unwrap();
    let config = SystemConfig::new(cs, power, 0.2, 1e-3, 4).unwrap();
    let (cap, q0) = wc_multicast_capacity(&config).unwrap();
    let expected = (1.0 + power * (norm - eps).powi(2)).log2();
    assert!(
        (cap - expected).abs() < 1e-4,
        "wc capacity {cap} vs closed form {expected}"
    );
    assert!(q0.trace() <= power * (1.0 + 1e-6));
}

#[test]
fn robust_inner_degenerates_to_charnes_cooper_at_zero_radii() {
    let channels = five_user_channels();
    let cs = ChannelSet::new(2, channels[..3].to_vec(), vec![0.0; 3]).unwrap();
    let config = SystemConfig::new(cs, 10.0, 0.3, 5e-4, 4).unwrap();
    let settings = RobustSettings::from_config(&config);

    for (beta, tau_prime) in [(1.3, 0.4), (2.5, 1.5), (4.0, 0.1)] {
        let robust = robust_inner(beta, tau_prime, &config, &settings).unwrap();
        let perfect = perfect_region::inner_sdp(beta, tau_prime, &config).unwrap();
        match (robust, perfect) {
            (Some(r), Some(p)) => {
                let tol = 1e-3_f64.max(settings.eps_b);
                assert!(
                    (r.eta - p.eta).abs() <= tol + 1e-6,
                    "beta {beta}, tau' {tau_prime}: robust eta {} vs exact {}",
                    r.eta,
                    p.eta
                );
            }
            (None, None) => {}
            (r, p) => panic!(
                "feasibility mismatch at beta {beta}, tau' {tau_prime}: robust {} vs exact {}",
                r.is_some(),
                p.is_some()
            ),
        }
    }
}

#[test]
fn inner_solution_blocks_are_near_psd() {
    let channels = five_user_channels();
    let cs = ChannelSet::new(2, channels[..3].to_vec(), vec![0.15, 0.2, 0.1]).unwrap();
    let config = SystemConfig::new(cs, 10.0, 0.3, 1e-3, 4).unwrap();
    let settings = RobustSettings::from_config(&config);

    let tau_prime = 0.5;
    let sol = robust_inner(2.0, tau_prime, &config, &settings)
        .unwrap()
        .expect("inner problem should be feasible");
    assert!(sol.eta >= 1.0 / sol.beta - 1e-12);
    assert!(sol.eta <= beta_max(&config) / sol.beta + 1e-12);
    let blocks = sol.lmi_blocks(tau_prime, &config.channel_set);
    let min_eig = blocks.min_eigenvalue();
    assert!(min_eig >= -1e-7, "solution block min eigenvalue {min_eig}");
    assert!(sol.triple().total_power() <= config.power * (1.0 + 1e-6));
}

#[test]
fn certified_rates_survive_sampled_channel_balls() {
    let cs = ChannelSet::new(2, five_user_channels(), vec![0.2; 5]).unwrap();
    let config = SystemConfig::new(cs, 10.0, 0.3, 1e-3, 4).unwrap();
    let settings = RobustSettings::from_config(&config);
    let (tau_max, _) = wc_multicast_capacity(&config).unwrap();

    for frac in [0.2, 0.5] {
        let tau_ms = frac * tau_max;
        let point = robust_qoms_srm(tau_ms, &config, &settings).unwrap();
        let sampled = worst_case_eval(&point.triple, &config.channel_set, 10_000, 42);
        assert!(
            sampled.secrecy_rate >= point.secrecy_rate - 1e-3,
            "sampled secrecy {} below certificate {}",
            sampled.secrecy_rate,
            point.secrecy_rate
        );
        assert!(
            sampled.multicast_rate >= tau_ms - 1e-3,
            "sampled multicast {} below floor {tau_ms}",
            sampled.multicast_rate
        );
    }
}

#[test]
fn sweep_satisfies_boundary_invariants_and_budget() {
    let channels = five_user_channels();
    let cs = ChannelSet::new(
        2,
        vec![channels[0].clone(), channels[1].clone()],
        vec![0.15, 0.15],
    )
    .unwrap();
    let config = SystemConfig::new(cs, 10.0, 0.1, 1e-3, 4).unwrap();
    let settings = RobustSettings::from_config(&config);

    let region = robust_region_sweep(&config, &settings).unwrap();
    region.assert_sorted();
    assert!(region.failures.is_empty(), "failures: {:?}", region.failures);
    assert_eq!(region.points.len(), config.grid_points);

    let budget = t1_wc_bound(&config, &settings);
    for pair in region.points.windows(2) {
        assert!(
            pair[1].secrecy_rate <= pair[0].secrecy_rate + 1e-4,
            "secrecy must not increase along the floor grid"
        );
    }
    for (i, p) in region.points.iter().enumerate() {
        let last = i == region.points.len() - 1;
        assert!(
            (p.diagnostics.solver_calls as f64) <= budget,
            "point {i} used {} solves over budget {budget}",
            p.diagnostics.solver_calls
        );
        if last {
            assert!((p.tau_ms - region.tau_max).abs() < 1e-12);
            assert_eq!(p.secrecy_rate, 0.0);
            assert!(p.diagnostics.qoms_slack.abs() < 1e-6);
        } else if p.secrecy_rate > 1e-6 {
            assert!(
                p.diagnostics.qoms_slack >= -1e-5,
                "worst-case floor violated at point {i}: {}",
                p.diagnostics.qoms_slack
            );
            if p.tau_ms > 0.0 {
                assert!(
                    p.diagnostics.qoms_slack <= 1e-3,
                    "floor slack at point {i}: {}",
                    p.diagnostics.qoms_slack
                );
            }
            assert!(
                p.diagnostics.rank_ratio_qc <= ansec::RANK_ONE_RATIO,
                "confidential covariance not rank-one at point {i}: {}",
                p.diagnostics.rank_ratio_qc
            );
        }
    }
}

#[test]
fn zero_radius_sweep_agrees_with_perfect_solver() {
    let channels = five_user_channels();
    let cs = ChannelSet::new(
        2,
        vec![channels[0].clone(), channels[3].clone()],
        vec![0.0, 0.0],
    )
    .unwrap();
    let config = SystemConfig::new(cs, 10.0, 0.2, 1e-3, 4).unwrap();
    let settings = RobustSettings::from_config(&config);

    let robust = robust_region_sweep(&config, &settings).unwrap();
    let perfect = perfect_region::region_sweep(&config).unwrap();
    assert!((robust.tau_max - perfect.tau_max).abs() < 1e-4);

    let tol = 2.0 * settings.eps + settings.eps_b;
    for (r, p) in robust.points.iter().zip(perfect.points.iter()) {
        assert!(
            (r.secrecy_rate - p.secrecy_rate).abs() <= tol,
            "at floor {}: robust {} vs perfect {}",
            r.tau_ms,
            r.secrecy_rate,
            p.secrecy_rate
        );
    }
}
