//! Cross-checks of the perfect-knowledge region machinery: two independent
//! routes to the inner optimum, closed-form bounds, and sweep invariants.

use ansec::model::{rates, ChannelSet, CovarianceTriple, SystemConfig};
use ansec::perfect_region::{
    inner_sdp, multicast_capacity, qoms_srm, quasiconvex_oracle, region_sweep, t1_bound,
};
use ansec::RANK_ONE_RATIO;
use approx::assert_relative_eq;
use num_complex::Complex64;
use sdp::HermitianMatrix;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn three_user_config() -> SystemConfig {
    let cs = ChannelSet::perfect(
        2,
        vec![
            vec![c(1.1, -0.4), c(0.3, 0.8)],
            vec![c(-0.5, 0.2), c(0.9, 0.1)],
            vec![c(0.4, 0.7), c(-0.6, -0.3)],
        ],
    )
    .unwrap();
    SystemConfig::new(cs, 10.0, 0.4, 1e-3, 6).unwrap()
}

#[test]
fn charnes_cooper_agrees_with_level_bisection() {
    let config = three_user_config();
    let probes = [
        (1.3, 0.0),
        (2.0, 0.3),
        (4.5, 0.8),
        (9.0, 0.15),
        (1.05, 1.2),
        (17.0, 0.5),
    ];
    for &(alpha, tau_prime) in &probes {
        let cc = inner_sdp(alpha, tau_prime, &config).unwrap();
        let oracle = quasiconvex_oracle(alpha, tau_prime, &config).unwrap();
        match (cc, oracle) {
            (Some(sol), Some(eta)) => {
                assert_relative_eq!(sol.eta, eta, max_relative = 1e-4);
                let direct = (alpha * sol.eta).log2();
                let via_oracle = (alpha * eta).log2();
                assert!((direct - via_oracle).abs() < 1e-4);
            }
            (None, None) => {}
            (a, b) => panic!(
                "routes disagree at alpha {alpha}, tau' {tau_prime}: {:?} vs {:?}",
                a.map(|s| s.eta),
                b
            ),
        }
    }
}

#[test]
fn unconstrained_secrecy_bounded_by_matched_filter_and_capacity() {
    let config = three_user_config();
    let point = qoms_srm(0.0, &config).unwrap();

    // Lower bound: any fixed design is admissible at tau_ms = 0, so the
    // optimum cannot fall below full-power beamforming toward receiver 1.
    let cs = &config.channel_set;
    let qc = HermitianMatrix::outer(cs.channel(0)).scaled(config.power / cs.norm_sq(0));
    let naive = CovarianceTriple {
        q0: HermitianMatrix::zeros(2),
        qc,
        qa: HermitianMatrix::zeros(2),
    };
    let naive_rate = rates(&naive, cs).secrecy_rate;
    assert!(
        point.secrecy_rate >= naive_rate - 1e-4,
        "optimum {} below matched filter {}",
        point.secrecy_rate,
        naive_rate
    );

    // Upper bound: the eavesdropper-free point-to-point capacity.
    let cap = (1.0 + config.power * cs.norm_sq(0)).log2();
    assert!(point.secrecy_rate <= cap + 1e-9);
    assert!(point.secrecy_rate > 0.0);
}

#[test]
fn sweep_satisfies_boundary_invariants() {
    let config = three_user_config();
    let region = region_sweep(&config).unwrap();
    region.assert_sorted();
    assert!(region.failures.is_empty(), "{:?}", region.failures);
    assert_eq!(region.points.len(), config.grid_points);

    let budget = t1_bound(&config) + 1.0;
    let mut last_secrecy = f64::INFINITY;
    for (i, p) in region.points.iter().enumerate() {
        assert!(p.triple.within_power(config.power));
        assert!(p.diagnostics.solver_calls as f64 <= budget);
        // Secrecy rate is non-increasing along the boundary.
        assert!(
            p.secrecy_rate <= last_secrecy + 1e-4,
            "secrecy increased at grid point {i}"
        );
        last_secrecy = p.secrecy_rate;
        let interior = i + 1 < region.points.len();
        if interior && p.secrecy_rate > 1e-6 {
            // The QoMS floor binds wherever secrecy is traded for multicast.
            assert!(p.diagnostics.qoms_slack >= -1e-5);
            if p.tau_ms > 0.0 {
                assert!(
                    p.diagnostics.qoms_slack <= 1e-3,
                    "loose floor at point {i}: {}",
                    p.diagnostics.qoms_slack
                );
            }
            assert!(
                p.diagnostics.rank_ratio_qc <= RANK_ONE_RATIO,
                "Qc not rank one at point {i}: {}",
                p.diagnostics.rank_ratio_qc
            );
        }
    }

    let last = region.points.last().unwrap();
    assert_relative_eq!(last.tau_ms, region.tau_max, max_relative = 1e-12);
    assert_eq!(last.secrecy_rate, 0.0);
    assert!(last.diagnostics.qoms_slack.abs() < 1e-6);

    let (tau_max, _) = multicast_capacity(&config).unwrap();
    assert_relative_eq!(region.tau_max, tau_max, max_relative = 1e-9);
}

#[test]
fn tighter_qoms_floor_never_helps_secrecy() {
    let config = three_user_config();
    let (tau_max, _) = multicast_capacity(&config).unwrap();
    let lo = qoms_srm(0.25 * tau_max, &config).unwrap();
    let hi = qoms_srm(0.75 * tau_max, &config).unwrap();
    assert!(hi.secrecy_rate <= lo.secrecy_rate + 1e-4);
}
