use proptest::prelude::*;

use skylink::antenna::{self, VerticalPattern};
use skylink::geometry::{self, EarthModel};
use skylink::link_budget::{self, RadioTerminal};
use skylink::los::{self, LosMode, UrbanEnvironment};
use skylink::propagation;

/// Plain product over the building profile, rebuilt from the model
/// definition without the log-space accumulation or early exit.
fn naive_los(alpha: f64, beta: f64, gamma: f64, h_tx: f64, h_rx: f64, ground_range_m: f64) -> f64 {
    let b1 = (alpha * beta).sqrt();
    let count = (ground_range_m / 1000.0 * b1).floor() as usize;
    if count == 0 {
        return 1.0;
    }
    let spacing = ground_range_m / count as f64;
    let mut p = 1.0;
    for i in 0..count {
        let d = (i as f64 + 0.5) * spacing;
        let h = h_tx - d * (h_tx - h_rx) / ground_range_m;
        let h = h.max(0.0);
        p *= 1.0 - (-h * h / (2.0 * gamma * gamma)).exp();
    }
    p
}

fn env_strategy() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.05f64..=1.0, 10.0f64..2000.0, 3.0f64..60.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn slant_range_round_trips_elevation(
        h_a in 0.0f64..1000.0,
        h_n in 2000.0f64..2_000_000.0,
        el in 0.01f64..=90.0,
        k in 1.0f64..3.0,
    ) {
        let earth = EarthModel::new(geometry::EARTH_RADIUS_M, k).unwrap();
        let d = geometry::slant_range(h_a, h_n, el, &earth).unwrap();
        let back = geometry::elevation_from_slant_range(h_a, h_n, d, &earth).unwrap();
        prop_assert!((back - el).abs() < 1e-6, "el {el} -> d {d} -> {back}");
    }

    #[test]
    fn ranges_decrease_with_elevation(
        h_a in 0.0f64..300.0,
        h_n in 1000.0f64..1_000_000.0,
        el in 0.1f64..89.0,
        bump in 0.01f64..1.0,
    ) {
        let earth = EarthModel::default();
        let el2 = (el + bump).min(90.0);
        let s1 = geometry::slant_range(h_a, h_n, el, &earth).unwrap();
        let s2 = geometry::slant_range(h_a, h_n, el2, &earth).unwrap();
        let g1 = geometry::ground_range(h_a, h_n, el, &earth).unwrap();
        let g2 = geometry::ground_range(h_a, h_n, el2, &earth).unwrap();
        prop_assert!(s2 < s1);
        prop_assert!(g2 < g1);
        prop_assert!(s2 >= h_n - h_a);
    }

    #[test]
    fn flat_earth_limit(h_n in 1000.0f64..1_000_000.0, el in 10.0f64..90.0) {
        let earth = EarthModel::new(geometry::EARTH_RADIUS_M, 1e12).unwrap();
        let d = geometry::slant_range(0.0, h_n, el, &earth).unwrap();
        let flat = h_n / el.to_radians().sin();
        prop_assert!((d - flat).abs() / flat < 1e-3);
    }

    #[test]
    fn los_probability_bounded_and_monotone(
        (alpha, beta, gamma) in env_strategy(),
        h_tx in 0.0f64..400.0,
        bump in 0.0f64..50.0,
        h_rx in 0.0f64..100.0,
        ground_range_m in 0.0f64..5000.0,
    ) {
        let env = UrbanEnvironment::new(alpha, beta, gamma).unwrap();
        let p1 = los::los_probability(&env, h_tx, h_rx, ground_range_m);
        let p2 = los::los_probability(&env, h_tx + bump, h_rx, ground_range_m);
        prop_assert!((0.0..=1.0).contains(&p1));
        prop_assert!((0.0..=1.0).contains(&p2));
        prop_assert!(p2 >= p1 - 1e-12, "{p1} -> {p2}");
    }

    #[test]
    fn early_exit_matches_exact_and_naive(
        (alpha, beta, gamma) in env_strategy(),
        h_tx in 0.0f64..300.0,
        satellite in any::<bool>(),
        el in 5.0f64..90.0,
        ground_range_m in 1.0f64..3000.0,
        h_rx_tn in 0.0f64..60.0,
    ) {
        let env = UrbanEnvironment::new(alpha, beta, gamma).unwrap();
        let (h_rx, gr) = if satellite {
            let earth = EarthModel::default();
            (300_000.0, geometry::ground_range(h_tx, 300_000.0, el, &earth).unwrap())
        } else {
            (h_rx_tn, ground_range_m)
        };
        let fast = los::los_probability_with(&env, h_tx, h_rx, gr, LosMode::EarlyExit);
        let exact = los::los_probability_with(&env, h_tx, h_rx, gr, LosMode::Exact);
        let naive = naive_los(alpha, beta, gamma, h_tx, h_rx, gr);
        prop_assert!((fast - exact).abs() <= 1e-9, "{fast} vs {exact}");
        prop_assert!((exact - naive).abs() <= 1e-9, "{exact} vs {naive}");
    }

    #[test]
    fn short_rays_are_line_of_sight(
        (alpha, beta, gamma) in env_strategy(),
        h_tx in 0.0f64..300.0,
        h_rx in 0.0f64..300.0,
        frac in 0.0f64..1.0,
    ) {
        let env = UrbanEnvironment::new(alpha, beta, gamma).unwrap();
        let limit_m = 1000.0 / los::buildings_per_km(&env);
        prop_assert_eq!(los::los_probability(&env, h_tx, h_rx, frac * limit_m * 0.999), 1.0);
    }

    #[test]
    fn combined_loss_is_convex_combination(
        p in 0.0f64..=1.0,
        dp in 0.0f64..=1.0,
        los_db in 30.0f64..200.0,
        extra in -40.0f64..60.0,
    ) {
        let nlos_db = los_db + extra;
        let c = propagation::combined_path_loss(p, los_db, nlos_db);
        let lo = los_db.min(nlos_db) - 1e-9;
        let hi = los_db.max(nlos_db) + 1e-9;
        prop_assert!(c >= lo && c <= hi);
        if nlos_db >= los_db {
            let p2 = (p + dp).min(1.0);
            prop_assert!(propagation::combined_path_loss(p2, los_db, nlos_db) <= c + 1e-9);
        }
    }

    #[test]
    fn decade_in_frequency_adds_20_db(
        f in 0.1f64..50.0,
        r in 1.0f64..2e6,
        sf in 0.0f64..10.0,
        cl in 0.0f64..40.0,
    ) {
        let a = propagation::path_loss_los(f, r, sf).unwrap();
        let b = propagation::path_loss_los(10.0 * f, r, sf).unwrap();
        prop_assert!((b - a - 20.0).abs() < 1e-9);
        let a = propagation::path_loss_nlos(f, r, sf, cl).unwrap();
        let b = propagation::path_loss_nlos(10.0 * f, r, sf, cl).unwrap();
        prop_assert!((b - a - 20.0).abs() < 1e-9);
    }

    #[test]
    fn breakdown_structural_identity(
        h in 1.0f64..300.0,
        gr in 1.0f64..3000.0,
        f in 0.5f64..10.0,
    ) {
        let env = UrbanEnvironment::new(0.3, 500.0, 15.0).unwrap();
        let params = propagation::PropagationParams::for_environment(&env, f, 4.0, 6.0, 34.3).unwrap();
        let g = propagation::LinkGeometry {
            aircraft_height_m: h,
            node_height_m: 25.0,
            ground_range_m: gr,
            slant_range_m: geometry::tn_slant_range(h, 25.0, gr / 1000.0).unwrap(),
        };
        let b = propagation::evaluate_path_loss(&env, &params, &g).unwrap();
        prop_assert!((b.pl_nlos_db - (b.pl_los_db - 4.0 + 6.0 + b.clutter_db)).abs() < 1e-9);
        prop_assert!(b.pl_combined_db >= b.pl_los_db.min(b.pl_nlos_db) - 1e-9);
        prop_assert!(b.pl_combined_db <= b.pl_los_db.max(b.pl_nlos_db) + 1e-9);
    }

    #[test]
    fn pattern_symmetric_and_monotone(x in 0.0f64..96.0, y in 0.0f64..96.0) {
        let p = VerticalPattern::new(6.0, 10.0, 20.0).unwrap();
        let up = p.attenuation_db(6.0 + x);
        let down = p.attenuation_db(6.0 - x);
        if let (Ok(a), Ok(b)) = (up, down) {
            prop_assert!((a - b).abs() <= 1e-12);
            prop_assert!((-20.0..=0.0).contains(&a));
            if x >= p.floor_offset_deg() {
                prop_assert_eq!(a, -20.0);
            }
        }
        let (near, far) = if x <= y { (x, y) } else { (y, x) };
        if 6.0 + far <= 90.0 {
            prop_assert!(p.attenuation_db(6.0 + far).unwrap() <= p.attenuation_db(6.0 + near).unwrap());
        }
    }

    #[test]
    fn friis_is_linear_in_tx_power(
        p_tx in -10.0f64..40.0,
        shift in -20.0f64..20.0,
        g_rx in 0.0f64..50.0,
        a_v in -20.0f64..=0.0,
        pl in 50.0f64..200.0,
        sens in -130.0f64..-80.0,
    ) {
        let t = RadioTerminal { tx_power_dbm: p_tx, tx_gain_dbi: 0.0, rx_gain_dbi: g_rx, sensitivity_dbm: sens };
        let t2 = RadioTerminal { tx_power_dbm: p_tx + shift, ..t };
        let r1 = link_budget::received_power(&t, a_v, pl);
        let r2 = link_budget::received_power(&t2, a_v, pl);
        prop_assert!((r2 - r1 - shift).abs() < 1e-9);
        // The coverage boundary moves by exactly `shift` dB of path loss.
        let edge = link_budget::received_power(&t, a_v, 0.0) - sens;
        let edge2 = link_budget::received_power(&t2, a_v, 0.0) - sens;
        prop_assert!((edge2 - edge - shift).abs() < 1e-9);
        let v1 = link_budget::coverage_verdict(r1, sens);
        let v2 = link_budget::coverage_verdict(r1 + shift.abs(), sens);
        prop_assert!(!v1.covered || v2.covered);
        prop_assert_eq!(v1.covered, v1.margin_db >= 0.0);
    }
}

#[test]
fn pattern_symmetry_over_ten_thousand_angles() {
    use proptest::test_runner::{Config, TestRunner};
    let p = VerticalPattern::new(6.0, 10.0, 20.0).unwrap();
    let mut runner = TestRunner::new(Config::with_cases(10_000));
    runner
        .run(&(0.0f64..84.0), |x| {
            let a = p.attenuation_db(6.0 + x).unwrap();
            let b = p.attenuation_db(6.0 - x).unwrap();
            prop_assert!((a - b).abs() <= 1e-12);
            Ok(())
        })
        .unwrap();
}

#[test]
fn depression_angle_negates_node_elevation() {
    let earth = EarthModel::<f64>::default();
    for (h, gr) in [
        (5.0, 500.0),
        (25.0, 1000.0),
        (230.0, 2000.0),
        (300.0, 500.0),
    ] {
        let theta = antenna::pattern_angle_for_aircraft(h, 25.0, gr).unwrap();
        let el = geometry::elevation_seen_from_node(h, 25.0, gr, &earth).unwrap();
        assert!((theta + el).abs() < 0.05);
    }
}
