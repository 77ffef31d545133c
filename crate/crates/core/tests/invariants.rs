//! Property tests that cut across modules: solver round trips, the graph
//! profile, variational bounds, the linearized problem and scattering.

use std::f64::consts::PI;
use std::sync::OnceLock;

use proptest::prelude::*;
use tadpole::asymptotics::{bound_constants, trial_function_f};
use tadpole::critical::find_critical;
use tadpole::linearized::integrate_w;
use tadpole::ode::OdeOptions;
use tadpole::spectrum::scattering;
use tadpole::{Classification, CriticalFrequencies64, Quad, WaveSolver64};

fn solver() -> WaveSolver64 {
    WaveSolver64::new(1e-12, 1e-13)
}

fn critical() -> &'static CriticalFrequencies64 {
    static CELL: OnceLock<CriticalFrequencies64> = OnceLock::new();
    CELL.get_or_init(|| find_critical(&solver()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn omega_round_trip(u0 in 0.02f64..0.98) {
        let s = solver();
        let a = s.solve_from_u0(u0).unwrap();
        let b = s.solve_from_omega(a.omega).unwrap();
        prop_assert!((b.params.u0 - u0).abs() < 1e-9);
        prop_assert!((b.mu - a.mu).abs() < 1e-10);
    }

    #[test]
    fn ring_length_matches_period(u0 in 0.02f64..0.98) {
        let sol = solver().solve_from_u0(u0).unwrap();
        let t = Quad::new(1e-12).period_t(u0).unwrap();
        prop_assert!((sol.half_length() - t).abs() < 1e-10);
        let (dv, ds) = sol.boundary_defects();
        prop_assert!(dv.abs() < 1e-9 && ds.abs() < 1e-9);
    }

    #[test]
    fn mass_from_profile_agrees(u0 in 0.05f64..0.95) {
        let sol = solver().solve_from_u0(u0).unwrap();
        let mu = sol.mass_from_profile(1e-12).unwrap();
        prop_assert!((mu - sol.mu).abs() < 1e-9);
    }

    #[test]
    fn graph_profile_shape(log_w in -6.0f64..1.0) {
        let sol = solver().solve_from_omega(-(10f64).powf(log_w)).unwrap();
        let g = sol.sample_graph_profile(256, 20.0 / sol.eps_sq);
        let r = g.verify_residuals();
        prop_assert!(g.is_monotone());
        prop_assert!(r.continuity < 1e-12 && r.kirchhoff < 1e-10 && r.symmetry < 1e-12);
        prop_assert!(g.ring.iter().chain(&g.tail).all(|s| s.value > 0.0));
    }

    #[test]
    fn variational_bounds_hold(log_w in -3.0f64..1.0) {
        let omega = -(10f64).powf(log_w);
        let sol = solver().solve_from_omega(omega).unwrap();
        let ints = sol.sample_graph_profile(2048, 20.0 / sol.eps_sq).integrals();
        let b = bound_constants(omega);
        let q = ints.quotient();
        prop_assert!(b.b_halfline < q && q < b.b_line, "{} < {} < {}", b.b_halfline, q, b.b_line);
        prop_assert!(ints.nehari_defect().abs() < 1e-6);
    }

    #[test]
    fn wronskian_is_one(eps in 0.05f64..2.0) {
        let sol = solver().solve_from_omega(-eps.powi(4)).unwrap();
        let t = integrate_w(&sol, OdeOptions::default()).unwrap();
        prop_assert!(t.wronskian_defect < 1e-8);
        prop_assert!(t.regularized > 0.0);
    }

    #[test]
    fn mass_derivative_sign_matches_classification(u0 in 0.05f64..0.95) {
        let s = solver();
        let cr = critical();
        let sol = s.solve_from_u0(u0).unwrap();
        prop_assume!((sol.omega - cr.omega1).abs() > 1e-3 && (sol.omega - cr.omega0).abs() > 1e-3);
        let class = cr.classify(sol.omega).unwrap();
        let rising = s.quad.mass_derivative_sign(u0).unwrap() > 0.0;
        // mu increases with omega below omega1 (saddle region) and decreases above it.
        prop_assert_eq!(class == Classification::SaddlePoint, rising);
        prop_assert_eq!(class == Classification::GroundState, sol.omega > cr.omega0);
    }

    #[test]
    fn scattering_is_unitary(k in 0.0f64..100.0) {
        let sd = scattering(k);
        prop_assert!(sd.unitarity_defect() < 1e-12);
        let r = sd.vertex_residuals();
        prop_assert!(r.continuity < 1e-12 && r.kirchhoff < 1e-12);
    }

    #[test]
    fn trial_function_below_limit(a in 1e-6f64..30.0) {
        let f = trial_function_f(a);
        prop_assert!(f > 1.0 - 1e-12 && f < 2f64.powf(2.0 / 3.0));
    }

    #[test]
    fn ring_profile_sits_below_turning_point(u0 in 0.02f64..0.98, t in 0.0f64..1.0) {
        let sol = solver().solve_from_u0(u0).unwrap();
        let u = sol.profile_exact(t * PI * sol.eps_sq);
        prop_assert!(u >= u0 - 1e-12 && u <= sol.params.u_plus + 1e-12);
    }
}
