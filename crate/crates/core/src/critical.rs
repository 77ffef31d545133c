//! Critical frequencies of the mass curve and the variational trichotomy.
//!
//! `ω₁` is where `μ` peaks. It is found in `U0`-space as the root of
//! `F = G`, which is simple and bracketed, and then mapped through the
//! period function. `ω₀ > ω₁` is the frequency at which `μ` comes back down
//! to the full-soliton mass `π/2`.

use std::fmt;

use crate::error::{domain, Result};
use crate::model::u_star;
use crate::quadrature::monotonicity_g;
use crate::roots::{brent, golden_max};
use crate::scalar::{c, Real};
use crate::wave::WaveSolver;

/// Critical data of the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalFrequencies<T> {
    /// Root of `F = G` in `(0, U*)`.
    pub u1: T,
    pub omega1: T,
    /// `μ(ω₁)`.
    pub mu_max: T,
    /// `U0` of the wave with `μ = π/2` on the decreasing branch.
    pub u0_at_omega0: T,
    pub omega0: T,
    /// `F(U1) − G(U1)`.
    pub fg_residual: T,
    /// `μ(ω₀) − π/2`.
    pub mu_at_omega0_defect: T,
    /// Maximizer of `μ(U0)` found by golden-section search.
    pub u1_golden: T,
    /// `ω` at [`Self::u1_golden`].
    pub omega1_golden: T,
    /// `|dω/dU0| · root_tol` at `U1` and at `U0(ω₀)`.
    pub omega1_uncertainty: T,
    pub omega0_uncertainty: T,
}

impl<T: Real> CriticalFrequencies<T> {
    /// `|ω₁ − ω₁'| / |ω₁|` between the two methods.
    pub fn dual_method_agreement(&self) -> T {
        ((self.omega1 - self.omega1_golden) / self.omega1).abs()
    }

    /// Classifies the wave at `ω < 0`.
    pub fn classify(&self, omega: T) -> Result<Classification> {
        if !(omega < T::zero()) {
            return domain("omega", omega.as_f64(), "(-inf, 0): omega must be negative");
        }
        Ok(if omega >= self.omega0 {
            Classification::GroundState
        } else if omega > self.omega1 {
            Classification::LocalMinimizer
        } else {
            Classification::SaddlePoint
        })
    }
}

/// Variational character of a standing wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Global energy minimizer at fixed mass, `ω ∈ [ω₀, 0)`.
    GroundState,
    /// Local constrained minimizer, `ω ∈ (ω₁, ω₀)`.
    LocalMinimizer,
    /// Saddle point of the energy at fixed mass, `ω ≤ ω₁`.
    SaddlePoint,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::GroundState => "ground_state",
            Classification::LocalMinimizer => "local_minimizer",
            Classification::SaddlePoint => "saddle_point",
        })
    }
}

fn omega_of<T: Real>(solver: &WaveSolver<T>, u0: T) -> Result<(T, T)> {
    let t = solver.quad.period_t(u0)?;
    let dt = solver.quad.period_t_derivative(u0)?;
    let e2 = t / T::PI();
    // ω = −(T/π)², dω/dU0 = −2 T T' / π².
    Ok((-e2 * e2, c::<T>(2.0) * e2 * dt / T::PI()))
}

/// Root `U1` of `F − G` on `(0.01, U* − 0.01)`.
pub fn find_u1<T: Real>(solver: &WaveSolver<T>) -> Result<T> {
    let lo = c::<T>(0.01);
    let hi = u_star::<T>() - c(0.01);
    brent(
        |u| Ok(solver.quad.monotonicity_f(u)? - monotonicity_g(u)?),
        lo,
        hi,
        solver.root_tol,
        "F - G",
    )
}

/// Locates `U1`, `ω₁`, `μ_max` and `ω₀`, and cross-checks `ω₁` by direct
/// maximization of `μ`.
pub fn find_critical<T: Real>(solver: &WaveSolver<T>) -> Result<CriticalFrequencies<T>> {
    let q = &solver.quad;
    let u1 = find_u1(solver)?;
    let (omega1, dw1) = omega_of(solver, u1)?;
    let mu_max = q.mass(u1)?;
    let fg_residual = q.monotonicity_f(u1)? - monotonicity_g(u1)?;

    // μ decreases from μ_max to π/4 as U0 runs from U1 to 1.
    let half_pi = T::FRAC_PI_2();
    let u0_at_omega0 = brent(
        |u| Ok(q.mass(u)? - half_pi),
        u1,
        T::one() - c(1e-6),
        solver.root_tol,
        "mu(U0) - pi/2",
    )?;
    let (omega0, dw0) = omega_of(solver, u0_at_omega0)?;
    let mu_at_omega0_defect = q.mass(u0_at_omega0)? - half_pi;

    let (u1_golden, _) = golden_max(|u| q.mass(u), c(0.05), u_star::<T>(), solver.root_tol)?;
    let (omega1_golden, _) = omega_of(solver, u1_golden)?;

    Ok(CriticalFrequencies {
        u1,
        omega1,
        mu_max,
        u0_at_omega0,
        omega0,
        fg_residual,
        mu_at_omega0_defect,
        u1_golden,
        omega1_golden,
        omega1_uncertainty: dw1.abs() * solver.root_tol,
        omega0_uncertainty: dw0.abs() * solver.root_tol,
    })
}

/// [`CriticalFrequencies::classify`] against freshly computed critical data.
pub fn classify<T: Real>(solver: &WaveSolver<T>, omega: T) -> Result<Classification> {
    find_critical(solver)?.classify(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;
    use std::sync::OnceLock;

    fn crit() -> &'static CriticalFrequencies<f64> {
        static CELL: OnceLock<CriticalFrequencies<f64>> = OnceLock::new();
        CELL.get_or_init(|| find_critical(&WaveSolver::new(1e-14, 1e-12)).unwrap())
    }

    #[test]
    fn frozen_values() {
        // 30-digit reference evaluations.
        let c = crit();
        assert!((c.u1 - 0.382677398266144636813714896054).abs() < 1e-10);
        assert!((c.omega1 + 0.257481856627546068273764048019).abs() < 1e-10);
        assert!((c.mu_max - 1.63283135077962474855859822087).abs() < 1e-12);
        assert!((c.u0_at_omega0 - 0.575490719725741357502476229019).abs() < 1e-10);
        assert!((c.omega0 + 0.133409421068673897699081959675).abs() < 1e-10);
    }

    #[test]
    fn defining_equations() {
        let c = crit();
        assert!(c.fg_residual.abs() <= 1e-9);
        assert!(c.mu_at_omega0_defect.abs() <= 1e-8);
        assert!(c.omega1 < c.omega0 && c.omega0 < 0.0);
        assert!(c.mu_max > FRAC_PI_2);
        assert!(c.dual_method_agreement() < 1e-6);
        assert!(c.omega1_uncertainty < 1e-10);
    }

    #[test]
    fn sign_flip_around_u1() {
        let s = WaveSolver::<f64>::default();
        let c = crit();
        assert!(s.quad.mass_derivative_sign(c.u1 - 0.01).unwrap() > 0.0);
        assert!(s.quad.mass_derivative_sign(c.u1 + 0.01).unwrap() < 0.0);
    }

    #[test]
    fn classification_intervals() {
        let c = crit();
        assert_eq!(c.classify(c.omega0 / 2.0).unwrap(), Classification::GroundState);
        assert_eq!(c.classify(c.omega0).unwrap(), Classification::GroundState);
        assert_eq!(c.classify(2.0 * c.omega1).unwrap(), Classification::SaddlePoint);
        assert_eq!(c.classify(c.omega1).unwrap(), Classification::SaddlePoint);
        let mid = 0.5 * (c.omega0 + c.omega1);
        assert_eq!(c.classify(mid).unwrap(), Classification::LocalMinimizer);
        assert!(c.classify(0.0).is_err());
        assert!(c.classify(1.0).is_err());
        assert_eq!(Classification::GroundState.to_string(), "ground_state");
    }

    #[test]
    fn mass_window_matches_ground_state_interval() {
        let c = crit();
        let s = WaveSolver::new(1e-12, 1e-12);
        for i in 1..=40 {
            let omega = -0.5 * i as f64 / 40.0;
            if (omega - c.omega0).abs() < 1e-6 {
                continue;
            }
            let mu = s.solve_from_omega(omega).unwrap().mu;
            assert!(mu <= c.mu_max);
            let in_window = mu > std::f64::consts::FRAC_PI_4 && mu <= FRAC_PI_2;
            assert_eq!(in_window, omega >= c.omega0, "omega = {omega}");
        }
    }
}
