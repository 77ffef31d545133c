//! Small and large `|ω|` expansions, the half-line and line variational
//! constants, and the trial function of the upper bound.

use crate::error::Result;
use crate::roots::bisect;
use crate::scalar::{c, Real};
use crate::wave::WaveSolver;

/// `π/4 + 20π³|ω|^{3/2}`.
pub fn mu_small<T: Real>(omega: T) -> T {
    let w = omega.abs();
    T::FRAC_PI_4() + c::<T>(20.0) * T::PI().powi(3) * w * w.sqrt()
}

/// `π/2 + (8π/3)|ω|^{1/2} e^{−2π|ω|^{1/2}}`.
pub fn mu_large<T: Real>(omega: T) -> T {
    T::FRAC_PI_2() + mu_large_correction(omega)
}

/// The exponential correction term of [`mu_large`].
pub fn mu_large_correction<T: Real>(omega: T) -> T {
    let e2 = omega.abs().sqrt();
    c::<T>(8.0) * T::PI() / c(3.0) * e2 * (-c::<T>(2.0) * T::PI() * e2).exp()
}

/// The `|ω|^{3/2}` correction of [`mu_small`].
pub fn mu_small_correction<T: Real>(omega: T) -> T {
    let w = omega.abs();
    c::<T>(20.0) * T::PI().powi(3) * w * w.sqrt()
}

/// `(U₊, a) ≈ (1 − 3π²ε⁴, 2πε² − 28π³ε⁶)`.
pub fn small_eps_params<T: Real>(eps: T) -> (T, T) {
    let e2 = eps * eps;
    let pi = T::PI();
    (
        T::one() - c::<T>(3.0) * pi * pi * e2 * e2,
        c::<T>(2.0) * pi * e2 - c::<T>(28.0) * pi.powi(3) * e2 * e2 * e2,
    )
}

/// `(k, a) ≈ (1 − (8/3)e^{−2πε²}, πε² + log(3/4))`.
pub fn large_eps_params<T: Real>(eps: T) -> (T, T) {
    let e2 = eps * eps;
    let pi = T::PI();
    (
        T::one() - c::<T>(8.0) / c(3.0) * (-c::<T>(2.0) * pi * e2).exp(),
        pi * e2 + c::<T>(0.75).ln(),
    )
}

/// Variational constants of the half-line and the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants<T> {
    /// `(3/4)(π|ω|)^{2/3}`.
    pub b_halfline: T,
    /// `(3/4)(2π|ω|)^{2/3}`.
    pub b_line: T,
    /// `(4/(π|ω|))^{1/6}`.
    pub lambda_line: T,
    /// `(8/(π|ω|))^{1/6}`.
    pub lambda_halfline: T,
    /// `16/π²`.
    pub k_halfline: T,
}

pub fn bound_constants<T: Real>(omega: T) -> BoundConstants<T> {
    let w = omega.abs();
    let pi = T::PI();
    let two_thirds = c::<T>(2.0) / c(3.0);
    let sixth = T::one() / c(6.0);
    BoundConstants {
        b_halfline: c::<T>(0.75) * (pi * w).powf(two_thirds),
        b_line: c::<T>(0.75) * (c::<T>(2.0) * pi * w).powf(two_thirds),
        lambda_line: (c::<T>(4.0) / (pi * w)).powf(sixth),
        lambda_halfline: (c::<T>(8.0) / (pi * w)).powf(sixth),
        k_halfline: c::<T>(16.0) / (pi * pi),
    }
}

/// The trial-function ratio
/// `f(A) = (1 + (2/π)atan sinh A − 2 sinh A/(3π cosh²A)) /
///         (1 + (2/π)atan sinh A + 2 sinh A/(π cosh²A))^{1/3}`.
pub fn trial_function_f<T: Real>(a: T) -> T {
    let pi = T::PI();
    let g = c::<T>(2.0) / pi * a.sinh().atan();
    let ch = a.cosh();
    // sinh A / cosh² A = tanh A sech A stays finite for large A.
    let s = a.tanh() / ch;
    let num = T::one() + g - c::<T>(2.0) * s / (c::<T>(3.0) * pi);
    let den = T::one() + g + c::<T>(2.0) * s / pi;
    num / den.cbrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    SmallOmega,
    LargeOmega,
}

/// Where an expansion meets a relative tolerance against the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticRegime<T> {
    pub regime: Regime,
    /// `|ω|` at which the relative error of the correction term reaches the
    /// tolerance. The small-`ω` expansion is valid below it, the large one
    /// above it.
    pub validity_hint: T,
    pub tolerance: T,
}

/// Relative error of the expansion's correction term against the solver:
/// `|μ − μ_asym| / correction`.
pub fn correction_error<T: Real>(solver: &WaveSolver<T>, regime: Regime, omega: T) -> Result<T> {
    let mu = solver.solve_from_omega(omega)?.mu;
    Ok(match regime {
        Regime::SmallOmega => ((mu - mu_small(omega)) / mu_small_correction(omega)).abs(),
        Regime::LargeOmega => ((mu - mu_large(omega)) / mu_large_correction(omega)).abs(),
    })
}

/// Scans `|ω|` on a log grid over the regime's natural window and refines
/// the crossing of `tolerance` by bisection in `log|ω|`. `None` if the error
/// never drops below the tolerance in the window.
pub fn validity_threshold<T: Real>(
    solver: &WaveSolver<T>,
    regime: Regime,
    tolerance: T,
) -> Result<Option<AsymptoticRegime<T>>> {
    // Window ends: the near end is where the expansion should hold, the far
    // end where it fails. Below 1e-6 or above ε² = 4 the correction term is
    // too small to resolve in double precision.
    let (near, far) = match regime {
        Regime::SmallOmega => (c::<T>(1e-6), c::<T>(1e-1)),
        Regime::LargeOmega => (c::<T>(16.0), c::<T>(0.25)),
    };
    let err = |lw: T| correction_error(solver, regime, -lw.exp());
    let (l_near, l_far) = (near.ln(), far.ln());
    let n = 24;
    let mut prev = l_near;
    if err(prev)? > tolerance {
        return Ok(None);
    }
    for i in 1..=n {
        let l = l_near + (l_far - l_near) * T::from_usize(i).unwrap() / T::from_usize(n).unwrap();
        if err(l)? > tolerance {
            let root = bisect(
                |x| Ok(err(x)? - tolerance),
                prev.min(l),
                prev.max(l),
                c(1e-6),
                "expansion error - tolerance",
            )?;
            return Ok(Some(AsymptoticRegime {
                regime,
                validity_hint: root.exp(),
                tolerance,
            }));
        }
        prev = l;
    }
    Ok(Some(AsymptoticRegime {
        regime,
        validity_hint: far,
        tolerance,
    }))
}

/// One row of the solver-versus-expansion table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticRow<T> {
    pub omega: T,
    pub mu_solver: T,
    pub mu_small: T,
    pub mu_large: T,
}

pub fn comparison_table<T: Real>(solver: &WaveSolver<T>, omegas: &[T]) -> Result<Vec<AsymptoticRow<T>>> {
    use rayon::prelude::*;
    omegas
        .par_iter()
        .map(|&omega| {
            Ok(AsymptoticRow {
                omega,
                mu_solver: solver.solve_from_omega(omega)?.mu,
                mu_small: mu_small(omega),
                mu_large: mu_large(omega),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_kronrod;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn expansion_values() {
        assert_eq!(mu_small(-0.0f64), FRAC_PI_4);
        assert_relative_eq!(mu_small(-1e-4f64), FRAC_PI_4 + 20.0 * PI.powi(3) * 1e-6, max_relative = 1e-15);
        assert!((mu_large(-1e6f64) - FRAC_PI_2).abs() < 1e-15);
        assert!(mu_large(-4.0f64) > FRAC_PI_2);
    }

    #[test]
    fn parameter_series() {
        assert_eq!(small_eps_params(0.0f64), (1.0, 0.0));
        let (up, _) = small_eps_params(0.1f64);
        assert_relative_eq!(up, 1.0 - 3.0 * PI * PI * 1e-4, max_relative = 1e-15);
        let (k, a) = large_eps_params(10.0f64);
        assert!((k - 1.0).abs() < 1e-15);
        assert_relative_eq!(a - PI * 100.0, 0.75f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn series_match_solver() {
        let s = WaveSolver::new(1e-14, 1e-14);
        let eps = 0.05f64;
        let sol = s.solve_from_omega(-eps.powi(4)).unwrap();
        let (up, a) = small_eps_params(eps);
        assert_relative_eq!(sol.params.u_plus, up, max_relative = 1e-4);
        assert_relative_eq!(sol.params.a, a, max_relative = 1e-4);

        let eps2 = 3.0f64;
        let sol = s.solve_from_omega(-eps2 * eps2).unwrap();
        let (k, a) = large_eps_params(eps2.sqrt());
        let budget = eps2 * (-2.0 * PI * eps2).exp();
        assert!((sol.k - k).abs() < 10.0 * budget);
        assert!((sol.params.a - a).abs() < 10.0 * budget);
    }

    #[test]
    fn constants() {
        for &w in &[1e-3, 0.5, 7.0, 1e3f64] {
            let b = bound_constants(-w);
            assert_relative_eq!(b.b_line / b.b_halfline, 2f64.powf(2.0 / 3.0), max_relative = 1e-14);
        }
        assert_relative_eq!(bound_constants(-1.0f64).k_halfline, 1.6211389382774044, max_relative = 1e-14);
    }

    #[test]
    fn lambda_normalizes_soliton() {
        // φ_ω(x) = |ω|^{1/4} sech^{1/2}(2|ω|^{1/2} x) on the line.
        for &w in &[0.3, 1.0, 4.0f64] {
            let b = bound_constants(-w);
            let f = |x: f64| {
                let p = w.powf(0.25) / (2.0 * w.sqrt() * x).cosh().sqrt();
                p.powi(6)
            };
            let (half, _) = gauss_kronrod(f, 0.0, 40.0 / w.sqrt(), 1e-13, 1000).unwrap();
            assert!((b.lambda_line.powi(6) * 2.0 * half - 1.0).abs() < 1e-10);
            assert!((b.lambda_halfline.powi(6) * half - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn trial_function() {
        let lim = 2f64.powf(2.0 / 3.0);
        assert_eq!(trial_function_f(0.0f64), 1.0);
        for &a in &[0.1, 1.0, 5.0, 20.0f64] {
            assert!(trial_function_f(a) < lim);
        }
        assert!((trial_function_f(40.0f64) - lim).abs() < 1e-12);
        assert!(trial_function_f(1e3f64).is_finite());
    }

    #[test]
    fn validity_thresholds() {
        let s = WaveSolver::new(1e-14, 1e-14);
        let small = validity_threshold(&s, Regime::SmallOmega, 0.01).unwrap().unwrap();
        assert!(small.validity_hint > 1e-5 && small.validity_hint < 1e-4, "{small:?}");
        let large = validity_threshold(&s, Regime::LargeOmega, 0.15).unwrap().unwrap();
        assert!(large.validity_hint > 2.0 && large.validity_hint < 9.0, "{large:?}");
        assert!(validity_threshold(&s, Regime::LargeOmega, 1e-4).unwrap().is_none());
    }
}
