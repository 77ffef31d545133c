//! Scalar algebra of the reduced planar problem.
//!
//! In scaled variables the ring profile solves `-U'' + U - 3U^5 = 0` with
//! first integral `E = (U')^2 - U^2 + U^6`. Everything here is a closed form
//! or a one-dimensional root of a polynomial:
//!
//! * `A(u) = u^2 - u^6`, maximal at `U* = 3^{-1/4}` with `A(U*) = 2/(3√3)`,
//! * the soliton `φ(z) = sech^{1/2}(2z)` on the half-line,
//! * the shift `a` with `φ(a) = U0`,
//! * the turning point `U₊ ≥ U*` solving `E + A(U₊) = 0`,
//! * the roots of `Eρ + ρ² − ρ⁴ = ρ(ρ₁−ρ)(ρ₂−ρ)(ρ₃−ρ)` in `ρ = U²`.

use crate::error::{domain, Result};
use crate::roots::newton_bisect;
use crate::scalar::{c, Real};

/// `U* = 3^{-1/4}`, the maximizer of `A` on the positive axis.
pub fn u_star<T: Real>() -> T {
    c::<T>(3.0).powf(c(-0.25))
}

/// `E₀ = -2/(3√3)`, the degenerate energy level `-A(U*)`.
pub fn e_zero<T: Real>() -> T {
    -c::<T>(2.0) / (c::<T>(3.0) * T::sqrt3())
}

/// Parameters of one admissible solution of the reduced boundary-value
/// problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    /// Vertex amplitude `U0 = U(πε²) = φ(a)` in `(0, 1)`.
    pub u0: T,
    /// First integral, in `(-1/(2√3), 0)`.
    pub energy: T,
    /// Turning point (profile maximum on the ring).
    pub u_plus: T,
    /// Soliton shift on the half-line.
    pub a: T,
}

impl<T: Real> ModelParams<T> {
    /// Builds the parameter set from the vertex amplitude.
    pub fn from_u0(u0: T) -> Result<Self> {
        let energy = energy_from_u0(u0)?;
        let a = a_from_u0(u0)?;
        let u_plus = turning_point(energy)?;
        Ok(Self {
            u0,
            energy,
            u_plus,
            a,
        })
    }

    /// Builds the parameter set from the soliton shift `a > 0`.
    ///
    /// Keeps full relative precision in `E` and `U0` both for `a → 0`
    /// (where `1 - U0⁴ = tanh²(2a)` would cancel) and for large `a`.
    pub fn from_shift(a: T) -> Result<Self> {
        if !(a > T::zero()) || !a.is_finite() {
            return domain("a", a.as_f64(), "(0, inf)");
        }
        let (u0, dphi, _) = soliton(a);
        if !(u0 > T::zero()) {
            return domain("a", a.as_f64(), "shift too large for the scalar type");
        }
        let energy = -c::<T>(0.75) * dphi * dphi;
        let u_plus = turning_point(energy)?;
        Ok(Self {
            u0,
            energy,
            u_plus,
            a,
        })
    }

    /// `E + A(U₊)`; zero up to round-off.
    pub fn turning_residual(&self) -> T {
        self.energy + potential(self.u_plus)
    }
}

/// `A(u) = u² − u⁶`.
#[inline]
pub fn potential<T: Real>(u: T) -> T {
    let u2 = u * u;
    u2 * (T::one() - u2 * u2)
}

/// `A'(u) = 2u(1 − 3u⁴)`.
#[inline]
pub fn potential_d1<T: Real>(u: T) -> T {
    let u4 = (u * u) * (u * u);
    c::<T>(2.0) * u * (T::one() - c::<T>(3.0) * u4)
}

/// `A''(u) = 2(1 − 15u⁴)`.
#[inline]
pub fn potential_d2<T: Real>(u: T) -> T {
    let u4 = (u * u) * (u * u);
    c::<T>(2.0) * (T::one() - c::<T>(15.0) * u4)
}

/// `E = -(3/4) A(U0)`, fixed by the vertex conditions.
pub fn energy_from_u0<T: Real>(u0: T) -> Result<T> {
    check_unit_interval("U0", u0)?;
    Ok(-c::<T>(0.75) * potential(u0))
}

/// Largest root `U₊ ∈ [U*, 1)` of `E + A(u) = 0`.
pub fn turning_point<T: Real>(energy: T) -> Result<T> {
    let e0 = e_zero::<T>();
    if !(energy >= e0 && energy <= T::zero()) {
        return domain("E", energy.as_f64(), "[-2/(3*sqrt 3), 0]");
    }
    if energy == T::zero() {
        return Ok(T::one());
    }
    let us = u_star::<T>();
    if energy == e0 {
        return Ok(us);
    }
    // E + A is decreasing on [U*, 1]: positive at U*, equal to E < 0 at 1.
    newton_bisect(
        |u| (energy + potential(u), potential_d1(u)),
        us,
        T::one(),
        T::tol(1e-15),
        "E + A(u)",
    )
}

/// Soliton shift `a` with `φ(a) = U0`: `e^{2a} = (1 + √(1 − U0⁴)) / U0²`.
pub fn a_from_u0<T: Real>(u0: T) -> Result<T> {
    check_unit_interval("U0", u0)?;
    let u2 = u0 * u0;
    let s = (T::one() - u2 * u2).sqrt();
    // 2a = ln((1+s)/U0²) written as ln1p of the small quantity near U0 = 1.
    let two_a = ((T::one() + s - u2) / u2).ln_1p();
    Ok(two_a * c(0.5))
}

/// `e^{-2a} = U0² / (1 + √(1 − U0⁴))`, without going through logarithms.
pub fn exp_neg_two_a<T: Real>(u0: T) -> T {
    let u2 = u0 * u0;
    u2 / (T::one() + (T::one() - u2 * u2).sqrt())
}

/// `φ(z) = sech^{1/2}(2z)` together with `φ'` and `φ''`.
///
/// `φ' = -φ tanh 2z`, `φ'' = φ tanh² 2z − 2φ sech² 2z`, which equals
/// `φ − 3φ⁵` identically.
pub fn soliton<T: Real>(z: T) -> (T, T, T) {
    let two_z = c::<T>(2.0) * z;
    let x = two_z.abs();
    // sech computed from e^{-x} so that large arguments do not overflow.
    let em = (-x).exp();
    let sech = c::<T>(2.0) * em / (T::one() + em * em);
    let tanh = two_z.tanh();
    let phi = sech.sqrt();
    let dphi = -phi * tanh;
    let d2phi = phi * tanh * tanh - c::<T>(2.0) * phi * sech * sech;
    (phi, dphi, d2phi)
}

/// `a₀ = ½ arccosh(√3)`, the inflection point of the soliton.
pub fn inflection_shift<T: Real>() -> T {
    T::sqrt3().acosh() * c(0.5)
}

/// Roots of `Eρ + ρ² − ρ⁴ = ρ(ρ₁−ρ)(ρ₂−ρ)(ρ₃−ρ)`, ordered `ρ₃ < 0 < ρ₂ < ρ₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoRoots<T> {
    pub rho1: T,
    pub rho2: T,
    pub rho3: T,
}

impl<T: Real> RhoRoots<T> {
    /// Defects of the three elementary symmetric identities
    /// `(ρ₁+ρ₂+ρ₃, Σρᵢρⱼ + 1, ρ₁ρ₂ρ₃ − E)`.
    pub fn symmetric_defects(&self, energy: T) -> [T; 3] {
        let (r1, r2, r3) = (self.rho1, self.rho2, self.rho3);
        [
            r1 + r2 + r3,
            r1 * r2 + r1 * r3 + r2 * r3 + T::one(),
            r1 * r2 * r3 - energy,
        ]
    }

    /// `ν = √(ρ₁(ρ₂ − ρ₃))`.
    pub fn nu(&self) -> T {
        (self.rho1 * (self.rho2 - self.rho3)).sqrt()
    }

    /// Elliptic modulus `k` and its complement `k' = √(1 − k²)`.
    ///
    /// `k'² = ρ₂(ρ₁ + |ρ₃|) / (ρ₁(ρ₂ + |ρ₃|))` is evaluated directly so that
    /// `1 − k` keeps relative precision when it is exponentially small.
    pub fn modulus(&self) -> (T, T) {
        let m3 = -self.rho3;
        let denom = self.rho1 * (self.rho2 + m3);
        let k2 = m3 * (self.rho1 - self.rho2) / denom;
        let kc2 = self.rho2 * (self.rho1 + m3) / denom;
        (k2.sqrt(), kc2.sqrt())
    }
}

/// Solves the cubic `|E| = r(r² − 1)` for `r = |ρ₃| ∈ (1, 2/√3)` and
/// assembles the three roots.
pub fn rho_roots<T: Real>(energy: T) -> Result<RhoRoots<T>> {
    let e0 = e_zero::<T>();
    if !(energy > e0 && energy < T::zero()) {
        return domain("E", energy.as_f64(), "(-2/(3*sqrt 3), 0)");
    }
    let target = -energy;
    let hi = c::<T>(2.0) / T::sqrt3();
    let r = newton_bisect(
        |r| (r * (r * r - T::one()) - target, c::<T>(3.0) * r * r - T::one()),
        T::one(),
        hi,
        T::tol(1e-16),
        "|E| = r(r^2-1)",
    )?;
    let disc = (T::one() - c::<T>(0.75) * r * r).max(T::zero()).sqrt();
    let rho1 = r * c(0.5) + disc;
    // ρ₂ = |E| / (ρ₁ |ρ₃|) avoids the cancellation in r/2 − disc as E → 0.
    let rho2 = target / (rho1 * r);
    Ok(RhoRoots {
        rho1,
        rho2,
        rho3: -r,
    })
}

fn check_unit_interval<T: Real>(name: &'static str, u: T) -> Result<()> {
    if u > T::zero() && u < T::one() {
        Ok(())
    } else {
        domain(name, u.as_f64(), "(0, 1)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn potential_values() {
        let us: f64 = u_star();
        assert_relative_eq!(potential(us), 2.0 / (3.0 * 3f64.sqrt()), max_relative = 1e-15);
        assert_eq!(potential(0.0f64), 0.0);
        assert_eq!(potential(1.0f64), 0.0);
        assert_eq!(potential(0.5f64), 0.234375);
        assert!(potential_d1(us).abs() < 1e-15);
    }

    #[test]
    fn energy_values() {
        let us: f64 = u_star();
        assert_relative_eq!(
            energy_from_u0(us).unwrap(),
            -1.0 / (2.0 * 3f64.sqrt()),
            max_relative = 1e-15
        );
        assert_eq!(energy_from_u0(0.5f64).unwrap(), -0.17578125);
        assert!(energy_from_u0(1.0 - 1e-12f64).unwrap() > -1e-11);
        assert!(energy_from_u0(1.0f64).is_err());
        assert!(energy_from_u0(0.0f64).is_err());
    }

    #[test]
    fn turning_point_limits_and_bisection_oracle() {
        assert_eq!(turning_point(0.0f64).unwrap(), 1.0);
        assert!((turning_point(-1e-14f64).unwrap() - 1.0).abs() < 1e-14);
        let e0: f64 = e_zero();
        assert_eq!(turning_point(e0).unwrap(), u_star::<f64>());
        // Oracle: plain bisection on E + u² − u⁶ over [U*, 1].
        let e = -0.1f64;
        let (mut lo, mut hi) = (u_star::<f64>(), 1.0f64);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if e + m * m - m.powi(6) > 0.0 {
                lo = m;
            } else {
                hi = m;
            }
        }
        let up = turning_point(e).unwrap();
        assert!((up - lo).abs() < 1e-13);
        assert!((e + potential(up)).abs() < 1e-13);
        assert!(turning_point(-0.5f64).is_err());
        assert!(turning_point(0.1f64).is_err());
    }

    #[test]
    fn shift_formula() {
        let us: f64 = u_star();
        let expected = 0.5 * (3f64.sqrt() + 2f64.sqrt()).ln();
        assert_relative_eq!(a_from_u0(us).unwrap(), expected, max_relative = 1e-14);
        assert!(a_from_u0(1.0 - 1e-12f64).unwrap() < 1e-5);
        let (phi1, _, _) = soliton(1.0f64);
        assert_relative_eq!(a_from_u0(phi1).unwrap(), 1.0, max_relative = 1e-13);
        assert_relative_eq!(inflection_shift::<f64>(), expected, max_relative = 1e-14);
    }

    #[test]
    fn soliton_properties() {
        let (p, dp, _) = soliton(0.0f64);
        assert_eq!(p, 1.0);
        assert_eq!(dp, 0.0);
        let a0: f64 = inflection_shift();
        assert!(soliton(a0).2.abs() < 1e-15);
        for &z in &[0.1, 0.7, 2.0, 8.0, 30.0f64] {
            let (p, _, d2) = soliton(z);
            assert!((d2 - (p - 3.0 * p.powi(5))).abs() < 1e-13);
        }
        let z = 30.0f64;
        assert_relative_eq!(soliton(z).0, 2f64.sqrt() * (-z).exp(), max_relative = 1e-12);
    }

    #[test]
    fn rho_roots_limits() {
        let r = rho_roots(-1e-12f64).unwrap();
        assert!((r.rho1 - 1.0).abs() < 1e-11);
        assert!(r.rho2.abs() < 1e-11);
        assert!((r.rho3 + 1.0).abs() < 1e-11);
        assert!(rho_roots(0.0f64).is_err());
        assert!(rho_roots(e_zero::<f64>()).is_err());
    }

    #[test]
    fn rho_roots_cubic_oracle() {
        // Oracle: bisection on r³ − r − |E| = 0 over (1, 2/√3).
        let e = -0.1f64;
        let (mut lo, mut hi) = (1.0f64, 2.0 / 3f64.sqrt());
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if m * m * m - m - 0.1 < 0.0 {
                lo = m;
            } else {
                hi = m;
            }
        }
        let roots = rho_roots(e).unwrap();
        assert!((roots.rho3 + lo).abs() < 1e-14);
        for d in roots.symmetric_defects(e) {
            assert!(d.abs() < 1e-12);
        }
        assert!(roots.rho3 < 0.0 && 0.0 < roots.rho2 && roots.rho2 < roots.rho1);
        // ρ₁ is the square of the turning point.
        let up = turning_point(e).unwrap();
        assert!((roots.rho1 - up * up).abs() < 1e-13);
    }

    #[test]
    fn modulus_complement_consistent() {
        let roots = rho_roots(-0.2f64).unwrap();
        let (k, kc) = roots.modulus();
        assert!((k * k + kc * kc - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_precision_model() {
        let p = ModelParams::<f32>::from_u0(0.5).unwrap();
        assert!(p.turning_residual().abs() < 1e-5);
        assert!((p.energy + 0.17578125).abs() < 1e-7);
    }

    proptest! {
        #[test]
        fn symmetric_identities_hold(e in -0.384f64..-1e-9) {
            let r = rho_roots(e).unwrap();
            for d in r.symmetric_defects(e) {
                prop_assert!(d.abs() < 1e-12);
            }
            prop_assert!(r.rho3 < 0.0 && 0.0 < r.rho2 && r.rho2 < r.rho1);
        }

        #[test]
        fn shift_and_soliton_are_inverse(u0 in 1e-6f64..(1.0 - 1e-6)) {
            let a = a_from_u0(u0).unwrap();
            prop_assert!(a > 0.0);
            prop_assert!((soliton(a).0 - u0).abs() < 1e-12);
        }

        #[test]
        fn energy_two_routes(u0 in 1e-6f64..(1.0 - 1e-6)) {
            let a = a_from_u0(u0).unwrap();
            let dphi = soliton(a).1;
            let e1 = energy_from_u0(u0).unwrap();
            prop_assert!((e1 + 0.75 * dphi * dphi).abs() < 1e-12);
        }

        #[test]
        fn vertex_amplitude_in_solution_range(u0 in 1e-6f64..(1.0 - 1e-6)) {
            let e = energy_from_u0(u0).unwrap();
            let r = rho_roots(e).unwrap();
            let s = u0 * u0;
            prop_assert!(r.rho2 <= s * (1.0 + 1e-12) && s <= r.rho1 * (1.0 + 1e-12));
        }

        #[test]
        fn from_shift_matches_from_u0(a in 0.01f64..20.0) {
            let p1 = ModelParams::from_shift(a).unwrap();
            let p2 = ModelParams::from_u0(p1.u0).unwrap();
            prop_assert!((p1.energy - p2.energy).abs() <= 1e-13 * p1.energy.abs().max(1e-300) + 1e-16);
            prop_assert!((p1.u_plus - p2.u_plus).abs() < 1e-13);
            prop_assert!((p1.a - p2.a).abs() < 1e-10 * (1.0 + a));
        }
    }
}
