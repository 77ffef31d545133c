//! Nondegeneracy of the family.
//!
//! `W = ∂_E U(z; E)` solves `−W'' + W − 15U⁴W = 0` with `W(0) = −1/A'(U₊)`,
//! `W'(0) = 0`, and the pair `(U, W)` keeps `2U'W' − 2UW(1 − 3U⁴) ≡ 1`.
//! A kernel element of the linearized operator exists only if
//! `2W'(πε²)/W(πε²) = φ''(a)/φ'(a)`; the mismatch between the two sides is
//! therefore the quantity to watch.

use crate::error::{domain, Error, Result};
use crate::model::{potential_d1, soliton};
use crate::ode::{Dopri, OdeOptions};
use crate::scalar::{c, Real};
use crate::wave::{WaveSolution, WaveSolver};

/// Result of integrating the linearized equation along one wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizedTrace<T> {
    pub eps: T,
    pub a: T,
    pub w_end: T,
    pub dw_end: T,
    /// `2W'/W − φ''(a)/φ'(a)` at `z = πε²`.
    pub mismatch: T,
    /// `2W'φ'(a) − Wφ''(a)`, the mismatch times `Wφ'(a)`. Unlike the
    /// mismatch it has no pole where `W(πε²) = 0` and stays defined at the
    /// inflection point; it vanishes exactly when a kernel element exists.
    pub regularized: T,
    /// `max |1 − [2U'W' − 2UW(1 − 3U⁴)]|` over all accepted steps.
    pub wronskian_defect: T,
}

/// `|φ''(a)|` below which the boundary ratio is treated as degenerate.
pub const EXCEPTIONAL_THRESHOLD: f64 = 1e-10;

/// The quantity `2U'W' − 2UW(1 − 3U⁴)`.
pub fn wronskian<T: Real>(y: &[T; 4]) -> T {
    let (u, du, w, dw) = (y[0], y[1], y[2], y[3]);
    let u4 = (u * u) * (u * u);
    c::<T>(2.0) * du * dw - c::<T>(2.0) * u * w * (T::one() - c::<T>(3.0) * u4)
}

/// Integrates `(U, W)` jointly over `[0, πε²]`.
pub fn integrate_w<T: Real>(sol: &WaveSolution<T>, opts: OdeOptions<T>) -> Result<LinearizedTrace<T>> {
    let up = sol.params.u_plus;
    let y0 = [up, T::zero(), -T::one() / potential_d1(up), T::zero()];
    let rhs = |_z: T, y: &[T; 4]| {
        let u = y[0];
        let u4 = (u * u) * (u * u);
        [
            y[1],
            u - c::<T>(3.0) * u4 * u,
            y[3],
            y[2] - c::<T>(15.0) * u4 * y[2],
        ]
    };
    let mut defect = (T::one() - wronskian(&y0)).abs();
    let mut solver = Dopri::new(rhs, T::zero(), y0, opts);
    let y = solver.advance_to(sol.half_length(), |_, y| {
        defect = defect.max((T::one() - wronskian(y)).abs());
    })?;
    let (_, dphi, d2phi) = soliton(sol.params.a);
    Ok(LinearizedTrace {
        eps: sol.eps,
        a: sol.params.a,
        w_end: y[2],
        dw_end: y[3],
        mismatch: c::<T>(2.0) * y[3] / y[2] - d2phi / dphi,
        regularized: c::<T>(2.0) * y[3] * dphi - y[2] * d2phi,
        wronskian_defect: defect,
    })
}

/// `2W'(πε²)/W(πε²) − φ''(a)/φ'(a)`.
///
/// At the inflection point `φ''(a) = 0` the boundary condition reduces to
/// `W'(πε²) = 0`; this returns [`Error::ExceptionalPoint`] carrying
/// `W'(πε²)`, which the Wronskian identity forces to be nonzero.
pub fn nondegeneracy_mismatch<T: Real>(sol: &WaveSolution<T>, opts: OdeOptions<T>) -> Result<T> {
    let trace = integrate_w(sol, opts)?;
    let (_, _, d2phi) = soliton(sol.params.a);
    if d2phi.abs() < c(EXCEPTIONAL_THRESHOLD) {
        return Err(Error::ExceptionalPoint {
            w_prime_end: trace.dw_end.as_f64(),
        });
    }
    Ok(trace.mismatch)
}

/// Both sides of the boundary relation
/// `2W'/W = φ''(a)[a'(ε) − 4πε] / (φ'(a)[a'(ε) − πε])`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcWRelation<T> {
    pub lhs: T,
    pub rhs: T,
    /// `a'(ε)` by central difference.
    pub da_deps: T,
}

impl<T: Real> BcWRelation<T> {
    pub fn defect(&self) -> T {
        (self.lhs - self.rhs).abs()
    }
}

/// Evaluates the boundary relation with `a'(ε)` from a central difference of
/// step `h` through [`WaveSolver::solve_from_omega`].
pub fn check_bc_w_relation<T: Real>(
    sol: &WaveSolution<T>,
    solver: &WaveSolver<T>,
    h: T,
    opts: OdeOptions<T>,
) -> Result<BcWRelation<T>> {
    let (_, dphi, d2phi) = soliton(sol.params.a);
    if d2phi.abs() <= c(1e-8) {
        return domain("phi''(a)", d2phi.as_f64(), "|phi''(a)| > 1e-8");
    }
    let a_at = |eps: T| -> Result<T> {
        let e2 = eps * eps;
        Ok(solver.solve_from_omega(-e2 * e2)?.params.a)
    };
    let eps = sol.eps;
    let da = (a_at(eps + h)? - a_at(eps - h)?) / (c::<T>(2.0) * h);
    let trace = integrate_w(sol, opts)?;
    let pi = T::PI();
    Ok(BcWRelation {
        lhs: c::<T>(2.0) * trace.dw_end / trace.w_end,
        rhs: d2phi * (da - c::<T>(4.0) * pi * eps) / (dphi * (da - pi * eps)),
        da_deps: da,
    })
}
