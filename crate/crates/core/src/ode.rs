//! Adaptive Dormand–Prince 5(4) integrator for small autonomous-or-not
//! systems with fixed dimension.
//!
//! Used for the shooting profile and for the linearized equation. Output
//! points are hit exactly by clipping the step, so no dense output is
//! needed.

use crate::error::{Error, Result};
use crate::scalar::{c, Real};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions<T> {
    pub rtol: T,
    pub atol: T,
    pub max_steps: usize,
}

impl<T: Real> Default for OdeOptions<T> {
    fn default() -> Self {
        Self {
            rtol: T::tol(1e-13),
            atol: T::tol(1e-14),
            max_steps: 2_000_000,
        }
    }
}

impl<T: Real> OdeOptions<T> {
    pub fn with_tol(rtol: f64, atol: f64) -> Self {
        Self {
            rtol: T::tol(rtol),
            atol: T::tol(atol),
            ..Self::default()
        }
    }
}

/// Integrator state. `f(z, y)` returns `y'`.
pub struct Dopri<T, const N: usize, F> {
    f: F,
    z: T,
    y: [T; N],
    k1: [T; N],
    h: T,
    opts: OdeOptions<T>,
    steps: usize,
}

fn axpy<T: Real, const N: usize>(y: &[T; N], h: T, terms: &[(T, &[T; N])]) -> [T; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = T::zero();
        for (coef, k) in terms {
            acc = acc + *coef * k[i];
        }
        *o = *o + h * acc;
    }
    out
}

impl<T, const N: usize, F> Dopri<T, N, F>
where
    T: Real,
    F: FnMut(T, &[T; N]) -> [T; N],
{
    pub fn new(mut f: F, z0: T, y0: [T; N], opts: OdeOptions<T>) -> Self {
        let k1 = f(z0, &y0);
        Self {
            f,
            z: z0,
            y: y0,
            k1,
            h: c(1e-3),
            opts,
            steps: 0,
        }
    }

    pub fn z(&self) -> T {
        self.z
    }

    pub fn state(&self) -> &[T; N] {
        &self.y
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Advances to `z_end` exactly, calling `observe` after every accepted
    /// step.
    pub fn advance_to<O>(&mut self, z_end: T, mut observe: O) -> Result<[T; N]>
    where
        O: FnMut(T, &[T; N]),
    {
        let dir = if z_end >= self.z { T::one() } else { -T::one() };
        self.h = self.h.abs() * dir;
        let h_floor = T::epsilon() * c(16.0);
        while (z_end - self.z) * dir > T::zero() {
            if self.steps >= self.opts.max_steps {
                return Err(Error::MaxIterations(self.opts.max_steps));
            }
            let remaining = z_end - self.z;
            let last = self.h.abs() >= remaining.abs();
            let h = if last { remaining } else { self.h };
            let (y_new, k7, err) = self.trial(h);
            if err <= T::one() {
                self.z = if last { z_end } else { self.z + h };
                self.y = y_new;
                self.k1 = k7;
                self.steps += 1;
                observe(self.z, &self.y);
            }
            let fac = if err == T::zero() {
                c(5.0)
            } else {
                (c::<T>(0.9) * err.powf(c(-0.2))).max(c(0.2)).min(c(5.0))
            };
            let h_next = h.abs() * fac;
            if h_next < h_floor * (T::one() + self.z.abs()) {
                return Err(Error::StepFailure {
                    at: self.z.as_f64(),
                    step: h_next.as_f64(),
                });
            }
            // A clipped final step says nothing about the natural step size.
            if !(last && err <= T::one()) {
                self.h = h_next * dir;
            }
        }
        Ok(self.y)
    }

    fn trial(&mut self, h: T) -> ([T; N], [T; N], T) {
        let z = self.z;
        let y = &self.y;
        let k1 = self.k1;
        let f = &mut self.f;

        let k2 = f(z + h * c(1.0 / 5.0), &axpy(y, h, &[(c(1.0 / 5.0), &k1)]));
        let k3 = f(
            z + h * c(3.0 / 10.0),
            &axpy(y, h, &[(c(3.0 / 40.0), &k1), (c(9.0 / 40.0), &k2)]),
        );
        let k4 = f(
            z + h * c(4.0 / 5.0),
            &axpy(
                y,
                h,
                &[(c(44.0 / 45.0), &k1), (c(-56.0 / 15.0), &k2), (c(32.0 / 9.0), &k3)],
            ),
        );
        let k5 = f(
            z + h * c(8.0 / 9.0),
            &axpy(
                y,
                h,
                &[
                    (c(19372.0 / 6561.0), &k1),
                    (c(-25360.0 / 2187.0), &k2),
                    (c(64448.0 / 6561.0), &k3),
                    (c(-212.0 / 729.0), &k4),
                ],
            ),
        );
        let k6 = f(
            z + h,
            &axpy(
                y,
                h,
                &[
                    (c(9017.0 / 3168.0), &k1),
                    (c(-355.0 / 33.0), &k2),
                    (c(46732.0 / 5247.0), &k3),
                    (c(49.0 / 176.0), &k4),
                    (c(-5103.0 / 18656.0), &k5),
                ],
            ),
        );
        let y_new = axpy(
            y,
            h,
            &[
                (c(35.0 / 384.0), &k1),
                (c(500.0 / 1113.0), &k3),
                (c(125.0 / 192.0), &k4),
                (c(-2187.0 / 6784.0), &k5),
                (c(11.0 / 84.0), &k6),
            ],
        );
        let k7 = f(z + h, &y_new);

        let e = [
            c::<T>(71.0 / 57600.0),
            c::<T>(-71.0 / 16695.0),
            c::<T>(71.0 / 1920.0),
            c::<T>(-17253.0 / 339200.0),
            c::<T>(22.0 / 525.0),
            c::<T>(-1.0 / 40.0),
        ];
        let mut acc = T::zero();
        for i in 0..N {
            let err_i = h
                * (e[0] * k1[i] + e[1] * k3[i] + e[2] * k4[i] + e[3] * k5[i] + e[4] * k6[i]
                    + e[5] * k7[i]);
            let scale = self.opts.atol + self.opts.rtol * y[i].abs().max(y_new[i].abs());
            let r = err_i / scale;
            acc = acc + r * r;
        }
        let err = (acc / T::from_usize(N).unwrap()).sqrt();
        (y_new, k7, if err.is_finite() { err } else { T::infinity() })
    }
}

/// Integrates from `z0` and returns the state at each of `outputs`, which
/// must be sorted in the direction of integration.
pub fn integrate_at<T, const N: usize, F>(
    f: F,
    z0: T,
    y0: [T; N],
    outputs: &[T],
    opts: OdeOptions<T>,
) -> Result<Vec<[T; N]>>
where
    T: Real,
    F: FnMut(T, &[T; N]) -> [T; N],
{
    let mut solver = Dopri::new(f, z0, y0, opts);
    outputs
        .iter()
        .map(|&z| solver.advance_to(z, |_, _| {}))
        .collect()
}
