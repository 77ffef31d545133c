//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's quadrature or ODE code: the period and
//! mass integrals are recomputed with double-exponential (tanh-sinh)
//! quadrature on the raw integrand, and the ring profile is recomputed with
//! fixed-step classical Runge–Kutta.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Frozen 30-digit reference values (computed once with arbitrary precision
/// arithmetic, independently of this crate).
pub mod frozen {
    pub const T_07: f64 = 0.838824698281622058251000123861;
    pub const B_07: f64 = 0.569102489989613343535486152124;
    pub const U1: f64 = 0.382677398266144636813714896054;
    pub const OMEGA1: f64 = -0.257481856627546068273764048019;
    pub const MU_MAX: f64 = 1.63283135077962474855859822087;
    pub const U0_AT_OMEGA0: f64 = 0.575490719725741357502476229019;
    pub const OMEGA0: f64 = -0.133409421068673897699081959675;
    /// Solution at ω = −1.
    pub const U0_M1: f64 = 0.0814878453599058760;
    pub const MU_M1: f64 = 1.58146149692250936672;
}

pub fn energy(u0: f64) -> f64 {
    -0.75 * (u0 * u0 - u0.powi(6))
}

/// Largest root of `E + u² − u⁶` by bisection on `[3^{-1/4}, 1]`.
pub fn u_plus(e: f64) -> f64 {
    let (mut lo, mut hi) = (3f64.powf(-0.25), 1.0f64);
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if e + m * m - m.powi(6) > 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

/// `E + A(U₊ − d)` expanded in `d`, using only `E + A(U₊) = 0`.
fn radicand_from_top(up: f64, d: f64) -> f64 {
    let mut six = 0.0;
    let binom = [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0];
    for j in 1..=6 {
        six += binom[j] * up.powi(6 - j as i32) * (-d).powi(j as i32);
    }
    (-2.0 * up * d + d * d) - six
}

/// Tanh-sinh estimate of `∫_{U0}^{U₊} g(u)/√(E + A(u)) du`.
pub fn tanh_sinh_sqrt(g: impl Fn(f64) -> f64, u0: f64) -> f64 {
    let e = energy(u0);
    let up = u_plus(e);
    let half = 0.5 * (up - u0);
    let f = |t: f64| {
        let y = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / y.cosh().powi(2);
        // Distance of the node from the nearer endpoint, without cancellation.
        let dist = half * 2.0 / ((2.0 * y.abs()).exp() + 1.0);
        if dist <= 0.0 {
            return 0.0;
        }
        let (u, rad) = if t > 0.0 {
            let u = up - dist;
            (u, radicand_from_top(up, dist))
        } else {
            let u = u0 + dist;
            (u, e + u * u - u.powi(6))
        };
        half * w * g(u) / rad.sqrt()
    };
    let mut h = 0.5;
    let mut prev = f64::NAN;
    for _ in 0..12 {
        let n = (4.5 / h) as i64;
        let s: f64 = (-n..=n).map(|i| f(i as f64 * h)).sum::<f64>() * h;
        if (s - prev).abs() < 1e-14 * s.abs() {
            return s;
        }
        prev = s;
        h *= 0.5;
    }
    prev
}

fn rhs(y: [f64; 3]) -> [f64; 3] {
    [y[1], y[0] - 3.0 * y[0].powi(5), y[0] * y[0]]
}

fn rk4_step(y: [f64; 3], h: f64) -> [f64; 3] {
    let add = |a: [f64; 3], b: [f64; 3], s: f64| [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]];
    let k1 = rhs(y);
    let k2 = rhs(add(y, k1, h / 2.0));
    let k3 = rhs(add(y, k2, h / 2.0));
    let k4 = rhs(add(y, k3, h));
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        y[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
    ]
}

/// Shoots from `(U₊, 0)` until `U = U0`. Returns `(z*, ∫₀^{z*} U² dz)`,
/// which are `T(U0)` and `B(U0)`.
pub fn shoot_to(u0: f64, h: f64) -> (f64, f64) {
    let up = u_plus(energy(u0));
    let mut y = [up, 0.0, 0.0];
    let mut z = 0.0;
    loop {
        let next = rk4_step(y, h);
        if next[0] <= u0 {
            // Secant on the partial step length.
            let (mut s0, mut s1) = (0.0, h);
            let (mut f0, mut f1) = (y[0] - u0, next[0] - u0);
            for _ in 0..60 {
                if (s1 - s0).abs() < 1e-17 || f1 == f0 {
                    break;
                }
                let s2 = s1 - f1 * (s1 - s0) / (f1 - f0);
                s0 = s1;
                f0 = f1;
                s1 = s2;
                f1 = rk4_step(y, s1)[0] - u0;
            }
            let last = rk4_step(y, s1);
            return (z + s1, last[2]);
        }
        y = next;
        z += h;
    }
}

/// `U(z)` at the requested (sorted) points by fixed-step RK4 from `(U₊, 0)`.
pub fn rk4_profile(up: f64, zs: &[f64], h: f64) -> Vec<(f64, f64)> {
    let mut y = [up, 0.0, 0.0];
    let mut z = 0.0;
    let mut out = Vec::with_capacity(zs.len());
    for &target in zs {
        while z + h < target {
            y = rk4_step(y, h);
            z += h;
        }
        let last = rk4_step(y, target - z);
        y = last;
        z = target;
        out.push((y[0], y[1]));
    }
    out
}

/// Deterministic pseudo-random draws in `[lo, hi)`.
pub fn draws(seed: u64, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
