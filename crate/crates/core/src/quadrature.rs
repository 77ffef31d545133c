//! Integrals of the form `∫_{U0}^{U₊} g(u) du / √(E + A(u))`.
//!
//! The integrand has an inverse square-root singularity at the turning point
//! because `E + A(u) = (U₊ − u)(U₊ + u)(S(u) − 1)` with
//! `S(u) = u⁴ + u²U₊² + U₊⁴`, and `S(U₊) − 1 = 3U₊⁴ − 1 > 0` away from the
//! degenerate level. The interval is split at its midpoint:
//!
//! * upper half: `u = U₊ − t²` turns the integrand into
//!   `2g(u) / √((U₊ + u)(S(u) − 1))`, which is smooth in `t`;
//! * lower half: for small `U0` the substitution `u = eˢ` keeps the `1/u`
//!   behaviour smooth; otherwise `u` is used directly.
//!
//! Both halves are handed to adaptive Gauss–Kronrod (21 points).

use crate::error::{domain, Error, Result};
use crate::model::{
    energy_from_u0, exp_neg_two_a, potential, potential_d1, potential_d2, turning_point, u_star,
};
use crate::scalar::{c, Real};

/// Which integral a [`QuadratureSpec`] describes. Informational only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrand {
    Period,
    Mass,
    MonotonicityF,
    Generic,
}

/// Interval, tolerance and subdivision budget of one quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub integrand: Integrand,
    pub lower: T,
    pub upper: T,
    /// Absolute tolerance.
    pub tolerance: T,
    pub max_subdivisions: usize,
}

impl<T: Real> QuadratureSpec<T> {
    pub fn new(integrand: Integrand, lower: T, upper: T, tolerance: T) -> Result<Self> {
        if !(lower < upper) {
            return domain("lower", lower.as_f64(), "(-inf, upper)");
        }
        if !(tolerance > T::zero()) {
            return domain("tolerance", tolerance.as_f64(), "(0, inf)");
        }
        Ok(Self {
            integrand,
            lower,
            upper,
            tolerance,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        })
    }
}

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208795883470,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
// 10-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

fn gk21<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Result<(T, T)> {
    let half = (b - a) * c(0.5);
    let mid = (a + b) * c(0.5);
    let mut eval = |x: T| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { at: x.as_f64() })
        }
    };
    let fc = eval(mid)?;
    let mut kron = fc * c(WGK[10]);
    let mut gauss = T::zero();
    for j in 0..10 {
        let dx = half * c(XGK[j]);
        let pair = eval(mid - dx)? + eval(mid + dx)?;
        kron = kron + c::<T>(WGK[j]) * pair;
        if j % 2 == 1 {
            gauss = gauss + c::<T>(WG[j / 2]) * pair;
        }
    }
    Ok((kron * half, ((kron - gauss) * half).abs()))
}

/// Globally adaptive 21-point Gauss–Kronrod on `[a, b]`.
///
/// Returns `(value, error estimate)`. The estimate is the raw Kronrod–Gauss
/// difference, which overstates the true error for smooth integrands.
pub fn gauss_kronrod<T, F>(mut f: F, a: T, b: T, tol: T, max_subdivisions: usize) -> Result<(T, T)>
where
    T: Real,
    F: FnMut(T) -> T,
{
    if a == b {
        return Ok((T::zero(), T::zero()));
    }
    let tol = tol.max(T::epsilon() * c(64.0));
    let (v, e) = gk21(&mut f, a, b)?;
    let mut segs = vec![(a, b, v, e)];
    loop {
        let (total, err) = segs
            .iter()
            .fold((T::zero(), T::zero()), |(s, e), seg| (s + seg.2, e + seg.3));
        if err <= tol || err <= total.abs() * T::epsilon() * c(50.0) {
            return Ok((total, err));
        }
        if segs.len() >= max_subdivisions.max(1) {
            return Err(Error::ToleranceNotMet {
                estimate: total.as_f64(),
                achieved: err.as_f64(),
                requested: tol.as_f64(),
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = segs.swap_remove(worst);
        let m = (lo + hi) * c(0.5);
        if !(m > lo.min(hi) && m < lo.max(hi)) {
            return Err(Error::ToleranceNotMet {
                estimate: total.as_f64(),
                achieved: err.as_f64(),
                requested: tol.as_f64(),
            });
        }
        let (v1, e1) = gk21(&mut f, lo, m)?;
        let (v2, e2) = gk21(&mut f, m, hi)?;
        segs.push((lo, m, v1, e1));
        segs.push((m, hi, v2, e2));
    }
}

/// `∫_{spec.lower}^{spec.upper} g(u) / √(E + A(u)) du` where `spec.upper` is
/// the turning point `U₊` of the level `E`.
pub fn integrate_sqrt_endpoint<T, G>(g: G, energy: T, spec: &QuadratureSpec<T>) -> Result<T>
where
    T: Real,
    G: Fn(T) -> T,
{
    let (u0, up) = (spec.lower, spec.upper);
    if !(u0 > T::zero() && u0 < up) {
        return domain("U0", u0.as_f64(), "(0, U+)");
    }
    if !(energy + potential(u0) > T::zero()) {
        return domain("E + A(U0)", (energy + potential(u0)).as_f64(), "(0, inf)");
    }
    let tol = spec.tolerance * c(0.5);
    let um = u0 + (up - u0) * c(0.5);
    let up2 = up * up;
    let s_minus_one = |u: T| {
        // U₊⁴ − 1 = −(1 − U₊²)(1 + U₊²), then the u-dependent part.
        -(T::one() - up2) * (T::one() + up2) + u * u * (up2 + u * u)
    };
    let quarter = c::<T>(0.25);
    let radicand = |u: T| {
        if u >= quarter {
            (up - u) * (up + u) * s_minus_one(u)
        } else {
            energy + u * u * (T::one() - u * u * u * u)
        }
    };

    // Log substitution only where U0 is small; near 1 it would cost digits.
    let (lower, _) = if u0 < quarter {
        gauss_kronrod(
            |s: T| {
                let u = s.exp();
                g(u) * u / radicand(u).sqrt()
            },
            u0.ln(),
            um.ln(),
            tol,
            spec.max_subdivisions,
        )?
    } else {
        gauss_kronrod(|u: T| g(u) / radicand(u).sqrt(), u0, um, tol, spec.max_subdivisions)?
    };
    let (upper, _) = gauss_kronrod(
        |t: T| {
            let u = up - t * t;
            g(u) * c::<T>(2.0) / ((up + u) * s_minus_one(u)).sqrt()
        },
        T::zero(),
        (up - um).sqrt(),
        tol,
        spec.max_subdivisions,
    )?;
    Ok(lower + upper)
}

/// The integrand bracket of the period derivative,
/// `1 − 2A''(u)[A(u) − A(U*)]/A'(u)²`, in factored form
/// `2(1 − √3u²)(1 + 3√3u² + 3u⁴) / (3√3 u²(1 + √3u²)²)`.
pub fn period_bracket<T: Real>(u: T) -> T {
    let s3 = T::sqrt3();
    let u2 = u * u;
    let w = T::one() + s3 * u2;
    c::<T>(2.0) * (T::one() - s3 * u2) * (T::one() + c::<T>(3.0) * s3 * u2 + c::<T>(3.0) * u2 * u2)
        / (c::<T>(3.0) * s3 * u2 * w * w)
}

/// The same bracket evaluated literally; singular at `U*`.
pub fn period_bracket_raw<T: Real>(u: T) -> T {
    let a_star = potential(u_star::<T>());
    let d1 = potential_d1(u);
    T::one() - c::<T>(2.0) * potential_d2(u) * (potential(u) - a_star) / (d1 * d1)
}

/// Quadrature driver with a fixed tolerance and subdivision budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad<T> {
    pub tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> Default for Quad<T> {
    fn default() -> Self {
        Self::new(T::tol(DEFAULT_TOL))
    }
}

struct Level<T> {
    u0: T,
    energy: T,
    u_plus: T,
}

impl<T: Real> Quad<T> {
    pub fn new(tol: T) -> Self {
        Self {
            tol,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }

    fn level(&self, u0: T) -> Result<Level<T>> {
        let energy = energy_from_u0(u0)?;
        Ok(Level {
            u0,
            energy,
            u_plus: turning_point(energy)?,
        })
    }

    fn run<G: Fn(T) -> T>(&self, what: Integrand, lv: &Level<T>, g: G) -> Result<T> {
        let mut spec = QuadratureSpec::new(what, lv.u0, lv.u_plus, self.tol)?;
        spec.max_subdivisions = self.max_subdivisions;
        integrate_sqrt_endpoint(g, lv.energy, &spec)
    }

    /// `T(U0) = ∫ du / √(E + A(u))`, equal to `πε²`.
    pub fn period_t(&self, u0: T) -> Result<T> {
        let lv = self.level(u0)?;
        self.run(Integrand::Period, &lv, |_| T::one())
    }

    /// `T'(U0)` from
    /// `[E + A(U*)] T' = −(3/8) A'(U0) ∫ bracket / √(E+A) − A(U*) / (2√A(U0))`.
    pub fn period_t_derivative(&self, u0: T) -> Result<T> {
        let lv = self.level(u0)?;
        let a_star = potential(u_star::<T>());
        let integral = self.run(Integrand::Generic, &lv, period_bracket)?;
        let rhs = -c::<T>(0.375) * potential_d1(u0) * integral
            - a_star / (c::<T>(2.0) * potential(u0).sqrt());
        Ok(rhs / (lv.energy + a_star))
    }

    /// `B(U0) = ∫ u² du / √(E + A(u))`.
    pub fn mass_integral_b(&self, u0: T) -> Result<T> {
        let lv = self.level(u0)?;
        self.run(Integrand::Mass, &lv, |u| u * u)
    }

    /// `μ = 2B(U0) + arctan(e^{−2a})`.
    pub fn mass(&self, u0: T) -> Result<T> {
        Ok(c::<T>(2.0) * self.mass_integral_b(u0)? + exp_neg_two_a(u0).atan())
    }

    /// `F(U0) = ∫ (1 − √3u²)/(1 + √3u²)² du / √(E + A(u))`.
    pub fn monotonicity_f(&self, u0: T) -> Result<T> {
        let lv = self.level(u0)?;
        let s3 = T::sqrt3();
        self.run(Integrand::MonotonicityF, &lv, |u| {
            let w = T::one() + s3 * u * u;
            (T::one() - s3 * u * u) / (w * w)
        })
    }

    /// `[E + A(U*)] dμ/dU0 = (1/(2√3)) A'(U0) F(U0) − (3/4) U0² √A(U0)`.
    ///
    /// Returns the right-hand side; `E + A(U*) > 0`, so its sign is the
    /// sign of `dμ/dU0` (and of `dμ/dω`, since `ω` increases with `U0`).
    pub fn mass_derivative_sign(&self, u0: T) -> Result<T> {
        let f = self.monotonicity_f(u0)?;
        Ok(potential_d1(u0) * f / (c::<T>(2.0) * T::sqrt3())
            - c::<T>(0.75) * u0 * u0 * potential(u0).sqrt())
    }

    /// `dμ/dU0` itself.
    pub fn mass_derivative(&self, u0: T) -> Result<T> {
        let rhs = self.mass_derivative_sign(u0)?;
        let energy = energy_from_u0(u0)?;
        Ok(rhs / (energy + potential(u_star::<T>())))
    }
}

/// `G(U0) = 3√3 U0² √(1 − U0⁴) / (4(1 − 3U0⁴))` on `(0, U*)`.
pub fn monotonicity_g<T: Real>(u0: T) -> Result<T> {
    if !(u0 > T::zero() && u0 < u_star()) {
        return domain("U0", u0.as_f64(), "(0, 3^(-1/4))");
    }
    let u4 = (u0 * u0) * (u0 * u0);
    Ok(c::<T>(3.0) * T::sqrt3() * u0 * u0 * (T::one() - u4).sqrt()
        / (c::<T>(4.0) * (T::one() - c::<T>(3.0) * u4)))
}

/// `G'(U0) = 3√3 U0 (1 + U0⁴) / (2(1 − 3U0⁴)² √(1 − U0⁴))`.
pub fn monotonicity_g_derivative<T: Real>(u0: T) -> Result<T> {
    if !(u0 > T::zero() && u0 < u_star()) {
        return domain("U0", u0.as_f64(), "(0, 3^(-1/4))");
    }
    let u4 = (u0 * u0) * (u0 * u0);
    let d = T::one() - c::<T>(3.0) * u4;
    Ok(c::<T>(3.0) * T::sqrt3() * u0 * (T::one() + u4)
        / (c::<T>(2.0) * d * d * (T::one() - u4).sqrt()))
}

/// [`Quad::period_t`] at the default tolerance.
pub fn period_t<T: Real>(u0: T) -> Result<T> {
    Quad::default().period_t(u0)
}

/// [`Quad::period_t_derivative`] at the default tolerance.
pub fn period_t_derivative<T: Real>(u0: T) -> Result<T> {
    Quad::default().period_t_derivative(u0)
}

/// [`Quad::mass_integral_b`] at the default tolerance.
pub fn mass_integral_b<T: Real>(u0: T) -> Result<T> {
    Quad::default().mass_integral_b(u0)
}

/// [`Quad::monotonicity_f`] at the default tolerance.
pub fn monotonicity_f<T: Real>(u0: T) -> Result<T> {
    Quad::default().monotonicity_f(u0)
}

/// [`Quad::mass_derivative_sign`] at the default tolerance.
pub fn mass_derivative_sign<T: Real>(u0: T) -> Result<T> {
    Quad::default().mass_derivative_sign(u0)
}
