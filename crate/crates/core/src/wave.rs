//! The standing-wave family.
//!
//! A [`WaveSolution`] is built from the vertex amplitude `U0` (or from `ω`
//! by inverting the period map) and carries both the quadrature data and the
//! elliptic parametrization of the ring profile. From it the graph profile
//! `(u, v)` is sampled, checked against the stationary equation and the
//! vertex conditions, and integrated into the mass and variational quotient.

use rayon::prelude::*;

use crate::elliptic::jacobi_comp;
use crate::error::{domain, Result};
use crate::model::{potential, rho_roots, soliton, ModelParams, RhoRoots};
use crate::ode::{Dopri, OdeOptions};
use crate::quadrature::{gauss_kronrod, Quad, DEFAULT_MAX_SUBDIVISIONS};
use crate::roots::brent;
use crate::scalar::{c, Real};

/// One standing wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSolution<T> {
    pub params: ModelParams<T>,
    pub eps: T,
    /// `ε²`, kept separately so tiny `|ω|` does not lose digits.
    pub eps_sq: T,
    pub omega: T,
    pub mu: T,
    pub rho: RhoRoots<T>,
    pub nu: T,
    pub k: T,
    /// `k' = √(1 − k²)`, exact even when `1 − k` underflows.
    pub k_comp: T,
}

/// Solver settings: quadrature tolerance and root tolerance in `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSolver<T> {
    pub quad: Quad<T>,
    pub root_tol: T,
}

impl<T: Real> Default for WaveSolver<T> {
    fn default() -> Self {
        Self {
            quad: Quad::default(),
            root_tol: T::tol(1e-12),
        }
    }
}

impl<T: Real> WaveSolver<T> {
    pub fn new(quad_tol: T, root_tol: T) -> Self {
        Self {
            quad: Quad {
                tol: quad_tol,
                max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
            },
            root_tol,
        }
    }

    fn assemble(&self, params: ModelParams<T>, eps_sq: T, omega: T) -> Result<WaveSolution<T>> {
        let rho = rho_roots(params.energy)?;
        let (k, k_comp) = rho.modulus();
        let b = self.quad.mass_integral_b(params.u0)?;
        let mu = c::<T>(2.0) * b + (-c::<T>(2.0) * params.a).exp().atan();
        Ok(WaveSolution {
            params,
            eps: eps_sq.sqrt(),
            eps_sq,
            omega,
            mu,
            rho,
            nu: rho.nu(),
            k,
            k_comp,
        })
    }

    /// The wave with vertex amplitude `U0`; `πε² = T(U0)`.
    pub fn solve_from_u0(&self, u0: T) -> Result<WaveSolution<T>> {
        let params = ModelParams::from_u0(u0)?;
        let eps_sq = self.quad.period_t(u0)? / T::PI();
        self.assemble(params, eps_sq, -eps_sq * eps_sq)
    }

    /// The wave at frequency `ω < 0`.
    ///
    /// Solves `T(φ(a)) = π√|ω|` for the soliton shift `a` with Brent's
    /// method; `a ↦ ε(a)` is increasing, so the root is unique.
    pub fn solve_from_omega(&self, omega: T) -> Result<WaveSolution<T>> {
        if !(omega < T::zero()) || !omega.is_finite() {
            return domain("omega", omega.as_f64(), "(-inf, 0): omega must be negative");
        }
        let eps_sq = (-omega).sqrt();
        let target = T::PI() * eps_sq;
        let g = |a: T| -> Result<T> {
            let u0 = soliton(a).0;
            Ok(self.quad.period_t(u0)? - target)
        };
        // a ≈ 2πε² for small ε and a ≈ πε² + log(3/4) for large ε.
        let mut lo = target * c(0.4);
        let mut hi = target + T::one();
        let mut tries = 0;
        while g(lo)? > T::zero() && tries < 60 {
            lo = lo * c(0.5);
            tries += 1;
        }
        tries = 0;
        while g(hi)? < T::zero() && tries < 60 {
            hi = hi + T::one();
            tries += 1;
        }
        let a = brent(g, lo, hi, self.root_tol, "T(phi(a)) - pi eps^2")?;
        let params = ModelParams::from_shift(a)?;
        self.assemble(params, eps_sq, omega)
    }

    /// Solutions on a grid of vertex amplitudes, sorted by `ω`, with the sign
    /// of `dμ/dω`. Evaluated in parallel; order is deterministic.
    pub fn mass_curve(&self, u0_grid: &[T]) -> Result<MassCurve<T>> {
        let samples = u0_grid
            .par_iter()
            .map(|&u0| {
                let sol = self.solve_from_u0(u0)?;
                self.sample(sol)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MassCurve::new(samples, self.quad.tol))
    }

    /// Same as [`Self::mass_curve`] on a grid of frequencies.
    pub fn mass_curve_omega(&self, omega_grid: &[T]) -> Result<MassCurve<T>> {
        let samples = omega_grid
            .par_iter()
            .map(|&omega| {
                let sol = self.solve_from_omega(omega)?;
                self.sample(sol)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MassCurve::new(samples, self.quad.tol))
    }

    fn sample(&self, sol: WaveSolution<T>) -> Result<MassSample<T>> {
        let d = self.quad.mass_derivative_sign(sol.params.u0)?;
        Ok(MassSample {
            u0: sol.params.u0,
            omega: sol.omega,
            mu: sol.mu,
            dmu_sign: sign_of(d),
        })
    }
}

fn sign_of<T: Real>(x: T) -> i8 {
    if x > T::zero() {
        1
    } else if x < T::zero() {
        -1
    } else {
        0
    }
}

/// [`WaveSolver::solve_from_u0`] with default settings.
pub fn solve_from_u0<T: Real>(u0: T) -> Result<WaveSolution<T>> {
    WaveSolver::default().solve_from_u0(u0)
}

/// [`WaveSolver::solve_from_omega`] with default settings.
pub fn solve_from_omega<T: Real>(omega: T) -> Result<WaveSolution<T>> {
    WaveSolver::default().solve_from_omega(omega)
}

/// `ω` values log-spaced from `omega_min` to `omega_max` (both negative),
/// ascending. The end points are returned exactly.
pub fn log_omega_grid<T: Real>(omega_min: T, omega_max: T, n: usize) -> Vec<T> {
    let (l0, l1) = ((-omega_min).ln(), (-omega_max).ln());
    (0..n)
        .map(|i| match i {
            0 => omega_min,
            _ if i + 1 == n => omega_max,
            _ => {
                let t = T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap();
                -(l0 + (l1 - l0) * t).exp()
            }
        })
        .collect()
}

impl<T: Real> WaveSolution<T> {
    /// Scaled half-ring length `πε²`.
    pub fn half_length(&self) -> T {
        T::PI() * self.eps_sq
    }

    /// `ρ(z) = U(z)²` from the elliptic closed form, with `dρ/dz`.
    pub fn rho_exact(&self, z: T) -> (T, T) {
        let (r1, r) = (self.rho.rho1, -self.rho.rho3);
        let e = jacobi_comp(self.nu * z, self.k, self.k_comp);
        let d = e.dn * e.dn;
        let den = r1 + r - r1 * d;
        let rho = r1 * r * d / den;
        // dρ/dD = ρ₁r(ρ₁+r)/den², dD/dz = −2k²ν sn cn dn.
        let drho = r1 * r * (r1 + r) / (den * den)
            * (-c::<T>(2.0) * self.k * self.k * self.nu * e.sn * e.cn * e.dn);
        (rho, drho)
    }

    /// Ring profile `U(z)` on `[0, πε²]`.
    pub fn profile_exact(&self, z: T) -> T {
        self.rho_exact(z).0.sqrt()
    }

    /// `(U(z), U'(z))`.
    pub fn profile_exact_pair(&self, z: T) -> (T, T) {
        let (rho, drho) = self.rho_exact(z);
        let u = rho.sqrt();
        (u, drho / (c::<T>(2.0) * u))
    }

    /// `(U(πε²) − φ(a), 2U'(πε²) − φ'(a))`.
    pub fn boundary_defects(&self) -> (T, T) {
        let (u, du) = self.profile_exact_pair(self.half_length());
        let (phi, dphi, _) = soliton(self.params.a);
        (u - phi, c::<T>(2.0) * du - dphi)
    }

    /// `μ = 2∫₀^{πε²} ρ(z) dz + arctan(e^{−2a})` with `ρ` from the elliptic
    /// form.
    pub fn mass_from_profile(&self, tol: T) -> Result<T> {
        let (ring, _) = gauss_kronrod(
            |z| self.rho_exact(z).0,
            T::zero(),
            self.half_length(),
            tol,
            DEFAULT_MAX_SUBDIVISIONS,
        )?;
        Ok(c::<T>(2.0) * ring + (-c::<T>(2.0) * self.params.a).exp().atan())
    }

    /// Integrates `U'' = U − 3U⁵` from `(U₊, 0)` and samples `n ≥ 2` equally
    /// spaced points of `[0, πε²]`.
    pub fn profile_ode(&self, n: usize, opts: OdeOptions<T>) -> Result<OdeProfile<T>> {
        let n = n.max(2);
        let len = self.half_length();
        let energy = self.params.energy;
        let rhs = |_z: T, y: &[T; 2]| {
            let u = y[0];
            let u4 = (u * u) * (u * u);
            [y[1], u - c::<T>(3.0) * u4 * u]
        };
        let mut drift = T::zero();
        let mut track = |_z: T, y: &[T; 2]| {
            let inv = y[1] * y[1] - potential(y[0]);
            drift = drift.max((inv - energy).abs());
        };
        let mut solver = Dopri::new(rhs, T::zero(), [self.params.u_plus, T::zero()], opts);
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            let z = len * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap();
            let y = solver.advance_to(z, &mut track)?;
            points.push(ProfilePoint {
                z,
                u: y[0],
                du: y[1],
            });
        }
        Ok(OdeProfile {
            points,
            energy_drift: drift,
        })
    }

    /// Samples `u` on `n_ring + 1` equally spaced ring points and `v` on
    /// `n_ring + 1` points of `[0, l_trunc]`.
    pub fn sample_graph_profile(&self, n_ring: usize, l_trunc: T) -> GraphFunction<T> {
        let n = n_ring.max(8);
        let (eps, eps2) = (self.eps, self.eps_sq);
        let eps3 = eps * eps2;
        let nf = T::from_usize(n).unwrap();
        let ring = (0..=n)
            .map(|j| {
                let x = -T::PI() + c::<T>(2.0) * T::PI() * T::from_usize(j).unwrap() / nf;
                let (u, du) = self.profile_exact_pair(eps2 * x.abs());
                let sign = if x < T::zero() { -T::one() } else { T::one() };
                Sample {
                    x,
                    value: eps * u,
                    derivative: sign * eps3 * du,
                }
            })
            .collect();
        let tail = (0..=n)
            .map(|j| {
                let x = l_trunc * T::from_usize(j).unwrap() / nf;
                let (phi, dphi, _) = soliton(eps2 * x + self.params.a);
                Sample {
                    x,
                    value: eps * phi,
                    derivative: eps3 * dphi,
                }
            })
            .collect();
        GraphFunction {
            ring,
            tail,
            l_trunc,
            omega: self.omega,
            eps,
            a: self.params.a,
        }
    }

    /// `B_ω(Φ) / ‖Φ‖²_{L⁶}` from a fine sampled profile.
    pub fn variational_quotient(&self) -> T {
        let l = c::<T>(20.0) / self.eps_sq;
        self.sample_graph_profile(4096, l).integrals().quotient()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint<T> {
    pub z: T,
    pub u: T,
    pub du: T,
}

/// Shooting profile with the largest deviation of `(U')² − U² + U⁶` from `E`
/// over all accepted steps.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeProfile<T> {
    pub points: Vec<ProfilePoint<T>>,
    pub energy_drift: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    pub x: T,
    pub value: T,
    pub derivative: T,
}

/// `u` on the ring `[−π, π]` (vertex at `±π`) and `v` on `[0, L]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphFunction<T> {
    pub ring: Vec<Sample<T>>,
    pub tail: Vec<Sample<T>>,
    pub l_trunc: T,
    pub omega: T,
    pub eps: T,
    pub a: T,
}

/// Integrals of a sampled profile including the analytic tail beyond `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileIntegrals<T> {
    /// `‖Φ‖²_{L²}`.
    pub mass: T,
    /// `‖Φ'‖²_{L²}`.
    pub kinetic: T,
    /// `‖Φ‖⁶_{L⁶}`.
    pub sextic: T,
    /// `|ω|`.
    pub abs_omega: T,
}

impl<T: Real> ProfileIntegrals<T> {
    /// `B_ω(Φ) = ‖Φ'‖² + |ω|‖Φ‖²`.
    pub fn b_omega(&self) -> T {
        self.kinetic + self.abs_omega * self.mass
    }

    pub fn quotient(&self) -> T {
        self.b_omega() / self.sextic.cbrt()
    }

    /// `B_ω(Φ) / (3‖Φ‖⁶) − 1`.
    pub fn nehari_defect(&self) -> T {
        self.b_omega() / (c::<T>(3.0) * self.sextic) - T::one()
    }
}

/// Residuals of the stationary equation and the vertex conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport<T> {
    pub ring_max: T,
    pub tail_max: T,
    /// `max(|u(π) − v(0)|, |u(−π) − v(0)|)`.
    pub continuity: T,
    /// `|u'(π) − u'(−π) − v'(0)|`.
    pub kirchhoff: T,
    /// `max |u(x) − u(−x)|`.
    pub symmetry: T,
}

impl<T: Real> ResidualReport<T> {
    pub fn max_equation_residual(&self) -> T {
        self.ring_max.max(self.tail_max)
    }
}

/// Trapezoid rule with the first Euler–Maclaurin end correction, using the
/// derivative of the integrand at the ends. Assumes equal spacing.
fn corrected_trapezoid<T: Real>(xs: &[T], f: &[T], df_ends: (T, T)) -> T {
    let n = xs.len();
    let h = xs[1] - xs[0];
    let mut s = (f[0] + f[n - 1]) * c(0.5);
    for v in &f[1..n - 1] {
        s = s + *v;
    }
    h * s - h * h / c::<T>(12.0) * (df_ends.1 - df_ends.0)
}

impl<T: Real> GraphFunction<T> {
    pub fn vertex_continuity_defect(&self) -> T {
        let v0 = self.tail[0].value;
        let (ul, ur) = (self.ring[0].value, self.ring[self.ring.len() - 1].value);
        (ul - v0).abs().max((ur - v0).abs())
    }

    pub fn kirchhoff_defect(&self) -> T {
        let (dl, dr) = (self.ring[0].derivative, self.ring[self.ring.len() - 1].derivative);
        (dr - dl - self.tail[0].derivative).abs()
    }

    pub fn symmetry_defect(&self) -> T {
        let n = self.ring.len();
        (0..n / 2)
            .map(|i| (self.ring[i].value - self.ring[n - 1 - i].value).abs())
            .fold(T::zero(), T::max)
    }

    /// `u` nonincreasing on `[0, π]` and `v` nonincreasing on `[0, L]`.
    pub fn is_monotone(&self) -> bool {
        let half = &self.ring[self.ring.len() / 2..];
        let dec = |s: &[Sample<T>]| s.windows(2).all(|w| w[1].value <= w[0].value);
        dec(half) && dec(&self.tail)
    }

    /// Pointwise residuals of `−Φ'' − 3Φ⁵ − ωΦ` by second differences at the
    /// interior nodes, plus the vertex defects.
    pub fn verify_residuals(&self) -> ResidualReport<T> {
        let residual = |s: &[Sample<T>]| {
            let h = s[1].x - s[0].x;
            s.windows(3)
                .map(|w| {
                    let d2 = (w[0].value - c::<T>(2.0) * w[1].value + w[2].value) / (h * h);
                    let u = w[1].value;
                    let u4 = (u * u) * (u * u);
                    (-d2 - c::<T>(3.0) * u4 * u - self.omega * u).abs()
                })
                .fold(T::zero(), T::max)
        };
        ResidualReport {
            ring_max: residual(&self.ring),
            tail_max: residual(&self.tail),
            continuity: self.vertex_continuity_defect(),
            kirchhoff: self.kirchhoff_defect(),
            symmetry: self.symmetry_defect(),
        }
    }

    /// Mass, kinetic and sextic integrals by end-corrected trapezoid on the
    /// samples, with the exact soliton tail beyond `L` added.
    pub fn integrals(&self) -> ProfileIntegrals<T> {
        let abs_omega = -self.omega;
        let eps4 = abs_omega;
        let sum = |s: &[Sample<T>], f: &dyn Fn(&Sample<T>) -> (T, T)| {
            let xs: Vec<T> = s.iter().map(|p| p.x).collect();
            let vals: Vec<(T, T)> = s.iter().map(f).collect();
            let fs: Vec<T> = vals.iter().map(|v| v.0).collect();
            corrected_trapezoid(&xs, &fs, (vals[0].1, vals[vals.len() - 1].1))
        };
        // Each closure returns the integrand and its x-derivative, using
        // Φ'' = |ω|Φ − 3Φ⁵.
        let second = |p: &Sample<T>| {
            let u4 = (p.value * p.value) * (p.value * p.value);
            abs_omega * p.value - c::<T>(3.0) * u4 * p.value
        };
        let mass_f = |p: &Sample<T>| (p.value * p.value, c::<T>(2.0) * p.value * p.derivative);
        let kin_f = |p: &Sample<T>| {
            (p.derivative * p.derivative, c::<T>(2.0) * p.derivative * second(p))
        };
        let sext_f = |p: &Sample<T>| {
            let u5 = (p.value * p.value) * (p.value * p.value) * p.value;
            (u5 * p.value, c::<T>(6.0) * u5 * p.derivative)
        };

        let z0 = self.a + self.eps * self.eps * self.l_trunc;
        let y0 = c::<T>(2.0) * z0;
        let tail_mass = (-y0).exp().atan();
        let s3 = ((T::one() / y0.sinh()).atan() - y0.tanh() / y0.cosh()) * c(0.5);

        ProfileIntegrals {
            mass: sum(&self.ring, &mass_f) + sum(&self.tail, &mass_f) + tail_mass,
            kinetic: sum(&self.ring, &kin_f)
                + sum(&self.tail, &kin_f)
                + eps4 * (tail_mass - s3 * c(0.5)),
            sextic: sum(&self.ring, &sext_f) + sum(&self.tail, &sext_f) + eps4 * s3 * c(0.5),
            abs_omega,
        }
    }
}

/// One point of the mass curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassSample<T> {
    pub u0: T,
    pub omega: T,
    pub mu: T,
    /// Sign of `dμ/dω` (`+1`, `-1` or `0`).
    pub dmu_sign: i8,
}

/// Mass–frequency samples sorted by increasing `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassCurve<T> {
    pub samples: Vec<MassSample<T>>,
    /// Quadrature tolerance the samples were computed with.
    pub quad_tol: T,
}

impl<T: Real> MassCurve<T> {
    pub fn new(mut samples: Vec<MassSample<T>>, quad_tol: T) -> Self {
        samples.sort_by(|a, b| a.omega.partial_cmp(&b.omega).unwrap());
        Self { samples, quad_tol }
    }

    /// Number of sign changes in the `dμ/dω` column.
    pub fn sign_changes(&self) -> usize {
        self.samples
            .windows(2)
            .filter(|w| w[0].dmu_sign != w[1].dmu_sign)
            .count()
    }

    /// Interior maxima of `μ`, located where the derivative sign goes from
    /// `+` to `−`. Each entry is whichever of the two bracketing samples has
    /// the larger `μ`.
    ///
    /// Comparing neighbouring `μ` values directly is unreliable once
    /// `μ − π/2` drops below rounding at large `|ω|`.
    pub fn interior_maxima(&self) -> Vec<usize> {
        (1..self.samples.len())
            .filter(|&i| self.samples[i - 1].dmu_sign > 0 && self.samples[i].dmu_sign < 0)
            .map(|i| {
                if self.samples[i - 1].mu >= self.samples[i].mu {
                    i - 1
                } else {
                    i
                }
            })
            .collect()
    }

    pub fn max_sample(&self) -> Option<&MassSample<T>> {
        self.samples
            .iter()
            .max_by(|a, b| a.mu.partial_cmp(&b.mu).unwrap())
    }
}
