//! The linear Laplacian on the tadpole with Neumann–Kirchhoff conditions.
//!
//! The ring carries the simple embedded eigenvalues `n²` with eigenfunctions
//! `u = sin nx`, `v = 0`. The continuous spectrum `[0, ∞)` has Jost functions
//! `u = a(k)(e^{ikx} + e^{−ikx})`, `v = e^{ikx} + b(k)e^{−ikx}` with
//! `a = 1/(cos πk + 2i sin πk)` and `b = (cos πk − 2i sin πk)/(cos πk + 2i sin πk)`.

use num_complex::Complex;

use crate::scalar::{c, Real};

/// Scattering coefficients at wavenumber `k ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringData<T> {
    pub k: T,
    pub a_coeff: Complex<T>,
    pub b_coeff: Complex<T>,
}

pub fn scattering<T: Real>(k: T) -> ScatteringData<T> {
    let (s, co) = (T::PI() * k).sin_cos();
    let two = c::<T>(2.0);
    let den = Complex::new(co, two * s);
    ScatteringData {
        k,
        a_coeff: Complex::new(T::one(), T::zero()) / den,
        b_coeff: Complex::new(co, -two * s) / den,
    }
}

/// Vertex-condition residuals of the Jost function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostResiduals<T> {
    /// `max(|u(π) − v(0)|, |u(−π) − v(0)|)`.
    pub continuity: T,
    /// `|u'(π) − u'(−π) − v'(0)| / max(1, k)`.
    pub kirchhoff: T,
}

impl<T: Real> ScatteringData<T> {
    /// `u(x)`, `u'(x)` on the ring.
    pub fn ring(&self, x: T) -> (Complex<T>, Complex<T>) {
        let ik = Complex::new(T::zero(), self.k);
        let (p, m) = ((ik * x).exp(), (-ik * x).exp());
        (self.a_coeff * (p + m), self.a_coeff * ik * (p - m))
    }

    /// `v(x)`, `v'(x)` on the half-line.
    pub fn tail(&self, x: T) -> (Complex<T>, Complex<T>) {
        let ik = Complex::new(T::zero(), self.k);
        let (p, m) = ((ik * x).exp(), (-ik * x).exp());
        (p + self.b_coeff * m, ik * (p - self.b_coeff * m))
    }

    pub fn vertex_residuals(&self) -> JostResiduals<T> {
        let pi = T::PI();
        let (up, dup) = self.ring(pi);
        let (um, dum) = self.ring(-pi);
        let (v0, dv0) = self.tail(T::zero());
        JostResiduals {
            continuity: (up - v0).norm().max((um - v0).norm()),
            kirchhoff: (dup - dum - dv0).norm() / self.k.max(T::one()),
        }
    }

    /// `||b| − 1|`.
    pub fn unitarity_defect(&self) -> T {
        (self.b_coeff.norm() - T::one()).abs()
    }

    /// `||a|² − 1/(1 + 3 sin²πk)|`.
    pub fn a_modulus_defect(&self) -> T {
        let s = (T::PI() * self.k).sin();
        (self.a_coeff.norm_sqr() - T::one() / (T::one() + c::<T>(3.0) * s * s)).abs()
    }
}

/// Embedded eigenvalue `n²` with eigenfunction `u = sin nx`, `v = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddedEigenvalue {
    pub n: u32,
}

impl EmbeddedEigenvalue {
    pub fn lambda(&self) -> f64 {
        f64::from(self.n * self.n)
    }

    pub fn id(&self) -> String {
        format!("sin({}x)", self.n)
    }

    /// Largest of `|u(±π)|` (continuity with `v = 0`) and
    /// `|u'(π) − u'(−π) − v'(0)|`.
    pub fn vertex_residual<T: Real>(&self) -> T {
        let n = T::from_u32(self.n).unwrap();
        let pi = T::PI();
        let u = |x: T| (n * x).sin();
        let du = |x: T| n * (n * x).cos();
        u(pi).abs().max(u(-pi).abs()).max((du(pi) - du(-pi)).abs())
    }

    /// `max |−u'' − n²u|` on `m` equally spaced ring points, with `u''`
    /// evaluated analytically.
    pub fn equation_residual<T: Real>(&self, m: usize) -> T {
        let n = T::from_u32(self.n).unwrap();
        let lambda = n * n;
        (0..m.max(2))
            .map(|j| {
                let x = -T::PI()
                    + c::<T>(2.0) * T::PI() * T::from_usize(j).unwrap()
                        / T::from_usize(m.max(2) - 1).unwrap();
                let u = (n * x).sin();
                let d2 = -n * n * (n * x).sin();
                (-d2 - lambda * u).abs()
            })
            .fold(T::zero(), T::max)
    }
}

/// `[1, 4, 9, …, n_max²]`.
pub fn embedded_eigenvalues(n_max: u32) -> Vec<EmbeddedEigenvalue> {
    (1..=n_max.max(1)).map(|n| EmbeddedEigenvalue { n }).collect()
}

/// Outcome of scanning `1 + 2 tanh(π√|λ|)` over negative `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativeSpectrumReport<T> {
    pub min_value: T,
    pub argmin: T,
    /// Every value is at least 1, so there is no root.
    pub no_roots: bool,
}

/// The eigenvalue condition `1 + 2 tanh(π√|λ|) = 0` for `λ < 0`.
pub fn negative_eigen_condition<T: Real>(lambda: T) -> T {
    T::one() + c::<T>(2.0) * (T::PI() * lambda.abs().sqrt()).tanh()
}

pub fn no_negative_eigenvalues<T: Real>(lambda_grid: &[T]) -> NegativeSpectrumReport<T> {
    let mut min_value = T::infinity();
    let mut argmin = T::nan();
    for &l in lambda_grid {
        let v = negative_eigen_condition(l);
        if v < min_value {
            min_value = v;
            argmin = l;
        }
    }
    NegativeSpectrumReport {
        min_value,
        argmin,
        no_roots: min_value >= T::one(),
    }
}
