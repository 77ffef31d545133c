//! Jacobi elliptic functions and the complete elliptic integral of the
//! first kind.
//!
//! All entry points use the modulus `k`, not the parameter `m = k²`; the one
//! parameter-based wrapper says so in its name. Where `k` is close to 1 the
//! complementary modulus `k' = √(1 − k²)` should be passed explicitly through
//! the `_comp` variants, since forming it from `k` loses all precision once
//! `1 − k` approaches machine epsilon.

use crate::error::{domain, Result};
use crate::scalar::{c, Real};

/// `sn`, `cn`, `dn` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticEval<T> {
    pub sn: T,
    pub cn: T,
    pub dn: T,
    pub x: T,
    pub k: T,
}

impl<T: Real> EllipticEval<T> {
    /// Defects of `sn² + cn² = 1` and `dn² + k² sn² = 1`.
    pub fn identity_defects(&self) -> (T, T) {
        (
            self.sn * self.sn + self.cn * self.cn - T::one(),
            self.dn * self.dn + self.k * self.k * self.sn * self.sn - T::one(),
        )
    }
}

const MAX_AGM: usize = 40;

/// Arithmetic–geometric mean of `a` and `b`.
pub fn agm<T: Real>(mut a: T, mut b: T) -> T {
    for _ in 0..MAX_AGM {
        let an = (a + b) * c(0.5);
        b = (a * b).sqrt();
        a = an;
        if (a - b).abs() <= T::epsilon() * a {
            break;
        }
    }
    a
}

/// `K(k)` for `k ∈ [0, 1)`.
pub fn complete_k<T: Real>(k: T) -> Result<T> {
    if !(k >= T::zero() && k < T::one()) {
        return domain("k", k.as_f64(), "[0, 1)");
    }
    complete_k_comp((T::one() - k * k).sqrt())
}

/// `K` expressed through the complementary modulus `k' ∈ (0, 1]`.
pub fn complete_k_comp<T: Real>(kc: T) -> Result<T> {
    if !(kc > T::zero() && kc <= T::one()) {
        return domain("k'", kc.as_f64(), "(0, 1]");
    }
    Ok(T::FRAC_PI_2() / agm(T::one(), kc))
}

/// `sn, cn, dn` at `(x, k)` for `k ∈ [0, 1]`. Fields are NaN for other `k`.
pub fn jacobi<T: Real>(x: T, k: T) -> EllipticEval<T> {
    if !(k >= T::zero() && k <= T::one()) {
        let nan = T::nan();
        return EllipticEval {
            sn: nan,
            cn: nan,
            dn: nan,
            x,
            k,
        };
    }
    jacobi_comp(x, k, (T::one() - k * k).max(T::zero()).sqrt())
}

/// Same as [`jacobi`] but with the parameter `m = k²`.
pub fn jacobi_param_m<T: Real>(x: T, m: T) -> EllipticEval<T> {
    jacobi(x, m.sqrt())
}

/// `sn, cn, dn` with `k' = √(1 − k²)` supplied by the caller.
///
/// Descending Landen transformation: run the AGM on `(1, k')` recording
/// `cₙ = (aₙ₋₁ − bₙ₋₁)/2`, start from `φ_N = 2^N a_N x` and recurse down with
/// `φₙ₋₁ = (φₙ + asin(cₙ/aₙ · sin φₙ))/2`, then `sn = sin φ₀`, `cn = cos φ₀`.
pub fn jacobi_comp<T: Real>(x: T, k: T, kc: T) -> EllipticEval<T> {
    let out = |sn, cn, dn| EllipticEval { sn, cn, dn, x, k };
    if k == T::zero() {
        return out(x.sin(), x.cos(), T::one());
    }
    if kc == T::zero() {
        let sech = T::one() / x.cosh();
        return out(x.tanh(), sech, sech);
    }

    let mut a = [T::zero(); MAX_AGM + 1];
    let mut cs = [T::zero(); MAX_AGM + 1];
    a[0] = T::one();
    cs[0] = k;
    let mut b = kc;
    let mut n = 0;
    while n < MAX_AGM && cs[n].abs() > T::epsilon() * a[n] {
        a[n + 1] = (a[n] + b) * c(0.5);
        cs[n + 1] = (a[n] - b) * c(0.5);
        b = (a[n] * b).sqrt();
        n += 1;
    }

    let mut phi = x * a[n] * c::<T>(2.0).powi(n as i32);
    for i in (1..=n).rev() {
        phi = (phi + (cs[i] / a[i] * phi.sin()).asin()) * c(0.5);
    }
    let (sn, cn) = phi.sin_cos();
    // dn² = k'² + k²cn² has no cancellation, unlike 1 − k²sn² near k = 1.
    let dn = kc.hypot(k * cn);
    out(sn, cn, dn)
}

/// Leading terms of the `k → 1` expansions for large `x`:
/// `dn ≈ 2e^{-x} + ¼e^{x}(1−k)`, `cn ≈ 2e^{-x} − ¼e^{x}(1−k)`, `sn ≈ 1`.
pub fn near_one_leading<T: Real>(x: T, one_minus_k: T) -> EllipticEval<T> {
    let quarter = c::<T>(0.25) * x.exp() * one_minus_k;
    let two_em = c::<T>(2.0) * (-x).exp();
    EllipticEval {
        sn: T::one(),
        cn: two_em - quarter,
        dn: two_em + quarter,
        x,
        k: T::one() - one_minus_k,
    }
}

/// First-order expansion in `k'² = 1 − k²` about the hyperbolic limit,
/// uniform in `x` on bounded ranges:
///
/// * `sn ≈ tanh x + ¼k'²(sinh x cosh x − x) sech² x`
/// * `cn ≈ sech x − ¼k'²(sinh x cosh x − x) tanh x sech x`
/// * `dn ≈ sech x + ¼k'²(sinh x cosh x + x) tanh x sech x`
pub fn near_one_first_order<T: Real>(x: T, kc: T) -> EllipticEval<T> {
    let q = c::<T>(0.25) * kc * kc;
    let (sh, ch) = (x.sinh(), x.cosh());
    let (th, sech) = (x.tanh(), T::one() / ch);
    EllipticEval {
        sn: th + q * (sh * ch - x) * sech * sech,
        cn: sech - q * (sh * ch - x) * th * sech,
        dn: sech + q * (sh * ch + x) * th * sech,
        x,
        k: (T::one() - kc * kc).sqrt(),
    }
}
