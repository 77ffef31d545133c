//! Bracketed one-dimensional root finding and maximization.
//!
//! Every bracket used in the crate is known analytically, so the routines
//! here trade speed for guaranteed convergence: safeguarded Newton for
//! polynomial equations with cheap derivatives, Brent's method for
//! quadrature-backed functions, golden-section search for maxima.

use crate::error::{Error, Result};
use crate::scalar::{c, Real};

const MAX_ITER: usize = 500;

/// Newton's method kept inside `[lo, hi]` by bisection.
///
/// `f` returns the value and the derivative. Stops when the bracket or the
/// Newton step is below `tol`.
pub fn newton_bisect<T, F>(mut f: F, lo: T, hi: T, tol: T, what: &'static str) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> (T, T),
{
    let (mut a, mut b) = (lo, hi);
    let (fa, _) = f(a);
    let (fb, _) = f(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            what,
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    // Orient so that f(a) < 0 < f(b).
    if fa > T::zero() {
        std::mem::swap(&mut a, &mut b);
    }
    let half = c::<T>(0.5);
    let mut x = (a + b) * half;
    for _ in 0..MAX_ITER {
        let (fx, dfx) = f(x);
        if fx == T::zero() {
            return Ok(x);
        }
        if fx < T::zero() {
            a = x;
        } else {
            b = x;
        }
        let newton = x - fx / dfx;
        let inside = newton.is_finite() && (newton - a) * (newton - b) < T::zero();
        let next = if inside { newton } else { (a + b) * half };
        let step = (next - x).abs();
        x = next;
        if step <= tol || (a - b).abs() <= tol {
            return Ok(x);
        }
        if next == a || next == b {
            return Ok(x);
        }
    }
    Err(Error::MaxIterations(MAX_ITER))
}

/// Brent's method (inverse quadratic interpolation safeguarded by bisection).
///
/// Terminates when the bracket half-width falls below
/// `2 eps |x| + tol / 2`.
pub fn brent<T, F>(mut f: F, lo: T, hi: T, tol: T, what: &'static str) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let two = c::<T>(2.0);
    let three = c::<T>(3.0);
    let half = c::<T>(0.5);
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            what,
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let mut cc = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            cc = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = cc;
            cc = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * T::epsilon() * b.abs() + half * tol;
        let xm = half * (cc - b);
        if xm.abs() <= tol1 || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == cc {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = three * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b = b + d;
        } else {
            b = b + tol1.copysign(xm);
        }
        fb = f(b)?;
    }
    Err(Error::MaxIterations(MAX_ITER))
}

/// Golden-section search for the maximizer of a unimodal function on
/// `[lo, hi]`. Returns `(argmax, max)`.
pub fn golden_max<T, F>(mut f: F, lo: T, hi: T, tol: T) -> Result<(T, T)>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let inv_phi = (c::<T>(5.0).sqrt() - T::one()) * c(0.5);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..MAX_ITER {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 > f2 { (x1, f1) } else { (x2, f2) })
}

/// Plain bisection on a predicate-free sign change. Used by tests and by
/// callers that want a derivative-free oracle independent of Brent.
pub fn bisect<T, F>(mut f: F, lo: T, hi: T, tol: T, what: &'static str) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let (mut a, mut b) = (lo, hi);
    let fa = f(a)?;
    let fb = f(b)?;
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            what,
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let neg_at_a = fa < T::zero();
    for _ in 0..MAX_ITER {
        let m = (a + b) * c(0.5);
        if (b - a).abs() <= tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m)?;
        if (fm < T::zero()) == neg_at_a {
            a = m;
        } else {
            b = m;
        }
    }
    Err(Error::MaxIterations(MAX_ITER))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_bisect_finds_sqrt2() {
        let r = newton_bisect(|x: f64| (x * x - 2.0, 2.0 * x), 0.0, 2.0, 1e-15, "x^2-2").unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn brent_and_bisect_agree() {
        let f = |x: f64| Ok(x.cos() - x);
        let r1 = brent(f, 0.0, 1.0, 1e-15, "cos").unwrap();
        let r2 = bisect(f, 0.0, 1.0, 1e-15, "cos").unwrap();
        assert!((r1 - r2).abs() < 1e-14);
        assert!((r1 - 0.739_085_133_215_160_6).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_non_bracket() {
        let err = brent(|x: f64| Ok(x * x + 1.0), -1.0, 1.0, 1e-12, "x^2+1").unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_max(|x: f64| Ok(-(x - 0.3) * (x - 0.3) + 2.0), 0.0, 1.0, 1e-10).unwrap();
        // A quadratic peak is only resolvable to about √ε.
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-15);
    }

    #[test]
    fn works_in_single_precision() {
        let r = newton_bisect(|x: f32| (x * x - 2.0, 2.0 * x), 0.0, 2.0, 1e-6, "x^2-2").unwrap();
        assert!((r - 2f32.sqrt()).abs() < 1e-6);
    }
}
