//! Scalar root finding and minimization.
//!
//! Everything here is bisection or golden-section: the functions involved are
//! cheap to evaluate and robustness matters more than iteration counts.

use crate::{Error, Result};

/// Bisection on a sign indicator.
///
/// `sign(x)` may be any function whose sign changes across the root; only the
/// sign of the returned value is used, so determinant signs or raw function
/// values both work. Returns the final bracket `(lo, hi)` with `hi - lo <= tol`.
pub fn bisect_sign<F>(mut sign: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let s_lo = sign(lo).signum();
    let s_hi = sign(hi).signum();
    if s_lo == 0.0 {
        return Ok((lo, lo));
    }
    if s_hi == 0.0 {
        return Ok((hi, hi));
    }
    if s_lo == s_hi || s_lo.is_nan() || s_hi.is_nan() {
        return Err(Error::NoBracket {
            what: "bracketing function",
            lo,
            hi,
        });
    }
    // 200 halvings exhaust any f64 interval.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = sign(mid).signum();
        if s == 0.0 {
            return Ok((mid, mid));
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Root of `f` in `[lo, hi]` by bisection, returned as the bracket midpoint.
pub fn bisect<F: FnMut(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (a, b) = bisect_sign(f, lo, hi, tol)?;
    Ok(0.5 * (a + b))
}

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(argmin, min)`.
pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
        if x1 >= x2 {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
